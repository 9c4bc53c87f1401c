#ifndef LVFRAC_TRAJECTORY_HPP
#define LVFRAC_TRAJECTORY_HPP

#include <lvfrac/errors.hpp>
#include <lvfrac/model.hpp>

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lvfrac {

enum class Scheme { Reference, Euler, Mickens, Fractional };

inline std::string_view to_string(Scheme s) {
    switch (s) {
    case Scheme::Reference: return "reference";
    case Scheme::Euler: return "euler";
    case Scheme::Mickens: return "mickens";
    case Scheme::Fractional: return "fractional";
    }
    return "?";
}

inline std::optional<Scheme> parse_scheme(std::string_view name) {
    if (name == "reference" || name == "continuous" || name == "rk4") return Scheme::Reference;
    if (name == "euler") return Scheme::Euler;
    if (name == "mickens" || name == "nsfd") return Scheme::Mickens;
    if (name == "fractional" || name == "caputo") return Scheme::Fractional;
    return std::nullopt;
}

// Step size, horizon and scheme selector shared by every solver. sigma and
// corrector_passes only matter for the fractional scheme.
struct SchemeConfig {
    Scheme scheme = Scheme::Reference;
    double h = 0.25;
    double t_end = 300.0;
    double sigma = 1.0;
    int corrector_passes = 1;

    // Number of steps taken on the uniform grid t_i = i*h, i.e. ceil(t_end/h)
    // with a relative guard so 300/0.25 counts as 1200 and not 1201.
    std::size_t steps() const {
        const double ratio = t_end / h;
        return static_cast<std::size_t>(std::ceil(ratio - 1e-9 * ratio));
    }

    void validate() const {
        if (!(h > 0.0) || !std::isfinite(h)) {
            throw ConfigError("step size h must be a finite positive number");
        }
        if (!(t_end >= h) || !std::isfinite(t_end)) {
            throw ConfigError("horizon t_end must be finite and at least h");
        }
        if (scheme == Scheme::Fractional) {
            if (!(sigma > 0.0 && sigma <= 1.0)) {
                throw DomainError("fractional order sigma must lie in (0, 1]");
            }
            if (corrector_passes < 1) {
                throw ConfigError("corrector_passes must be >= 1");
            }
        }
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    Scheme scheme = Scheme::Reference;
    ModelParams params = ModelParams::reference_set();
    SchemeConfig config;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return states.size(); }
    const State& initial() const { return states.front(); }
    const State& final_state() const { return states.back(); }
};

} // namespace lvfrac

#endif // LVFRAC_TRAJECTORY_HPP
