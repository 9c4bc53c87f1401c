#ifndef LVFRAC_MODEL_HPP
#define LVFRAC_MODEL_HPP

// Predator-prey model with logistic prey growth:
//
//   dD/dt = alpha*D*(1 - D/C) - p*D*L
//   dL/dt = p*D*L - beta*L
//
// Populations are stored in absolute units; with C = 1 they read as fractions
// of the carrying capacity.

#include <lvfrac/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>

namespace lvfrac {

struct State {
    double d = 0.0; // prey
    double l = 0.0; // predator

    friend bool operator==(const State&, const State&) = default;
};

inline bool is_finite(const State& s) { return std::isfinite(s.d) && std::isfinite(s.l); }

inline double sup_distance(const State& a, const State& b) {
    return std::max(std::abs(a.d - b.d), std::abs(a.l - b.l));
}

class ModelParams {
public:
    // Enforces hypothesis P1: 0 < alpha < beta < p*C < 1. Throws ConfigError otherwise.
    static ModelParams validated(double alpha, double beta, double p, double capacity) {
        ModelParams m(alpha, beta, p, capacity, true);
        if (!m.satisfies_p1()) {
            throw ConfigError("parameters violate 0 < alpha < beta < p*C < 1 (alpha=" +
                              std::to_string(alpha) + ", beta=" + std::to_string(beta) +
                              ", p=" + std::to_string(p) + ", C=" + std::to_string(capacity) + ")");
        }
        return m;
    }

    // No ordering checks; the instance is flagged as unvalidated. Used to explore
    // regimes outside P1.
    static ModelParams unchecked(double alpha, double beta, double p, double capacity) {
        return ModelParams(alpha, beta, p, capacity, false);
    }

    // C = 1, alpha = 0.05, beta = 0.3, p = 0.4.
    static ModelParams reference_set() { return validated(0.05, 0.3, 0.4, 1.0); }

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double p() const noexcept { return p_; }
    double capacity() const noexcept { return capacity_; }
    bool is_validated() const noexcept { return validated_; }

    bool satisfies_p1() const noexcept {
        const double pc = p_ * capacity_;
        return 0.0 < alpha_ && alpha_ < beta_ && beta_ < pc && pc < 1.0;
    }

    bool all_finite() const noexcept {
        return std::isfinite(alpha_) && std::isfinite(beta_) && std::isfinite(p_) &&
               std::isfinite(capacity_);
    }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    ModelParams(double alpha, double beta, double p, double capacity, bool validated)
        : alpha_(alpha), beta_(beta), p_(p), capacity_(capacity), validated_(validated) {}

    double alpha_;
    double beta_;
    double p_;
    double capacity_;
    bool validated_;
};

// Time derivative (dD/dt, dL/dt) at s.
inline State vector_field(const ModelParams& m, const State& s) {
    if (!m.all_finite() || !is_finite(s)) {
        throw DomainError("vector_field: non-finite parameters or state");
    }
    const double predation = m.p() * s.d * s.l;
    return {m.alpha() * s.d * (1.0 - s.d / m.capacity()) - predation,
            predation - m.beta() * s.l};
}

enum class EquilibriumLabel { E1, E2, E3 };

inline std::string_view to_string(EquilibriumLabel e) {
    switch (e) {
    case EquilibriumLabel::E1: return "E1";
    case EquilibriumLabel::E2: return "E2";
    case EquilibriumLabel::E3: return "E3";
    }
    return "?";
}

struct Equilibrium {
    EquilibriumLabel label;
    State point;
    bool exists = true;
    std::string reason; // why the point does not exist, empty otherwise
};

// E1 = (0,0), E2 = (C,0), E3 = (beta/p, (alpha/p)(1 - beta/(pC))).
// The same three points are the fixed points of the Euler and Mickens maps and
// the equilibria of the fractional system.
inline std::array<Equilibrium, 3> equilibria(const ModelParams& m) {
    std::array<Equilibrium, 3> out{
        Equilibrium{EquilibriumLabel::E1, {0.0, 0.0}, true, {}},
        Equilibrium{EquilibriumLabel::E2, {m.capacity(), 0.0}, true, {}},
        Equilibrium{EquilibriumLabel::E3, {0.0, 0.0}, false, {}},
    };
    auto& e3 = out[2];
    if (m.p() == 0.0 || m.capacity() == 0.0) {
        e3.reason = "p*C = 0: interior equilibrium undefined";
        return out;
    }
    const double ratio = m.beta() / (m.p() * m.capacity());
    e3.point = {m.beta() / m.p(), (m.alpha() / m.p()) * (1.0 - ratio)};
    // Same condition as 1 - beta/(pC) > 0, without the rounding of the ratio.
    e3.exists = m.beta() < m.p() * m.capacity();
    if (!e3.exists) {
        e3.reason = "1 - beta/(pC) <= 0: interior equilibrium outside the positive quadrant";
    }
    return out;
}

inline Equilibrium interior_equilibrium(const ModelParams& m) { return equilibria(m)[2]; }

struct GrowthBound {
    double w;
    double lambda;
};

// Constants with ||F(X)||_sup <= w + lambda*||X||_sup on the feasible region,
// from F(X) = D*Z*X + B*X with Z = [[-alpha/C, -p], [0, p]], B = diag(alpha, -beta).
// lambda = ||Z||_sup + ||B||_sup (row-sum norms); w is an arbitrary positive slack.
inline GrowthBound lipschitz_growth_bound(const ModelParams& m) {
    const double z_norm = std::max(std::abs(m.alpha() / m.capacity()) + std::abs(m.p()),
                                   std::abs(m.p()));
    const double b_norm = std::max(std::abs(m.alpha()), std::abs(m.beta()));
    return {1e-9, z_norm + b_norm};
}

} // namespace lvfrac

#endif // LVFRAC_MODEL_HPP
