#ifndef LVFRAC_FRACTIONAL_HPP
#define LVFRAC_FRACTIONAL_HPP

// Caputo fractional-order solver: fractional rectangle predictor followed by
// product-trapezoidal corrector (PECE), with full memory of the history.
//
// For order sigma and grid t_n = n h the step n -> n+1 is
//
//   X^P     = X_0 + h^s/Gamma(s+1) * sum_{j=0..n} b_{n-j} F(X_j)
//   X_{n+1} = X_0 + h^s/Gamma(s+2) * (a0(n) F(X_0) + sum_{j=1..n} c_{n-j} F(X_j) + F(X^P))
//
// with b_k = (k+1)^s - k^s, c_k = (k+2)^(s+1) + k^(s+1) - 2 (k+1)^(s+1) and
// a0(n) = n^(s+1) - (n-s)(n+1)^s. At s = 1 the corrector is the trapezoidal
// rule, but the predictor still sums the whole history, so it is not Heun's method.

#include <lvfrac/errors.hpp>
#include <lvfrac/model.hpp>
#include <lvfrac/special_functions.hpp>
#include <lvfrac/trajectory.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace lvfrac {

struct FractionalConfig {
    double sigma = 0.95;
    double h = 0.25;
    double t_end = 300.0;
    int corrector_passes = 1;

    void validate() const {
        if (!(sigma > 0.0 && sigma <= 1.0)) {
            throw DomainError("fractional order sigma must lie in (0, 1], got " + std::to_string(sigma));
        }
        if (!(h > 0.0) || !std::isfinite(h)) {
            throw ConfigError("step size h must be a finite positive number");
        }
        if (!(t_end >= h) || !std::isfinite(t_end)) {
            throw ConfigError("horizon t_end must be finite and at least h");
        }
        if (corrector_passes < 1) {
            throw ConfigError("corrector_passes must be >= 1");
        }
    }

    SchemeConfig as_scheme_config() const {
        return SchemeConfig{Scheme::Fractional, h, t_end, sigma, corrector_passes};
    }
};

namespace weights {

// Generalized binomial coefficient C(a, m).
inline double binomial(double a, int m) {
    double c = 1.0;
    for (int i = 0; i < m; ++i) {
        c *= (a - i) / (i + 1);
    }
    return c;
}

// (k+1)^s - k^s, written as k^s * expm1(s * log1p(1/k)) for k >= 1.
inline double rectangle(double s, std::size_t k) {
    if (k == 0) {
        return 1.0;
    }
    const double kd = static_cast<double>(k);
    return std::pow(kd, s) * std::expm1(s * std::log1p(1.0 / kd));
}

// (k+2)^a + k^a - 2 (k+1)^a with a = s + 1. For k >= 1 the bracket
// (1+u)^a + (1-u)^a - 2, u = 1/(k+1), is summed as 2 sum_m C(a,2m) u^(2m),
// which has no cancellation: every term is non-negative for a in (1, 2].
inline double trapezoid_interior(double s, std::size_t k) {
    const double a = s + 1.0;
    if (k == 0) {
        return std::pow(2.0, a) - 2.0;
    }
    const double base = static_cast<double>(k + 1);
    const double u2 = 1.0 / (base * base);
    double sum = 0.0;
    double u_pow = 1.0;
    for (int m = 1; m <= 200; ++m) {
        u_pow *= u2;
        const double term = 2.0 * binomial(a, 2 * m) * u_pow;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return std::pow(base, a) * sum;
}

// n^(s+1) - (n-s)(n+1)^s. For n >= 2 expanded in v = 1/n as
// n^s * sum_{m>=1} (s C(s,m) - C(s,m+1)) v^m.
inline double trapezoid_first(double s, std::size_t n) {
    const double nd = static_cast<double>(n);
    if (n < 2) {
        return std::pow(nd, s + 1.0) - (nd - s) * std::pow(nd + 1.0, s);
    }
    const double v = 1.0 / nd;
    double sum = 0.0;
    double v_pow = 1.0;
    for (int m = 1; m <= 200; ++m) {
        v_pow *= v;
        const double term = (s * binomial(s, m) - binomial(s, m + 1)) * v_pow;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return std::pow(nd, s) * sum;
}

} // namespace weights

// Weights of the step n -> n+1, indexed by history position j = 0..n.
struct QuadratureWeights {
    std::vector<double> trapezoidal; // a_{j,n+1}, j = 0..n; the predicted value carries weight 1
    std::vector<double> rectangle;   // b_{j,n+1}, j = 0..n
    double predictor_scale = 0.0;    // h^s / Gamma(s+1)
    double corrector_scale = 0.0;    // h^s / Gamma(s+2)
};

inline QuadratureWeights quadrature_weights(double sigma, double h, std::size_t n) {
    if (!(sigma > 0.0 && sigma <= 1.0)) {
        throw DomainError("quadrature_weights: sigma must lie in (0, 1]");
    }
    QuadratureWeights w;
    w.rectangle.resize(n + 1);
    w.trapezoidal.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        w.rectangle[j] = weights::rectangle(sigma, n - j);
        w.trapezoidal[j] = j == 0 ? weights::trapezoid_first(sigma, n)
                                  : weights::trapezoid_interior(sigma, n - j);
    }
    const double hs = std::pow(h, sigma);
    w.predictor_scale = hs / std::tgamma(sigma + 1.0);
    w.corrector_scale = hs / std::tgamma(sigma + 2.0);
    return w;
}

namespace detail {

// PECE driver for a system of N equations. rhs maps std::array<double, N> to
// std::array<double, N>. Returns the N_steps + 1 grid values.
template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> predictor_corrector(Rhs&& rhs, const std::array<double, N>& x0,
                                                       double sigma, double h, std::size_t steps,
                                                       int corrector_passes) {
    using Vec = std::array<double, N>;
    std::vector<double> rect(steps + 1);
    std::vector<double> trap(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        rect[k] = weights::rectangle(sigma, k);
        trap[k] = weights::trapezoid_interior(sigma, k);
    }
    const double hs = std::pow(h, sigma);
    const double predictor_scale = hs / std::tgamma(sigma + 1.0);
    const double corrector_scale = hs / std::tgamma(sigma + 2.0);

    std::vector<Vec> x;
    std::vector<Vec> f;
    x.reserve(steps + 1);
    f.reserve(steps + 1);
    x.push_back(x0);
    f.push_back(rhs(x0));

    auto check_finite = [&](const Vec& v, std::size_t step) {
        for (double c : v) {
            if (!std::isfinite(c)) {
                const double t = static_cast<double>(step) * h;
                throw DivergenceError("fractional: non-finite state at step " + std::to_string(step) +
                                          " (t = " + std::to_string(t) + ")",
                                      t, step);
            }
        }
    };

    for (std::size_t n = 0; n < steps; ++n) {
        Vec predictor_sum{};
        Vec corrector_sum{};
        const double first = weights::trapezoid_first(sigma, n);
        for (std::size_t i = 0; i < N; ++i) {
            corrector_sum[i] = first * f[0][i];
        }
        for (std::size_t j = 0; j <= n; ++j) {
            const double b = rect[n - j];
            const double a = j == 0 ? 0.0 : trap[n - j];
            for (std::size_t i = 0; i < N; ++i) {
                predictor_sum[i] += b * f[j][i];
                corrector_sum[i] += a * f[j][i];
            }
        }
        Vec next{};
        for (std::size_t i = 0; i < N; ++i) {
            next[i] = x0[i] + predictor_scale * predictor_sum[i];
        }
        check_finite(next, n + 1);
        for (int pass = 0; pass < corrector_passes; ++pass) {
            const Vec fp = rhs(next);
            for (std::size_t i = 0; i < N; ++i) {
                next[i] = x0[i] + corrector_scale * (corrector_sum[i] + fp[i]);
            }
            check_finite(next, n + 1);
        }
        x.push_back(next);
        f.push_back(rhs(next));
    }
    return x;
}

} // namespace detail

// Solves ^C D^sigma X = F(X) for the predator-prey system on t_i = i*h.
inline Trajectory caputo_solve(const ModelParams& m, const FractionalConfig& cfg, const State& s0) {
    cfg.validate();
    if (!is_finite(s0)) {
        throw DomainError("caputo_solve: non-finite initial state");
    }
    const SchemeConfig sc = cfg.as_scheme_config();
    const std::size_t steps = sc.steps();
    auto rhs = [&](const std::array<double, 2>& x) {
        if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
            return std::array<double, 2>{x[0], x[1]};
        }
        const State r = vector_field(m, {x[0], x[1]});
        return std::array<double, 2>{r.d, r.l};
    };
    const auto xs = detail::predictor_corrector<2>(rhs, {s0.d, s0.l}, cfg.sigma, cfg.h, steps,
                                                   cfg.corrector_passes);
    Trajectory traj;
    traj.scheme = Scheme::Fractional;
    traj.params = m;
    traj.config = sc;
    traj.times.reserve(xs.size());
    traj.states.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        traj.times.push_back(static_cast<double>(i) * cfg.h);
        traj.states.push_back({xs[i][0], xs[i][1]});
    }
    traj.states.front() = s0;
    return traj;
}

// Solves ^C D^sigma y = lambda y with the same machinery; the exact solution is
// y0 * E_sigma(lambda t^sigma). Returns y at t_i = i*h.
inline std::vector<double> scalar_caputo_solve(double lambda, double sigma, double y0, double h,
                                               double t_end, int corrector_passes = 1) {
    const FractionalConfig cfg{sigma, h, t_end, corrector_passes};
    cfg.validate();
    if (!std::isfinite(lambda) || !std::isfinite(y0)) {
        throw DomainError("scalar_caputo_solve: non-finite coefficient or initial value");
    }
    const auto xs = detail::predictor_corrector<1>(
        [lambda](const std::array<double, 1>& y) { return std::array<double, 1>{lambda * y[0]}; },
        {y0}, sigma, h, cfg.as_scheme_config().steps(), corrector_passes);
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& y : xs) {
        out.push_back(y[0]);
    }
    return out;
}

// Bound on the total population W = D + L of the fractional system:
// W(t) <= (A/beta)(1 - E_s(-beta t^s)) + W(0) E_s(-beta t^s) <= W(0) + A/beta,
// where A = (alpha + 4 beta) M / 4 and M = max{D(0), C}.
struct ConservationBound {
    double w0;
    double m;
    double a;
    double beta;
    double bound; // W(0) + A/beta

    // Time-resolved envelope. Requires beta t^sigma <= 50 (Mittag-Leffler range).
    double envelope(double sigma, double t) const {
        if (t == 0.0) {
            return w0;
        }
        const double e = mittag_leffler(sigma, -beta * std::pow(t, sigma));
        return (a / beta) * (1.0 - e) + w0 * e;
    }

    double asymptote() const { return a / beta; }
};

inline double scale_constant_m(const ModelParams& params, const State& s0) {
    return std::max(s0.d, params.capacity());
}

inline ConservationBound fractional_conservation_bound(const ModelParams& params, double w0, double m) {
    const double a = (params.alpha() + 4.0 * params.beta()) / 4.0 * m;
    return {w0, m, a, params.beta(), w0 + a / params.beta()};
}

} // namespace lvfrac

#endif // LVFRAC_FRACTIONAL_HPP
