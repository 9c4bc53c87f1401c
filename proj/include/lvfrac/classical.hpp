#ifndef LVFRAC_CLASSICAL_HPP
#define LVFRAC_CLASSICAL_HPP

// Integer-order time steppers: RK4 reference, explicit Euler, and the Mickens
// nonstandard finite-difference map.

#include <lvfrac/errors.hpp>
#include <lvfrac/model.hpp>
#include <lvfrac/trajectory.hpp>

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

namespace lvfrac {

// Denominator function phi(h) = (1 - exp(-beta h)) / beta, evaluated with
// expm1 so small beta*h keeps full precision. phi(h) -> h as beta -> 0.
inline double denominator_phi(double beta, double h) {
    if (beta == 0.0) {
        return h;
    }
    return -std::expm1(-beta * h) / beta;
}

struct MickensAux {
    double phi; // denominator function value
    double xi;  // 1 + alpha*phi
};

inline MickensAux mickens_aux(const ModelParams& m, double h) {
    const double phi = denominator_phi(m.beta(), h);
    return {phi, 1.0 + m.alpha() * phi};
}

// D' = D (alpha h (1 - D/C) - p h L + 1),  L' = L (p h D - beta h + 1).
// Not clamped: negative populations are the failure mode being studied.
inline State euler_step(const ModelParams& m, double h, const State& s) {
    const double a = m.alpha() * h;
    const double ph = m.p() * h;
    return {s.d * (a * (1.0 - s.d / m.capacity()) - ph * s.l + 1.0),
            s.l * (ph * s.d - m.beta() * h + 1.0)};
}

// D' = (alpha phi + 1) D / (1 + p phi L + alpha phi D / C)
// L' = (p phi D' + 1) L / (1 + beta phi)
// The predator update uses the already-updated prey value D'.
inline State mickens_step(const ModelParams& m, double h, const State& s) {
    const double phi = denominator_phi(m.beta(), h);
    const double ap = m.alpha() * phi;
    const double pp = m.p() * phi;
    const double d_next = (ap + 1.0) * s.d / (1.0 + pp * s.l + ap * s.d / m.capacity());
    const double l_next = (pp * d_next + 1.0) * s.l / (1.0 + m.beta() * phi);
    return {d_next, l_next};
}

// Classical fourth-order Runge-Kutta step of the vector field.
inline State rk4_step(const ModelParams& m, double h, const State& s) {
    auto axpy = [](const State& x, double a, const State& k) {
        return State{x.d + a * k.d, x.l + a * k.l};
    };
    const State k1 = vector_field(m, s);
    const State k2 = vector_field(m, axpy(s, 0.5 * h, k1));
    const State k3 = vector_field(m, axpy(s, 0.5 * h, k2));
    const State k4 = vector_field(m, axpy(s, h, k3));
    return {s.d + h / 6.0 * (k1.d + 2.0 * k2.d + 2.0 * k3.d + k4.d),
            s.l + h / 6.0 * (k1.l + 2.0 * k2.l + 2.0 * k3.l + k4.l)};
}

namespace detail {

template <class Stepper>
Trajectory run_fixed_step(const ModelParams& m, const SchemeConfig& cfg, const State& s0,
                          Stepper&& step) {
    cfg.validate();
    Trajectory traj;
    traj.scheme = cfg.scheme;
    traj.params = m;
    traj.config = cfg;
    const std::size_t n = cfg.steps();
    traj.times.reserve(n + 1);
    traj.states.reserve(n + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(s0);
    State s = s0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i) * cfg.h;
        try {
            s = step(s);
        } catch (const DomainError&) {
            // vector_field rejects non-finite intermediate stages
            throw DivergenceError(std::string(to_string(cfg.scheme)) +
                                      ": non-finite state at step " + std::to_string(i) +
                                      " (t = " + std::to_string(t) + ")",
                                  t, i);
        }
        if (!is_finite(s)) {
            throw DivergenceError(std::string(to_string(cfg.scheme)) +
                                      ": non-finite state at step " + std::to_string(i) +
                                      " (t = " + std::to_string(t) + ")",
                                  t, i);
        }
        traj.times.push_back(t);
        traj.states.push_back(s);
    }
    return traj;
}

} // namespace detail

// Ground-truth trajectory for scheme comparisons: fixed-step RK4 on the
// uniform grid t_i = i*h.
inline Trajectory reference_solve(const ModelParams& m, const State& s0, double t_end, double h) {
    SchemeConfig cfg{Scheme::Reference, h, t_end};
    return detail::run_fixed_step(m, cfg, s0, [&](const State& s) { return rk4_step(m, h, s); });
}

// Applies the selected integer-order stepper ceil(t_end/h) times and records
// every state. Fractional configurations go through caputo_solve instead.
inline Trajectory iterate(const ModelParams& m, const SchemeConfig& cfg, const State& s0) {
    const double h = cfg.h;
    switch (cfg.scheme) {
    case Scheme::Reference:
        return detail::run_fixed_step(m, cfg, s0, [&](const State& s) { return rk4_step(m, h, s); });
    case Scheme::Euler: {
        Trajectory traj = detail::run_fixed_step(
            m, cfg, s0, [&](const State& s) { return euler_step(m, h, s); });
        if (m.is_validated() && !(1.0 - m.beta() * h > 0.0)) {
            traj.warnings.push_back("H1 violated: 1 - beta*h = " +
                                    std::to_string(1.0 - m.beta() * h) + " <= 0");
        }
        return traj;
    }
    case Scheme::Mickens:
        return detail::run_fixed_step(m, cfg, s0,
                                      [&](const State& s) { return mickens_step(m, h, s); });
    case Scheme::Fractional:
        break;
    }
    throw UsageError("iterate: fractional scheme requires caputo_solve");
}

} // namespace lvfrac

#endif // LVFRAC_CLASSICAL_HPP
