#ifndef LVFRAC_INVARIANTS_HPP
#define LVFRAC_INVARIANTS_HPP

// Pointwise checks of non-negativity and feasible-region membership.
//
// The region theorems bound W = D + L asymptotically (limsup) or via an
// envelope that moves monotonically from W(0) towards the bound, so on a
// finite trajectory the checked condition is W <= max(bound, W(0)) + tol.

#include <lvfrac/classical.hpp>
#include <lvfrac/errors.hpp>
#include <lvfrac/fractional.hpp>
#include <lvfrac/model.hpp>
#include <lvfrac/trajectory.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace lvfrac {

enum class BoundKind { ContinuousOmega, EulerOmega, MickensOmega, FractionalOmega };

inline std::string_view to_string(BoundKind k) {
    switch (k) {
    case BoundKind::ContinuousOmega: return "ContinuousOmega";
    case BoundKind::EulerOmega: return "EulerOmega";
    case BoundKind::MickensOmega: return "MickensOmega";
    case BoundKind::FractionalOmega: return "FractionalOmega";
    }
    return "?";
}

inline constexpr double kNegativityTol = 1e-12;

struct RegionSpec {
    Scheme scheme = Scheme::Reference;
    BoundKind bound_kind = BoundKind::ContinuousOmega;
    double numeric_bound = 0.0;          // bound on W = D + L
    std::optional<double> d_bound;       // bound on D, when the theorem gives one
    std::optional<double> aux_w_bound;   // Euler: W_n <= (1 + alpha h)/(p h) keeps D_{n+1} >= 0
    double tolerance = 1e-9;
};

struct ViolationReport {
    std::string trajectory_id;
    std::optional<std::size_t> first_violation_index;
    std::string violated_quantity;
    double observed = 0.0;
    double bound = 0.0;

    bool ok() const { return !first_violation_index.has_value(); }
};

// D <= M and D + L <= ((alpha + 4 beta) / (4 beta)) M with M = max{D(0), C}.
inline RegionSpec continuous_region(const ModelParams& m, const State& s0) {
    const double big_m = std::max(s0.d, m.capacity());
    RegionSpec r;
    r.scheme = Scheme::Reference;
    r.bound_kind = BoundKind::ContinuousOmega;
    r.numeric_bound = (m.alpha() + 4.0 * m.beta()) / (4.0 * m.beta()) * big_m;
    r.d_bound = big_m;
    return r;
}

// W_n <= C, valid under H1 (1 - beta h > 0).
inline RegionSpec euler_region(const ModelParams& m, double h) {
    const double h1 = 1.0 - m.beta() * h;
    if (!(h1 > 0.0)) {
        throw ConfigError("euler_region: H1 requires 1 - beta*h > 0, got " + std::to_string(h1));
    }
    RegionSpec r;
    r.scheme = Scheme::Euler;
    r.bound_kind = BoundKind::EulerOmega;
    r.numeric_bound = m.capacity();
    r.aux_w_bound = (1.0 + m.alpha() * h) / (m.p() * h);
    return r;
}

// C = 1 only: D_n <= 1 and limsup W_n <= (4 alpha^2 + xi beta^2) / (4 alpha beta),
// xi = 1 + alpha phi(h).
inline RegionSpec mickens_region(const ModelParams& m, double h) {
    if (m.capacity() != 1.0) {
        throw ConfigError("mickens_region: the bound is only established for C = 1");
    }
    const double xi = mickens_aux(m, h).xi;
    RegionSpec r;
    r.scheme = Scheme::Mickens;
    r.bound_kind = BoundKind::MickensOmega;
    r.numeric_bound = (4.0 * m.alpha() * m.alpha() + xi * m.beta() * m.beta()) /
                      (4.0 * m.alpha() * m.beta());
    r.d_bound = 1.0;
    return r;
}

// W(t) <= W(0) + A/beta, A = (alpha + 4 beta) M / 4.
inline RegionSpec fractional_region(const ModelParams& m, const State& s0) {
    const auto cb = fractional_conservation_bound(m, s0.d + s0.l, scale_constant_m(m, s0));
    RegionSpec r;
    r.scheme = Scheme::Fractional;
    r.bound_kind = BoundKind::FractionalOmega;
    r.numeric_bound = cb.bound;
    return r;
}

// The region matching the trajectory's scheme, built from its own params,
// step size and initial state.
inline RegionSpec region_for(const Trajectory& traj) {
    switch (traj.scheme) {
    case Scheme::Reference: return continuous_region(traj.params, traj.initial());
    case Scheme::Euler: return euler_region(traj.params, traj.config.h);
    case Scheme::Mickens: return mickens_region(traj.params, traj.config.h);
    case Scheme::Fractional: return fractional_region(traj.params, traj.initial());
    }
    throw UsageError("region_for: unknown scheme");
}

inline ViolationReport check_trajectory(const Trajectory& traj, const RegionSpec& region,
                                        std::string trajectory_id = {}) {
    if (traj.scheme != region.scheme) {
        throw UsageError("check_trajectory: region for " + std::string(to_string(region.scheme)) +
                         " applied to a " + std::string(to_string(traj.scheme)) + " trajectory");
    }
    ViolationReport report;
    report.trajectory_id = trajectory_id.empty() ? std::string(to_string(traj.scheme)) : std::move(trajectory_id);
    if (traj.states.empty()) {
        return report;
    }
    const State& s0 = traj.initial();
    const double w_limit = std::max(region.numeric_bound, s0.d + s0.l) + region.tolerance;
    const bool has_d_limit = region.d_bound.has_value();
    const double d_limit = has_d_limit ? std::max(*region.d_bound, s0.d) + region.tolerance : 0.0;

    auto flag = [&](std::size_t i, std::string what, double observed, double bound) {
        report.first_violation_index = i;
        report.violated_quantity = std::move(what);
        report.observed = observed;
        report.bound = bound;
    };

    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const State& s = traj.states[i];
        const double w = s.d + s.l;
        if (!(s.d >= -kNegativityTol)) {
            flag(i, "D >= 0", s.d, 0.0);
        } else if (!(s.l >= -kNegativityTol)) {
            flag(i, "L >= 0", s.l, 0.0);
        } else if (has_d_limit && !(s.d <= d_limit)) {
            flag(i, "D <= D-bound", s.d, d_limit);
        } else if (!(w <= w_limit)) {
            flag(i, "D + L <= W-bound", w, w_limit);
        } else if (region.aux_w_bound && !(w <= *region.aux_w_bound)) {
            flag(i, "D + L <= (1 + alpha h)/(p h)", w, *region.aux_w_bound);
        }
        if (report.first_violation_index) {
            break;
        }
    }
    return report;
}

} // namespace lvfrac

#endif // LVFRAC_INVARIANTS_HPP
