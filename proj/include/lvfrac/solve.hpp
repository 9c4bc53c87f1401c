#ifndef LVFRAC_SOLVE_HPP
#define LVFRAC_SOLVE_HPP

#include <lvfrac/classical.hpp>
#include <lvfrac/fractional.hpp>
#include <lvfrac/trajectory.hpp>

namespace lvfrac {

// Dispatches to iterate() or caputo_solve() by cfg.scheme.
inline Trajectory solve(const ModelParams& m, const SchemeConfig& cfg, const State& s0) {
    if (cfg.scheme == Scheme::Fractional) {
        return caputo_solve(m, FractionalConfig{cfg.sigma, cfg.h, cfg.t_end, cfg.corrector_passes}, s0);
    }
    return iterate(m, cfg, s0);
}

} // namespace lvfrac

#endif // LVFRAC_SOLVE_HPP
