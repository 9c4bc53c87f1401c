#ifndef LVFRAC_LVFRAC_HPP
#define LVFRAC_LVFRAC_HPP

#include <lvfrac/classical.hpp>
#include <lvfrac/errors.hpp>
#include <lvfrac/fractional.hpp>
#include <lvfrac/invariants.hpp>
#include <lvfrac/io.hpp>
#include <lvfrac/model.hpp>
#include <lvfrac/runner.hpp>
#include <lvfrac/solve.hpp>
#include <lvfrac/special_functions.hpp>
#include <lvfrac/stability.hpp>
#include <lvfrac/trajectory.hpp>

#endif // LVFRAC_LVFRAC_HPP
