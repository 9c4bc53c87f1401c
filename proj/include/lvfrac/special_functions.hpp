#ifndef LVFRAC_SPECIAL_FUNCTIONS_HPP
#define LVFRAC_SPECIAL_FUNCTIONS_HPP

// Gamma, Beta and the two-parameter Mittag-Leffler function on real arguments.

#include <lvfrac/errors.hpp>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace lvfrac {

// Largest argument for which Gamma is finite in double precision.
inline constexpr double kGammaMaxArgument = 171.6243769563027;

inline double gamma(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("gamma: argument must be a finite positive real, got " + std::to_string(z));
    }
    if (z > kGammaMaxArgument) {
        throw RangeError("gamma: overflow for z = " + std::to_string(z));
    }
    return std::tgamma(z);
}

// B(z, w) = Gamma(z) Gamma(w) / Gamma(z + w). Symmetric bit for bit: the
// numerator is a single commutative product.
inline double beta(double z, double w) {
    if (!(z > 0.0) || !(w > 0.0) || !std::isfinite(z) || !std::isfinite(w)) {
        throw DomainError("beta: arguments must be finite positive reals");
    }
    if (z + w <= kGammaMaxArgument) {
        return (std::tgamma(z) * std::tgamma(w)) / std::tgamma(z + w);
    }
    return std::exp((std::lgamma(z) + std::lgamma(w)) - std::lgamma(z + w));
}

struct MLSeriesConfig {
    double abs_tol = 1e-14;
    int max_terms = 10000;
};

// Largest |z| accepted by mittag_leffler.
inline constexpr double kMittagLefflerMaxAbsArgument = 50.0;

namespace detail {

using ExtendedFloat = boost::multiprecision::cpp_bin_float_100;

// Decimal digits carried by ExtendedFloat minus a safety margin for the result.
inline constexpr double kExtendedUsableDigits = 80.0;

struct SeriesPlan {
    int terms = 1;           // number of terms to sum (k = 0 .. terms-1)
    double peak_log10 = 0.0; // log10 of the largest term magnitude
};

// Scans log|z^k / Gamma(a k + b)| to decide where the series can be cut: the
// term magnitude must be below tol for three consecutive k, and k must be past
// the largest term so a small early term on the rising side does not stop it.
inline SeriesPlan plan_series(double a, double b, double z, const MLSeriesConfig& cfg) {
    SeriesPlan plan;
    const double log_tol = std::log(cfg.abs_tol);
    if (z == 0.0) {
        plan.peak_log10 = -std::lgamma(b) / std::log(10.0);
        return plan;
    }
    const double log_abs_z = std::log(std::abs(z));
    double peak = -std::lgamma(b);
    double previous = peak;
    bool past_peak = false;
    int small_run = 0;
    for (int k = 0; k < cfg.max_terms; ++k) {
        const double log_term = k * log_abs_z - std::lgamma(a * k + b);
        peak = std::max(peak, log_term);
        if (k > 0 && log_term < previous) {
            past_peak = true;
        }
        previous = log_term;
        small_run = log_term < log_tol ? small_run + 1 : 0;
        if (small_run >= 3 && past_peak) {
            plan.terms = k + 1;
            plan.peak_log10 = peak / std::log(10.0);
            return plan;
        }
    }
    throw IterationLimitError("mittag_leffler: series did not reach tolerance within " +
                              std::to_string(cfg.max_terms) + " terms");
}

// Neumaier-compensated sum of terms visited in descending magnitude.
inline long double compensated_sum(std::vector<long double> terms) {
    std::sort(terms.begin(), terms.end(),
              [](long double x, long double y) { return std::abs(x) > std::abs(y); });
    long double sum = 0.0L;
    long double carry = 0.0L;
    for (long double t : terms) {
        const long double next = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            carry += (sum - next) + t;
        } else {
            carry += (t - next) + sum;
        }
        sum = next;
    }
    return sum + carry;
}

inline double series_long_double(double a, double b, double z, int terms) {
    std::vector<long double> values;
    values.reserve(static_cast<std::size_t>(terms));
    const long double az = std::abs(static_cast<long double>(z));
    const long double log_abs_z = z == 0.0 ? 0.0L : std::log(az);
    for (int k = 0; k < terms; ++k) {
        if (k > 0 && z == 0.0) {
            break;
        }
        const long double arg = static_cast<long double>(a) * k + b;
        const long double magnitude = std::exp(k * log_abs_z - std::lgamma(arg));
        values.push_back((z < 0.0 && (k % 2 == 1)) ? -magnitude : magnitude);
    }
    return static_cast<double>(compensated_sum(std::move(values)));
}

// For negative z with large terms the alternating series cancels many digits;
// the terms and the sum are carried in ~100-digit binary floating point.
inline double series_extended(double a, double b, double z, int terms) {
    const ExtendedFloat ea(a);
    const ExtendedFloat eb(b);
    const ExtendedFloat ez(z);
    ExtendedFloat power(1);
    ExtendedFloat sum(0);
    for (int k = 0; k < terms; ++k) {
        sum += power / boost::math::tgamma(ea * k + eb);
        power *= ez;
    }
    return static_cast<double>(sum);
}

} // namespace detail

// E_{a,b}(z) = sum_{k>=0} z^k / Gamma(a k + b), by truncated series.
// Accepts |z| <= 50; for negative z the cancellation must also fit the
// extended working precision, which excludes small a at large |z|.
inline double mittag_leffler(double a, double b, double z, const MLSeriesConfig& cfg = {}) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z)) {
        throw DomainError("mittag_leffler: requires finite a > 0, b > 0 and finite z");
    }
    if (!(cfg.abs_tol > 0.0) || cfg.max_terms < 1) {
        throw DomainError("mittag_leffler: abs_tol must be > 0 and max_terms >= 1");
    }
    if (std::abs(z) > kMittagLefflerMaxAbsArgument) {
        throw RangeError("mittag_leffler: |z| = " + std::to_string(std::abs(z)) +
                         " exceeds the supported range |z| <= 50");
    }
    const detail::SeriesPlan plan = detail::plan_series(a, b, z, cfg);
    double value = 0.0;
    if (z < 0.0 && plan.peak_log10 > 2.0) {
        // Alternating series with large terms: carry ~17 digits below the result
        // floor on top of the cancelled ones, and cut the tail far below abs_tol
        // so truncation does not push tiny results (E_1(-40) ~ 4e-18) negative.
        if (plan.peak_log10 + 20.0 > detail::kExtendedUsableDigits) {
            throw RangeError("mittag_leffler: cancellation of 10^" +
                             std::to_string(static_cast<int>(plan.peak_log10)) +
                             " exceeds the working precision");
        }
        MLSeriesConfig tail = cfg;
        tail.abs_tol = std::min(cfg.abs_tol, 1e-30);
        value = detail::series_extended(a, b, z, detail::plan_series(a, b, z, tail).terms);
    } else {
        value = detail::series_long_double(a, b, z, plan.terms);
    }
    if (!std::isfinite(value)) {
        throw RangeError("mittag_leffler: result overflows double");
    }
    return value;
}

// One-parameter form E_a(z) = E_{a,1}(z).
inline double mittag_leffler(double a, double z, const MLSeriesConfig& cfg = {}) {
    return mittag_leffler(a, 1.0, z, cfg);
}

} // namespace lvfrac

#endif // LVFRAC_SPECIAL_FUNCTIONS_HPP
