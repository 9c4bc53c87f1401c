#ifndef LVFRAC_STABILITY_HPP
#define LVFRAC_STABILITY_HPP

// Local stability of the three equilibria under each formulation.
//
// Continuous and fractional systems use the Routh-Hurwitz test on the
// characteristic polynomial of the vector-field Jacobian. The fractional case
// reuses the continuous criterion as-is; the stricter Matignon condition
// |arg(lambda)| > sigma*pi/2 is not applied. Euler and Mickens maps use the
// Schur-Cohn (Jury) test for roots inside the unit circle.

#include <lvfrac/classical.hpp>
#include <lvfrac/errors.hpp>
#include <lvfrac/model.hpp>
#include <lvfrac/trajectory.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lvfrac {

using Matrix2 = std::array<std::array<double, 2>, 2>;

// c2 x^2 + c1 x + c0
struct Quadratic {
    double c2 = 1.0;
    double c1 = 0.0;
    double c0 = 0.0;

    double operator()(double x) const { return (c2 * x + c1) * x + c0; }

    Quadratic monic() const {
        if (c2 == 0.0) {
            throw UsageError("quadratic criterion: leading coefficient is zero");
        }
        return {1.0, c1 / c2, c0 / c2};
    }
};

// det(J - x I) = x^2 - tr(J) x + det(J)
inline Quadratic characteristic_polynomial(const Matrix2& j) {
    const double trace = j[0][0] + j[1][1];
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    return {1.0, -trace, det};
}

inline std::array<std::complex<double>, 2> roots(const Quadratic& q) {
    const Quadratic m = q.monic();
    const double disc = m.c1 * m.c1 - 4.0 * m.c0;
    if (disc >= 0.0) {
        // Avoid cancellation in the smaller-magnitude root.
        const double s = std::sqrt(disc);
        const double big = -0.5 * (m.c1 + std::copysign(s, m.c1));
        if (big == 0.0) {
            return {std::complex<double>(0.0), std::complex<double>(0.0)};
        }
        return {std::complex<double>(big), std::complex<double>(m.c0 / big)};
    }
    const double re = -0.5 * m.c1;
    const double im = 0.5 * std::sqrt(-disc);
    return {std::complex<double>(re, im), std::complex<double>(re, -im)};
}

// Criterion predicates within this distance of zero are treated as boundary
// cases (the tests are strict inequalities).
inline constexpr double kCriterionBoundaryTol = 1e-9;

struct Predicate {
    std::string name;
    double value; // holds iff value > 0
    bool holds() const { return value > 0.0; }
    bool on_boundary() const { return std::abs(value) < kCriterionBoundaryTol; }
};

struct CriterionResult {
    bool stable = false;   // every predicate strictly positive
    bool boundary = false; // some predicate within kCriterionBoundaryTol of zero
    std::vector<Predicate> predicates;
};

// All roots of q in the open left half-plane iff (after making c2 > 0) c1 > 0 and c0 > 0.
inline CriterionResult routh_hurwitz_quadratic(const Quadratic& q) {
    if (q.c2 == 0.0) {
        throw UsageError("routh_hurwitz_quadratic: leading coefficient is zero");
    }
    const Quadratic m = q.monic();
    CriterionResult r;
    r.predicates = {{"c1 > 0", m.c1}, {"c0 > 0", m.c0}};
    r.stable = true;
    for (const auto& p : r.predicates) {
        r.stable = r.stable && p.holds();
        r.boundary = r.boundary || p.on_boundary();
    }
    return r;
}

// All roots of q strictly inside the unit circle iff, for the monic form,
// P(1) > 0, P(-1) > 0 and |P(0)| < 1. The third predicate is reported as 1 - |P(0)|.
inline CriterionResult schur_cohn_quadratic(const Quadratic& q) {
    const Quadratic m = q.monic();
    CriterionResult r;
    r.predicates = {{"P(1) > 0", m(1.0)}, {"P(-1) > 0", m(-1.0)}, {"|P(0)| < 1", 1.0 - std::abs(m.c0)}};
    r.stable = true;
    for (const auto& p : r.predicates) {
        r.stable = r.stable && p.holds();
        r.boundary = r.boundary || p.on_boundary();
    }
    return r;
}

// [[alpha(1 - 2D/C) - pL, -pD], [pL, pD - beta]]
inline Matrix2 jacobian_continuous(const ModelParams& m, const State& s) {
    return {{{m.alpha() * (1.0 - 2.0 * s.d / m.capacity()) - m.p() * s.l, -m.p() * s.d},
             {m.p() * s.l, m.p() * s.d - m.beta()}}};
}

// I + h J_continuous, entry by entry as in the linearized Euler map.
inline Matrix2 jacobian_euler(const ModelParams& m, double h, const State& s) {
    const double ph = m.p() * h;
    return {{{m.alpha() * h * (1.0 - 2.0 * s.d / m.capacity()) - ph * s.l + 1.0, -ph * s.d},
             {ph * s.l, ph * s.d - m.beta() * h + 1.0}}};
}

// Derivative of the Mickens map (D, L) -> (D', L'), with
// den = 1 + p phi L + alpha phi D / C.
inline Matrix2 jacobian_mickens(const ModelParams& m, double h, const State& s) {
    const double phi = denominator_phi(m.beta(), h);
    const double xi = 1.0 + m.alpha() * phi;
    const double pp = m.p() * phi;
    const double bp = 1.0 + m.beta() * phi;
    const double adc = m.alpha() * phi * s.d / m.capacity();
    const double den = 1.0 + pp * s.l + adc;
    const double den2 = den * den;
    const double ddd = xi * (1.0 + pp * s.l) / den2;
    const double ddl = -xi * pp * s.d / den2;
    return {{{ddd, ddl},
             {pp * s.l * ddd / bp, (1.0 + pp * xi * s.d * (1.0 + adc) / den2) / bp}}};
}

// Largest step for which the Euler E3 polynomial satisfies |P(0)| < 1:
// h2 = 1 / (pC - beta).
inline double euler_step_bound(const ModelParams& m) {
    const double gap = m.p() * m.capacity() - m.beta();
    if (!(gap > 0.0)) {
        throw ConfigError("euler_step_bound: requires pC > beta (interior equilibrium does not exist)");
    }
    return 1.0 / gap;
}

enum class Classification { Saddle, Sink, Source, NonHyperbolic, OutOfCriterion };

inline std::string_view to_string(Classification c) {
    switch (c) {
    case Classification::Saddle: return "Saddle";
    case Classification::Sink: return "Sink";
    case Classification::Source: return "Source";
    case Classification::NonHyperbolic: return "NonHyperbolic";
    case Classification::OutOfCriterion: return "OutOfCriterion";
    }
    return "?";
}

struct StabilityReport {
    Equilibrium equilibrium;
    Scheme scheme = Scheme::Reference;
    Matrix2 jacobian{};
    Quadratic char_poly;
    std::array<std::complex<double>, 2> eigenvalues{};
    Classification classification = Classification::OutOfCriterion;
    CriterionResult criterion;
    std::optional<double> step_bound;
};

inline bool is_discrete(Scheme s) { return s == Scheme::Euler || s == Scheme::Mickens; }

namespace detail {

// Signed distance of a root from the stability boundary: negative inside.
inline double boundary_offset(Scheme scheme, std::complex<double> z) {
    return is_discrete(scheme) ? std::abs(z) - 1.0 : z.real();
}

inline Classification classify_roots(Scheme scheme, const CriterionResult& crit,
                                     const std::array<std::complex<double>, 2>& eig) {
    if (crit.boundary) {
        return Classification::NonHyperbolic;
    }
    if (crit.stable) {
        return Classification::Sink;
    }
    int inside = 0;
    int outside = 0;
    for (const auto& z : eig) {
        const double off = boundary_offset(scheme, z);
        if (std::abs(off) < kCriterionBoundaryTol) {
            return Classification::NonHyperbolic;
        }
        (off < 0.0 ? inside : outside) += 1;
    }
    if (inside == 1 && outside == 1) {
        return Classification::Saddle;
    }
    if (outside == 2) {
        return Classification::Source;
    }
    // Both roots inside by modulus but the criterion failed: only reachable
    // through rounding right at the boundary.
    return Classification::NonHyperbolic;
}

} // namespace detail

// scheme_parameter is h for Euler/Mickens, sigma for the fractional system,
// and ignored for the continuous model.
inline StabilityReport analyze_equilibrium(const ModelParams& m, Scheme scheme, double scheme_parameter,
                                           const Equilibrium& eq) {
    StabilityReport r;
    r.equilibrium = eq;
    r.scheme = scheme;
    switch (scheme) {
    case Scheme::Reference:
    case Scheme::Fractional: r.jacobian = jacobian_continuous(m, eq.point); break;
    case Scheme::Euler: r.jacobian = jacobian_euler(m, scheme_parameter, eq.point); break;
    case Scheme::Mickens: r.jacobian = jacobian_mickens(m, scheme_parameter, eq.point); break;
    }
    r.char_poly = characteristic_polynomial(r.jacobian);
    r.eigenvalues = roots(r.char_poly);
    r.criterion = is_discrete(scheme) ? schur_cohn_quadratic(r.char_poly)
                                      : routh_hurwitz_quadratic(r.char_poly);
    if (!eq.exists) {
        r.classification = Classification::OutOfCriterion;
    } else {
        r.classification = detail::classify_roots(scheme, r.criterion, r.eigenvalues);
    }
    if (scheme == Scheme::Euler && eq.label == EquilibriumLabel::E3 && eq.exists) {
        r.step_bound = euler_step_bound(m);
    }
    return r;
}

inline std::vector<StabilityReport> classify(const ModelParams& m, Scheme scheme, double scheme_parameter) {
    if (is_discrete(scheme) && !(scheme_parameter > 0.0)) {
        throw ConfigError("classify: discrete schemes need a positive step size");
    }
    if (scheme == Scheme::Fractional && !(scheme_parameter > 0.0 && scheme_parameter <= 1.0)) {
        throw DomainError("classify: fractional order must lie in (0, 1]");
    }
    std::vector<StabilityReport> out;
    for (const auto& eq : equilibria(m)) {
        out.push_back(analyze_equilibrium(m, scheme, scheme_parameter, eq));
    }
    return out;
}

} // namespace lvfrac

#endif // LVFRAC_STABILITY_HPP
