#include <lvfrac/classical.hpp>

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

using namespace lvfrac;
using Catch::Approx;

namespace {

ModelParams random_p1(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (;;) {
        std::array<double, 3> v{u(rng), u(rng), u(rng)};
        std::sort(v.begin(), v.end());
        if (v[0] < v[1] && v[1] < v[2]) {
            return ModelParams::validated(v[0], v[1], v[2], 1.0);
        }
    }
}

double fixed_point_residual(const State& a, const State& b) { return sup_distance(a, b); }

} // namespace

TEST_CASE("denominator function", "[classical]") {
    CHECK(denominator_phi(0.3, 0.25) == Approx((1.0 - std::exp(-0.075)) / 0.3).epsilon(1e-14));
    CHECK(denominator_phi(0.3, 0.25) == Approx(0.24085504557149036).epsilon(1e-15));
    CHECK(denominator_phi(0.0, 0.7) == 0.7);
    // Small beta*h keeps full precision.
    CHECK(denominator_phi(0.3, 1e-12) == Approx(1e-12).epsilon(1e-12));

    for (int i = 1; i <= 1000; ++i) {
        const double h = i / 1000.0;
        const double phi = denominator_phi(0.3, h);
        CHECK(phi > 0.0);
        CHECK(phi < h);
        CHECK(std::abs(phi - h) <= 0.3 / 2.0 * h * h);
    }

    const auto aux = mickens_aux(ModelParams::reference_set(), 0.25);
    CHECK(aux.xi == Approx(1.0120427522785745).epsilon(1e-14));
    for (double h : {0.01, 1.0, 10.0, 100.0}) {
        const double xi = mickens_aux(ModelParams::reference_set(), h).xi;
        CHECK(xi > 1.0);
        CHECK(xi < 2.0);
    }
}

TEST_CASE("euler_step examples", "[classical]") {
    const auto m = ModelParams::reference_set();
    const State next = euler_step(m, 0.25, {0.2, 0.3});
    // D (0.0125*0.8 - 0.1*0.3 + 1), L (0.1*0.2 - 0.075 + 1)
    CHECK(next.d == Approx(0.196).epsilon(1e-14));
    CHECK(next.l == Approx(0.2835).epsilon(1e-14));

    const State e3{0.75, 0.03125};
    CHECK(fixed_point_residual(euler_step(m, 0.25, e3), e3) <= 1e-15);
    CHECK(euler_step(m, 0.25, {0.0, 0.0}) == State{0.0, 0.0});
}

TEST_CASE("mickens_step examples", "[classical]") {
    const auto m = ModelParams::reference_set();
    const State next = mickens_step(m, 0.25, {0.2, 0.3});
    // 50-digit evaluation of the same rational map
    CHECK(next.d == Approx(0.19626331907009184).epsilon(1e-14));
    CHECK(next.l == Approx(0.28507406332501756).epsilon(1e-14));

    CHECK(mickens_step(m, 0.25, {0.0, 0.0}) == State{0.0, 0.0});
    const State e3 = interior_equilibrium(m).point;
    CHECK(fixed_point_residual(mickens_step(m, 0.25, e3), e3) <= 1e-14);
}

TEST_CASE("mickens predator update uses the updated prey value", "[classical]") {
    const auto m = ModelParams::reference_set();
    const double h = 2.0;
    const State s{0.4, 0.2};
    const double phi = denominator_phi(m.beta(), h);
    const State next = mickens_step(m, h, s);
    const double with_old_prey = (m.p() * phi * s.d + 1.0) * s.l / (1.0 + m.beta() * phi);
    const double with_new_prey = (m.p() * phi * next.d + 1.0) * s.l / (1.0 + m.beta() * phi);
    CHECK(next.l == Approx(with_new_prey).epsilon(1e-15));
    CHECK(std::abs(next.l - with_old_prey) > 1e-4);
}

TEST_CASE("reference_solve", "[classical]") {
    const auto m = ModelParams::reference_set();

    SECTION("starting at E3 stays there") {
        const State e3 = interior_equilibrium(m).point;
        const auto traj = reference_solve(m, e3, 300.0, 0.25);
        for (const auto& s : traj.states) {
            CHECK(sup_distance(s, e3) <= 1e-12);
        }
    }

    SECTION("without prey the predators die out") {
        const auto traj = reference_solve(m, {0.0, 0.5}, 300.0, 0.25);
        for (std::size_t i = 1; i < traj.size(); ++i) {
            CHECK(traj.states[i].d == 0.0);
            CHECK(traj.states[i].l < traj.states[i - 1].l);
        }
        CHECK(traj.final_state().l == Approx(0.5 * std::exp(-0.3 * 300.0)).epsilon(1e-4));
    }

    SECTION("matches a tight-tolerance adaptive integration") {
        // DOP853 at rtol 1e-13 from (0.2, 0.3)
        const auto t10 = reference_solve(m, {0.2, 0.3}, 10.0, 0.25);
        CHECK(t10.final_state().d == Approx(0.18790530704383065).margin(1e-7));
        CHECK(t10.final_state().l == Approx(0.030492839719537937).margin(1e-7));
        const auto traj = reference_solve(m, {0.2, 0.3}, 300.0, 0.25);
        CHECK(traj.final_state().d == Approx(0.7412722942874893).margin(1e-7));
        CHECK(traj.final_state().l == Approx(0.03230538661652543).margin(1e-7));

        const auto fine = reference_solve(m, {0.2, 0.3}, 300.0, 0.025);
        CHECK(sup_distance(traj.final_state(), fine.final_state()) <= 1e-7);
        // Still approaching E3 at t = 300: the spiral decays like exp(-0.01875 t).
        const double dist = sup_distance(traj.final_state(), interior_equilibrium(m).point);
        CHECK(dist < 1e-2);
        CHECK(dist < sup_distance(traj.states[800], interior_equilibrium(m).point));
    }

    SECTION("divergence is reported with its time") {
        const auto wild = ModelParams::unchecked(5.0, 0.3, 0.4, 1.0);
        try {
            reference_solve(wild, {1e150, 1e150}, 10.0, 0.25);
            FAIL("expected DivergenceError");
        } catch (const DivergenceError& e) {
            CHECK(e.time() > 0.0);
            CHECK(e.step() >= 1);
        }
    }
}

TEST_CASE("iterate", "[classical]") {
    const auto m = ModelParams::reference_set();
    const State s0{0.2, 0.3};
    const auto reference = reference_solve(m, s0, 300.0, 0.25);

    for (Scheme scheme : {Scheme::Euler, Scheme::Mickens}) {
        const auto traj = iterate(m, SchemeConfig{scheme, 0.25, 300.0}, s0);
        REQUIRE(traj.size() == 1201);
        CHECK(traj.states.front() == s0);
        CHECK(traj.times.back() == 300.0);
        CHECK(traj.scheme == scheme);
        for (std::size_t i = 1; i < traj.size(); ++i) {
            CHECK(traj.times[i] > traj.times[i - 1]);
        }
        // Both are attracted by E3 like the reference.
        CHECK(sup_distance(traj.final_state(), interior_equilibrium(m).point) < 1e-2);
    }
    const auto euler = iterate(m, SchemeConfig{Scheme::Euler, 0.25, 300.0}, s0);
    CHECK(sup_distance(euler.final_state(), reference.final_state()) < 2e-3);

    CHECK(iterate(m, SchemeConfig{Scheme::Mickens, 0.25, 0.25}, s0).size() == 2);
    CHECK(iterate(m, SchemeConfig{Scheme::Reference, 0.1, 1.0}, s0).size() == 11);
    // t_end not a multiple of h: the grid overshoots to ceil(t_end/h) steps
    CHECK(iterate(m, SchemeConfig{Scheme::Euler, 0.3, 1.0}, s0).size() == 5);

    CHECK_THROWS_AS(iterate(m, SchemeConfig{Scheme::Euler, 0.0, 1.0}, s0), ConfigError);
    CHECK_THROWS_AS(iterate(m, SchemeConfig{Scheme::Euler, 1.0, 0.5}, s0), ConfigError);
    CHECK_THROWS_AS(iterate(m, SchemeConfig{Scheme::Fractional, 0.1, 1.0, 0.9}, s0), UsageError);

    SECTION("H1 violation is flagged, not fixed") {
        const auto traj = iterate(m, SchemeConfig{Scheme::Euler, 4.0, 40.0}, s0);
        CHECK_FALSE(traj.warnings.empty());
        CHECK(iterate(m, SchemeConfig{Scheme::Euler, 0.25, 1.0}, s0).warnings.empty());
    }
}

TEST_CASE("euler step-size lemma needs h <= 1/(pC - alpha)", "[classical]") {
    // (1 + alpha h)/(p h) >= C rearranges to h (pC - alpha) <= 1, which H1
    // alone does not imply: h = 3.3 satisfies 1 - beta h > 0 here.
    const auto m = ModelParams::reference_set();
    const double h = 3.3;
    CHECK(1.0 - m.beta() * h > 0.0);
    CHECK((1.0 + m.alpha() * h) / (m.p() * h) == Approx(0.88257575757575757).epsilon(1e-14));
    CHECK((1.0 + m.alpha() * h) / (m.p() * h) < m.capacity());

    const double edge = 1.0 / (m.p() * m.capacity() - m.alpha());
    CHECK((1.0 + m.alpha() * edge) / (m.p() * edge) == Approx(m.capacity()).epsilon(1e-14));
}

TEST_CASE("euler non-negativity inside the feasible region", "[classical][property]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        const auto m = random_p1(rng);
        const double h_max = std::min(1.0 / m.beta(), 1.0 / (m.p() * m.capacity() - m.alpha()));
        const double h = (0.02 + 0.97 * u(rng)) * h_max;
        REQUIRE(1.0 - m.beta() * h > 0.0);
        const double aux = (1.0 + m.alpha() * h) / (m.p() * h);
        CHECK(aux >= m.capacity());

        State s{u(rng) * m.capacity(), u(rng) * m.capacity()};
        s.l = std::min(s.l, m.capacity() - s.d);
        for (int n = 0; n < 2000; ++n) {
            s = euler_step(m, h, s);
            CHECK(s.d >= 0.0);
            CHECK(s.l >= 0.0);
            CHECK(s.d + s.l <= m.capacity() + 1e-12);
        }
    }
}

TEST_CASE("mickens is unconditionally positive", "[classical][property]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto m = random_p1(rng);
        const double h = 100.0 * (1.0 - u(rng)); // (0, 100]
        State s{2.0 * u(rng), 2.0 * u(rng)};
        for (int n = 0; n < 200; ++n) {
            s = mickens_step(m, h, s);
            CHECK(s.d >= 0.0);
            CHECK(s.l >= 0.0);
        }
    }
}

TEST_CASE("mickens total population bound for C = 1", "[classical][property]") {
    const auto m = ModelParams::reference_set();
    const double xi = mickens_aux(m, 0.25).xi;
    const double bound = (4.0 * m.alpha() * m.alpha() + xi * m.beta() * m.beta()) / (4.0 * m.alpha() * m.beta());
    CHECK(bound == Approx(1.6847307950845284).epsilon(1e-14));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        State s{u(rng), u(rng)};
        const double w0 = s.d + s.l;
        double tail_max = 0.0;
        for (int n = 0; n < 4000; ++n) {
            s = mickens_step(m, 0.25, s);
            CHECK(s.d + s.l <= std::max(bound, w0) + 1e-12);
            if (n > 3000) tail_max = std::max(tail_max, s.d + s.l);
        }
        CHECK(tail_max <= bound);
    }
}

TEST_CASE("fixed points of the discrete maps are exactly E1, E2, E3", "[classical][oracle]") {
    const auto m = ModelParams::reference_set();
    const auto eq = equilibria(m);
    const double h = 0.25;
    using Step = State (*)(const ModelParams&, double, const State&);
    for (Step step : {static_cast<Step>(&euler_step), static_cast<Step>(&mickens_step)}) {
        for (const auto& e : eq) {
            CHECK(fixed_point_residual(step(m, h, e.point), e.point) <= 1e-14);
        }
        // Newton on G(x) = step(x) - x from a grid of starts; every root found
        // must be one of the three equilibria.
        int converged = 0;
        for (int i = 0; i <= 10; ++i) {
            for (int j = 0; j <= 10; ++j) {
                State x{0.1 * i * 1.2, 0.1 * j * 0.5};
                bool ok = false;
                for (int it = 0; it < 100; ++it) {
                    const State g0 = step(m, h, x);
                    const double gd = g0.d - x.d;
                    const double gl = g0.l - x.l;
                    if (std::max(std::abs(gd), std::abs(gl)) < 1e-15) {
                        ok = true;
                        break;
                    }
                    const double eps = 1e-7;
                    const State px = step(m, h, {x.d + eps, x.l});
                    const State pl = step(m, h, {x.d, x.l + eps});
                    const double a11 = (px.d - x.d - eps - gd) / eps;
                    const double a21 = (px.l - x.l - gl) / eps;
                    const double a12 = (pl.d - x.d - gd) / eps;
                    const double a22 = (pl.l - x.l - eps - gl) / eps;
                    const double det = a11 * a22 - a12 * a21;
                    if (std::abs(det) < 1e-300) break;
                    x.d -= (a22 * gd - a12 * gl) / det;
                    x.l -= (-a21 * gd + a11 * gl) / det;
                    if (!is_finite(x)) break;
                }
                if (!ok) continue;
                ++converged;
                const double nearest = std::min({sup_distance(x, eq[0].point), sup_distance(x, eq[1].point),
                                                 sup_distance(x, eq[2].point)});
                CHECK(nearest <= 1e-9);
            }
        }
        CHECK(converged > 50);
    }
}

TEST_CASE("euler converges at first order", "[classical]") {
    const auto m = ModelParams::reference_set();
    const State s0{0.2, 0.3};
    auto error_at = [&](double h) {
        const auto e = iterate(m, SchemeConfig{Scheme::Euler, h, 10.0}, s0);
        const auto r = reference_solve(m, s0, 10.0, h);
        return sup_distance(e.final_state(), r.final_state());
    };
    const double ratio = error_at(0.1) / error_at(0.05);
    CHECK(ratio >= 1.7);
    CHECK(ratio <= 2.3);
}
