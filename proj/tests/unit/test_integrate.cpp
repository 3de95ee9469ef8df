#include <cmath>

#include "biharm/integrate.hpp"
#include "doctest.h"

using namespace biharm;
using namespace biharm::ode;

namespace {

IntegratorControls controls_for(double rmax, double rel = 1e-10, double abs = 1e-12) {
    IntegratorControls c;
    c.rmax = rmax;
    c.rel_tol = rel;
    c.abs_tol = abs;
    return c;
}

// gamma-lemma shape checks shared by several cases
void check_gamma_lemma(const Trajectory& traj, double rel_tol) {
    const auto& s = traj.samples;
    REQUIRE(traj.termination.kind == TerminationKind::ReachedRmax);
    const double rmax = s.back().r;
    double min_u_r2 = 1e300;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double slack =
            10.0 * rel_tol * std::max({std::abs(s[i].v), std::abs(s[i + 1].v), 1.0});
        CHECK(s[i + 1].v >= s[i].v - slack);
    }
    for (const auto& p : s)
        if (p.r >= rmax / 10.0) {
            CHECK(p.v > 0.0);
            min_u_r2 = std::min(min_u_r2, p.u / (p.r * p.r));
        }
    CHECK(min_u_r2 > 0.0);
}

}  // namespace

TEST_SUITE("integrate") {

TEST_CASE("ode_rhs direct substitutions") {
    // n = 1 has no drift
    auto f1 = ode_rhs({1, -2.0}, {0.5, 2.0, 3.0, 4.0, 5.0});
    CHECK(f1[0] == 3.0);
    CHECK(f1[1] == 4.0);
    CHECK(f1[2] == 5.0);
    CHECK(f1[3] == doctest::Approx(std::pow(2.0, -2.0)));

    auto f2 = ode_rhs({3, 0.0}, {1.0, 1.0, 0.0, 1.0, 0.0});
    CHECK(f2[0] == 0.0);
    CHECK(f2[1] == 1.0);
    CHECK(f2[2] == 0.0);
    CHECK(f2[3] == 1.0);

    auto f3 = ode_rhs({2, -1.0}, {2.0, 4.0, 4.0, 1.0, 1.0});
    CHECK(f3[0] == 4.0);
    CHECK(f3[1] == doctest::Approx(1.0 - 1.0 * 4.0 / 2.0));   // -1
    CHECK(f3[2] == 1.0);
    CHECK(f3[3] == doctest::Approx(0.25 - 1.0 * 1.0 / 2.0));  // -0.25

    CHECK_THROWS_AS(ode_rhs({3, -1.0}, {1.0, -0.5, 0.0, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(ode_rhs({3, -1.0}, {0.0, 1.0, 0.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("alpha = 0 quartic oracle") {
    const auto traj = integrate({3, 0.0}, {1.0, 0.0}, controls_for(10.0));
    REQUIRE(traj.termination.kind == TerminationKind::ReachedRmax);
    const auto& last = traj.samples.back();
    CHECK(last.r == doctest::Approx(10.0).epsilon(1e-14));
    const double exact = 1.0 + 1e4 / 120.0;
    CHECK(last.u == doctest::Approx(exact).epsilon(1e-9));
    // first sample sits at the series handoff
    CHECK(traj.samples.front().r == doctest::Approx(traj.handoff_radius));
}

TEST_CASE("alpha = 1 closed form to r = 20") {
    const auto traj = integrate({3, 1.0}, {1.0, 1.0}, controls_for(20.0, 1e-12, 1e-14));
    REQUIRE(traj.termination.kind == TerminationKind::ReachedRmax);
    for (const auto& s : traj.samples)
        CHECK(s.u == doctest::Approx(std::sinh(s.r) / s.r).epsilon(1e-8));
}

TEST_CASE("oscillatory data loses positivity near pi") {
    const auto traj = integrate({3, 1.0}, {1.0, -1.0}, controls_for(10.0));
    REQUIRE(traj.termination.kind == TerminationKind::PositivityLost);
    CHECK(std::abs(traj.termination.r - M_PI) <= 1e-6);
    CHECK(traj.samples.back().u > 0.0);
}

TEST_CASE("renormalized path: ln sinh(800)/800") {
    const auto traj =
        integrate_linear_renormalized(3, {1.0, 1.0}, controls_for(800.0, 1e-12, 1e-14));
    REQUIRE(traj.termination.kind == TerminationKind::ReachedRmax);
    CHECK(traj.log_scale > 0.0);
    const double expected = 800.0 - std::log(1600.0);  // ln(1-e^{-1600}) = 0
    CHECK(traj.log_u(traj.samples.size() - 1) ==
          doctest::Approx(expected).epsilon(1e-10));
    CHECK(std::abs(traj.log_u(traj.samples.size() - 1) - expected) < 1e-7);
}

TEST_CASE("renormalized path: n = 1 cosh") {
    const auto traj =
        integrate_linear_renormalized(1, {1.0, 1.0}, controls_for(100.0, 1e-12, 1e-14));
    const double expected = 100.0 - std::log(2.0);
    CHECK(std::abs(traj.log_u(traj.samples.size() - 1) - expected) < 1e-7);
}

TEST_CASE("renormalized path: linearity shifts ln u by ln 2") {
    const auto a =
        integrate_linear_renormalized(3, {1.0, 1.0}, controls_for(300.0, 1e-11, 1e-13));
    const auto b =
        integrate_linear_renormalized(3, {2.0, 2.0}, controls_for(300.0, 1e-11, 1e-13));
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].r == doctest::Approx(b.samples[i].r).epsilon(1e-12));
        CHECK(b.log_u(i) - a.log_u(i) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    }
}

TEST_CASE("unrenormalized alpha = 1 overflows eventually") {
    const auto traj = integrate({3, 1.0}, {1.0, 1.0}, controls_for(800.0, 1e-10, 1e-12));
    CHECK(traj.termination.kind == TerminationKind::Overflow);
    CHECK(traj.termination.r < 800.0);
}

TEST_CASE("gamma-lemma shape on alpha < 1 trajectories") {
    check_gamma_lemma(integrate({3, -2.0}, {1.0, 0.5}, controls_for(1e3)), 1e-10);
    check_gamma_lemma(integrate({2, 0.5}, {1.0, 1.0}, controls_for(1e3)), 1e-10);
    check_gamma_lemma(integrate({1, -1.0}, {1.0, 0.5}, controls_for(1e3)), 1e-10);
    check_gamma_lemma(integrate({5, -1.0}, {2.0, 0.25}, controls_for(1e3)), 1e-10);
}

TEST_CASE("monotone trap: r^{n-1} (Delta u)' is nondecreasing") {
    for (auto [n, alpha] : std::initializer_list<std::pair<int, double>>{
             {3, -2.0}, {2, 0.5}, {1, -1.0}, {4, 0.0}}) {
        const auto traj = integrate({n, alpha}, {1.0, 0.5}, controls_for(1e3));
        REQUIRE(traj.termination.kind == TerminationKind::ReachedRmax);
        double prev = 0.0;
        for (const auto& s : traj.samples) {
            const double g = std::pow(s.r, n - 1.0) * s.dv;
            CHECK(g >= prev - 1e-9 * std::max(1.0, std::abs(g)));
            prev = g;
        }
    }
}

TEST_CASE("tolerance convergence") {
    const auto coarse = integrate({3, 0.5}, {1.0, 1.0}, controls_for(100.0, 1e-8, 1e-10));
    const auto fine = integrate({3, 0.5}, {1.0, 1.0}, controls_for(100.0, 5e-9, 5e-11));
    const double uc = coarse.samples.back().u;
    const double uf = fine.samples.back().u;
    CHECK(std::abs(uc - uf) < 10.0 * 1e-8 * std::abs(uc));
}

TEST_CASE("precondition violations throw") {
    CHECK_THROWS_AS(integrate({3, 1.5}, {1.0, 0.0}, controls_for(10.0)), std::domain_error);
    CHECK_THROWS_AS(integrate({3, 0.0}, {-1.0, 0.0}, controls_for(10.0)), std::domain_error);
    CHECK_THROWS_AS(integrate_linear_renormalized(3, {1.0, 0.0}, controls_for(2e4)),
                    std::invalid_argument);
}

}  // TEST_SUITE
