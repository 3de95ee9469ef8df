#include <cmath>
#include <vector>

#include "biharm/integrate.hpp"
#include "biharm/oracle.hpp"
#include "doctest.h"

using namespace biharm;
using namespace biharm::oracle;

namespace {

// 4-point Lagrange interpolation on a uniform grid
double interp(const std::vector<double>& y, double dx, double r) {
    const double s = r / dx;
    std::size_t i = static_cast<std::size_t>(s);
    std::size_t lo = (i == 0) ? 0 : i - 1;
    if (lo + 3 >= y.size()) lo = y.size() - 4;
    double acc = 0.0;
    for (std::size_t j = lo; j < lo + 4; ++j) {
        double w = 1.0;
        for (std::size_t k = lo; k < lo + 4; ++k)
            if (k != j) w *= (s - k) / (static_cast<double>(j) - k);
        acc += w * y[j];
    }
    return acc;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("representation lift closed forms") {
    const int m = 1024;
    for (int n : {1, 2, 3, 5}) {
        const double R = 2.0;
        const double dx = R / m;
        std::vector<double> constant(m + 1, 3.0), quadratic(m + 1), zero(m + 1, 0.0);
        for (int i = 0; i <= m; ++i) quadratic[i] = (i * dx) * (i * dx);

        const auto lift_c = repr_lift(constant, n, dx);
        const auto lift_q = repr_lift(quadratic, n, dx);
        const auto lift_0 = repr_lift(zero, n, dx);
        for (int i = 0; i <= m; i += 64) {
            const double r = i * dx;
            CHECK(lift_c[i] ==
                  doctest::Approx(3.0 * r * r / (2.0 * n)).epsilon(1e-9));
            CHECK(lift_q[i] ==
                  doctest::Approx(std::pow(r, 4.0) / (4.0 * (n + 2.0))).epsilon(1e-8));
            CHECK(lift_0[i] == 0.0);
        }
    }
}

TEST_CASE("picard on alpha = 0 reproduces the quartic immediately") {
    PicardConfig config;
    config.R = 2.0;
    const auto sol = picard_solve({3, 0.0}, {1.0, 0.0}, config);
    CHECK(sol.converged);
    CHECK(sol.iterations == 2);  // RHS independent of u: exact after one pass
    for (std::size_t i = 0; i < sol.u.size(); ++i) {
        const double r = i * sol.dx;
        CHECK(sol.u[i] ==
              doctest::Approx(1.0 + std::pow(r, 4.0) / 120.0).epsilon(1e-10));
    }
}

TEST_CASE("picard closed forms for alpha = 1") {
    PicardConfig config;
    config.R = 5.0;
    const auto sol3 = picard_solve({3, 1.0}, {1.0, 1.0}, config);
    CHECK(sol3.converged);
    double sup = 0.0;
    for (std::size_t i = 1; i < sol3.u.size(); ++i) {
        const double r = i * sol3.dx;
        sup = std::max(sup, std::abs(sol3.u[i] - std::sinh(r) / r));
    }
    CHECK(sup <= 1e-8);

    config.R = 3.0;
    const auto sol1 = picard_solve({1, 1.0}, {1.0, 1.0}, config);
    CHECK(sol1.converged);
    sup = 0.0;
    for (std::size_t i = 0; i < sol1.u.size(); ++i)
        sup = std::max(sup, std::abs(sol1.u[i] - std::cosh(i * sol1.dx)));
    CHECK(sup <= 1e-8);
}

TEST_CASE("picard residuals decrease geometrically near the fixed point") {
    PicardConfig config;
    config.R = 5.0;
    const auto sol = picard_solve({2, 0.5}, {1.0, 1.0}, config);
    REQUIRE(sol.converged);
    REQUIRE(sol.residuals.size() >= 6);
    for (std::size_t i = sol.residuals.size() - 5; i < sol.residuals.size(); ++i)
        CHECK(sol.residuals[i] < sol.residuals[i - 1]);
}

TEST_CASE("picard shrinks the interval on positivity loss") {
    PicardConfig config;
    config.R = 5.0;
    const auto sol = picard_solve({3, 1.0}, {1.0, -1.0}, config);  // sin(r)/r data
    CHECK(sol.converged);
    CHECK(sol.final_radius < 5.0);
    for (double v : sol.u) CHECK(v > 0.0);
    // and still matches the closed form on the shrunken interval
    for (std::size_t i = 1; i < sol.u.size(); ++i) {
        const double r = i * sol.dx;
        CHECK(sol.u[i] == doctest::Approx(std::sin(r) / r).epsilon(1e-8));
    }
}

TEST_CASE("grid refinement changes the fixed point below 1e-9") {
    PicardConfig coarse, fine;
    coarse.R = fine.R = 5.0;
    coarse.grid_points = 2048;
    fine.grid_points = 4096;
    const auto a = picard_solve({3, -2.0}, {1.0, 0.5}, coarse);
    const auto b = picard_solve({3, -2.0}, {1.0, 0.5}, fine);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    double sup = 0.0;
    for (std::size_t i = 0; i < a.u.size(); ++i)
        sup = std::max(sup, std::abs(a.u[i] - b.u[2 * i]));
    CHECK(sup < 1e-9);
}

TEST_CASE("second representation identity at anchored radii") {
    PicardConfig config;
    config.R = 5.0;
    for (auto [n, alpha] : std::initializer_list<std::pair<int, double>>{
             {1, 1.0}, {2, 0.5}, {3, -2.0}}) {
        const auto sol = picard_solve({n, alpha}, {1.0, 0.5}, config);
        REQUIRE(sol.converged);
        double sup_u = 0.0;
        for (double v : sol.u) sup_u = std::max(sup_u, v);
        for (double r0 : {1.0, 2.0})
            CHECK(second_representation_residual(sol, r0) <= 1e-9 * (1.0 + sup_u));
    }
}

TEST_CASE("oracle agrees with the integrator") {
    IntegratorControls controls;
    controls.rmax = 6.0;
    controls.rel_tol = 1e-11;
    controls.abs_tol = 1e-13;
    PicardConfig config;
    config.R = 5.0;
    for (auto [n, alpha] : std::initializer_list<std::pair<int, double>>{
             {3, -2.0}, {2, 0.5}}) {
        const auto traj = ode::integrate({n, alpha}, {1.0, 0.5}, controls);
        const auto sol = picard_solve({n, alpha}, {1.0, 0.5}, config);
        REQUIRE(sol.converged);
        double sup_u = 0.0, sup_diff = 0.0;
        for (const auto& s : traj.samples) {
            if (s.r > sol.final_radius) break;
            sup_u = std::max(sup_u, s.u);
            sup_diff = std::max(sup_diff, std::abs(s.u - interp(sol.u, sol.dx, s.r)));
        }
        CHECK(sup_diff <= 1e-8 * (1.0 + sup_u));
    }
}

TEST_CASE("picard validates its inputs") {
    PicardConfig config;
    config.grid_points = 32;
    CHECK_THROWS_AS(picard_solve({3, 0.0}, {1.0, 0.0}, config), std::invalid_argument);
    config.grid_points = 2048;
    CHECK_THROWS_AS(picard_solve({3, 2.0}, {1.0, 0.0}, config), std::domain_error);
    CHECK_THROWS_AS(picard_solve({3, 0.0}, {-1.0, 0.0}, config), std::domain_error);
}

}  // TEST_SUITE
