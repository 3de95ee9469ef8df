#include <cmath>
#include <vector>

#include "biharm/quadrature.hpp"
#include "doctest.h"

using namespace biharm::quad;

TEST_SUITE("quadrature") {

TEST_CASE("cumulative integral is exact on cubics, nonuniform grid") {
    std::vector<double> xs, ys;
    double x = 0.0;
    while (x < 3.0) {
        xs.push_back(x);
        ys.push_back(((2.0 * x - 3.0) * x + 1.0) * x + 0.5);  // 2x^3-3x^2+x+0.5
        x += 0.1 + 0.05 * std::sin(7.0 * x);
    }
    const auto cum = cumulative_integral(xs, ys);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double t = xs[i];
        const double exact = 0.5 * t * t * t * t - t * t * t + 0.5 * t * t + 0.5 * t;
        CHECK(cum[i] == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("cumulative integral converges at 4th order") {
    auto run = [](int m) {
        std::vector<double> xs(m), ys(m);
        for (int i = 0; i < m; ++i) {
            xs[i] = 2.0 * i / (m - 1);
            ys[i] = std::sin(xs[i]);
        }
        return std::abs(cumulative_integral(xs, ys).back() - (1.0 - std::cos(2.0)));
    };
    const double e1 = run(65), e2 = run(129);
    CHECK(e2 < e1 / 12.0);  // ~16x per refinement
    CHECK(e1 < 1e-7);
}

TEST_CASE("uniform cumulative Simpson exact on quadratics") {
    const double dx = 0.125;
    std::vector<double> ys;
    for (int i = 0; i <= 16; ++i) {
        const double x = i * dx;
        ys.push_back(3.0 * x * x - 2.0 * x + 1.0);
    }
    const auto cum = cumulative_simpson_uniform(dx, ys);
    for (int i = 0; i <= 16; ++i) {
        const double x = i * dx;
        CHECK(cum[i] == doctest::Approx(x * x * x - x * x + x).epsilon(1e-14));
    }
}

TEST_CASE("uniform cumulative Simpson 4th-order convergence") {
    auto run = [](int m) {
        const double dx = 1.0 / m;
        std::vector<double> ys(m + 1);
        for (int i = 0; i <= m; ++i) ys[i] = std::exp(i * dx);
        return std::abs(cumulative_simpson_uniform(dx, ys).back() - (M_E - 1.0));
    };
    const double e1 = run(64), e2 = run(128);
    CHECK(e2 < e1 / 12.0);
}

}  // TEST_SUITE
