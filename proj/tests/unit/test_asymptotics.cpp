#include <cmath>
#include <vector>

#include "biharm/asymptotics.hpp"
#include "doctest.h"

using namespace biharm;
using namespace biharm::asym;

TEST_SUITE("asymptotics") {

TEST_CASE("classification of the named cells") {
    CHECK(classify(3, -1.0).tag == RegimeTag::LogCritical);
    CHECK(classify(1, -1.0).tag == RegimeTag::SolutionDependent);
    CHECK(classify(5, 3.0).tag == RegimeTag::NonexistenceCatalog);  // p_S(2) = 9
    CHECK(classify(5, 9.0).tag == RegimeTag::CriticalCatalog);
    CHECK(classify(5, 10.0).tag == RegimeTag::SupercriticalCatalog);
    CHECK(classify(4, 100.0).tag == RegimeTag::NonexistenceCatalog);  // p_S = inf
    CHECK(classify(2, 1.0).tag == RegimeTag::ExpGrowth);
    CHECK(classify(1, -1.0 / 3.0).tag == RegimeTag::LogCritical);
    CHECK(classify(1, -0.2).tag == RegimeTag::PowerLaw);
    CHECK(classify(7, 0.99).tag == RegimeTag::PowerLaw);
}

TEST_CASE("classification totality and boundary exactness") {
    for (int n = 1; n <= 50; ++n) {
        CHECK(alpha_critical(n) == (n == 1 ? -1.0 / 3.0 : -1.0));
        if (n >= 5)
            CHECK(sobolev_exponent(n) == doctest::Approx((n + 4.0) / (n - 4.0)));
        else
            CHECK(std::isinf(sobolev_exponent(n)));
        for (double a = -10.0; a <= 10.0; a += 0.01) {
            const auto regime = classify(n, a);
            const bool catalog = !regime.integrable();
            CHECK(catalog == (a > 1.0));
        }
    }
}

TEST_CASE("power-law constant closed forms") {
    CHECK(powerlaw_constant(3, 0.5) ==
          doctest::Approx(std::pow(3024.0, -2.0)).epsilon(1e-14));
    for (int n : {1, 2, 3, 6})
        CHECK(powerlaw_constant(n, 0.0) ==
              doctest::Approx(1.0 / (8.0 * n * (n + 2.0))).epsilon(1e-14));
    // n = 1, alpha = -1/5: factors (1/3)(7/3)(4/3)(10/3) = 280/81
    CHECK(powerlaw_constant(1, -0.2) ==
          doctest::Approx(std::pow(280.0 / 81.0, -5.0 / 6.0)).epsilon(1e-13));
    CHECK_THROWS_AS(powerlaw_constant(3, -1.0), std::domain_error);
    CHECK_THROWS_AS(powerlaw_constant(2, 1.0), std::domain_error);
}

TEST_CASE("exact power-law solution identity") {
    // L^{1-a} (n+b)(n+b+2)(b+2)(b+4) = 1 and the pointwise ODE residual
    // via Delta^2(r^m) = m(m+n-2)(m-2)(m+n-4) r^{m-4}
    for (int n : {1, 2, 3, 4, 5, 10})
        for (double a : {-0.9, -0.5, -0.2, 0.0, 0.25, 0.5, 0.75, 0.9}) {
            if (classify(n, a).tag != RegimeTag::PowerLaw) continue;
            const double b = 4.0 * a / (1.0 - a);
            const double L = powerlaw_constant(n, a);
            const double P = (n + b) * (n + b + 2.0) * (b + 2.0) * (b + 4.0);
            CHECK(std::abs(std::pow(L, 1.0 - a) * P - 1.0) <= 1e-13);
            const double m = 4.0 / (1.0 - a);
            for (double r : {0.5, 1.0, 2.0, 10.0}) {
                const double lhs = L * m * (m + n - 2.0) * (m - 2.0) * (m + n - 4.0) *
                                   std::pow(r, m - 4.0);
                const double rhs = std::pow(L * std::pow(r, m), a);
                CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
            }
        }
}

TEST_CASE("predicted law per Table-1 row") {
    // alpha = 1: sinh(r)/r ~ e^r/(2r), constant (u0+lap0) Gamma(3/2) 2^{-1} / sqrt(pi)
    const auto exp_law = predicted_law({3, 1.0}, {.u0 = 1.0, .lap0 = 1.0});
    CHECK(exp_law.form == LawForm::ExpMode);
    CHECK(exp_law.constant == doctest::Approx(0.5).epsilon(1e-14));

    const auto log3 = predicted_law({3, -1.0});
    CHECK(log3.form == LawForm::R2SqrtLog);
    CHECK(log3.constant == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

    const auto log2 = predicted_law({2, -1.0});
    CHECK(log2.form == LawForm::R2LogSqrtLogLog);
    CHECK(log2.constant == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));

    const auto log1 = predicted_law({1, -1.0 / 3.0});
    CHECK(log1.form == LawForm::R3Log34);
    CHECK(log1.constant == doctest::Approx(std::pow(2.0 / 9.0, 0.75)).epsilon(1e-14));

    const auto sd1 = predicted_law({1, -1.0}, {.N = 3.0});
    CHECK(sd1.form == LawForm::RPower);
    CHECK(sd1.exponent == 3.0);
    CHECK(sd1.constant == doctest::Approx(0.5).epsilon(1e-15));

    const auto sd3 = predicted_law({3, -2.0}, {.lap0 = 0.5, .D = 3.0});
    CHECK(sd3.exponent == 2.0);
    CHECK(sd3.constant == doctest::Approx((0.5 + 3.0) / 6.0).epsilon(1e-15));

    const auto sd2 = predicted_law({2, -2.0}, {.D = 3.0});
    CHECK(sd2.form == LawForm::R2Log);
    CHECK(sd2.constant == doctest::Approx(0.75).epsilon(1e-15));

    CHECK_THROWS_AS(predicted_law({3, -2.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(predicted_law({5, 10.0}, {}), std::domain_error);
}

TEST_CASE("supercritical catalog constants") {
    CHECK(supercritical_constant(5, 10.0) ==
          doctest::Approx(std::pow(10120.0 / 6561.0, 1.0 / 9.0)).epsilon(1e-13));
    CHECK(supercritical_constant(6, 9.0) ==
          doctest::Approx(std::pow(105.0 / 16.0, 0.125)).epsilon(1e-13));
    // m = 4/(alpha-1) satisfies 4/(1-alpha) = -m
    for (double a : {6.0, 9.5, 20.0}) {
        const double m = 4.0 / (a - 1.0);
        CHECK(4.0 / (1.0 - a) == doctest::Approx(-m).epsilon(1e-15));
    }
    CHECK_THROWS_AS(supercritical_constant(4, 10.0), std::domain_error);
    CHECK_THROWS_AS(supercritical_constant(5, 5.0), std::domain_error);
}

TEST_CASE("subsolution margin certificate") {
    std::vector<double> grid;
    for (int k = 0; k <= 60; ++k) grid.push_back(std::pow(10.0, -3.0 + 0.1 * k));

    // equality configuration: margin is zero up to roundoff
    const double M = subsolution_M(3, 0.5);
    CHECK(M == doctest::Approx(3024.0).epsilon(1e-15));
    const double eps_eq = std::pow(M, -2.0);
    CHECK(std::abs(subsolution_margin(3, 0.5, eps_eq, 0.0, 0.0, grid)) <= 1e-13);

    // alpha = 0 with positive quadratic part keeps the certificate
    const double M1 = subsolution_M(1, 0.0);
    CHECK(subsolution_margin(1, 0.0, 1.0 / M1, 0.0, 1.0, std::vector<double>{1.0}) >=
          0.0);

    // doubling epsilon flips the inequality at small r
    const double M3 = subsolution_M(3, 0.5);
    CHECK(subsolution_margin(3, 0.5, 2.0 * std::pow(M3, -2.0), 0.0, 0.0, grid) < 0.0);

    CHECK_THROWS_AS(subsolution_margin(3, -0.5, 0.1, 0.0, 0.0, grid), std::domain_error);
}

TEST_CASE("law evaluation and validity radii") {
    AsymptoticLaw law;
    law.form = LawForm::R2SqrtLog;
    law.constant = 2.0;
    law.exponent = 2.0;
    CHECK(law.value(10.0) ==
          doctest::Approx(2.0 * 100.0 * std::sqrt(std::log(10.0))).epsilon(1e-13));
    CHECK(law.r_min_valid() == 1.0);

    AsymptoticLaw exp_law;
    exp_law.form = LawForm::ExpMode;
    exp_law.n = 3;
    exp_law.constant = 0.5;
    CHECK(exp_law.log_value(10.0) ==
          doctest::Approx(std::log(0.5) - std::log(10.0) + 10.0).epsilon(1e-13));
}

}  // TEST_SUITE
