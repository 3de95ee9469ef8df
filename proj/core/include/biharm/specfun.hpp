#pragma once

#include <stdexcept>

namespace biharm::specfun {

/// Gamma function for x > 0, Lanczos approximation (g = 7, 9 terms).
/// Relative error below 1e-13 on [0.5, 20]. Throws std::domain_error for
/// x <= 0.
double gamma_fn(double x);

/// ln Gamma(x) for x > 0.
double gamma_ln(double x);

struct BesselEval {
    double value = 0.0;
    bool log_scaled = false;  // value is exp(-r) * I_nu(r)
    int series_terms_used = 0;
};

/// Modified Bessel function I_nu(r), nu > -1, r >= 0.
///
/// Power series below the crossover radius max(20, 2 nu^2), Hankel
/// asymptotic expansion (8 correction terms, divergence-guarded) beyond it.
/// scaled=true returns exp(-r) I_nu(r); it is mandatory for r > 700
/// (std::overflow_error otherwise).
BesselEval bessel_i(double nu, double r, bool scaled);

/// Exponential radial mode: the solution of Delta u = u with u(0) = 1,
/// Delta u(0) = 1; equals Gamma(n/2) (r/2)^{1-n/2} I_{n/2-1}(r).
/// scaled=true returns exp(-r) u1(r).
double exp_mode_u1(int n, double r, bool scaled = false);

/// Oscillatory radial mode: the spherical average of cos(x_1); solves
/// Delta u = -u with u(0) = 1, Delta u(0) = -1. Alternating series, limited
/// to r <= 60 where double-precision cancellation stays acceptable.
double osc_mode_u2(int n, double r);

namespace detail {
// Both branches exposed so the crossover window can be tested directly.
BesselEval bessel_i_series(double nu, double r);
BesselEval bessel_i_asymptotic(double nu, double r);
double bessel_crossover(double nu);
}  // namespace detail

}  // namespace biharm::specfun
