#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biharm/types.hpp"

namespace biharm::asym {

enum class RegimeTag {
    ExpGrowth,             // alpha = 1
    PowerLaw,              // alpha_c < alpha < 1
    LogCritical,           // alpha = alpha_c
    SolutionDependent,     // alpha < alpha_c
    SupercriticalCatalog,  // alpha > p_S(2), n >= 5 (catalog only)
    NonexistenceCatalog,   // 1 < alpha < p_S(2)
    CriticalCatalog,       // alpha = p_S(2), n >= 5
};

std::string to_string(RegimeTag tag);

/// Log-critical exponent: -1 for n >= 2, -1/3 for n = 1.
double alpha_critical(int n);

/// Second-order critical Sobolev exponent p_S(2) = (n+4)/(n-4) for n >= 5,
/// +infinity otherwise.
double sobolev_exponent(int n);

struct Regime {
    RegimeTag tag;
    double alpha_c;
    double p_sobolev;  // +infinity for n <= 4

    bool integrable() const {
        return tag == RegimeTag::ExpGrowth || tag == RegimeTag::PowerLaw ||
               tag == RegimeTag::LogCritical || tag == RegimeTag::SolutionDependent;
    }
};

/// Total classification of (n, alpha); never fails for n >= 1.
Regime classify(int n, double alpha);

/// L = [(n+b)(n+b+2)(b+2)(b+4)]^{-1/(1-alpha)} with b = 4 alpha/(1-alpha);
/// the constant of the exact power-law solution L r^{4/(1-alpha)}.
/// Requires the PowerLaw regime; all four factors are then positive.
double powerlaw_constant(int n, double alpha);

/// Catalog constant for n >= 5, alpha > p_S(2):
/// L = [m(m+2)(n-2-m)(n-4-m)]^{-1/(1-alpha)}, m = 4/(alpha-1).
double supercritical_constant(int n, double alpha);

enum class LawForm {
    RPower,           // C r^kappa
    R2SqrtLog,        // C r^2 sqrt(ln r)
    R2Log,            // C r^2 ln r
    R2LogSqrtLogLog,  // C r^2 ln r sqrt(ln ln r)
    R3Log34,          // C r^3 (ln r)^{3/4}
    ExpMode,          // C r^{-(n-1)/2} e^r
};

std::string to_string(LawForm form);

/// Optional solution data feeding predicted_law. The exponential-mode
/// constant needs (u0, lap0); the solution-dependent rows need lap0 and the
/// tail integral D or N.
struct Functionals {
    std::optional<double> u0;
    std::optional<double> lap0;
    std::optional<double> D;  // int_0^inf t u^alpha dt
    std::optional<double> N;  // int_0^inf u^alpha dt
};

/// Comparison function f(r) and its constant for one Table-1 row.
struct AsymptoticLaw {
    LawForm form = LawForm::RPower;
    int n = 3;
    double exponent = 0.0;  // kappa for RPower
    double constant = 0.0;
    bool constant_closed_form = true;  // false when built from functionals

    /// f(r); requires r > r_min_valid().
    double value(double r) const;
    /// ln f(r); defined for every form, mandatory for ExpMode.
    double log_value(double r) const;
    /// Radius below which f is not positive or its logs are undefined.
    double r_min_valid() const;
};

/// The predicted law of classify(problem), with the constant resolved from
/// the supplied functionals where the regime demands them. Throws
/// std::invalid_argument when a required functional is missing and
/// std::domain_error in catalog-only regimes.
AsymptoticLaw predicted_law(const Problem& problem, const Functionals& f = {});

/// Subsolution margin: min over the grid of
/// (v_eps^alpha - Delta^2 v_eps) / max(v_eps^alpha, Delta^2 v_eps)
/// for v_eps(r) = v0 + lapv0 r^2/(2n) + eps r^{4/(1-alpha)}, normalized so
/// the equality configuration sits at roundoff scale. Nonnegative margin
/// certifies the comparison-function lower bound when
/// eps <= M^{-1/(1-alpha)} and v0 = 0.
double subsolution_margin(int n, double alpha, double epsilon, double v0,
                          double lapv0, std::span<const double> r_grid);

/// M = k(k+n-2)(k-2)(k+n-4) with k = 4/(1-alpha): Delta^2 (r^k) = M r^{k-4}.
double subsolution_M(int n, double alpha);

}  // namespace biharm::asym
