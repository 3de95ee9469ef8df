#pragma once

#include <vector>

#include "biharm/types.hpp"

namespace biharm::series {

/// Truncated even power series sum_j c[j] r^{2j}.
struct EvenSeries {
    std::vector<double> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    double value(double r) const;
    double derivative(double r) const;
};

/// Coefficients of s(r)^alpha by the logarithmic-derivative (J.C.P. Miller)
/// recurrence. Truncated at out_order (default: s.order()); exact for small
/// non-negative integer alpha once out_order >= alpha * s.order().
/// Requires s.coeffs[0] > 0.
EvenSeries series_pow(const EvenSeries& s, double alpha, int out_order = -1);

/// Taylor startup data at the coordinate singularity r = 0: the series of u
/// and of Delta u, derived from (u0, lap0) through the lifting
/// Delta(r^{2j+2}) = (2j+2)(2j+n) r^{2j} and the series of u^alpha.
struct OriginExpansion {
    Problem problem;
    OriginData origin;
    EvenSeries u;    // c_0..c_K
    EvenSeries lap;  // d_0..d_K, series of Delta u
    // first omitted coefficients (order K+1), used as truncation estimators
    double u_next = 0.0;
    double lap_next = 0.0;
};

/// Build the origin expansion to order K (default 8). Requires u0 > 0,
/// 2 <= K <= 30, alpha <= 1.
OriginExpansion taylor_coeffs(const Problem& problem, const OriginData& origin,
                              int order = 8);

/// Largest radius at which the truncated expansion is trusted: the first
/// omitted term of either series contributes below 1e-14 relative
/// (unbounded when the series terminates).
double series_max_radius(const OriginExpansion& exp);

/// Integration startup radius: min(series_max_radius, 1e-2).
double handoff_radius(const OriginExpansion& exp);

/// Termwise evaluation of (r, u, u', Delta u, (Delta u)'). Throws if r
/// exceeds series_max_radius.
StateVector eval_state(const OriginExpansion& exp, double r);

}  // namespace biharm::series
