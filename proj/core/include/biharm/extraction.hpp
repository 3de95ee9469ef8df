#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biharm/asymptotics.hpp"
#include "biharm/types.hpp"

namespace biharm::extract {

struct RatioPoint {
    double r;
    double ratio;
};

/// u(r_i)/f(r_i) on the trajectory's output grid, restricted to
/// r > law.r_min_valid(). For ExpMode the ratio is formed in log space from
/// the renormalized trajectory and exponentiated. Requires ReachedRmax.
std::vector<RatioPoint> ratio_series(const Trajectory& traj,
                                     const asym::AsymptoticLaw& law);

enum class FitModel {
    LastValue,
    InverseLogFit,       // ratio ~ c_inf + c1 / ln r, final 2 decades
    PowerCorrectionFit,  // ratio ~ c_inf + c1 r^{-p}, p in {1,2} by residual
    AitkenAccel,
};

std::string to_string(FitModel model);
std::optional<FitModel> fit_model_from_string(const std::string& name);

struct LimitEstimate {
    double value = 0.0;
    FitModel model = FitModel::LastValue;
    double uncertainty = 0.0;  // half-spread across the three fit windows
    double tail_min = 0.0;     // running min/max of the ratio, final decade
    double tail_max = 0.0;
};

/// Extract lim ratio(r) as r -> infinity. Requires at least 8 points
/// spanning at least 2 decades; throws std::runtime_error on a degenerate
/// least-squares system.
LimitEstimate estimate_limit(const std::vector<RatioPoint>& series, FitModel model);

enum class TailWeight { TimesT, Plain };

struct FunctionalValues {
    std::optional<double> D;  // int_0^inf t u^alpha dt (TimesT)
    std::optional<double> N;  // int_0^inf u^alpha dt   (Plain)
    double finite_part = 0.0;
    double tail_part = 0.0;
    double tail_model_exponent = 0.0;  // kappa*alpha + weight power
    double error_estimate = 0.0;

    double value() const { return D ? *D : *N; }
};

/// D or N along a trajectory: closed-form series integral on [0, handoff],
/// 4th-order composite quadrature over the sample grid, and an analytic
/// power-law tail over (rmax, inf) fitted on the final decade. kappa
/// defaults to the regime value (3 for n = 1, else 2); tail_exponent
/// overrides it. Throws when the fitted tail is not integrable.
FunctionalValues tail_integral(const Trajectory& traj, TailWeight weight,
                               std::optional<double> tail_exponent = std::nullopt);

enum class AuxKind { F, G, H };

/// Cumulative solution functionals along the grid:
/// F(r) = G(r) = int_0^r s u^{-1} ds (alpha = -1 rows, n >= 3 / n = 2),
/// H(r) = int_0^r u^{-1/3} ds (n = 1, alpha = -1/3).
std::vector<RatioPoint> aux_integral(const Trajectory& traj, AuxKind kind);

struct IntermediateLimit {
    std::string name;
    double target;
    LimitEstimate estimate;
    // tight ratios carry the 5% verification band; the remaining ones
    // converge like 1/sqrt(ln r) and are reported for information only
    bool tight = false;

    double rel_error() const {
        return std::abs(estimate.value - target) / std::abs(target);
    }
};

/// The log-critical intermediate ratios with their exact targets; these
/// converge faster than the headline ratio and carry the tight band.
/// Requires a LogCritical trajectory.
std::vector<IntermediateLimit> intermediate_limits(const Trajectory& traj);

/// Headline constant recomposed from the two intermediate targets t1, t2:
/// t1 sqrt(2/t2) for n >= 2, t1 (4/(3 t2))^{3/4} for n = 1. Used to assert
/// the exact compatibility of the intermediate and headline limits.
double compose_headline(int n, double t1, double t2);

}  // namespace biharm::extract
