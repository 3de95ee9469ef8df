#pragma once

#include <span>
#include <vector>

#include "biharm/types.hpp"

namespace biharm::oracle {

struct PicardConfig {
    double R = 5.0;  // interval end; contraction is only reliable for R <= 10
    int grid_points = 2048;
    int max_iterations = 64;
    double tol = 1e-12;  // sup-norm fixed-point tolerance
};

/// The representation lift g(r) = int_0^r s^{1-n} int_0^s t^{n-1} f(t) dt ds
/// for samples f on the uniform grid {i dx}. The inner integral is O(s^n),
/// so the outer integrand extends continuously by 0 at s = 0.
std::vector<double> repr_lift(std::span<const double> f, int n, double dx);

struct PicardSolution {
    Trajectory trajectory;
    bool converged = false;
    int iterations = 0;
    double final_radius = 0.0;  // may be below config.R after positivity retries
    std::vector<double> residuals;  // sup-norm update per iteration

    // final iterate on the uniform grid, kept for identity checks
    double dx = 0.0;
    std::vector<double> u;
    std::vector<double> lap;
};

/// Independent solver: fixed-point iteration on the nested representation
/// formulas, u_{k+1} = u0 + lift(lap0 + lift(u_k^alpha)). Starts from
/// u0 + lap0 r^2/(2n). Positivity loss shrinks R by half (up to 3 times);
/// non-convergence is reported, not thrown. Requires alpha <= 1, u0 > 0.
PicardSolution picard_solve(const Problem& problem, const OriginData& origin,
                            const PicardConfig& config);

/// Sup-norm residual of the second (r0-anchored) representation identity:
/// u(r) = u(r0) + (int_0^{r0} t^{n-1} lap dt) int_{r0}^r s^{1-n} ds
///      + int_{r0}^r s^{1-n} int_{r0}^s t^{n-1} lap dt ds
/// over grid points r in [r0, R], including the n = 1 / n = 2 / n >= 3
/// branch forms of int s^{1-n} ds.
double second_representation_residual(const PicardSolution& sol, double r0);

}  // namespace biharm::oracle
