#pragma once

#include <array>

#include "biharm/types.hpp"

namespace biharm::ode {

/// Right-hand side of the first-order reduction:
/// (u, p, v, q)' = (p, v - (n-1)p/r, q, u^alpha - (n-1)q/r).
/// Throws std::domain_error when u <= 0 (the positivity event) or r <= 0.
std::array<double, 4> ode_rhs(const Problem& problem, const StateVector& s);

/// Adaptive outward integration (Dormand-Prince 5(4), dense output) with
/// power-series startup at the handoff radius. Requires alpha <= 1, u0 > 0.
/// Samples land on a geometric grid anchored at rmax; positivity loss is
/// localized by bisection on the dense output.
Trajectory integrate(const Problem& problem, const OriginData& origin,
                     const IntegratorControls& controls);

/// Same stepper for the linear case alpha = 1, with power-of-two state
/// rescaling whenever the max norm exceeds 1e100. The accumulated log of the
/// rescale factor is tracked per sample, so exponentially growing solutions
/// can be followed to rmax <= 1e4 without overflow.
Trajectory integrate_linear_renormalized(int n, const OriginData& origin,
                                         const IntegratorControls& controls);

}  // namespace biharm::ode
