#pragma once

#include <span>
#include <vector>

namespace biharm::quad {

/// Cumulative integral of samples (xs, ys) on a strictly increasing,
/// possibly nonuniform grid. Each panel integrates the local cubic through
/// four neighbouring points; composite accuracy O(h^4).
std::vector<double> cumulative_integral(std::span<const double> xs,
                                        std::span<const double> ys);

/// Cumulative integral on a uniform grid of spacing dx: fixed-stencil
/// Newton-Cotes panels (cubic interior, one-sided ends), global O(h^4).
/// Used by the oracle; a deliberately different discretization family from
/// the adaptive integrator it cross-checks.
std::vector<double> cumulative_simpson_uniform(double dx, std::span<const double> ys);

}  // namespace biharm::quad
