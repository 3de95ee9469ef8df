#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace biharm {

/// The equation Delta^2 u = u^alpha restricted to radial functions in R^n.
struct Problem {
    int n = 3;
    double alpha = 0.0;
};

/// Origin data (u(0), Delta u(0)) of a radial solution. Radial smoothness
/// forces u'(0) = (Delta u)'(0) = 0, so these two numbers determine the
/// solution.
struct OriginData {
    double u0 = 1.0;
    double lap0 = 0.0;
};

/// One sample of the first-order system: (r, u, u', Delta u, (Delta u)').
struct StateVector {
    double r = 0.0;
    double u = 0.0;
    double du = 0.0;
    double v = 0.0;   // Delta u
    double dv = 0.0;  // (Delta u)'
};

enum class TerminationKind {
    ReachedRmax,
    PositivityLost,
    Overflow,
    StepUnderflow,
};

struct Termination {
    TerminationKind kind = TerminationKind::ReachedRmax;
    double r = 0.0;  // crossing radius for PositivityLost, stop radius otherwise
};

std::string to_string(TerminationKind kind);

struct IntegratorControls {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double rmax = 1e4;
    long max_steps = 2'000'000;
    int output_points_per_decade = 32;
};

/// An integrated radial trajectory on a geometric output grid.
///
/// For the renormalized linear path (alpha = 1) the stored states are scaled
/// by exp(-sample_log_scale[i]); log_scale is the final cumulative offset.
/// Everywhere else both are zero and the states are plain values.
struct Trajectory {
    Problem problem;
    OriginData origin;
    std::vector<StateVector> samples;
    std::vector<double> sample_log_scale;  // empty unless renormalized path
    double log_scale = 0.0;
    Termination termination;
    double handoff_radius = 0.0;

    double log_u(std::size_t i) const;  // ln u(r_i), scale-aware
    double rmax_reached() const {
        return samples.empty() ? 0.0 : samples.back().r;
    }
};

}  // namespace biharm
