#include "biharm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "biharm/quadrature.hpp"

namespace biharm::oracle {

namespace {

// int_{ra}^{rb} s^{1-n} ds, with the n = 1, 2 branch forms
double drift_kernel(int n, double ra, double rb) {
    if (n == 1) return rb - ra;
    if (n == 2) return std::log(rb / ra);
    return (std::pow(ra, 2.0 - n) - std::pow(rb, 2.0 - n)) / (n - 2.0);
}

std::vector<double> pow_samples(std::span<const double> u, double alpha) {
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::pow(u[i], alpha);
    return out;
}

// P[i] = int_0^{i dx} t^{n-1} f(t) dt for an even smooth radial profile f.
// The region next to the axis comes from an even-quartic fit of f: the
// s^{1-n} factor of the representation formula amplifies any panel error
// there by h^{-(n-1)}, so plain quadrature is not enough for n >= 4.
std::vector<double> radial_moment_cumulative(std::span<const double> f, int n,
                                             double dx) {
    const std::size_t m = f.size();
    std::vector<double> integrand(m);
    for (std::size_t i = 0; i < m; ++i)
        integrand[i] = std::pow(i * dx, n - 1.0) * f[i];
    auto P = quad::cumulative_simpson_uniform(dx, integrand);

    const std::size_t i0 = std::min<std::size_t>(16, (m - 1) & ~std::size_t{1});
    if (i0 >= 4) {
        const double t1 = 0.5 * i0 * dx;
        const double A = f[i0 / 2] - f[0];
        const double B = f[i0] - f[0];
        const double a = f[0];
        const double b = (16.0 * A - B) / (12.0 * t1 * t1);
        const double c = (B - 4.0 * A) / (12.0 * t1 * t1 * t1 * t1);
        auto analytic = [&](double s) {
            return a * std::pow(s, n) / n + b * std::pow(s, n + 2.0) / (n + 2.0) +
                   c * std::pow(s, n + 4.0) / (n + 4.0);
        };
        const double shift = analytic(i0 * dx) - P[i0];
        for (std::size_t i = i0 + 1; i < m; ++i) P[i] += shift;
        for (std::size_t i = 0; i <= i0; ++i) P[i] = analytic(i * dx);
    }
    return P;
}

}  // namespace

std::vector<double> repr_lift(std::span<const double> f, int n, double dx) {
    if (n < 1) throw std::domain_error("repr_lift: requires n >= 1");
    if (!(dx > 0.0)) throw std::domain_error("repr_lift: requires dx > 0");
    const std::size_t m = f.size();
    const auto P = radial_moment_cumulative(f, n, dx);

    std::vector<double> q(m, 0.0);
    for (std::size_t i = 1; i < m; ++i) q[i] = std::pow(i * dx, 1.0 - n) * P[i];
    // q(0) = 0: the inner integral is O(s^n)
    return quad::cumulative_simpson_uniform(dx, q);
}

PicardSolution picard_solve(const Problem& problem, const OriginData& origin,
                            const PicardConfig& config) {
    if (!(origin.u0 > 0.0)) throw std::domain_error("picard_solve: requires u0 > 0");
    if (!(problem.alpha <= 1.0))
        throw std::domain_error("picard_solve: requires alpha <= 1");
    if (config.grid_points < 64)
        throw std::invalid_argument("picard_solve: grid_points must be >= 64");
    if (!(config.R > 0.0)) throw std::invalid_argument("picard_solve: requires R > 0");

    const int n = problem.n;
    const double a = problem.alpha;
    PicardSolution sol;

    double R = config.R;
    for (int attempt = 0; attempt <= 3; ++attempt, R *= 0.5) {
        const std::size_t m = static_cast<std::size_t>(config.grid_points) + 1;
        const double dx = R / config.grid_points;
        std::vector<double> u(m), lap(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double r = i * dx;
            u[i] = origin.u0 + origin.lap0 * r * r / (2.0 * n);
        }
        sol.residuals.clear();
        bool positive = std::all_of(u.begin(), u.end(), [](double x) { return x > 0.0; });
        bool converged = false;
        int iters = 0;
        while (positive && iters < config.max_iterations) {
            ++iters;
            const auto lift_inner = repr_lift(pow_samples(u, a), n, dx);
            for (std::size_t i = 0; i < m; ++i) lap[i] = origin.lap0 + lift_inner[i];
            const auto lift_outer = repr_lift(lap, n, dx);
            double delta = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double next = origin.u0 + lift_outer[i];
                delta = std::max(delta, std::abs(next - u[i]));
                u[i] = next;
            }
            sol.residuals.push_back(delta);
            positive = std::all_of(u.begin(), u.end(), [](double x) { return x > 0.0; });
            if (positive && delta <= config.tol) {
                converged = true;
                break;
            }
        }
        if (!positive) continue;  // retry on the halved interval

        sol.converged = converged;
        sol.iterations = iters;
        sol.final_radius = R;
        sol.dx = dx;
        sol.u = u;
        sol.lap = lap;

        // assemble the trajectory; u' and (Delta u)' come from the inner
        // cumulative integrals of the representation formula
        const auto ua = pow_samples(u, a);
        const auto P_lap = radial_moment_cumulative(lap, n, dx);
        const auto P_ua = radial_moment_cumulative(ua, n, dx);

        Trajectory& traj = sol.trajectory;
        traj.problem = problem;
        traj.origin = origin;
        traj.handoff_radius = 0.0;
        traj.termination = {TerminationKind::ReachedRmax, R};
        traj.samples.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double r = i * dx;
            StateVector& s = traj.samples[i];
            s.r = r;
            s.u = u[i];
            s.v = lap[i];
            if (i == 0) {
                s.du = 0.0;
                s.dv = 0.0;
            } else {
                const double rp = std::pow(r, 1.0 - n);
                s.du = rp * P_lap[i];
                s.dv = rp * P_ua[i];
            }
        }
        return sol;
    }
    throw std::runtime_error(
        "picard_solve: positivity lost down to the minimal interval");
}

double second_representation_residual(const PicardSolution& sol, double r0) {
    const auto& traj = sol.trajectory;
    const int n = traj.problem.n;
    const double dx = sol.dx;
    const std::size_t m = sol.u.size();
    const std::size_t i0 = static_cast<std::size_t>(std::llround(r0 / dx));
    if (i0 >= m - 1)
        throw std::invalid_argument("second_representation_residual: r0 out of range");
    const double r0g = i0 * dx;  // snap to the grid

    std::vector<double> tn_lap(m);
    for (std::size_t i = 0; i < m; ++i)
        tn_lap[i] = std::pow(i * dx, n - 1.0) * sol.lap[i];
    const auto P = quad::cumulative_simpson_uniform(dx, tn_lap);
    const double A = P[i0];  // int_0^{r0} t^{n-1} lap dt

    // outer integrand s^{1-n} int_{r0}^s t^{n-1} lap dt, zero at s = r0
    std::vector<double> q(m - i0, 0.0);
    for (std::size_t i = i0 + 1; i < m; ++i)
        q[i - i0] = std::pow(i * dx, 1.0 - n) * (P[i] - P[i0]);
    const auto outer = quad::cumulative_simpson_uniform(dx, q);

    double worst = 0.0;
    for (std::size_t i = i0; i < m; ++i) {
        const double r = i * dx;
        const double drift = (i == i0) ? 0.0 : drift_kernel(n, r0g, r);
        const double rebuilt = sol.u[i0] + A * drift + outer[i - i0];
        worst = std::max(worst, std::abs(rebuilt - sol.u[i]));
    }
    return worst;
}

}  // namespace biharm::oracle
