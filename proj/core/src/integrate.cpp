#include "biharm/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "biharm/series.hpp"

namespace biharm::ode {

namespace {

using Vec4 = std::array<double, 4>;

Vec4 axpy(const Vec4& y, double h, const Vec4& k) {
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

constexpr double kLn2 = 0.6931471805599453;

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct DenseStep {
    double r = 0.0, h = 0.0;
    std::array<Vec4, 5> rcont{};

    Vec4 eval(double rq) const {
        const double th = (rq - r) / h;
        const double th1 = 1.0 - th;
        Vec4 y;
        for (int i = 0; i < 4; ++i)
            y[i] = rcont[0][i] +
                   th * (rcont[1][i] +
                         th1 * (rcont[2][i] + th * (rcont[3][i] + th1 * rcont[4][i])));
        return y;
    }
};

// u^alpha with the special cases that stay defined at u <= 0
bool pow_needs_positive(double alpha) { return alpha != 0.0 && alpha != 1.0; }

struct Rhs {
    int n;
    double alpha;

    // returns false when the state is outside the domain (u <= 0 with a
    // fractional/negative exponent)
    bool operator()(double r, const Vec4& y, Vec4& f) const {
        const double u = y[0];
        double ua;
        if (alpha == 0.0) ua = 1.0;
        else if (alpha == 1.0) ua = u;
        else {
            if (!(u > 0.0)) return false;
            ua = std::pow(u, alpha);
        }
        const double drift = (n - 1) / r;
        f = {y[1], y[2] - drift * y[1], y[3], ua - drift * y[3]};
        return std::isfinite(f[3]) && std::isfinite(f[1]);
    }
};

struct StepOutcome {
    Vec4 y_new;
    Vec4 k_last;  // FSAL stage, = f(r+h, y_new)
    double err = 0.0;
    bool domain_ok = true;
    DenseStep dense;
};

bool try_step(const Rhs& rhs, double r, const Vec4& y, const Vec4& k1, double h,
              double rel_tol, double abs_tol, StepOutcome& out) {
    Vec4 k2, k3, k4, k5, k6, k7, t;
    out.domain_ok = true;
    auto stage = [&](double rc, const Vec4& ys, Vec4& k) {
        if (!rhs(rc, ys, k)) {
            out.domain_ok = false;
            return false;
        }
        return true;
    };
    t = axpy(y, h * a21, k1);
    if (!stage(r + c2 * h, t, k2)) return false;
    for (int i = 0; i < 4; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    if (!stage(r + c3 * h, t, k3)) return false;
    for (int i = 0; i < 4; ++i)
        t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    if (!stage(r + c4 * h, t, k4)) return false;
    for (int i = 0; i < 4; ++i)
        t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    if (!stage(r + c5 * h, t, k5)) return false;
    for (int i = 0; i < 4; ++i)
        t[i] = y[i] +
               h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    if (!stage(r + h, t, k6)) return false;
    for (int i = 0; i < 4; ++i)
        out.y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                   b6 * k6[i]);
    if (!stage(r + h, out.y_new, k7)) return false;
    out.k_last = k7;

    double err2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                               e6 * k6[i] + e7 * k7[i]);
        const double sc =
            abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(out.y_new[i]));
        err2 += (ei / sc) * (ei / sc);
    }
    out.err = std::sqrt(err2 / 4.0);

    out.dense.r = r;
    out.dense.h = h;
    for (int i = 0; i < 4; ++i) {
        const double dy = out.y_new[i] - y[i];
        const double bspl = h * k1[i] - dy;
        out.dense.rcont[0][i] = y[i];
        out.dense.rcont[1][i] = dy;
        out.dense.rcont[2][i] = bspl;
        out.dense.rcont[3][i] = dy - h * k7[i] - bspl;
        out.dense.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                     d6 * k6[i] + d7 * k7[i]);
    }
    return true;
}

// geometric output radii anchored at rmax, descending to r0, plus r0 itself
std::vector<double> output_grid(double r0, double rmax, int ppd) {
    std::vector<double> grid;
    const double step = std::log10(rmax / r0) * ppd;
    const int kmax = static_cast<int>(std::floor(step));
    for (int k = kmax; k >= 0; --k) {
        const double r = rmax * std::pow(10.0, -static_cast<double>(k) / ppd);
        if (r > r0 * (1.0 + 1e-12)) grid.push_back(r);
    }
    grid.insert(grid.begin(), r0);
    return grid;
}

Trajectory run(const Problem& problem, const OriginData& origin,
               const IntegratorControls& controls, bool renormalized) {
    if (!(origin.u0 > 0.0)) throw std::domain_error("integrate: requires u0 > 0");
    if (!(problem.alpha <= 1.0))
        throw std::domain_error("integrate: requires alpha <= 1");
    if (renormalized && problem.alpha != 1.0)
        throw std::domain_error("integrate_linear_renormalized: requires alpha = 1");

    const auto expansion = series::taylor_coeffs(problem, origin);
    const double r0 = series::handoff_radius(expansion);
    if (!(controls.rmax > r0))
        throw std::invalid_argument("integrate: rmax must exceed the handoff radius");

    Trajectory traj;
    traj.problem = problem;
    traj.origin = origin;
    traj.handoff_radius = r0;

    const StateVector s0 = series::eval_state(expansion, r0);
    Vec4 y{s0.u, s0.du, s0.v, s0.dv};
    double r = r0;
    double log_scale = 0.0;
    const double u_floor = 1e-12 * origin.u0;
    const double state_cap = renormalized ? 1e100 : 1e300;

    const auto grid = output_grid(r0, controls.rmax, controls.output_points_per_decade);
    std::size_t next_out = 0;

    auto emit = [&](double rq, const Vec4& yq) {
        traj.samples.push_back({rq, yq[0], yq[1], yq[2], yq[3]});
        traj.sample_log_scale.push_back(log_scale);
    };
    emit(r, y);
    ++next_out;

    const Rhs rhs{problem.n, problem.alpha};
    Vec4 k1;
    if (!rhs(r, y, k1)) throw std::domain_error("integrate: invalid startup state");

    double h = 0.1 * r0;
    bool last_rejected = false;
    auto finish = [&](TerminationKind kind, double rstop) {
        traj.termination = {kind, rstop};
        traj.log_scale = log_scale;
        if (!renormalized) traj.sample_log_scale.clear();
        return traj;
    };

    for (long step = 0; step < controls.max_steps; ++step) {
        if (r >= controls.rmax * (1.0 - 1e-15))
            return finish(TerminationKind::ReachedRmax, r);
        h = std::min(h, controls.rmax - r);
        h = std::min(h, r);  // keep stages clear of the drift singularity growth
        if (h < r * 1e-14) return finish(TerminationKind::StepUnderflow, r);

        StepOutcome oc;
        const bool evaluated =
            try_step(rhs, r, y, k1, h, controls.rel_tol, controls.abs_tol, oc);
        if (!evaluated) {
            // a stage left the domain (u <= 0 mid-step): shrink hard
            h *= 0.25;
            last_rejected = true;
            continue;
        }
        if (oc.err > 1.0) {
            double fac = 0.9 * std::pow(oc.err, -0.2);
            h *= std::max(0.2, fac);
            last_rejected = true;
            continue;
        }

        // accepted; locate a positivity crossing inside the step, if any
        const double r_new = r + h;
        bool crossed = oc.y_new[0] <= u_floor;
        if (!crossed) {
            for (double th : {0.25, 0.5, 0.75})
                if (oc.dense.eval(r + th * h)[0] <= u_floor) {
                    crossed = true;
                    break;
                }
        }
        if (crossed) {
            double lo = r, hi = r_new;
            // first sub-point where u <= floor brackets the crossing
            for (double th : {0.25, 0.5, 0.75, 1.0})
                if (oc.dense.eval(r + th * h)[0] <= u_floor) {
                    hi = r + th * h;
                    lo = r + (th - 0.25) * h;
                    break;
                }
            while (hi - lo > 1e-10 * hi) {
                const double mid = 0.5 * (lo + hi);
                (oc.dense.eval(mid)[0] <= u_floor ? hi : lo) = mid;
            }
            const double r_cross = 0.5 * (lo + hi);
            while (next_out < grid.size() && grid[next_out] < r_cross)
                emit(grid[next_out], oc.dense.eval(grid[next_out])), ++next_out;
            emit(r_cross, oc.dense.eval(r_cross));
            return finish(TerminationKind::PositivityLost, r_cross);
        }

        while (next_out < grid.size() && grid[next_out] <= r_new * (1.0 + 1e-15)) {
            const double rq = std::min(grid[next_out], r_new);
            if (rq > traj.samples.back().r * (1.0 + 1e-15))
                emit(rq, rq == r_new ? oc.y_new : oc.dense.eval(rq));
            ++next_out;
        }

        r = r_new;
        y = oc.y_new;
        k1 = oc.k_last;

        double norm = 0.0;
        for (double c : y) norm = std::max(norm, std::abs(c));
        if (norm > state_cap) {
            if (!renormalized) return finish(TerminationKind::Overflow, r);
            const int k = std::ilogb(norm);
            const double scale = std::ldexp(1.0, -k);
            for (auto& c : y) c *= scale;
            for (auto& c : k1) c *= scale;  // valid: RHS is linear for alpha = 1
            log_scale += k * kLn2;
        }

        double fac = 0.9 * std::pow(std::max(oc.err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        if (last_rejected) fac = std::min(fac, 1.0);
        h *= fac;
        last_rejected = false;
    }
    return finish(TerminationKind::StepUnderflow, r);  // max_steps exhausted
}

}  // namespace

std::array<double, 4> ode_rhs(const Problem& problem, const StateVector& s) {
    if (!(s.r > 0.0)) throw std::domain_error("ode_rhs: requires r > 0");
    if (!(s.u > 0.0)) throw std::domain_error("ode_rhs: requires u > 0");
    Vec4 f;
    const Rhs rhs{problem.n, problem.alpha};
    if (!rhs(s.r, {s.u, s.du, s.v, s.dv}, f))
        throw std::domain_error("ode_rhs: state outside domain");
    return f;
}

Trajectory integrate(const Problem& problem, const OriginData& origin,
                     const IntegratorControls& controls) {
    return run(problem, origin, controls, false);
}

Trajectory integrate_linear_renormalized(int n, const OriginData& origin,
                                         const IntegratorControls& controls) {
    if (!(controls.rmax <= 1e4))
        throw std::invalid_argument(
            "integrate_linear_renormalized: rmax above 1e4 is not supported");
    return run({n, 1.0}, origin, controls, true);
}

}  // namespace biharm::ode
