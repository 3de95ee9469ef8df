#include "biharm/extraction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "biharm/quadrature.hpp"
#include "biharm/series.hpp"

namespace biharm::extract {

namespace {

void require_reached(const Trajectory& traj, const char* who) {
    if (traj.termination.kind != TerminationKind::ReachedRmax)
        throw std::domain_error(std::string(who) +
                                ": trajectory did not reach rmax (" +
                                to_string(traj.termination.kind) + ")");
}

struct LinFit {
    double c_inf;
    double ssr;
};

// least squares for y ~ c_inf + c1 * x
LinFit fit_affine(std::span<const double> x, std::span<const double> y) {
    const double m = static_cast<double>(x.size());
    double sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sxx += x[i] * x[i];
        sy += y[i];
        sxy += x[i] * y[i];
    }
    const double det = m * sxx - sx * sx;
    const double scale = m * sxx + sx * sx;
    if (!(std::abs(det) > 1e-14 * std::max(scale, 1e-300)))
        throw std::runtime_error("estimate_limit: degenerate normal equations");
    const double c_inf = (sxx * sy - sx * sxy) / det;
    const double c1 = (m * sxy - sx * sy) / det;
    double ssr = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - c_inf - c1 * x[i];
        ssr += e * e;
    }
    return {c_inf, ssr};
}

// subsequence with r >= r_last / 10^decades (at least the last 4 points)
std::vector<RatioPoint> window(const std::vector<RatioPoint>& s, double decades) {
    const double r_lo = s.back().r / std::pow(10.0, decades);
    std::vector<RatioPoint> out;
    for (const auto& p : s)
        if (p.r >= r_lo) out.push_back(p);
    while (out.size() < 4 && out.size() < s.size())
        out.insert(out.begin(), s[s.size() - out.size() - 1]);
    return out;
}

double estimate_on_window(const std::vector<RatioPoint>& w, FitModel model) {
    switch (model) {
        case FitModel::LastValue:
            return w.back().ratio;
        case FitModel::InverseLogFit: {
            std::vector<double> x, y;
            for (const auto& p : w)
                if (p.r > M_E) {
                    x.push_back(1.0 / std::log(p.r));
                    y.push_back(p.ratio);
                }
            if (x.size() < 4)
                throw std::domain_error("estimate_limit: InverseLogFit needs r > e");
            return fit_affine(x, y).c_inf;
        }
        case FitModel::PowerCorrectionFit: {
            double best = 0.0, best_ssr = std::numeric_limits<double>::infinity();
            for (double p : {1.0, 2.0}) {
                std::vector<double> x, y;
                for (const auto& q : w) {
                    x.push_back(std::pow(q.r, -p));
                    y.push_back(q.ratio);
                }
                const LinFit f = fit_affine(x, y);
                if (f.ssr < best_ssr) {
                    best_ssr = f.ssr;
                    best = f.c_inf;
                }
            }
            return best;
        }
        case FitModel::AitkenAccel: {
            double last = w.back().ratio;
            for (std::size_t i = 0; i + 2 < w.size(); ++i) {
                const double d1 = w[i + 1].ratio - w[i].ratio;
                const double d2 = w[i + 2].ratio - w[i + 1].ratio;
                const double den = d2 - d1;
                if (std::abs(den) > 1e-14 * (std::abs(d1) + std::abs(d2)) &&
                    den != 0.0) {
                    const double acc = w[i + 2].ratio - d2 * d2 / den;
                    if (std::isfinite(acc)) last = acc;
                }
            }
            return last;
        }
    }
    throw std::logic_error("estimate_limit: unknown model");
}

}  // namespace

std::string to_string(FitModel model) {
    switch (model) {
        case FitModel::LastValue: return "last";
        case FitModel::InverseLogFit: return "invlog";
        case FitModel::PowerCorrectionFit: return "power";
        case FitModel::AitkenAccel: return "aitken";
    }
    return "unknown";
}

std::optional<FitModel> fit_model_from_string(const std::string& name) {
    if (name == "last") return FitModel::LastValue;
    if (name == "invlog") return FitModel::InverseLogFit;
    if (name == "power") return FitModel::PowerCorrectionFit;
    if (name == "aitken") return FitModel::AitkenAccel;
    return std::nullopt;
}

std::vector<RatioPoint> ratio_series(const Trajectory& traj,
                                     const asym::AsymptoticLaw& law) {
    require_reached(traj, "ratio_series");
    if (law.form == asym::LawForm::ExpMode && traj.problem.alpha != 1.0)
        throw std::domain_error("ratio_series: ExpMode law needs an alpha = 1 trajectory");
    if (law.form != asym::LawForm::ExpMode && !traj.sample_log_scale.empty())
        throw std::domain_error(
            "ratio_series: renormalized trajectory requires an ExpMode law");
    if (!(law.constant > 0.0))
        throw std::domain_error("ratio_series: law constant must be resolved and positive");

    const double r_min = law.r_min_valid();
    std::vector<RatioPoint> out;
    out.reserve(traj.samples.size());
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const double r = traj.samples[i].r;
        if (!(r > r_min)) continue;
        if (law.form == asym::LawForm::ExpMode) {
            out.push_back({r, std::exp(traj.log_u(i) - law.log_value(r))});
        } else {
            out.push_back({r, traj.samples[i].u / law.value(r)});
        }
    }
    return out;
}

LimitEstimate estimate_limit(const std::vector<RatioPoint>& series, FitModel model) {
    if (series.size() < 8)
        throw std::invalid_argument("estimate_limit: needs at least 8 points");
    if (!(series.back().r >= series.front().r * 99.99))
        throw std::invalid_argument("estimate_limit: needs at least 2 decades of data");

    // fit windows in decades; the InverseLogFit primary window is the final
    // 2 decades, the power fit extrapolates best from a shorter one
    std::array<double, 3> windows{2.0, 1.5, 1.0};
    if (model == FitModel::PowerCorrectionFit) windows = {0.75, 1.0, 0.5};

    LimitEstimate est;
    est.model = model;
    if (model == FitModel::LastValue) {
        est.value = series.back().ratio;
        double lo = est.value, hi = est.value;
        for (std::size_t i = series.size() - std::min<std::size_t>(3, series.size());
             i < series.size(); ++i) {
            lo = std::min(lo, series[i].ratio);
            hi = std::max(hi, series[i].ratio);
        }
        est.uncertainty = 0.5 * (hi - lo);
    } else {
        std::array<double, 3> vals{};
        for (int i = 0; i < 3; ++i)
            vals[i] = estimate_on_window(window(series, windows[i]), model);
        est.value = vals[0];
        est.uncertainty =
            0.5 * (*std::max_element(vals.begin(), vals.end()) -
                   *std::min_element(vals.begin(), vals.end()));
    }

    est.tail_min = std::numeric_limits<double>::infinity();
    est.tail_max = -est.tail_min;
    const double r_dec = series.back().r / 10.0;
    for (const auto& p : series)
        if (p.r >= r_dec) {
            est.tail_min = std::min(est.tail_min, p.ratio);
            est.tail_max = std::max(est.tail_max, p.ratio);
        }
    return est;
}

FunctionalValues tail_integral(const Trajectory& traj, TailWeight weight,
                               std::optional<double> tail_exponent) {
    require_reached(traj, "tail_integral");
    const auto& s = traj.samples;
    if (s.size() < 8 || !(s.back().r >= s.front().r * 99.99))
        throw std::domain_error("tail_integral: needs >= 2 decades of samples");
    if (!traj.sample_log_scale.empty())
        throw std::domain_error("tail_integral: renormalized trajectories unsupported");

    const double a = traj.problem.alpha;
    const double w = (weight == TailWeight::TimesT) ? 1.0 : 0.0;
    const double kappa =
        tail_exponent ? *tail_exponent : (traj.problem.n == 1 ? 3.0 : 2.0);
    const double tail_expo = kappa * a + w;
    FunctionalValues out;
    out.tail_model_exponent = tail_expo;
    if (!(tail_expo < -1.0))
        throw std::runtime_error(
            "tail_integral: fitted tail is not integrable (kappa*alpha + w >= -1)");

    // [0, handoff]: termwise integral of the series of u^alpha
    const double r0 = s.front().r;
    const auto expansion = series::taylor_coeffs(traj.problem, traj.origin);
    const auto pow_series = series::series_pow(expansion.u, a);
    double head = 0.0;
    for (int j = 0; j <= pow_series.order(); ++j)
        head += pow_series.coeffs[j] * std::pow(r0, 2 * j + w + 1.0) / (2 * j + w + 1.0);

    // grid part in x = ln t: integrand g(t) dt = g(t) t dx
    std::vector<double> xs(s.size()), ys(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        xs[i] = std::log(s[i].r);
        ys[i] = std::pow(s[i].r, w) * std::pow(s[i].u, a) * s[i].r;
    }
    const double grid_part = quad::cumulative_integral(xs, ys).back();

    // tail: fit ln u ~ ln c + kappa ln r on the final decade
    const double rmax = s.back().r;
    double lnc = 0.0;
    int count = 0;
    for (const auto& p : s)
        if (p.r >= rmax / 10.0) {
            lnc += std::log(p.u) - kappa * std::log(p.r);
            ++count;
        }
    lnc /= count;
    double rms = 0.0;
    for (const auto& p : s)
        if (p.r >= rmax / 10.0) {
            const double e = std::log(p.u) - kappa * std::log(p.r) - lnc;
            rms += e * e;
        }
    rms = std::sqrt(rms / count);
    if (rms > 0.25)
        throw std::runtime_error("tail_integral: tail power-law fit residual too large");

    out.finite_part = head + grid_part;
    out.tail_part =
        std::exp(a * lnc) * std::pow(rmax, tail_expo + 1.0) / (-(tail_expo + 1.0));
    out.error_estimate = 0.5 * std::abs(out.tail_part) + 1e-12 * std::abs(out.finite_part);
    const double total = out.finite_part + out.tail_part;
    if (weight == TailWeight::TimesT) out.D = total;
    else out.N = total;
    return out;
}

std::vector<RatioPoint> aux_integral(const Trajectory& traj, AuxKind kind) {
    const int n = traj.problem.n;
    const double a = traj.problem.alpha;
    const bool ok = (kind == AuxKind::F && n >= 3 && a == -1.0) ||
                    (kind == AuxKind::G && n == 2 && a == -1.0) ||
                    (kind == AuxKind::H && n == 1 && a == -1.0 / 3.0);
    if (!ok) throw std::domain_error("aux_integral: kind does not match the trajectory regime");

    const auto& s = traj.samples;
    if (s.size() < 2) throw std::domain_error("aux_integral: too few samples");
    const double power = (kind == AuxKind::H) ? -1.0 / 3.0 : -1.0;
    const double tw = (kind == AuxKind::H) ? 0.0 : 1.0;

    const double r0 = s.front().r;
    const auto expansion = series::taylor_coeffs(traj.problem, traj.origin);
    const auto pow_series = series::series_pow(expansion.u, power);
    double head = 0.0;
    for (int j = 0; j <= pow_series.order(); ++j)
        head += pow_series.coeffs[j] * std::pow(r0, 2 * j + tw + 1.0) / (2 * j + tw + 1.0);

    std::vector<double> xs(s.size()), ys(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        xs[i] = std::log(s[i].r);
        ys[i] = std::pow(s[i].r, tw) * std::pow(s[i].u, power) * s[i].r;
    }
    const auto cum = quad::cumulative_integral(xs, ys);

    std::vector<RatioPoint> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = {s[i].r, head + cum[i]};
    return out;
}

double compose_headline(int n, double t1, double t2) {
    if (n >= 2) return t1 * std::sqrt(2.0 / t2);
    return t1 * std::pow(4.0 / (3.0 * t2), 0.75);
}

std::vector<IntermediateLimit> intermediate_limits(const Trajectory& traj) {
    const int n = traj.problem.n;
    if (asym::classify(n, traj.problem.alpha).tag != asym::RegimeTag::LogCritical)
        throw std::domain_error("intermediate_limits: requires a log-critical trajectory");
    require_reached(traj, "intermediate_limits");

    const auto& s = traj.samples;
    std::vector<IntermediateLimit> out;
    auto add = [&](std::string name, double target, std::vector<RatioPoint> series,
                   bool tight) {
        IntermediateLimit lim;
        lim.name = std::move(name);
        lim.target = target;
        lim.estimate = estimate_limit(series, FitModel::InverseLogFit);
        lim.tight = tight;
        out.push_back(std::move(lim));
    };

    if (n >= 3) {
        const auto F = aux_integral(traj, AuxKind::F);
        std::vector<RatioPoint> r1, r2, r3;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double r = s[i].r, Fi = F[i].ratio;
            if (!(Fi > 0.0)) continue;
            r1.push_back({r, s[i].v / Fi});
            r2.push_back({r, s[i].u / (r * r * Fi)});
            if (r > 1.0) r3.push_back({r, 2.0 * std::log(r) / (Fi * Fi)});
        }
        const double c = 1.0 / (2.0 * n * (n - 2.0));
        add("lap_over_F", 1.0 / (n - 2.0), std::move(r1), true);
        add("u_over_r2F", c, std::move(r2), true);
        add("two_lnr_over_F2", c, std::move(r3), false);
    } else if (n == 2) {
        const auto G = aux_integral(traj, AuxKind::G);
        std::vector<RatioPoint> r1, r2, r3;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double r = s[i].r, Gi = G[i].ratio;
            if (!(Gi > 0.0) || !(r > 1.0)) continue;
            r1.push_back({r, s[i].u / (Gi * r * r * std::log(r))});
            r3.push_back({r, s[i].v / (Gi * std::log(r))});
            if (r > M_E)
                r2.push_back({r, 2.0 * std::log(std::log(r)) / (Gi * Gi)});
        }
        add("u_over_G_r2_lnr", 0.25, std::move(r1), true);
        add("two_lnlnr_over_G2", 0.25, std::move(r2), false);
        add("lap_over_G_lnr", 1.0, std::move(r3), false);
    } else {
        const auto H = aux_integral(traj, AuxKind::H);
        std::vector<RatioPoint> r1, r2;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double r = s[i].r, Hi = H[i].ratio;
            if (!(Hi > 0.0)) continue;
            r1.push_back({r, s[i].u / (r * r * r * Hi)});
            if (r > 1.0)
                r2.push_back({r, 4.0 * std::log(r) / (3.0 * std::pow(Hi, 4.0 / 3.0))});
        }
        add("u_over_r3H", 1.0 / 6.0, std::move(r1), true);
        add("four_lnr_over_3H43", std::pow(1.0 / 6.0, 1.0 / 3.0), std::move(r2), false);
    }
    return out;
}

}  // namespace biharm::extract
