#include "biharm/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace biharm::series {

double EvenSeries::value(double r) const {
    const double x = r * r;
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double EvenSeries::derivative(double r) const {
    const double x = r * r;
    double acc = 0.0;
    for (int j = order(); j >= 1; --j) acc = acc * x + 2.0 * j * coeffs[j];
    return acc * r;
}

EvenSeries series_pow(const EvenSeries& s, double alpha, int out_order) {
    if (s.coeffs.empty() || !(s.coeffs[0] > 0.0))
        throw std::domain_error("series_pow: leading coefficient must be positive");
    const int K = s.order();
    const int M = out_order < 0 ? K : out_order;
    const double c0 = s.coeffs[0];
    EvenSeries w;
    w.coeffs.assign(M + 1, 0.0);
    w.coeffs[0] = std::pow(c0, alpha);
    for (int k = 1; k <= M; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= std::min(k, K); ++j)
            acc += (alpha * j - (k - j)) * s.coeffs[j] * w.coeffs[k - j];
        w.coeffs[k] = acc / (k * c0);
    }
    return w;
}

OriginExpansion taylor_coeffs(const Problem& problem, const OriginData& origin,
                              int order) {
    if (!(origin.u0 > 0.0)) throw std::domain_error("taylor_coeffs: requires u0 > 0");
    if (order < 2) throw std::invalid_argument("taylor_coeffs: order must be >= 2");
    if (order > 30)
        throw std::invalid_argument(
            "taylor_coeffs: order > 30 is unstable for series power composition");
    if (!(problem.alpha <= 1.0))
        throw std::domain_error("taylor_coeffs: integration requires alpha <= 1");

    const int n = problem.n;
    const double a = problem.alpha;
    const int K = order;

    OriginExpansion out;
    out.problem = problem;
    out.origin = origin;
    auto& c = out.u.coeffs;
    auto& d = out.lap.coeffs;
    c.assign(K + 1, 0.0);
    d.assign(K + 1, 0.0);
    c[0] = origin.u0;
    d[0] = origin.lap0;

    // w: coefficients of u^alpha, extended alongside c
    std::vector<double> w(K + 1, 0.0);
    w[0] = std::pow(origin.u0, a);
    for (int j = 0; j < K; ++j) {
        if (j > 0) {
            double acc = 0.0;
            for (int i = 1; i <= j; ++i) acc += (a * i - (j - i)) * c[i] * w[j - i];
            w[j] = acc / (j * c[0]);
        }
        const double lift = (2.0 * j + 2.0) * (2.0 * j + n);
        d[j + 1] = w[j] / lift;
        c[j + 1] = d[j] / lift;
    }
    {
        // one-order lookahead for the truncation estimate
        double acc = 0.0;
        for (int i = 1; i <= K; ++i) acc += (a * i - (K - i)) * c[i] * w[K - i];
        w[K] = acc / (K * c[0]);
        const double lift = (2.0 * K + 2.0) * (2.0 * K + n);
        out.u_next = d[K] / lift;
        out.lap_next = w[K] / lift;
    }
    return out;
}

double series_max_radius(const OriginExpansion& exp) {
    const int K = exp.u.order();
    const double scale = std::abs(exp.u.coeffs[0]);
    const double m = std::max(std::abs(exp.u_next), std::abs(exp.lap_next));
    // terminating series (e.g. the alpha = 0 quartic) is exact everywhere
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    const double r = std::pow(1e-14 * scale / m, 1.0 / (2.0 * (K + 1)));
    return std::min(0.5, std::max(1e-6, r));
}

double handoff_radius(const OriginExpansion& exp) {
    return std::min(series_max_radius(exp), 1e-2);
}

StateVector eval_state(const OriginExpansion& exp, double r) {
    if (!(r >= 0.0)) throw std::domain_error("eval_state: requires r >= 0");
    if (r > series_max_radius(exp) * (1.0 + 1e-12))
        throw std::domain_error("eval_state: r beyond series validity radius");
    StateVector s;
    s.r = r;
    s.u = exp.u.value(r);
    s.du = exp.u.derivative(r);
    s.v = exp.lap.value(r);
    s.dv = exp.lap.derivative(r);
    return s;
}

}  // namespace biharm::series
