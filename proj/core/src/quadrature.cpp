#include "biharm/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace biharm::quad {

namespace {

struct Cubic {
    double k0, k1, k2, k3;  // p(x) = k0 + k1 x + k2 x^2 + k3 x^3

    double integral(double a, double b) const {
        auto anti = [&](double x) {
            return ((k3 / 4.0 * x + k2 / 3.0) * x + k1 / 2.0) * x * x + k0 * x;
        };
        return anti(b) - anti(a);
    }

    // integral of x^w p(x) over [a, b] for integer w >= 0
    double weighted_integral(int w, double a, double b) const {
        const double k[4] = {k0, k1, k2, k3};
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double p = w + j + 1.0;
            acc += k[j] * (std::pow(b, p) - std::pow(a, p)) / p;
        }
        return acc;
    }
};

// Newton-form interpolation through (t[i], f[i]) expanded into monomials
Cubic fit_cubic(const std::array<double, 4>& t, const std::array<double, 4>& f) {
    const double f01 = (f[1] - f[0]) / (t[1] - t[0]);
    const double f12 = (f[2] - f[1]) / (t[2] - t[1]);
    const double f23 = (f[3] - f[2]) / (t[3] - t[2]);
    const double f012 = (f12 - f01) / (t[2] - t[0]);
    const double f123 = (f23 - f12) / (t[3] - t[1]);
    const double f0123 = (f123 - f012) / (t[3] - t[0]);

    const double s1 = t[0] + t[1];
    const double s2 = t[0] + t[1] + t[2];
    const double p1 = t[0] * t[1];
    const double p2 = t[0] * t[1] + t[0] * t[2] + t[1] * t[2];
    const double p3 = t[0] * t[1] * t[2];
    Cubic c;
    c.k3 = f0123;
    c.k2 = f012 - f0123 * s2;
    c.k1 = f01 - f012 * s1 + f0123 * p2;
    c.k0 = f[0] - f01 * t[0] + f012 * p1 - f0123 * p3;
    return c;
}

template <typename Panel>
std::vector<double> cumulative_cubic(std::span<const double> xs,
                                     std::span<const double> ys, Panel panel) {
    const std::size_t m = xs.size();
    std::vector<double> out(m, 0.0);
    if (m < 2) return out;
    if (m < 4) {  // trapezoid fallback for tiny inputs
        for (std::size_t i = 0; i + 1 < m; ++i)
            out[i + 1] = out[i] + 0.5 * (xs[i + 1] - xs[i]) * (ys[i] + ys[i + 1]);
        return out;
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        std::size_t lo = (i == 0) ? 0 : i - 1;
        if (lo + 3 >= m) lo = m - 4;
        const std::array<double, 4> t{xs[lo], xs[lo + 1], xs[lo + 2], xs[lo + 3]};
        const std::array<double, 4> f{ys[lo], ys[lo + 1], ys[lo + 2], ys[lo + 3]};
        out[i + 1] = out[i] + panel(fit_cubic(t, f), xs[i], xs[i + 1]);
    }
    return out;
}

}  // namespace

std::vector<double> cumulative_integral(std::span<const double> xs,
                                        std::span<const double> ys) {
    if (ys.size() != xs.size())
        throw std::invalid_argument("cumulative_integral: size mismatch");
    return cumulative_cubic(xs, ys,
                            [](const Cubic& c, double a, double b) {
                                return c.integral(a, b);
                            });
}

std::vector<double> cumulative_simpson_uniform(double dx, std::span<const double> ys) {
    if (!(dx > 0.0)) throw std::invalid_argument("cumulative_simpson_uniform: dx <= 0");
    std::vector<double> xs(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = i * dx;
    return cumulative_cubic(xs, ys,
                            [](const Cubic& c, double a, double b) {
                                return c.integral(a, b);
                            });
}

std::vector<double> cumulative_weighted_uniform(double dx, std::span<const double> ys,
                                                int weight) {
    if (!(dx > 0.0)) throw std::invalid_argument("cumulative_weighted_uniform: dx <= 0");
    if (weight < 0)
        throw std::invalid_argument("cumulative_weighted_uniform: weight < 0");
    std::vector<double> xs(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = i * dx;
    return cumulative_cubic(xs, ys,
                            [weight](const Cubic& c, double a, double b) {
                                return c.weighted_integral(weight, a, b);
                            });
}

}  // namespace biharm::quad
