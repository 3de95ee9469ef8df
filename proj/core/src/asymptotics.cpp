#include "biharm/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "biharm/specfun.hpp"

namespace biharm::asym {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::ExpGrowth: return "ExpGrowth";
        case RegimeTag::PowerLaw: return "PowerLaw";
        case RegimeTag::LogCritical: return "LogCritical";
        case RegimeTag::SolutionDependent: return "SolutionDependent";
        case RegimeTag::SupercriticalCatalog: return "SupercriticalCatalog";
        case RegimeTag::NonexistenceCatalog: return "NonexistenceCatalog";
        case RegimeTag::CriticalCatalog: return "CriticalCatalog";
    }
    return "Unknown";
}

std::string to_string(LawForm form) {
    switch (form) {
        case LawForm::RPower: return "RPower";
        case LawForm::R2SqrtLog: return "R2SqrtLog";
        case LawForm::R2Log: return "R2Log";
        case LawForm::R2LogSqrtLogLog: return "R2LogSqrtLogLog";
        case LawForm::R3Log34: return "R3Log34";
        case LawForm::ExpMode: return "ExpMode";
    }
    return "Unknown";
}

double alpha_critical(int n) { return n >= 2 ? -1.0 : -1.0 / 3.0; }

double sobolev_exponent(int n) {
    return n >= 5 ? static_cast<double>(n + 4) / (n - 4) : kInf;
}

Regime classify(int n, double alpha) {
    if (n < 1) throw std::domain_error("classify: requires n >= 1");
    Regime reg;
    reg.alpha_c = alpha_critical(n);
    reg.p_sobolev = sobolev_exponent(n);
    if (alpha == 1.0) reg.tag = RegimeTag::ExpGrowth;
    else if (alpha > 1.0) {
        if (alpha < reg.p_sobolev) reg.tag = RegimeTag::NonexistenceCatalog;
        else if (alpha == reg.p_sobolev) reg.tag = RegimeTag::CriticalCatalog;
        else reg.tag = RegimeTag::SupercriticalCatalog;
    } else if (alpha > reg.alpha_c) reg.tag = RegimeTag::PowerLaw;
    else if (alpha == reg.alpha_c) reg.tag = RegimeTag::LogCritical;
    else reg.tag = RegimeTag::SolutionDependent;
    return reg;
}

double powerlaw_constant(int n, double alpha) {
    if (classify(n, alpha).tag != RegimeTag::PowerLaw)
        throw std::domain_error("powerlaw_constant: (n, alpha) not in the PowerLaw regime");
    const double b = 4.0 * alpha / (1.0 - alpha);
    const double f1 = n + b, f2 = n + b + 2.0, f3 = b + 2.0, f4 = b + 4.0;
    if (!(f1 > 0.0 && f2 > 0.0 && f3 > 0.0 && f4 > 0.0))
        throw std::logic_error("powerlaw_constant: factor positivity violated");
    return std::pow(f1 * f2 * f3 * f4, -1.0 / (1.0 - alpha));
}

double supercritical_constant(int n, double alpha) {
    if (classify(n, alpha).tag != RegimeTag::SupercriticalCatalog)
        throw std::domain_error(
            "supercritical_constant: requires n >= 5 and alpha > p_S(2)");
    const double m = 4.0 / (alpha - 1.0);
    return std::pow(m * (m + 2.0) * (n - 2.0 - m) * (n - 4.0 - m),
                    -1.0 / (1.0 - alpha));
}

double AsymptoticLaw::log_value(double r) const {
    switch (form) {
        case LawForm::RPower: return std::log(constant) + exponent * std::log(r);
        case LawForm::R2SqrtLog:
            return std::log(constant) + 2.0 * std::log(r) +
                   0.5 * std::log(std::log(r));
        case LawForm::R2Log:
            return std::log(constant) + 2.0 * std::log(r) + std::log(std::log(r));
        case LawForm::R2LogSqrtLogLog:
            return std::log(constant) + 2.0 * std::log(r) + std::log(std::log(r)) +
                   0.5 * std::log(std::log(std::log(r)));
        case LawForm::R3Log34:
            return std::log(constant) + 3.0 * std::log(r) +
                   0.75 * std::log(std::log(r));
        case LawForm::ExpMode:
            return std::log(constant) - 0.5 * (n - 1) * std::log(r) + r;
    }
    return 0.0;
}

double AsymptoticLaw::value(double r) const { return std::exp(log_value(r)); }

double AsymptoticLaw::r_min_valid() const {
    switch (form) {
        case LawForm::RPower:
        case LawForm::ExpMode: return 0.0;
        case LawForm::R2SqrtLog:
        case LawForm::R2Log:
        case LawForm::R3Log34: return 1.0;
        case LawForm::R2LogSqrtLogLog: return M_E;
    }
    return 0.0;
}

AsymptoticLaw predicted_law(const Problem& problem, const Functionals& f) {
    const Regime reg = classify(problem.n, problem.alpha);
    const int n = problem.n;
    AsymptoticLaw law;
    law.n = n;
    auto need = [](const std::optional<double>& v, const char* name) {
        if (!v) throw std::invalid_argument(std::string("predicted_law: missing functional ") + name);
        return *v;
    };
    switch (reg.tag) {
        case RegimeTag::ExpGrowth: {
            law.form = LawForm::ExpMode;
            law.exponent = -0.5 * (n - 1);
            const double u0 = need(f.u0, "u0");
            const double lap0 = need(f.lap0, "lap0");
            law.constant = (u0 + lap0) * specfun::gamma_fn(0.5 * n) *
                           std::pow(2.0, 0.5 * (n - 5)) / std::sqrt(M_PI);
            law.constant_closed_form = false;
            break;
        }
        case RegimeTag::PowerLaw:
            law.form = LawForm::RPower;
            law.exponent = 4.0 / (1.0 - problem.alpha);
            law.constant = powerlaw_constant(n, problem.alpha);
            break;
        case RegimeTag::LogCritical:
            if (n >= 3) {
                law.form = LawForm::R2SqrtLog;
                law.exponent = 2.0;
                law.constant = 1.0 / std::sqrt(static_cast<double>(n) * (n - 2));
            } else if (n == 2) {
                law.form = LawForm::R2LogSqrtLogLog;
                law.exponent = 2.0;
                law.constant = 1.0 / std::sqrt(2.0);
            } else {
                law.form = LawForm::R3Log34;
                law.exponent = 3.0;
                law.constant = std::pow(2.0 / 9.0, 0.75);
            }
            break;
        case RegimeTag::SolutionDependent:
            law.constant_closed_form = false;
            if (n >= 3) {
                law.form = LawForm::RPower;
                law.exponent = 2.0;
                law.constant =
                    (need(f.lap0, "lap0") + need(f.D, "D") / (n - 2)) / (2.0 * n);
            } else if (n == 2) {
                law.form = LawForm::R2Log;
                law.exponent = 2.0;
                law.constant = need(f.D, "D") / 4.0;
            } else {
                law.form = LawForm::RPower;
                law.exponent = 3.0;
                law.constant = need(f.N, "N") / 6.0;
            }
            break;
        default:
            throw std::domain_error("predicted_law: regime " + to_string(reg.tag) +
                                    " is catalog-only");
    }
    return law;
}

double subsolution_M(int n, double alpha) {
    const double k = 4.0 / (1.0 - alpha);
    return k * (k + n - 2.0) * (k - 2.0) * (k + n - 4.0);
}

double subsolution_margin(int n, double alpha, double epsilon, double v0,
                          double lapv0, std::span<const double> r_grid) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::domain_error("subsolution_margin: requires alpha in [0, 1)");
    if (!(epsilon > 0.0)) throw std::domain_error("subsolution_margin: requires epsilon > 0");
    const double k = 4.0 / (1.0 - alpha);
    const double M = subsolution_M(n, alpha);
    double margin = std::numeric_limits<double>::infinity();
    for (double r : r_grid) {
        if (!(r > 0.0)) throw std::domain_error("subsolution_margin: grid radii must be positive");
        const double v = v0 + lapv0 * r * r / (2.0 * n) + epsilon * std::pow(r, k);
        const double lhs = std::pow(v, alpha);
        const double rhs = epsilon * M * std::pow(r, k - 4.0);  // Delta^2 v_eps, exact
        // scale-invariant margin: the raw difference spans ~40 orders of
        // magnitude over a wide grid, the normalized one keeps the zero of
        // the equality configuration at roundoff level
        margin = std::min(margin, (lhs - rhs) / std::max(lhs, rhs));
    }
    return margin;
}

}  // namespace biharm::asym
