#include "biharm/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "biharm/asymptotics.hpp"
#include "biharm/integrate.hpp"
#include "biharm/oracle.hpp"

namespace biharm::pipeline {

namespace {

double default_rmax(const asym::Regime& regime) {
    switch (regime.tag) {
        case asym::RegimeTag::ExpGrowth: return 800.0;
        case asym::RegimeTag::PowerLaw: return 1e4;
        case asym::RegimeTag::LogCritical: return 1e6;
        case asym::RegimeTag::SolutionDependent: return 1e5;
        default: return 0.0;
    }
}

extract::FitModel default_fit(int n, const asym::Regime& regime) {
    if (regime.tag == asym::RegimeTag::LogCritical) return extract::FitModel::InverseLogFit;
    if (regime.tag == asym::RegimeTag::SolutionDependent && n == 2)
        return extract::FitModel::InverseLogFit;  // r^2 ln r law, 1/ln correction
    return extract::FitModel::PowerCorrectionFit;
}

// 4-point Lagrange interpolation of the oracle's uniform-grid solution
double interp_uniform(const std::vector<double>& y, double dx, double r) {
    const std::size_t m = y.size();
    const double s = r / dx;
    std::size_t i = static_cast<std::size_t>(s);
    std::size_t lo = (i == 0) ? 0 : i - 1;
    if (lo + 3 >= m) lo = m - 4;
    double acc = 0.0;
    for (std::size_t j = lo; j < lo + 4; ++j) {
        double w = 1.0;
        for (std::size_t k = lo; k < lo + 4; ++k)
            if (k != j) w *= (s - k) / (static_cast<double>(j) - k);
        acc += w * y[j];
    }
    return acc;
}

report::OracleCheck oracle_check(const Problem& problem, const OriginData& origin,
                                 const Trajectory& traj) {
    oracle::PicardConfig config;
    config.R = std::min(5.0, 0.9 * traj.rmax_reached());
    const auto sol = oracle::picard_solve(problem, origin, config);

    double sup_u = 0.0, sup_diff = 0.0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const double r = traj.samples[i].r;
        if (r > sol.final_radius) break;
        const double u_traj = std::exp(traj.log_u(i));
        const double u_orac = interp_uniform(sol.u, sol.dx, r);
        sup_u = std::max(sup_u, std::abs(u_traj));
        sup_diff = std::max(sup_diff, std::abs(u_traj - u_orac));
    }
    report::OracleCheck check;
    check.sup_diff = sup_diff;
    check.tolerance = 1e-8 * (1.0 + sup_u);
    check.passed = sol.converged && sup_diff <= check.tolerance;
    return check;
}

}  // namespace

double verification_band(int n, double alpha) {
    const auto regime = asym::classify(n, alpha);
    switch (regime.tag) {
        case asym::RegimeTag::ExpGrowth: return 1e-6;
        case asym::RegimeTag::PowerLaw: return 1e-3;
        case asym::RegimeTag::SolutionDependent: return n == 2 ? 0.02 : 1e-3;
        case asym::RegimeTag::LogCritical: return 0.10;  // intermediates carry 5%
        default: return 0.0;
    }
}

CaseResult run_case(const CaseOptions& options) {
    using Clock = std::chrono::steady_clock;
    const auto t_start = Clock::now();

    CaseResult result;
    report::CaseReport& rep = result.report;
    rep.problem = {options.n, options.alpha};
    rep.origin = {options.u0, options.lap0};

    if (options.n < 1) {
        result.exit_code = kUsageError;
        result.error = "n must be >= 1";
        return result;
    }
    const auto regime = asym::classify(options.n, options.alpha);
    rep.regime = asym::to_string(regime.tag);
    if (!regime.integrable()) {
        result.exit_code = kUsageError;
        result.error = "regime " + rep.regime + ", integration refused";
        return result;
    }
    if (!(options.u0 > 0.0)) {
        result.exit_code = kUsageError;
        result.error = "u0 must be positive";
        return result;
    }

    IntegratorControls controls;
    const bool linear = options.alpha == 1.0;
    controls.rel_tol = options.rel_tol.value_or(linear ? 1e-12 : 1e-10);
    controls.abs_tol = options.abs_tol.value_or(linear ? 1e-14 : 1e-12);
    controls.rmax = options.rmax.value_or(default_rmax(regime));
    rep.controls = controls;

    try {
        const Problem problem = rep.problem;
        const OriginData origin = rep.origin;
        const Trajectory traj =
            linear ? ode::integrate_linear_renormalized(problem.n, origin, controls)
                   : ode::integrate(problem, origin, controls);
        rep.termination = to_string(traj.termination.kind);
        rep.termination_r = traj.termination.r;

        if (traj.termination.kind != TerminationKind::ReachedRmax) {
            result.report_valid = true;
            result.exit_code = kIntegrationFailure;
            result.error = "integration terminated: " + rep.termination;
            rep.wall_time_seconds =
                std::chrono::duration<double>(Clock::now() - t_start).count();
            return result;
        }

        asym::Functionals fn;
        fn.u0 = origin.u0;
        fn.lap0 = origin.lap0;
        if (regime.tag == asym::RegimeTag::SolutionDependent) {
            if (problem.n >= 2) {
                const auto fv = extract::tail_integral(traj, extract::TailWeight::TimesT);
                fn.D = fv.value();
                rep.functionals = fv;
                rep.functional_name = "D";
            } else {
                const auto fv = extract::tail_integral(traj, extract::TailWeight::Plain);
                fn.N = fv.value();
                rep.functionals = fv;
                rep.functional_name = "N";
            }
        }

        const auto law = asym::predicted_law(problem, fn);
        rep.law_form = asym::to_string(law.form);
        rep.law_exponent = law.exponent;
        rep.constant_source = law.constant_closed_form ? "closed_form" : "functionals";
        rep.predicted_constant = law.constant;

        const auto series = extract::ratio_series(traj, law);
        const auto fit = options.fit.value_or(default_fit(problem.n, regime));
        const auto limit = extract::estimate_limit(series, fit);
        rep.limit = limit;
        rep.estimated_constant = limit.value * law.constant;

        if (regime.tag == asym::RegimeTag::LogCritical)
            rep.intermediates = extract::intermediate_limits(traj);

        if (options.oracle) rep.oracle = oracle_check(problem, origin, traj);

        if (options.verify) {
            report::VerifyResult vr;
            vr.band = verification_band(problem.n, problem.alpha);
            vr.rel_error = std::abs(limit.value - 1.0);
            vr.passed = vr.rel_error <= vr.band;
            if (regime.tag == asym::RegimeTag::LogCritical)
                for (const auto& lim : rep.intermediates)
                    if (lim.tight) vr.passed = vr.passed && lim.rel_error() <= 0.05;
            if (rep.oracle) vr.passed = vr.passed && rep.oracle->passed;
            rep.verify = vr;
            result.exit_code = vr.passed ? kVerified : kVerificationFailure;
        }
        result.report_valid = true;
    } catch (const std::invalid_argument& e) {
        result.exit_code = kUsageError;
        result.error = e.what();
    } catch (const std::exception& e) {
        result.exit_code = kIntegrationFailure;
        result.error = e.what();
    }
    rep.wall_time_seconds =
        std::chrono::duration<double>(Clock::now() - t_start).count();
    return result;
}

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos)
            throw std::invalid_argument("sweep config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "n") config.n_values.push_back(std::stoi(value));
            else if (key == "alpha") config.alpha_values.push_back(std::stod(value));
            else if (key == "u0") config.u0 = std::stod(value);
            else if (key == "lap0") config.lap0 = std::stod(value);
            else if (key == "rmax") config.rmax = std::stod(value);
            else if (key == "rel_tol") config.rel_tol = std::stod(value);
            else if (key == "abs_tol") config.abs_tol = std::stod(value);
            else if (key == "fit") {
                const auto model = extract::fit_model_from_string(value);
                if (!model) throw std::invalid_argument("unknown fit model " + value);
                config.fit = model;
            } else if (key == "verify") config.verify = (value == "true" || value == "1");
            else if (key == "oracle") config.oracle = (value == "true" || value == "1");
            else
                throw std::invalid_argument("unknown key " + key);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("sweep config line " + std::to_string(lineno) +
                                        ": bad value for " + key);
        }
    }
    if (config.n_values.empty())
        throw std::invalid_argument("sweep config: no n values given");
    if (config.alpha_values.empty())
        throw std::invalid_argument("sweep config: no alpha values given");
    return config;
}

SweepResult run_sweep(const SweepConfig& config, int jobs) {
    std::vector<CaseOptions> cases;
    for (int n : config.n_values)
        for (double alpha : config.alpha_values) {
            CaseOptions opt;
            opt.n = n;
            opt.alpha = alpha;
            opt.u0 = config.u0;
            opt.lap0 = config.lap0;
            opt.rmax = config.rmax;
            opt.rel_tol = config.rel_tol;
            opt.abs_tol = config.abs_tol;
            opt.fit = config.fit;
            opt.verify = config.verify;
            opt.oracle = config.oracle;
            cases.push_back(opt);
        }

    SweepResult result;
    result.cases.resize(cases.size());
    if (jobs < 1) jobs = static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(cases.size())));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            result.cases[i] = run_case(cases[i]);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (const auto& c : result.cases)
        if (c.exit_code != kVerified) result.exit_code = kVerificationFailure;
    return result;
}

}  // namespace biharm::pipeline
