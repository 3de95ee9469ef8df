// Command-line front end: single-case verification runs and (n, alpha)
// sweeps, with JSON/CSV report emission.
//
// Exit codes: 0 verified, 1 verification failure, 2 usage error,
// 3 integration failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "biharm/pipeline.hpp"
#include "biharm/report.hpp"

namespace {

using biharm::pipeline::kUsageError;

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open output file " << out_path << "\n";
        return kUsageError;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of the asymptotic growth laws of "
                 "positive radial solutions to the biharmonic equation "
                 "Delta^2 u = u^alpha"};
    app.require_subcommand(0, 1);

    int n = 0;
    double alpha = 0.0, u0 = 1.0, lap0 = 0.0;
    std::optional<double> rmax, rel_tol, abs_tol;
    std::string fit, format = "json", out_path;
    bool use_oracle = false, verify = false;

    app.add_option("--n", n, "space dimension (>= 1)");
    app.add_option("--alpha", alpha, "exponent of the nonlinearity");
    app.add_option("--u0", u0, "u(0), must be positive");
    app.add_option("--lap0", lap0, "Delta u(0)");
    app.add_option("--rmax", rmax, "integration end radius (default per regime)");
    app.add_option("--rel-tol", rel_tol, "integrator relative tolerance");
    app.add_option("--abs-tol", abs_tol, "integrator absolute tolerance");
    app.add_option("--fit", fit, "limit model: last|invlog|power|aitken");
    app.add_flag("--oracle", use_oracle, "cross-check against the Picard oracle");
    app.add_flag("--verify", verify, "verify the estimate against its band");
    app.add_option("--format", format, "report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "write the report to a file");

    auto* sweep_cmd = app.add_subcommand("sweep", "run an (n, alpha) sweep from a config file");
    std::string sweep_config_path;
    int jobs = 0;
    sweep_cmd->add_option("--config", sweep_config_path, "flat key-value sweep config")
        ->required();
    sweep_cmd->add_option("--jobs", jobs, "worker pool size (default: hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsageError;
    }

    if (sweep_cmd->parsed()) {
        std::ifstream config_file(sweep_config_path);
        if (!config_file) {
            std::cerr << "error: cannot read config " << sweep_config_path << "\n";
            return kUsageError;
        }
        std::string text((std::istreambuf_iterator<char>(config_file)),
                         std::istreambuf_iterator<char>());
        biharm::pipeline::SweepConfig config;
        try {
            config = biharm::pipeline::parse_sweep_config(text);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kUsageError;
        }
        const auto sweep = biharm::pipeline::run_sweep(config, jobs);
        std::vector<biharm::report::CaseReport> reports;
        for (const auto& c : sweep.cases) reports.push_back(c.report);
        const std::string text_out = format == "csv" ? biharm::report::to_csv(reports)
                                                     : biharm::report::to_json(reports);
        if (const int rc = write_output(text_out, out_path)) return rc;
        for (const auto& c : sweep.cases)
            if (!c.error.empty())
                std::cerr << "case n=" << c.report.problem.n
                          << " alpha=" << c.report.problem.alpha << ": " << c.error << "\n";
        return sweep.exit_code;
    }

    if (n == 0) {
        std::cerr << "error: --n and --alpha are required (see --help)\n";
        return kUsageError;
    }

    biharm::pipeline::CaseOptions options;
    options.n = n;
    options.alpha = alpha;
    options.u0 = u0;
    options.lap0 = lap0;
    options.rmax = rmax;
    options.rel_tol = rel_tol;
    options.abs_tol = abs_tol;
    options.oracle = use_oracle;
    options.verify = verify;
    if (!fit.empty()) {
        options.fit = biharm::extract::fit_model_from_string(fit);
        if (!options.fit) {
            std::cerr << "error: unknown fit model " << fit << "\n";
            return kUsageError;
        }
    }

    const auto result = biharm::pipeline::run_case(options);
    if (!result.error.empty()) std::cerr << "error: " << result.error << "\n";
    if (result.report_valid) {
        const std::string text =
            format == "csv"
                ? biharm::report::csv_header() + "\n" +
                      biharm::report::to_csv_row(result.report) + "\n"
                : biharm::report::to_json(result.report);
        if (const int rc = write_output(text, out_path)) return rc;
    }
    return result.exit_code;
}
