#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biharm/extraction.hpp"
#include "biharm/report.hpp"
#include "biharm/types.hpp"

namespace biharm::pipeline {

enum ExitCode : int {
    kVerified = 0,
    kVerificationFailure = 1,
    kUsageError = 2,
    kIntegrationFailure = 3,
};

struct CaseOptions {
    int n = 3;
    double alpha = 0.0;
    double u0 = 1.0;
    double lap0 = 0.0;
    std::optional<double> rmax;
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<extract::FitModel> fit;  // default chosen per regime
    bool oracle = false;
    bool verify = false;
};

struct CaseResult {
    report::CaseReport report;
    bool report_valid = false;
    int exit_code = kVerified;
    std::string error;  // set when report_valid is false or on refusal
};

/// classify -> integrate (renormalized when alpha = 1) -> functionals ->
/// predicted_law -> ratio_series -> estimate_limit (+ intermediate limits in
/// log-critical regimes) -> optional oracle cross-check. alpha > 1 regimes
/// are catalog-only and refused with kUsageError.
CaseResult run_case(const CaseOptions& options);

/// Per-regime verification band applied by run_case --verify.
double verification_band(int n, double alpha);

struct SweepConfig {
    std::vector<int> n_values;
    std::vector<double> alpha_values;
    double u0 = 1.0;
    double lap0 = 0.0;
    std::optional<double> rmax;
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<extract::FitModel> fit;
    bool verify = true;
    bool oracle = false;
};

/// Flat key-value config, one `key = value` per line, '#' comments,
/// repeated `n` / `alpha` keys build the sweep lists. Throws
/// std::invalid_argument on malformed input or empty lists.
SweepConfig parse_sweep_config(const std::string& text);

struct SweepResult {
    std::vector<CaseResult> cases;  // in config (n-major) order
    int exit_code = kVerified;
};

/// Cartesian n x alpha sweep on a worker pool; results are collected in
/// config order regardless of completion order. Failed cells are marked in
/// their reports; any failure makes the sweep exit code 1.
SweepResult run_sweep(const SweepConfig& config, int jobs);

}  // namespace biharm::pipeline
