#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biharm/extraction.hpp"
#include "biharm/types.hpp"

namespace biharm::report {

struct OracleCheck {
    double sup_diff = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyResult {
    double band = 0.0;
    double rel_error = 0.0;
    bool passed = false;
};

/// Everything a single verification run produces. A report is emitted even
/// when integration terminates early (PositivityLost carries the crossing
/// radius in termination_r).
struct CaseReport {
    Problem problem;
    OriginData origin;
    IntegratorControls controls;
    std::string regime;

    std::string law_form;
    double law_exponent = 0.0;
    std::string constant_source;  // "closed_form" or "functionals"
    double predicted_constant = 0.0;

    std::optional<std::string> functional_name;  // "D" or "N"
    std::optional<extract::FunctionalValues> functionals;

    std::optional<extract::LimitEstimate> limit;
    double estimated_constant = 0.0;
    std::vector<extract::IntermediateLimit> intermediates;

    std::optional<OracleCheck> oracle;
    std::string termination;
    double termination_r = 0.0;
    std::optional<VerifyResult> verify;
    double wall_time_seconds = 0.0;
};

/// Deterministic JSON document: fixed field order, snake_case keys, reals
/// with 17 significant digits, schema: 1. Byte-identical across runs apart
/// from wall_time_seconds.
std::string to_json(const CaseReport& report);
std::string to_json(const std::vector<CaseReport>& reports);

/// RFC-4180 CSV. Fixed header:
/// n,alpha,regime,law_form,predicted_constant,estimated_constant,rel_error,
/// band,pass/fail,termination,rmax,seconds
std::string csv_header();
std::string to_csv_row(const CaseReport& report);
std::string to_csv(const std::vector<CaseReport>& reports);

/// %.17g formatting shared by both emitters.
std::string format_real(double x);

}  // namespace biharm::report
