#include "biharm/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace biharm::report {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

class JsonWriter {
public:
    void key(const std::string& k) {
        sep();
        buf_ << '"' << k << "\":";
        pending_value_ = true;
    }
    void value_str(const std::string& v) { raw('"' + json_escape(v) + '"'); }
    void value_real(double v) { raw(format_real(v)); }
    void value_int(long v) { raw(std::to_string(v)); }
    void value_bool(bool v) { raw(v ? "true" : "false"); }
    void value_null() { raw("null"); }
    void open_object() { raw_open('{'); }
    void close_object() { raw_close('}'); }
    void open_array() { raw_open('['); }
    void close_array() { raw_close(']'); }

    void field(const std::string& k, const std::string& v) { key(k); value_str(v); }
    void field(const std::string& k, double v) { key(k); value_real(v); }
    void field(const std::string& k, long v) { key(k); value_int(v); }
    void field(const std::string& k, int v) { key(k); value_int(v); }
    void field(const std::string& k, bool v) { key(k); value_bool(v); }

    std::string str() const { return buf_.str(); }

private:
    void sep() {
        if (needs_comma_) buf_ << ',';
        needs_comma_ = false;
    }
    void raw(const std::string& s) {
        if (!pending_value_) sep();
        pending_value_ = false;
        buf_ << s;
        needs_comma_ = true;
    }
    void raw_open(char c) {
        if (!pending_value_) sep();
        pending_value_ = false;
        buf_ << c;
        needs_comma_ = false;
    }
    void raw_close(char c) {
        buf_ << c;
        needs_comma_ = true;
        pending_value_ = false;
    }

    std::ostringstream buf_;
    bool needs_comma_ = false;
    bool pending_value_ = false;
};

void write_report_body(JsonWriter& w, const CaseReport& r) {
    w.open_object();
    w.field("schema", 1);
    w.key("problem");
    w.open_object();
    w.field("n", r.problem.n);
    w.field("alpha", r.problem.alpha);
    w.close_object();
    w.key("origin");
    w.open_object();
    w.field("u0", r.origin.u0);
    w.field("lap0", r.origin.lap0);
    w.close_object();
    w.key("controls");
    w.open_object();
    w.field("rmax", r.controls.rmax);
    w.field("rel_tol", r.controls.rel_tol);
    w.field("abs_tol", r.controls.abs_tol);
    w.field("output_points_per_decade", r.controls.output_points_per_decade);
    w.close_object();
    w.field("regime", r.regime);
    w.key("law");
    w.open_object();
    w.field("form", r.law_form);
    w.field("exponent", r.law_exponent);
    w.field("constant_source", r.constant_source);
    w.field("constant", r.predicted_constant);
    w.close_object();
    w.key("functionals");
    if (r.functionals) {
        w.open_object();
        w.field("name", *r.functional_name);
        w.field("value", r.functionals->value());
        w.field("finite_part", r.functionals->finite_part);
        w.field("tail_part", r.functionals->tail_part);
        w.field("tail_model_exponent", r.functionals->tail_model_exponent);
        w.field("error_estimate", r.functionals->error_estimate);
        w.close_object();
    } else {
        w.value_null();
    }
    w.key("limit");
    if (r.limit) {
        w.open_object();
        w.field("model", extract::to_string(r.limit->model));
        w.field("value", r.limit->value);
        w.field("uncertainty", r.limit->uncertainty);
        w.field("tail_min", r.limit->tail_min);
        w.field("tail_max", r.limit->tail_max);
        w.field("estimated_constant", r.estimated_constant);
        w.close_object();
    } else {
        w.value_null();
    }
    w.key("intermediates");
    w.open_array();
    for (const auto& lim : r.intermediates) {
        w.open_object();
        w.field("name", lim.name);
        w.field("target", lim.target);
        w.field("tight", lim.tight);
        w.field("value", lim.estimate.value);
        w.field("uncertainty", lim.estimate.uncertainty);
        w.field("rel_error", lim.rel_error());
        w.close_object();
    }
    w.close_array();
    w.key("oracle");
    if (r.oracle) {
        w.open_object();
        w.field("checked", true);
        w.field("sup_diff", r.oracle->sup_diff);
        w.field("tolerance", r.oracle->tolerance);
        w.field("passed", r.oracle->passed);
        w.close_object();
    } else {
        w.value_null();
    }
    w.key("termination");
    w.open_object();
    w.field("kind", r.termination);
    w.field("r", r.termination_r);
    w.close_object();
    w.key("verify");
    if (r.verify) {
        w.open_object();
        w.field("band", r.verify->band);
        w.field("rel_error", r.verify->rel_error);
        w.field("passed", r.verify->passed);
        w.close_object();
    } else {
        w.value_null();
    }
    w.field("wall_time_seconds", r.wall_time_seconds);
    w.close_object();
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string to_json(const CaseReport& report) {
    JsonWriter w;
    write_report_body(w, report);
    return w.str() + "\n";
}

std::string to_json(const std::vector<CaseReport>& reports) {
    JsonWriter w;
    w.open_object();
    w.field("schema", 1);
    w.key("cases");
    w.open_array();
    for (const auto& r : reports) write_report_body(w, r);
    w.close_array();
    w.close_object();
    return w.str() + "\n";
}

std::string csv_header() {
    return "n,alpha,regime,law_form,predicted_constant,estimated_constant,"
           "rel_error,band,pass/fail,termination,rmax,seconds";
}

std::string to_csv_row(const CaseReport& r) {
    std::ostringstream out;
    const double rel = r.verify ? r.verify->rel_error
                                : (r.limit ? std::abs(r.limit->value - 1.0)
                                           : std::nan(""));
    out << r.problem.n << ',' << format_real(r.problem.alpha) << ','
        << csv_field(r.regime) << ',' << csv_field(r.law_form) << ','
        << format_real(r.predicted_constant) << ','
        << format_real(r.estimated_constant) << ',' << format_real(rel) << ','
        << format_real(r.verify ? r.verify->band : std::nan("")) << ','
        << (r.verify ? (r.verify->passed ? "pass" : "fail")
                     : (r.limit ? "pass" : "fail"))
        << ',' << csv_field(r.termination) << ',' << format_real(r.controls.rmax)
        << ',' << format_real(r.wall_time_seconds);
    return out.str();
}

std::string to_csv(const std::vector<CaseReport>& reports) {
    std::string out = csv_header() + "\n";
    for (const auto& r : reports) out += to_csv_row(r) + "\n";
    return out;
}

}  // namespace biharm::report
