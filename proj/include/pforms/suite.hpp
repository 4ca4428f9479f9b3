#pragma once

#include <cstdint>
#include <optional>

#include "pforms/generate.hpp"

namespace pforms {

// One verification run: a model, a mode list, deterministic case generation
// parameters and the output format.
struct SuiteConfig {
    std::string model = "maxwell";
    int n = 4;
    int p = 1;
    std::uint64_t seed = 0;
    int cases = 5;
    GenBounds bounds;
    std::vector<Mode> modes = {Mode::Dynamical};
    std::string format = "json";  // "json" or "text"
    int jobs = 1;
    std::optional<std::array<std::array<mpq_class, 6>, 6>> chi_block;  // premetric only
    // Optional geometry override: used as the base coframe for every case.
    std::optional<Matrix<Scalar>> coframe_override;
    std::optional<std::vector<int>> signature_override;
};

struct CheckResult {
    std::string name;
    std::string status;  // "pass" | "fail" | "info"
    std::uint64_t residual_monomials = 0;
    double elapsed_ms = 0.0;  // zeroed in json output; shown in text
};

struct CaseReport {
    int case_index = 0;
    std::vector<CheckResult> checks;
};

struct SuiteReport {
    std::string id;
    std::string model;
    std::string mode;
    int n = 0, p = 0;
    std::uint64_t seed = 0;
    std::vector<CaseReport> cases;
};

struct VerificationReport {
    std::vector<SuiteReport> suites;
};

// Runs the full identity battery over `cases` generated configurations for
// every mode in the config. Deterministic per seed; case-level parallelism
// (jobs > 1) merges in case order and must not change the report.
VerificationReport run_suite(const SuiteConfig& cfg);

// True iff no check failed (informational rows never fail a run).
bool report_ok(const VerificationReport& r);

// "json": stable field order, byte-identical for identical inputs
// (elapsed times are zeroed). "text": human-readable table.
std::string emit_report(const VerificationReport& r, const std::string& format);
VerificationReport parse_report(const std::string& json_text);

SuiteConfig suite_config_from_json(const std::string& json_text);
Mode mode_from_string(const std::string& s);

} // namespace pforms
