#pragma once

// Check-suite orchestration: seeded, deterministic runs over the module
// invariants, with machine-readable JSON/CSV reports whose bytes are
// stable across runs and worker counts.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace g2sp {

inline constexpr const char* kToolkitVersion = "1.0.0";

struct CheckResult {
    std::string name;
    std::map<std::string, std::string> params;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false; // always max_residual <= tolerance
    std::string note;  // optional
};

struct Report {
    std::string version = kToolkitVersion;
    std::string suite;
    std::map<std::string, std::string> params;
    uint64_t seed = 0;
    std::vector<CheckResult> checks;
    // scan suites also carry tabular rows (the CSV payload)
    std::vector<std::string> row_columns;
    std::vector<std::vector<double>> rows;

    int pass_count() const;
    int fail_count() const;
    bool all_pass() const { return fail_count() == 0; }
};

enum class SuiteId {
    AMBIENT,
    POINT_IDENTITIES,
    SUBSPACES,
    RESIDUAL_ORACLE,
    MODEL_A_SCAN,
    MODEL_B_SCAN,
    PROOF_STEPS,
    MINIMIZER,
};

const char* to_string(SuiteId id);
SuiteId parse_suite(const std::string& s);

struct SuiteParams {
    int m = 3;
    int trials = 0; // 0 -> per-suite default
    uint64_t seed = 0;
    double r_min = 0.0; // 0 -> per-suite default
    double r_max = 0.0;
    int steps = 50;
    int threads = 1;
};

Report run_suite(SuiteId id, const SuiteParams& params);

enum class ReportFormat { JSON, CSV };

std::string report_to_json(const Report& report);
std::string report_to_csv(const Report& report);
void emit_report(const Report& report, ReportFormat format, const std::string& path);

// 17-significant-digit decimal rendering used by both emitters.
std::string format_double(double v);

// Deterministic parallel map: fn(i) for i in [0, count), at most `threads`
// workers, results slotted by index so the output never depends on timing.
void parallel_for_index(int count, int threads, const std::function<void(int)>& fn);

} // namespace g2sp
