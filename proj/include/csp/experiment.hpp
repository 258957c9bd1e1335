#pragma once

// Experiment runner: builds an instance (generated or from file), runs the
// requested algorithms, checks invariants and emits machine-readable reports.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "csp/online.hpp"
#include "csp/workload.hpp"

namespace csp {

enum class Problem { CspC, CspV };

const char* to_string(Problem p);
Problem parse_problem(const std::string& text);

struct AlgorithmSet {
    bool online = true;
    bool fcfs = true;
    bool bruteforce = false;

    /// Comma-separated subset of online,fcfs,bruteforce.
    static AlgorithmSet parse(const std::string& text);
    std::string to_string() const;
};

struct ExperimentSpec {
    Problem problem = Problem::CspC;
    std::optional<GeneratorConfig> generator;            // default config when no source is given
    std::optional<std::filesystem::path> instance_path;  // overrides the generator
    std::optional<std::filesystem::path> feeder_path;    // cspv only; canonical feeder otherwise
    AlgorithmSet algorithms;
    int runs = 100;
    CorrectionMode correction = CorrectionMode::Exact;
    RlForm rl_form = RlForm::MaxOverMin;
    std::uint64_t seed = 1;
    bool trace = false;

    void validate() const;
    nlohmann::json to_json() const;
};

struct PerRunRow {
    int run = 0;
    std::uint64_t seed = 0;
    std::string algorithm;
    double objective = 0.0;
    bool feasible = true;
};

struct ExperimentReport {
    nlohmann::json summary;
    std::vector<PerRunRow> rows;
    std::vector<std::string> trace_lines;     // per-arrival records of run 0
    std::vector<std::string> pd_trace_lines;  // per-round primal-dual records of run 0
    std::map<std::string, std::string> plot_data;  // file name under plotdata/ -> CSV
    bool invariants_ok = true;
};

/// Throws OracleSizeError when exhaustive search is requested on too large an
/// instance, ParseError on malformed input files, std::invalid_argument on
/// invalid specs or instances.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Writes summary.json, per_run.csv, trace files (when traced) and plotdata/.
void emit_report(const ExperimentReport& report, const std::filesystem::path& out_dir);

std::string pd_trace_line(DemandClass stream, const RoundRecord& rec);

/// printf("%.17g") with the C locale's '.' decimal separator.
std::string format_double(double v);

}  // namespace csp
