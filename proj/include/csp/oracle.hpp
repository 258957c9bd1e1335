#pragma once

// Reference solutions: exact offline optimum by branch-and-bound over subsets,
// the first-come-first-serve baseline, and Monte-Carlo estimation of the
// online algorithm's ratio to the optimum.
//
// Every data-parallel kernel here has a serial twin with the same result; the
// serial versions are the references the tests compare against.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "csp/core.hpp"
#include "csp/online.hpp"

namespace csp {

inline constexpr int kBruteForceMaxDemands = 24;

class OracleSizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

struct OracleResult {
    double opt_value = 0.0;
    ScheduleDecision opt_decision;
    std::uint64_t explored = 0;  // complete subsets reached
};

/// Exact optimum. Among equal-valued optima the lexicographically smallest
/// accepted id list wins. Throws OracleSizeError above kBruteForceMaxDemands.
OracleResult brute_force_opt(const Instance& inst);
/// OpenMP version; same opt_value and opt_decision, `explored` depends on thread timing.
OracleResult brute_force_opt_parallel(const Instance& inst);

/// Accept in arrival order whenever the exact capacity check allows it.
ScheduleDecision fcfs(const Instance& inst);

/// Objectives of `runs` independent online runs with seeds run_seed(seed, i).
std::vector<double> online_objectives_serial(const Instance& inst, int runs, std::uint64_t seed,
                                             const AlgorithmParams& params);
/// Parallel kernel over runs; the fractional side is computed once and shared.
std::vector<double> online_objectives(const Instance& inst, int runs, std::uint64_t seed,
                                      const AlgorithmParams& params);

/// Decisions of `runs` independent online runs (parallel over runs).
std::vector<ScheduleDecision> online_decisions(const Instance& inst, int runs, std::uint64_t seed,
                                               const AlgorithmParams& params);

struct SampleStats {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Mean and standard error, accumulated in index order.
SampleStats sample_stats(const std::vector<double>& values);

struct RatioEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    double opt = 0.0;
    bool vacuous = false;  // OPT == 0, every ratio reported as 1
    std::vector<double> objectives;
};

RatioEstimate empirical_ratio(const Instance& inst, int runs, std::uint64_t seed,
                              const AlgorithmParams& params);
RatioEstimate empirical_ratio_serial(const Instance& inst, int runs, std::uint64_t seed,
                                     const AlgorithmParams& params);

}  // namespace csp
