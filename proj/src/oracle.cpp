#include "csp/oracle.hpp"

#include <cmath>
#include <string>

#include "subset_search.hpp"

namespace csp {

namespace detail {

void require_searchable(const Instance& inst) {
    if (inst.size() > kBruteForceMaxDemands) {
        throw OracleSizeError("exhaustive search refused: " + std::to_string(inst.size()) +
                              " demands exceeds the limit of " +
                              std::to_string(kBruteForceMaxDemands));
    }
    for (const auto& d : inst.demands()) {
        if (d.power.real() < 0.0 || d.power.imag() < 0.0)
            throw std::invalid_argument("exhaustive search needs first-quadrant demands");
    }
}

OracleResult to_result(const Instance& inst, const std::vector<std::uint8_t>& set,
                       std::uint64_t explored) {
    OracleResult r;
    r.opt_decision.accepted = set;
    r.opt_decision.objective = objective_of(r.opt_decision, inst);
    r.opt_value = r.opt_decision.objective;
    r.explored = explored;
    return r;
}

}  // namespace detail

OracleResult brute_force_opt(const Instance& inst) {
    detail::require_searchable(inst);
    detail::SubsetSearch search(inst);
    search.run(0);
    return detail::to_result(inst, search.best_set(), search.explored());
}

ScheduleDecision fcfs(const Instance& inst) {
    CapacityTracker tracker(inst.capacities(), CorrectionMode::Exact);
    ScheduleDecision out = ScheduleDecision::none(inst.size());
    for (const auto& d : inst.demands()) {
        if (tracker.try_accept(d)) out.accepted[static_cast<std::size_t>(d.id - 1)] = 1;
    }
    out.objective = objective_of(out, inst);
    return out;
}

std::vector<double> online_objectives_serial(const Instance& inst, int runs, std::uint64_t seed,
                                             const AlgorithmParams& params) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i) {
        out.push_back(run_online(inst, run_seed(seed, static_cast<std::uint64_t>(i)), params)
                          .decision.objective);
    }
    return out;
}

SampleStats sample_stats(const std::vector<double>& values) {
    SampleStats s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - s.mean) * (v - s.mean);
        const double var = sq / static_cast<double>(values.size() - 1);
        s.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return s;
}

namespace {

RatioEstimate ratio_from(std::vector<double> objectives, double opt) {
    RatioEstimate est;
    est.opt = opt;
    est.vacuous = opt == 0.0;
    std::vector<double> ratios(objectives.size(), 1.0);
    if (!est.vacuous) {
        for (std::size_t i = 0; i < objectives.size(); ++i) ratios[i] = objectives[i] / opt;
    }
    const auto stats = sample_stats(ratios);
    est.mean = stats.mean;
    est.std_error = stats.std_error;
    est.objectives = std::move(objectives);
    return est;
}

}  // namespace

RatioEstimate empirical_ratio(const Instance& inst, int runs, std::uint64_t seed,
                              const AlgorithmParams& params) {
    const double opt = brute_force_opt_parallel(inst).opt_value;
    return ratio_from(online_objectives(inst, runs, seed, params), opt);
}

RatioEstimate empirical_ratio_serial(const Instance& inst, int runs, std::uint64_t seed,
                                     const AlgorithmParams& params) {
    const double opt = brute_force_opt(inst).opt_value;
    return ratio_from(online_objectives_serial(inst, runs, seed, params), opt);
}

}  // namespace csp
