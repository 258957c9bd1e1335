// OpenMP kernels. Results are written by index and reduced in a fixed order,
// so they match the serial references bit for bit.

#include <omp.h>

#include <algorithm>
#include <atomic>

#include "csp/oracle.hpp"
#include "subset_search.hpp"

namespace csp {

OracleResult brute_force_opt_parallel(const Instance& inst) {
    detail::require_searchable(inst);
    const int depth = std::min(inst.size(), 8);
    const int tasks = 1 << depth;

    struct Partial {
        bool found = false;
        double value = -1.0;
        std::vector<std::uint8_t> set;
        std::uint64_t explored = 0;
    };
    std::vector<Partial> partial(static_cast<std::size_t>(tasks));
    std::atomic<double> floor{-1.0};

#pragma omp parallel for schedule(dynamic, 1)
    for (int p = 0; p < tasks; ++p) {
        detail::SubsetSearch search(inst);
        search.share_floor(&floor);
        auto& out = partial[static_cast<std::size_t>(p)];
        if (!search.apply_prefix(depth, static_cast<std::uint32_t>(p))) continue;
        search.run(depth);
        out.found = search.found();
        out.value = search.best_value();
        out.set = search.best_set();
        out.explored = search.explored();
    }

    // Prefix p = 0 is visited first by the serial search; keep the first strict
    // improvement so ties resolve identically.
    const Partial* best = nullptr;
    std::uint64_t explored = 0;
    for (const auto& part : partial) {
        explored += part.explored;
        if (part.found && (best == nullptr || part.value > best->value)) best = &part;
    }
    return detail::to_result(inst, best->set, explored);
}

std::vector<double> online_objectives(const Instance& inst, int runs, std::uint64_t seed,
                                      const AlgorithmParams& params) {
    const FractionalPlan plan = plan_fractional(inst, params);
    std::vector<double> out(static_cast<std::size_t>(std::max(runs, 0)));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < runs; ++i) {
        out[static_cast<std::size_t>(i)] =
            round_plan(plan, inst, run_seed(seed, static_cast<std::uint64_t>(i))).objective;
    }
    return out;
}

std::vector<ScheduleDecision> online_decisions(const Instance& inst, int runs, std::uint64_t seed,
                                               const AlgorithmParams& params) {
    const FractionalPlan plan = plan_fractional(inst, params);
    std::vector<ScheduleDecision> out(static_cast<std::size_t>(std::max(runs, 0)));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < runs; ++i) {
        out[static_cast<std::size_t>(i)] = round_plan(plan, inst, run_seed(seed, static_cast<std::uint64_t>(i)));
    }
    return out;
}

}  // namespace csp
