// Acceptance suite: one PASS/FAIL line per criterion; exit status is nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "csp/experiment.hpp"
#include "csp/instance_io.hpp"
#include "csp/oracle.hpp"
#include "csp/voltage.hpp"
#include "csp/workload.hpp"
#include "support.hpp"

using namespace csp;
using csp::test::make_demand;
using csp::test::make_instance;
using csp::test::uniform;
using csp::test::uniform_int;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// --- 1 ---------------------------------------------------------------------

Outcome online_feasibility() {
    const auto start = Clock::now();
    std::mt19937_64 rng(101);
    const double thetas[] = {0.0, csp::test::deg(36.0), csp::test::deg(90.0)};
    int runs = 0, violations = 0;
    for (int i = 0; i < 1000; ++i) {
        csp::test::RandomInstanceOptions opt;
        opt.n = uniform_int(rng, 1, 200);
        opt.m = uniform_int(rng, 1, 24);
        opt.theta = thetas[i % 3];
        opt.large_fraction = uniform(rng, 0.0, 1.0);
        opt.max_duration = uniform_int(rng, 1, 6);
        const auto inst = csp::test::random_instance(rng, opt);
        for (auto mode : {CorrectionMode::Exact, CorrectionMode::Strict}) {
            const auto params = AlgorithmParams::from_bounds(inst.bounds(), mode);
            const auto run = run_online(inst, run_seed(static_cast<std::uint64_t>(i), 0), params);
            ++runs;
            if (!feasibility_check(run.decision, inst)) ++violations;
        }
    }
    const double secs = seconds_since(start);
    return {violations == 0 && secs < 60.0,
            fmt("%d online runs over 1000 instances, %d infeasible, %.1f s", runs, violations, secs)};
}

// --- 2 ---------------------------------------------------------------------

Outcome pd_claims() {
    const auto start = Clock::now();
    std::mt19937_64 rng(202);
    int rounds = 0, failures = 0;
    double worst_a1 = 0.0;
    for (int stream = 0; stream < 200; ++stream) {
        const int slots = uniform_int(rng, 1, 30);
        const int columns = uniform_int(rng, 1, 500);
        const bool with_private_rows = stream % 2 == 1;  // one fresh row per column, like the small stream
        std::vector<double> caps(static_cast<std::size_t>(slots));
        for (auto& c : caps) c = std::exp(uniform(rng, std::log(0.2), std::log(20.0)));
        PackingState state(caps);
        for (int k = 0; k < columns; ++k) {
            PackingColumn col{k, {}};
            const int first = uniform_int(rng, 1, slots);
            const int len = uniform_int(rng, 1, 5);
            for (int t = first; t < first + len && t <= slots; ++t)
                col.entries.push_back({t, std::exp(uniform(rng, std::log(0.01), std::log(10.0)))});
            if (with_private_rows) col.entries.push_back({state.add_slot(uniform(rng, 0.5, 50.0)), 1.0});
            state.process_column(col);
            ++rounds;
            const auto report = check_claims(state);
            if (!report.all_pass()) {
                if (failures == 0) std::fprintf(stderr, "stream %d round %d: %s\n", stream, k, report.describe().c_str());
                ++failures;
            }
            worst_a1 = std::min(worst_a1, report.a1.worst_margin);
        }
    }
    const double secs = seconds_since(start);
    return {failures == 0 && secs < 60.0,
            fmt("200 streams, %d rounds checked, %d claim failures, %.1f s", rounds, failures, secs)};
}

// --- 3 ---------------------------------------------------------------------

Outcome sec_bound() {
    const auto start = Clock::now();
    std::mt19937_64 rng(303);
    int violations = 0;
    double worst_slack = 1e300;
    for (int i = 0; i < 100000; ++i) {
        const double theta = uniform(rng, 0.0, std::numbers::pi / 2);
        const double base = uniform(rng, -std::numbers::pi, std::numbers::pi);
        const int k = uniform_int(rng, 1, 12);
        std::vector<std::complex<double>> vs;
        if (i % 10 == 0) {
            // Tight case: two equal vectors at the edges of the cone.
            vs = {std::polar(1.0, base), std::polar(1.0, base + theta)};
        } else {
            for (int j = 0; j < k; ++j)
                vs.push_back(std::polar(std::exp(uniform(rng, -5.0, 5.0)), base + theta * uniform(rng, 0.0, 1.0)));
        }
        double sum_abs = 0.0;
        std::complex<double> sum{};
        for (auto v : vs) {
            sum_abs += std::abs(v);
            sum += v;
        }
        const double slack = 1.0 / std::cos(theta / 2) + 1e-9 - sum_abs / std::abs(sum);
        worst_slack = std::min(worst_slack, slack);
        if (!(slack >= 0.0)) ++violations;
    }
    const double secs = seconds_since(start);
    return {violations == 0 && secs < 10.0,
            fmt("1e5 vector sets, %d violations, min slack %.3g, %.2f s", violations, worst_slack, secs)};
}

// --- 4 ---------------------------------------------------------------------

Outcome large_mass_per_slot() {
    std::mt19937_64 rng(404);
    const double delta = AlgorithmParams{}.delta;
    const double limit = 2.0 / (delta * delta);
    int samples = 0, violations = 0, attempts = 0;
    double worst = 0.0;
    while (samples < 1000) {
        const int m = uniform_int(rng, 1, 6);
        std::vector<double> caps(static_cast<std::size_t>(m));
        for (auto& c : caps) c = uniform(rng, 1.0, 2.5);
        const double floor = *std::min_element(caps.begin(), caps.end());
        CapacityProfile profile(caps);
        std::vector<Demand> demands;
        const int n = uniform_int(rng, 5, 40);
        for (int k = 1; k <= n; ++k) {
            const int first = uniform_int(rng, 1, m);
            const int last = std::min(m, first + uniform_int(rng, 0, 2));
            const double lo = delta * profile.min_over({first, last});
            const double mag = uniform(rng, lo + 1e-9, floor);
            demands.push_back(make_demand(k, {mag, 0.0}, 1.0, first, last));
        }
        const auto inst = make_instance(caps, demands);
        if (!validate_instance(inst).ok()) continue;

        auto feasible = [&](const std::vector<double>& x) {
            for (int t = 1; t <= m; ++t) {
                double load = 0.0;
                for (const auto& d : inst.demands())
                    if (d.interval.contains(t)) load += d.magnitude() * x[static_cast<std::size_t>(d.id - 1)];
                if (load > inst.capacities().at(t) * (1 + 1e-12)) return false;
            }
            return true;
        };
        const double density = uniform(rng, 0.05, 0.6);
        std::vector<double> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = uniform(rng, 0.0, 1.0) < density ? uniform(rng, 0.0, 1.0) : 0.0;
        ++attempts;
        if (!feasible(x)) continue;  // rejection step

        // Push the accepted point to the boundary one coordinate at a time.
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = k;
        std::shuffle(order.begin(), order.end(), rng);
        for (int k : order) {
            const auto& d = inst.demand(k + 1);
            double room = 1.0 - x[static_cast<std::size_t>(k)];
            for (int t = d.interval.first; t <= d.interval.last; ++t) {
                double load = 0.0;
                for (const auto& e : inst.demands())
                    if (e.interval.contains(t)) load += e.magnitude() * x[static_cast<std::size_t>(e.id - 1)];
                room = std::min(room, (inst.capacities().at(t) - load) / d.magnitude());
            }
            x[static_cast<std::size_t>(k)] += std::max(0.0, room);
        }
        for (const auto& sample : {x}) {
            for (int t = 1; t <= m; ++t) {
                double mass = 0.0;
                for (const auto& d : inst.demands())
                    if (d.interval.contains(t)) mass += sample[static_cast<std::size_t>(d.id - 1)];
                worst = std::max(worst, mass);
                if (mass > limit) ++violations;
            }
        }
        ++samples;
    }
    return {violations == 0, fmt("%d feasible samples (%d draws), max slot mass %.3f vs limit %.2f", samples,
                                 attempts, worst, limit)};
}

// --- 5 ---------------------------------------------------------------------

struct IntervalJob {
    SlotInterval interval;
    double utility;
    double frac;  // x̃
};

// Round each job with probability x̃ / (2u) in start order; drop any selected
// job that overlaps an already accepted one.
double round_with_conflicts(const std::vector<IntervalJob>& jobs, const CounterRng& rng) {
    std::vector<const IntervalJob*> accepted;
    double total = 0.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& j = jobs[i];
        if (!(rng.uniform(i) < j.frac / (2.0 * j.utility))) continue;
        bool clash = false;
        for (const auto* a : accepted)
            clash = clash || (a->interval.first <= j.interval.last && j.interval.first <= a->interval.last);
        if (clash) continue;
        accepted.push_back(&j);
        total += j.utility;
    }
    return total;
}

Outcome rounding_survival() {
    std::mt19937_64 rng(505);
    int failures = 0;
    double worst_margin = 1e300;
    for (int inst_no = 0; inst_no < 50; ++inst_no) {
        const int m = uniform_int(rng, 3, 12);
        const int n = uniform_int(rng, 3, 25);
        std::vector<IntervalJob> jobs;
        for (int k = 0; k < n; ++k) {
            const int first = uniform_int(rng, 1, m);
            const int last = std::min(m, first + uniform_int(rng, 0, 3));
            jobs.push_back({{first, last}, uniform(rng, 1.0, 100.0), 0.0});
        }
        std::stable_sort(jobs.begin(), jobs.end(),
                         [](const IntervalJob& a, const IntervalJob& b) { return a.interval.first < b.interval.first; });
        if (inst_no % 2 == 0) {
            // Fractional values from the unit-capacity primal-dual stream.
            PackingState pd(std::vector<double>(static_cast<std::size_t>(m), 1.0));
            for (std::size_t k = 0; k < jobs.size(); ++k) {
                PackingColumn col{static_cast<int>(k), {}};
                for (int t = jobs[k].interval.first; t <= jobs[k].interval.last; ++t)
                    col.entries.push_back({t, 1.0 / jobs[k].utility});
                jobs[k].frac = pd.process_column(col);
            }
        } else {
            for (auto& j : jobs) j.frac = j.utility * uniform(rng, 0.0, 1.0);
        }
        // Scale so the tightest slot sits exactly at its unit capacity.
        double peak = 0.0;
        for (int t = 1; t <= m; ++t) {
            double mass = 0.0;
            for (const auto& j : jobs)
                if (j.interval.contains(t)) mass += j.frac / j.utility;
            peak = std::max(peak, mass);
        }
        double frac_total = 0.0;
        for (auto& j : jobs) {
            j.frac /= peak;
            frac_total += j.frac;
        }

        std::vector<double> utilities(10000);
        for (std::size_t trial = 0; trial < utilities.size(); ++trial)
            utilities[trial] = round_with_conflicts(jobs, CounterRng(run_seed(static_cast<std::uint64_t>(inst_no), trial)));
        const auto stats = sample_stats(utilities);
        const double margin = stats.mean - (0.25 * frac_total - 3.0 * stats.std_error);
        worst_margin = std::min(worst_margin, margin / frac_total);
        if (margin < 0.0) ++failures;
    }
    return {failures == 0,
            fmt("50 fractional solutions x 1e4 trials, %d below bound, min relative margin %.3f", failures, worst_margin)};
}

// --- 6 ---------------------------------------------------------------------

Outcome competitive_bound_check() {
    const auto start = Clock::now();
    std::mt19937_64 rng(606);
    const double thetas[] = {0.0, csp::test::deg(36.0), csp::test::deg(90.0)};
    int failures = 0;
    double min_ratio = 1e300, max_bound = 0.0;
    for (int i = 0; i < 100; ++i) {
        csp::test::RandomInstanceOptions opt;
        opt.n = uniform_int(rng, 1, 15);
        opt.m = uniform_int(rng, 1, 6);
        opt.theta = thetas[i % 3];
        opt.large_fraction = uniform(rng, 0.0, 1.0);
        opt.max_duration = uniform_int(rng, 1, 4);
        const auto inst = csp::test::random_instance(rng, opt);
        const auto params = AlgorithmParams::from_bounds(inst.bounds(),
                                                         i % 2 ? CorrectionMode::Strict : CorrectionMode::Exact);
        const auto est = empirical_ratio(inst, 10000, static_cast<std::uint64_t>(i), params);
        const double bound = competitive_bound(inst.bounds(), params);
        // Ratios are objective/OPT, so the standard error scales the same way.
        const double se = est.opt > 0.0 ? est.std_error / est.opt : 0.0;
        if (!(est.mean >= bound - 3.0 * se)) ++failures;
        min_ratio = std::min(min_ratio, est.mean);
        max_bound = std::max(max_bound, bound);
    }
    const double secs = seconds_since(start);
    return {failures == 0 && secs < 600.0,
            fmt("100 instances x 1e4 runs, %d below bound, min mean ratio %.4f, max bound %.2e, %.1f s", failures,
                min_ratio, max_bound, secs)};
}

// --- 7 ---------------------------------------------------------------------

// Smallest x with g(x) >= 1 for a single fresh column, by bisection.
double solve_fresh_column(const std::vector<double>& coeffs, const std::vector<double>& caps) {
    const double t_bar = static_cast<double>(coeffs.size());
    const double a_max = *std::max_element(coeffs.begin(), coeffs.end());
    auto g = [&](double x) {
        double s = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            s += coeffs[i] * std::expm1(coeffs[i] * x / (2.0 * caps[i])) / (t_bar * a_max);
        return s;
    };
    double lo = 0.0, hi = 1.0;
    while (g(hi) < 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) >= 1.0 ? hi : lo) = mid;
    }
    return hi;
}

Outcome single_demand_closed_form() {
    struct Case {
        double mag;
        double phase;
        double utility;
        int first, last;
        std::vector<double> caps;
    };
    const std::vector<Case> cases = {
        {0.2, 0.0, 1.0, 1, 1, {1.0}},
        {0.3, 0.5, 0.7, 1, 3, {1.0, 1.2, 0.9}},
        {0.05, 1.2, 3.0, 2, 2, {2.0, 1.5}},
        {0.9, 0.0, 1.0, 1, 1, {1.0}},
        {0.8, 0.3, 5.0, 1, 4, {1.0, 1.0, 2.0, 1.0}},
        {1.0, 0.0, 0.01, 2, 3, {1.5, 1.0, 1.0}},
    };
    const int runs = 100000;
    int failures = 0;
    double worst_z = 0.0;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& cs = cases[c];
        const auto inst = make_instance(cs.caps, {make_demand(1, std::polar(cs.mag, cs.phase), cs.utility, cs.first, cs.last)});
        const auto params = AlgorithmParams::from_bounds(inst.bounds());
        const auto& d = inst.demand(1);
        const int len = d.interval.length();
        double p_selected = 0.0;
        if (d.magnitude() <= params.delta * inst.capacities().min_over(d.interval)) {
            std::vector<double> coeffs(static_cast<std::size_t>(len), d.magnitude() / d.utility);
            std::vector<double> caps;
            for (int t = d.interval.first; t <= d.interval.last; ++t) caps.push_back(inst.capacities().at(t));
            coeffs.push_back(1.0);
            caps.push_back(d.utility);
            const double x_hat = solve_fresh_column(coeffs, caps);
            const double r_s = 2.0 * std::log1p((len + 1) * std::max(1.0, d.magnitude() / d.utility) /
                                                std::min(1.0, d.magnitude() / d.utility));
            p_selected = x_hat / (2.0 * d.utility * r_s);
        } else {
            // Unit-capacity column 1/u on every slot: x̃ = 2u ln 2 in closed form.
            const double r_l = 2.0 * std::log1p(static_cast<double>(len));
            p_selected = params.alpha * 2.0 * std::log(2.0) / r_l;
        }
        const double expected = 0.5 * std::min(1.0, p_selected);

        const auto objectives = online_objectives(inst, runs, 1000 + c, params);
        std::vector<double> accepted;
        accepted.reserve(objectives.size());
        for (double o : objectives) accepted.push_back(o > 0.0 ? 1.0 : 0.0);
        const auto stats = sample_stats(accepted);
        const double z = stats.std_error > 0.0 ? std::abs(stats.mean - expected) / stats.std_error : 0.0;
        worst_z = std::max(worst_z, z);
        if (!(std::abs(stats.mean - expected) <= 3.0 * stats.std_error)) {
            std::fprintf(stderr, "single-demand case %zu: observed %.5f expected %.5f se %.5f\n", c, stats.mean,
                         expected, stats.std_error);
            ++failures;
        }
    }
    return {failures == 0, fmt("%zu single-demand cases x 1e5 runs, %d outside 3 SE, worst |z| %.2f", cases.size(),
                               failures, worst_z)};
}

// --- 8 ---------------------------------------------------------------------

Outcome voltage_physics() {
    std::mt19937_64 rng(808);
    const auto feeder = canonical_feeder();
    const auto& topo = feeder.topology;
    const auto& limits = feeder.limits;
    int sweeps = 0, slow = 0, gap_failures = 0, collapses = 0;
    int max_iter = 0;
    double max_gap = 0.0;

    auto check_loads = [&](const std::vector<std::complex<double>>& loads) {
        try {
            const auto sol = bfm_sweep(loads, topo, limits);
            const auto lin = linearized_voltages(loads, topo, limits);
            ++sweeps;
            max_iter = std::max(max_iter, sol.iterations);
            if (sol.iterations > kSweepMaxIterations) ++slow;
            for (std::size_t i = 1; i < lin.size(); ++i) {
                const double gap = std::abs(sol.v[i] - lin[i]) / lin[i];
                max_gap = std::max(max_gap, gap);
                if (gap >= 0.01) ++gap_failures;
            }
        } catch (const VoltageCollapse&) {
            ++collapses;
        }
    };
    for (double deg : {0.0, 18.0, 36.0, 60.0, 90.0}) {
        std::vector<std::complex<double>> loads(5, std::polar(feeder.node_load_va, csp::test::deg(deg)));
        loads[0] = 0.0;
        check_loads(loads);
    }
    for (int i = 0; i < 500; ++i) {
        std::vector<std::complex<double>> loads(5);
        for (std::size_t n = 1; n < 5; ++n)
            loads[n] = std::polar(feeder.node_load_va * uniform(rng, 0.0, 1.0), uniform(rng, 0.0, std::numbers::pi / 2));
        check_loads(loads);
    }

    // Every decision feasible for the voltage instance must pass the full sweep.
    int decisions = 0, feasible_decisions = 0, nonlinear_failures = 0;
    for (int inst_no = 0; inst_no < 60; ++inst_no) {
        const int n = 10;
        const int m = uniform_int(rng, 1, 3);
        std::vector<Demand> demands;
        FeederTopology placed = topo;
        std::vector<double> node_total(5, 0.0);
        for (int k = 1; k <= n; ++k) {
            const int node = uniform_int(rng, 1, 4);
            const double room = feeder.node_load_va - node_total[static_cast<std::size_t>(node)];
            const double mag = room * uniform(rng, 0.0, 0.6);
            node_total[static_cast<std::size_t>(node)] += mag;
            const int first = uniform_int(rng, 1, m);
            demands.push_back(make_demand(k, std::polar(mag, uniform(rng, 0.0, csp::test::deg(36.0))),
                                          uniform(rng, 1.0, 10.0), first, std::min(m, first + uniform_int(rng, 0, 1))));
            placed.customer_node[k] = node;
        }
        const auto inst = to_cspv_instance(demands, placed, limits, m);
        for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
            ScheduleDecision dec = ScheduleDecision::none(n);
            for (int k = 0; k < n; ++k) dec.accepted[static_cast<std::size_t>(k)] = (mask >> k) & 1U;
            ++decisions;
            if (!feasibility_check(dec, inst)) continue;
            ++feasible_decisions;
            for (int t = 1; t <= m; ++t) {
                bool ok = false;
                try {
                    ok = validate_voltage_solution(dec, demands, placed, limits, t).nonlinear_ok;
                } catch (const VoltageCollapse&) {
                }
                if (!ok) {
                    ++nonlinear_failures;
                    break;
                }
            }
        }
    }
    const bool pass = slow == 0 && collapses == 0 && gap_failures == 0 && nonlinear_failures == 0;
    return {pass, fmt("%d sweeps, max %d iterations, max gap %.2e, %d/%d feasible decisions checked, %d below v_min",
                      sweeps, max_iter, max_gap, feasible_decisions, decisions, nonlinear_failures)};
}

// --- 9 ---------------------------------------------------------------------

Outcome baseline_ordering() {
    struct Family {
        int blockers;
        double reward;
    };
    int failures = 0;
    std::string summary;
    for (const Family& f : {Family{1, 2.0}, Family{1, 10.0}, Family{1, 100.0}, Family{1, 1000.0}, Family{3, 100.0}}) {
        std::vector<double> caps(static_cast<std::size_t>(f.blockers), 1.0);
        std::vector<Demand> demands;
        for (int b = 1; b <= f.blockers; ++b) demands.push_back(make_demand(b, {1.0, 0.0}, 1.0, b, b));
        demands.push_back(make_demand(f.blockers + 1, {1.0, 0.0}, f.reward, 1, f.blockers));
        const auto inst = make_instance(caps, demands);
        const auto params = AlgorithmParams::from_bounds(inst.bounds());
        const double opt = brute_force_opt(inst).opt_value;
        const double fcfs_ratio = fcfs(inst).objective / opt;
        const auto est = empirical_ratio(inst, 10000, 99, params);
        const double bound = competitive_bound(inst.bounds(), params);
        const bool ok = fcfs_ratio <= 0.5 && est.mean - 3.0 * est.std_error / opt > bound;
        if (!ok) ++failures;
        summary += fmt(" [R=%g: fcfs %.3f online %.4f bound %.1e]", f.reward, fcfs_ratio, est.mean, bound);
    }
    return {failures == 0, "adversarial family" + summary};
}

// --- 10 --------------------------------------------------------------------

Outcome determinism() {
    namespace fs = std::filesystem;
    const auto root = fs::temp_directory_path() / "csp_sched_acceptance_determinism";
    fs::remove_all(root);
    int mismatches = 0, specs = 0;
    auto make_spec = [](Problem problem, int n, int runs, const char* algos) {
        ExperimentSpec spec;
        spec.problem = problem;
        GeneratorConfig cfg;
        cfg.n = n;
        cfg.m = 8;
        cfg.seed = 42;
        spec.generator = cfg;
        spec.algorithms = AlgorithmSet::parse(algos);
        spec.runs = runs;
        spec.seed = 17;
        spec.trace = true;
        return spec;
    };
    for (const auto& spec : {make_spec(Problem::CspC, 14, 500, "online,fcfs,bruteforce"),
                             make_spec(Problem::CspV, 12, 200, "online,fcfs,bruteforce"),
                             make_spec(Problem::CspC, 2000, 100, "online,fcfs")}) {
        ++specs;
        const auto a = root / (std::to_string(specs) + "a");
        const auto b = root / (std::to_string(specs) + "b");
        emit_report(run_experiment(spec), a);
        emit_report(run_experiment(spec), b);
        for (const char* file : {"summary.json", "per_run.csv", "trace.jsonl"})
            if (read_text_file(a / file) != read_text_file(b / file)) ++mismatches;
    }
    fs::remove_all(root);
    return {mismatches == 0, fmt("%d specs run twice, %d differing output files", specs, mismatches)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"online output feasibility", online_feasibility},
        {"primal-dual claims round by round", pd_claims},
        {"secant bound on planar vector sums", sec_bound},
        {"per-slot fractional mass of large demands", large_mass_per_slot},
        {"rounding survival with conflict correction", rounding_survival},
        {"end-to-end competitive bound", competitive_bound_check},
        {"single-demand acceptance rate", single_demand_closed_form},
        {"voltage physics on the 4-bus feeder", voltage_physics},
        {"baseline ordering on adversarial arrivals", baseline_ordering},
        {"byte-identical reports", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        if (!out.pass) ++failed;
        std::printf("%s criterion %zu: %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
