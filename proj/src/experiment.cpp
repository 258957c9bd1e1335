#include "csp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "csp/instance_io.hpp"
#include "csp/oracle.hpp"
#include "csp/voltage.hpp"

namespace csp {

using nlohmann::json;

const char* to_string(Problem p) { return p == Problem::CspC ? "cspc" : "cspv"; }

Problem parse_problem(const std::string& text) {
    if (text == "cspc") return Problem::CspC;
    if (text == "cspv") return Problem::CspV;
    throw std::invalid_argument("unknown problem '" + text + "' (expected cspc|cspv)");
}

AlgorithmSet AlgorithmSet::parse(const std::string& text) {
    AlgorithmSet set{false, false, false};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "online") {
            set.online = true;
        } else if (item == "fcfs") {
            set.fcfs = true;
        } else if (item == "bruteforce") {
            set.bruteforce = true;
        } else if (!item.empty()) {
            throw std::invalid_argument("unknown algorithm '" + item + "'");
        }
    }
    if (!set.online && !set.fcfs && !set.bruteforce) throw std::invalid_argument("no algorithm selected");
    return set;
}

std::string AlgorithmSet::to_string() const {
    std::string out;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!out.empty()) out += ',';
        out += name;
    };
    add(online, "online");
    add(fcfs, "fcfs");
    add(bruteforce, "bruteforce");
    return out;
}

void ExperimentSpec::validate() const {
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (feeder_path && problem != Problem::CspV)
        throw std::invalid_argument("a feeder config only applies to --problem cspv");
    if (generator) generator->validate();
}

json ExperimentSpec::to_json() const {
    json j;
    j["problem"] = csp::to_string(problem);
    if (instance_path) {
        j["instance"] = instance_path->generic_string();
    } else {
        j["generator"] = csp::to_json(generator.value_or(GeneratorConfig{}));
    }
    if (problem == Problem::CspV) j["feeder"] = feeder_path ? feeder_path->generic_string() : "canonical_4bus";
    j["algorithms"] = algorithms.to_string();
    j["runs"] = runs;
    j["correction"] = csp::to_string(correction);
    j["rl_form"] = csp::to_string(rl_form);
    j["seed"] = seed;
    j["trace"] = trace;
    return j;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string pd_trace_line(DemandClass stream, const RoundRecord& rec) {
    json updates = json::array();
    for (const auto& u : rec.y_updates) updates.push_back({{"t", u.slot}, {"old", u.before}, {"new", u.after}});
    json j = {{"stream", stream == DemandClass::Small ? "S" : "L"},
              {"round", rec.round},
              {"x_k", rec.x},
              {"y_updates", updates},
              {"P", rec.primal},
              {"D", rec.dual}};
    return j.dump();
}

namespace {

struct VoltageContext {
    std::vector<Demand> raw;  // unrotated demands with feeder placement
    FeederTopology topology;
    VoltageLimits limits;
};

struct Prepared {
    Instance instance;
    std::optional<VoltageContext> voltage;
};

Prepared prepare(const ExperimentSpec& spec) {
    std::optional<InstanceDocument> doc;
    GeneratorConfig cfg = spec.generator.value_or(GeneratorConfig{});
    if (spec.instance_path) doc = load_instance_file(*spec.instance_path);

    if (spec.problem == Problem::CspC) {
        return {doc ? doc->to_instance() : generate_instance(cfg), std::nullopt};
    }

    VoltageContext ctx;
    int horizon = 0;
    std::map<int, int> nodes;
    if (doc) {
        ctx.raw = doc->demands;
        horizon = doc->horizon();
        nodes = doc->nodes;
    } else {
        ctx.raw = gen_customers(cfg);
        horizon = cfg.m;
    }
    if (spec.feeder_path) {
        auto feeder = load_feeder_config(*spec.feeder_path);
        ctx.topology = std::move(feeder.topology);
        ctx.limits = feeder.limits;
    } else {
        auto preset = canonical_feeder();
        ctx.topology = std::move(preset.topology);
        ctx.limits = preset.limits;
    }
    if (nodes.size() != ctx.raw.size()) {
        auto placed = place_customers(ctx.raw, ctx.topology.depth(), spec.seed);
        for (auto [id, node] : placed) nodes.try_emplace(id, node);
    }
    ctx.topology.customer_node = std::move(nodes);
    Instance inst = to_cspv_instance(ctx.raw, ctx.topology, ctx.limits, horizon);
    return {std::move(inst), std::move(ctx)};
}

double per_unit(double v, const VoltageLimits& limits) { return std::sqrt(v / limits.v0); }

// Worst-slot voltage check of one decision under the full branch flow model.
bool voltage_ok(const ScheduleDecision& decision, const VoltageContext& ctx, int horizon) {
    for (int t = 1; t <= horizon; ++t) {
        try {
            if (!validate_voltage_solution(decision, ctx.raw, ctx.topology, ctx.limits, t).nonlinear_ok)
                return false;
        } catch (const VoltageCollapse&) {
            return false;
        }
    }
    return true;
}

std::vector<double> cumulative_objective(const ScheduleDecision& d, const Instance& inst) {
    std::vector<double> out;
    double sum = 0.0;
    for (const auto& dem : inst.demands()) {
        if (d.accepted[static_cast<std::size_t>(dem.id - 1)]) sum += dem.utility;
        out.push_back(sum);
    }
    return out;
}

json claims_json(const ClaimReport& r) {
    auto one = [](const ClaimStatus& s) { return json{{"pass", s.pass}, {"worst_margin", s.worst_margin}}; };
    return {{"A1", one(r.a1)}, {"A2", one(r.a2)}, {"A3", one(r.a3)}};
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const Prepared prep = prepare(spec);
    const Instance& inst = prep.instance;
    const auto validation = validate_instance(inst);
    if (!validation.ok()) {
        std::string msg = "invalid instance:";
        for (const auto& v : validation.violations) msg += " [" + v + "]";
        throw std::invalid_argument(msg);
    }

    const auto params = AlgorithmParams::from_bounds(inst.bounds(), spec.correction, spec.rl_form);
    const int n = inst.size();
    const int runs = spec.runs;

    ExperimentReport report;
    json invariants = json::object();
    json algos = json::object();

    std::optional<OracleResult> opt;
    if (spec.algorithms.bruteforce) opt = brute_force_opt_parallel(inst);

    auto feasible = [&](const ScheduleDecision& d) {
        bool ok = feasibility_check(d, inst);
        if (ok && prep.voltage) ok = voltage_ok(d, *prep.voltage, inst.horizon());
        return ok;
    };
    auto dominated = [&](double objective) {
        return !opt || objective <= opt->opt_value * (1.0 + 1e-12) + 1e-300;
    };

    std::vector<ScheduleDecision> online_runs;
    std::vector<std::uint8_t> online_feasible;
    if (spec.algorithms.online) {
        online_runs = online_decisions(inst, runs, spec.seed, params);
        online_feasible.resize(online_runs.size());
        for (std::size_t i = 0; i < online_runs.size(); ++i) online_feasible[i] = feasible(online_runs[i]);

        std::vector<double> objectives;
        bool all_feasible = true;
        bool all_dominated = true;
        double accepted = 0.0;
        for (std::size_t i = 0; i < online_runs.size(); ++i) {
            objectives.push_back(online_runs[i].objective);
            all_feasible = all_feasible && online_feasible[i];
            all_dominated = all_dominated && dominated(online_runs[i].objective);
            accepted += online_runs[i].count();
        }
        const auto stats = sample_stats(objectives);
        json entry = {{"runs", runs},
                      {"mean_objective", stats.mean},
                      {"std_error", stats.std_error},
                      {"mean_accepted", accepted / runs}};
        const double bound = competitive_bound(inst.bounds(), params);
        entry["competitive_bound"] = bound;
        if (opt) {
            std::vector<double> ratios;
            for (double o : objectives) ratios.push_back(opt->opt_value > 0.0 ? o / opt->opt_value : 1.0);
            const auto r = sample_stats(ratios);
            entry["mean_ratio"] = r.mean;
            entry["ratio_std_error"] = r.std_error;
            entry["meets_competitive_bound"] = r.mean + 3.0 * r.std_error >= bound;
        }

        // Fractional side and claims are seed-independent; audit them on run 0.
        OnlineState state(inst.capacities(), params, run_seed(spec.seed, 0));
        for (const auto& d : inst.demands()) {
            process_arrival(d, state);
            if (spec.trace) {
                const bool small = state.trace.back().cls == DemandClass::Small;
                const auto& pd = small ? state.small_pd : state.large_pd;
                report.pd_trace_lines.push_back(pd_trace_line(state.trace.back().cls, *pd.last_round()));
            }
        }
        if (spec.trace) {
            for (const auto& rec : state.trace) report.trace_lines.push_back(to_json_line(rec));
        }
        const auto small_running = check_claims(state.small_pd);
        const auto large_running = check_claims(state.large_pd);
        const auto small_apriori = check_claims(state.small_pd, params.r_small);
        const auto large_apriori =
            check_claims(state.large_pd, large_stream_factor(inst.bounds(), RlForm::MaxOverMin));
        entry["tau_run0"] = state.tau;
        entry["small_count"] = static_cast<int>(state.small_ids.size());
        entry["large_count"] = static_cast<int>(state.large_ids.size());
        entry["pd_claims"] = {{"small", claims_json(small_running)},
                              {"large", claims_json(large_running)},
                              {"small_apriori", claims_json(small_apriori)},
                              {"large_apriori", claims_json(large_apriori)}};
        algos["online"] = entry;

        invariants["online_feasible"] = all_feasible;
        invariants["pd_claims"] = small_running.all_pass() && large_running.all_pass() &&
                                  small_apriori.all_pass() && large_apriori.all_pass();
        if (opt) invariants["opt_dominates_online"] = all_dominated;
    }

    std::optional<ScheduleDecision> fcfs_decision;
    bool fcfs_feasible = true;
    if (spec.algorithms.fcfs) {
        fcfs_decision = fcfs(inst);
        fcfs_feasible = feasible(*fcfs_decision);
        json entry = {{"objective", fcfs_decision->objective}, {"accepted", fcfs_decision->count()}};
        if (opt) entry["ratio"] = opt->opt_value > 0.0 ? fcfs_decision->objective / opt->opt_value : 1.0;
        algos["fcfs"] = entry;
        invariants["fcfs_feasible"] = fcfs_feasible;
        if (opt) invariants["opt_dominates_fcfs"] = dominated(fcfs_decision->objective);
    }

    bool opt_feasible = true;
    if (opt) {
        opt_feasible = feasibility_check(opt->opt_decision, inst);
        algos["bruteforce"] = {{"objective", opt->opt_value},
                               {"accepted", opt->opt_decision.count()}};
        invariants["bruteforce_feasible"] = opt_feasible;
        if (prep.voltage) {
            algos["bruteforce"]["voltage_ok"] = voltage_ok(opt->opt_decision, *prep.voltage, inst.horizon());
        }
    }

    // Per-run rows: deterministic algorithms repeat their single result per run.
    for (int i = 0; i < runs; ++i) {
        const auto seed = run_seed(spec.seed, static_cast<std::uint64_t>(i));
        const auto idx = static_cast<std::size_t>(i);
        if (spec.algorithms.online)
            report.rows.push_back({i, seed, "online", online_runs[idx].objective, online_feasible[idx] != 0});
        if (fcfs_decision) report.rows.push_back({i, seed, "fcfs", fcfs_decision->objective, fcfs_feasible});
        if (opt) report.rows.push_back({i, seed, "bruteforce", opt->opt_value, opt_feasible});
    }

    // Objective versus number of arrived customers.
    {
        std::vector<double> online_mean(static_cast<std::size_t>(n), 0.0);
        for (const auto& d : online_runs) {
            const auto cum = cumulative_objective(d, inst);
            for (int k = 0; k < n; ++k) online_mean[static_cast<std::size_t>(k)] += cum[static_cast<std::size_t>(k)];
        }
        for (auto& v : online_mean) v /= std::max<std::size_t>(online_runs.size(), 1);
        std::vector<double> fcfs_cum = fcfs_decision ? cumulative_objective(*fcfs_decision, inst) : std::vector<double>{};
        std::vector<double> opt_prefix;
        if (opt) {
            for (int k = 1; k <= n; ++k) {
                std::vector<Demand> prefix(inst.demands().begin(), inst.demands().begin() + k);
                opt_prefix.push_back(brute_force_opt_parallel(
                    Instance(inst.capacities(), std::move(prefix), inst.bounds())).opt_value);
            }
        }
        std::string csv = "customers";
        if (spec.algorithms.online) csv += ",online_mean";
        if (fcfs_decision) csv += ",fcfs";
        if (opt) csv += ",opt";
        csv += '\n';
        for (int k = 0; k < n; ++k) {
            const auto idx = static_cast<std::size_t>(k);
            csv += std::to_string(k + 1);
            if (spec.algorithms.online) csv += ',' + format_double(online_mean[idx]);
            if (fcfs_decision) csv += ',' + format_double(fcfs_cum[idx]);
            if (opt) csv += ',' + format_double(opt_prefix[idx]);
            csv += '\n';
        }
        report.plot_data["objective_vs_customers.csv"] = csv;
    }

    json voltage_summary;
    if (prep.voltage) {
        const auto& ctx = *prep.voltage;
        std::vector<std::pair<std::string, const ScheduleDecision*>> series;
        if (!online_runs.empty()) series.emplace_back("online_run0", &online_runs.front());
        if (fcfs_decision) series.emplace_back("fcfs", &*fcfs_decision);
        if (opt) series.emplace_back("opt", &opt->opt_decision);

        const int depth = ctx.topology.depth();
        std::string slots_csv = "slot";
        for (const auto& s : series) slots_csv += ',' + s.first;
        slots_csv += ",v_min\n";
        std::vector<std::vector<double>> node_min(series.size(),
                                                  std::vector<double>(static_cast<std::size_t>(depth + 1), 1e300));
        bool all_ok = true;
        int max_iterations = 0;
        double max_gap = 0.0;
        for (int t = 1; t <= inst.horizon(); ++t) {
            slots_csv += std::to_string(t);
            for (std::size_t s = 0; s < series.size(); ++s) {
                double end_pu = 0.0;
                try {
                    const auto rep = validate_voltage_solution(*series[s].second, ctx.raw, ctx.topology, ctx.limits, t);
                    all_ok = all_ok && rep.nonlinear_ok;
                    max_iterations = std::max(max_iterations, rep.iterations);
                    max_gap = std::max(max_gap, rep.max_relative_gap);
                    end_pu = per_unit(rep.nodes.back().v_nonlinear, ctx.limits);
                    for (const auto& nv : rep.nodes) {
                        auto& cell = node_min[s][static_cast<std::size_t>(nv.node)];
                        cell = std::min(cell, per_unit(nv.v_nonlinear, ctx.limits));
                    }
                } catch (const VoltageCollapse&) {
                    all_ok = false;
                }
                slots_csv += ',' + format_double(end_pu);
            }
            slots_csv += ',' + format_double(per_unit(ctx.limits.v_min, ctx.limits)) + '\n';
        }
        std::string nodes_csv = "node";
        for (const auto& s : series) nodes_csv += ',' + s.first;
        nodes_csv += '\n';
        for (int i = 0; i <= depth; ++i) {
            nodes_csv += std::to_string(i);
            for (std::size_t s = 0; s < series.size(); ++s) {
                const double v = node_min[s][static_cast<std::size_t>(i)];
                nodes_csv += ',' + format_double(v > 1e299 ? 1.0 : v);
            }
            nodes_csv += '\n';
        }
        report.plot_data["voltage_profile.csv"] = slots_csv;
        report.plot_data["node_voltage_min.csv"] = nodes_csv;
        voltage_summary = {{"v0", ctx.limits.v0},
                           {"v_min", ctx.limits.v_min},
                           {"v_hat", ctx.limits.v_hat()},
                           {"depth", depth},
                           {"max_sweep_iterations", max_iterations},
                           {"max_linearization_gap", max_gap}};
        invariants["voltage_nonlinear"] = all_ok;
    }

    for (const auto& [name, value] : invariants.items()) {
        report.invariants_ok = report.invariants_ok && value.get<bool>();
    }

    json instance_summary = {{"n", n},
                             {"horizon", inst.horizon()},
                             {"bounds", to_json(inst.bounds())},
                             {"phase_spread", phase_spread(inst.demands())},
                             {"r_small", params.r_small},
                             {"r_large", params.r_large},
                             {"capacity_min", inst.capacities().min()}};
    report.summary = {{"schema", 1},
                      {"spec", spec.to_json()},
                      {"instance", instance_summary},
                      {"algorithms", algos},
                      {"invariants", invariants},
                      {"ok", report.invariants_ok}};
    if (prep.voltage) report.summary["voltage"] = voltage_summary;
    return report;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void emit_report(const ExperimentReport& report, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir / "plotdata", ec);
    if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

    write_file(out_dir / "summary.json", report.summary.dump(2) + "\n");

    std::string csv = "run,seed,algorithm,objective,feasible\n";
    for (const auto& r : report.rows) {
        csv += std::to_string(r.run) + ',' + std::to_string(r.seed) + ',' + r.algorithm + ',' +
               format_double(r.objective) + ',' + (r.feasible ? "true" : "false") + '\n';
    }
    write_file(out_dir / "per_run.csv", csv);

    if (!report.trace_lines.empty() || !report.pd_trace_lines.empty()) {
        std::string lines;
        for (const auto& l : report.trace_lines) lines += l + '\n';
        write_file(out_dir / "trace.jsonl", lines);
        lines.clear();
        for (const auto& l : report.pd_trace_lines) lines += l + '\n';
        write_file(out_dir / "pd_trace.jsonl", lines);
    }
    for (const auto& [name, content] : report.plot_data) write_file(out_dir / "plotdata" / name, content);
}

}  // namespace csp
