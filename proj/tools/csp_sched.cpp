// csp-sched: run online, FCFS and exhaustive schedulers on generated or
// file-loaded instances and write reports.
//
// Exit status: 0 when every invariant holds, 1 when one fails, 2 on bad usage
// or input.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "csp/experiment.hpp"
#include "csp/instance_io.hpp"
#include "csp/oracle.hpp"
#include "csp/voltage.hpp"

namespace {

constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online scheduling of complex-valued demands under capacity or voltage limits"};

    std::string problem = "cspc";
    std::string gen_path;
    std::string instance_path;
    std::string feeder_path;
    std::string algos = "online,fcfs";
    int runs = 100;
    std::uint64_t seed = 1;
    std::string correction = "exact";
    std::string rl_form = "umax-over-umin";
    std::string out_dir = "results";
    std::string dump_path;
    bool trace = false;

    app.add_option("--problem", problem, "cspc (capacity) or cspv (voltage)")
        ->check(CLI::IsMember({"cspc", "cspv"}))
        ->capture_default_str();
    auto* gen_opt = app.add_option("--gen", gen_path, "generator config (JSON)");
    auto* inst_opt = app.add_option("--instance", instance_path, "instance document (JSON)");
    gen_opt->excludes(inst_opt);
    app.add_option("--feeder", feeder_path, "feeder config (JSON); cspv only, default is the 4-bus feeder");
    app.add_option("--algos", algos, "comma list of online,fcfs,bruteforce")->capture_default_str();
    app.add_option("--runs", runs, "Monte-Carlo runs of the online scheduler")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", seed, "base seed")->capture_default_str();
    app.add_option("--correction", correction, "exact or strict")
        ->check(CLI::IsMember({"exact", "strict"}))
        ->capture_default_str();
    app.add_option("--rl-form", rl_form, "u_max/u_min (default) or u_min/u_max inside the large-class factor")
        ->check(CLI::IsMember({"umax-over-umin", "umin-over-umax"}))
        ->capture_default_str();
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_flag("--trace", trace, "write per-arrival and per-round traces of run 0");
    app.add_option("--dump-instance", dump_path, "also write the resolved instance as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        csp::ExperimentSpec spec;
        spec.problem = csp::parse_problem(problem);
        if (!gen_path.empty()) spec.generator = csp::load_generator_config(gen_path);
        if (!instance_path.empty()) spec.instance_path = instance_path;
        if (!feeder_path.empty()) spec.feeder_path = feeder_path;
        spec.algorithms = csp::AlgorithmSet::parse(algos);
        spec.runs = runs;
        spec.seed = seed;
        spec.correction = csp::parse_correction_mode(correction);
        spec.rl_form = csp::parse_rl_form(rl_form);
        spec.trace = trace;
        if (!spec.instance_path && !spec.generator) spec.generator = csp::GeneratorConfig{};

        const auto report = csp::run_experiment(spec);
        csp::emit_report(report, out_dir);
        if (!dump_path.empty()) {
            if (spec.instance_path) {
                csp::save_instance_file(csp::load_instance_file(*spec.instance_path).to_instance(), dump_path);
            } else {
                csp::save_instance_file(csp::generate_instance(*spec.generator), dump_path);
            }
        }

        if (!report.invariants_ok) {
            std::cerr << "csp-sched: invariant check failed, see " << out_dir << "/summary.json\n";
            return kExitInvariant;
        }
        std::cout << report.summary["algorithms"].dump() << '\n';
        return 0;
    } catch (const csp::OracleSizeError& e) {
        std::cerr << "csp-sched: brute force refused: " << e.what() << '\n';
    } catch (const csp::ParseError& e) {
        std::cerr << "csp-sched: parse error: " << e.what() << '\n';
    } catch (const csp::VoltageCollapse& e) {
        std::cerr << "csp-sched: voltage collapse: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "csp-sched: " << e.what() << '\n';
    }
    return kExitUsage;
}
