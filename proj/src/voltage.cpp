#include "csp/voltage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace csp {

int FeederTopology::node_of(int demand_id) const {
    auto it = customer_node.find(demand_id);
    if (it == customer_node.end())
        throw std::domain_error("demand " + std::to_string(demand_id) + " is not mapped to a node");
    if (it->second < 1 || it->second > depth())
        throw std::domain_error("demand " + std::to_string(demand_id) + " mapped to invalid node " +
                                std::to_string(it->second));
    return it->second;
}

double edge_coefficient(const Demand& d, std::complex<double> z) {
    return z.real() * d.power.real() + z.imag() * d.power.imag();
}

std::vector<std::pair<int, int>> assumption_violations(std::span<const Demand> demands,
                                                       const FeederTopology& topo) {
    std::vector<std::pair<int, int>> bad;
    for (const auto& d : demands) {
        for (int e = 0; e < topo.depth(); ++e) {
            if (edge_coefficient(d, topo.impedance[static_cast<std::size_t>(e)]) < 0.0)
                bad.emplace_back(d.id, e);
        }
    }
    return bad;
}

double voltage_coefficient(const Demand& d, const FeederTopology& topo) {
    const int node = topo.node_of(d.id);
    double sum = 0.0;
    for (int j = 0; j < node; ++j) sum += edge_coefficient(d, topo.impedance[static_cast<std::size_t>(j)]);
    return sum;
}

Instance to_cspv_instance(std::span<const Demand> demands, const FeederTopology& topo,
                          const VoltageLimits& limits, int horizon) {
    const auto bad = assumption_violations(demands, topo);
    if (!bad.empty()) {
        std::string msg = "feeder assumption violated for (demand, edge):";
        for (auto [k, e] : bad) msg += " (" + std::to_string(k) + "," + std::to_string(e) + ")";
        throw std::invalid_argument(msg);
    }
    std::vector<Demand> scalar;
    scalar.reserve(demands.size());
    for (const auto& d : demands) {
        Demand s = d;
        s.power = {voltage_coefficient(d, topo), 0.0};
        scalar.push_back(s);
    }
    auto bounds = SystemBounds::from_demands(scalar, 0.0);
    CapacityProfile caps(std::vector<double>(static_cast<std::size_t>(horizon), limits.v_hat()));
    return Instance(std::move(caps), std::move(scalar), bounds);
}

std::vector<std::complex<double>> node_loads(const ScheduleDecision& decision,
                                             std::span<const Demand> demands,
                                             const FeederTopology& topo, int slot) {
    std::vector<std::complex<double>> loads(static_cast<std::size_t>(topo.node_count()));
    for (const auto& d : demands) {
        if (!decision.accepted.at(static_cast<std::size_t>(d.id - 1))) continue;
        if (slot > 0 && !d.interval.contains(slot)) continue;
        loads[static_cast<std::size_t>(topo.node_of(d.id))] += d.power;
    }
    return loads;
}

BfmSolution bfm_sweep(std::span<const std::complex<double>> loads, const FeederTopology& topo,
                      const VoltageLimits& limits) {
    const auto d = static_cast<std::size_t>(topo.depth());
    if (loads.size() != d + 1) throw std::invalid_argument("bfm_sweep: one load per node expected");

    BfmSolution sol;
    sol.v.assign(d + 1, limits.v0);
    sol.ell.assign(d, 0.0);
    sol.s_hat.assign(d, {});
    std::vector<double> next(d + 1);

    for (int iter = 1; iter <= kSweepMaxIterations; ++iter) {
        std::complex<double> downstream{};
        for (std::size_t i = d; i-- > 0;) {
            sol.s_hat[i] = downstream + loads[i + 1] + topo.impedance[i] * sol.ell[i];
            downstream = sol.s_hat[i];
        }
        next[0] = limits.v0;
        for (std::size_t i = 0; i < d; ++i) {
            const auto z = topo.impedance[i];
            next[i + 1] = next[i] + std::norm(z) * sol.ell[i] -
                          2.0 * (std::conj(z) * sol.s_hat[i]).real();
            if (!(next[i + 1] > 0.0)) {
                throw VoltageCollapse("voltage collapse at node " + std::to_string(i + 1));
            }
        }
        double change = 0.0;
        for (std::size_t i = 0; i <= d; ++i) change = std::max(change, std::abs(next[i] - sol.v[i]));
        sol.v = next;
        for (std::size_t i = 0; i < d; ++i) sol.ell[i] = std::norm(sol.s_hat[i]) / sol.v[i];
        sol.iterations = iter;
        if (change < kSweepTolerance * limits.v0) return sol;
    }
    throw VoltageCollapse("voltage collapse: sweep did not converge in " +
                          std::to_string(kSweepMaxIterations) + " iterations");
}

BfmSolution bfm_sweep(const ScheduleDecision& decision, std::span<const Demand> demands,
                      const FeederTopology& topo, const VoltageLimits& limits, int slot) {
    const auto loads = node_loads(decision, demands, topo, slot);
    return bfm_sweep(loads, topo, limits);
}

std::vector<double> linearized_voltages(std::span<const std::complex<double>> loads,
                                        const FeederTopology& topo, const VoltageLimits& limits) {
    const auto d = static_cast<std::size_t>(topo.depth());
    std::vector<std::complex<double>> flow(d);
    std::complex<double> downstream{};
    for (std::size_t i = d; i-- > 0;) {
        downstream += loads[i + 1];
        flow[i] = downstream;
    }
    std::vector<double> v(d + 1, limits.v0);
    for (std::size_t i = 0; i < d; ++i)
        v[i + 1] = v[i] - 2.0 * (std::conj(topo.impedance[i]) * flow[i]).real();
    return v;
}

double voltage_lhs_by_flow(const ScheduleDecision& decision, std::span<const Demand> demands,
                           const FeederTopology& topo, int edge) {
    double sum = 0.0;
    for (int j = 0; j <= edge; ++j) {
        const auto z = topo.impedance[static_cast<std::size_t>(j)];
        for (int node = j + 1; node <= topo.depth(); ++node) {
            for (const auto& d : demands) {
                if (decision.accepted.at(static_cast<std::size_t>(d.id - 1)) &&
                    topo.node_of(d.id) == node)
                    sum += edge_coefficient(d, z);
            }
        }
    }
    return sum;
}

double voltage_lhs_by_demand(const ScheduleDecision& decision, std::span<const Demand> demands,
                             const FeederTopology& topo, int edge) {
    double sum = 0.0;
    for (const auto& d : demands) {
        if (!decision.accepted.at(static_cast<std::size_t>(d.id - 1))) continue;
        const int h = std::min(edge, topo.node_of(d.id) - 1);
        double coeff = 0.0;
        for (int j = 0; j <= h; ++j) coeff += edge_coefficient(d, topo.impedance[static_cast<std::size_t>(j)]);
        sum += coeff;
    }
    return sum;
}

VoltageReport validate_voltage_solution(const ScheduleDecision& decision,
                                        std::span<const Demand> demands,
                                        const FeederTopology& topo, const VoltageLimits& limits,
                                        int slot) {
    const auto loads = node_loads(decision, demands, topo, slot);
    const auto sweep = bfm_sweep(loads, topo, limits);
    const auto linear = linearized_voltages(loads, topo, limits);

    VoltageReport report;
    report.iterations = sweep.iterations;
    for (int i = 0; i < topo.node_count(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        NodeVoltage nv{i, sweep.v[idx], linear[idx],
                       std::abs(sweep.v[idx] - linear[idx]) / std::abs(linear[idx])};
        report.max_relative_gap = std::max(report.max_relative_gap, nv.relative_gap);
        if (i > 0) {
            const double floor = limits.v_min * (1.0 - kFeasibilityTolerance);
            report.nonlinear_ok = report.nonlinear_ok && nv.v_nonlinear >= floor;
            report.linear_ok = report.linear_ok && nv.v_linear >= floor;
        }
        report.nodes.push_back(nv);
    }
    return report;
}

}  // namespace csp
