#pragma once

// Voltage-constrained scheduling on a path feeder: the branch flow model, its
// lossless linearization, and the reduction of the voltage constraint to a
// capacity-shaped scheduling instance.

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "csp/core.hpp"

namespace csp {

/// Path feeder 0 - 1 - ... - d. Edge i joins node i to node i + 1.
struct FeederTopology {
    std::vector<std::complex<double>> impedance;  // ohms, one per edge
    std::map<int, int> customer_node;             // demand id -> node in 1..d

    int depth() const { return static_cast<int>(impedance.size()); }
    int node_count() const { return depth() + 1; }
    int node_of(int demand_id) const;
};

/// Squared voltage magnitudes (volts^2).
struct VoltageLimits {
    double v0 = 1.0;
    double v_min = 0.5;

    double v_hat() const { return 0.5 * (v0 - v_min); }
};

struct BfmSolution {
    std::vector<double> v;                      // per node, v[0] = v0
    std::vector<double> ell;                    // squared current per edge
    std::vector<std::complex<double>> s_hat;    // sending-end power per edge
    int iterations = 0;
};

class VoltageCollapse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kSweepMaxIterations = 100;
inline constexpr double kSweepTolerance = 1e-6;  // relative to v0

/// z^R S^R + z^I S^I for one demand on one edge.
double edge_coefficient(const Demand& d, std::complex<double> z);

/// (demand id, edge) pairs where edge_coefficient is negative.
std::vector<std::pair<int, int>> assumption_violations(std::span<const Demand> demands,
                                                       const FeederTopology& topo);

/// Σ over edges between the root and the demand's node of edge_coefficient.
double voltage_coefficient(const Demand& d, const FeederTopology& topo);

/// Scalar instance whose capacity constraint is the linearized voltage limit at
/// the deepest node. Throws std::invalid_argument on assumption violations.
Instance to_cspv_instance(std::span<const Demand> demands, const FeederTopology& topo,
                          const VoltageLimits& limits, int horizon);

/// Net accepted load at each node (index 0 is the root and stays zero). With
/// slot > 0 only demands whose interval covers the slot contribute.
std::vector<std::complex<double>> node_loads(const ScheduleDecision& decision,
                                             std::span<const Demand> demands,
                                             const FeederTopology& topo, int slot = 0);

/// Backward-forward sweep of the full branch flow model. Throws
/// VoltageCollapse when the fixed point is not reached.
BfmSolution bfm_sweep(std::span<const std::complex<double>> loads, const FeederTopology& topo,
                      const VoltageLimits& limits);
BfmSolution bfm_sweep(const ScheduleDecision& decision, std::span<const Demand> demands,
                      const FeederTopology& topo, const VoltageLimits& limits, int slot = 0);

/// Voltages with all loss terms dropped: v_i = v0 - 2 Σ_{j<i} Re(z_j^* Ŝ_j).
std::vector<double> linearized_voltages(std::span<const std::complex<double>> loads,
                                        const FeederTopology& topo, const VoltageLimits& limits);

/// Left-hand side of the linearized limit at edge e, summed edge by edge
/// over downstream flows.
double voltage_lhs_by_flow(const ScheduleDecision& decision, std::span<const Demand> demands,
                           const FeederTopology& topo, int edge);
/// Same quantity with the summation swapped to run over demands.
double voltage_lhs_by_demand(const ScheduleDecision& decision, std::span<const Demand> demands,
                             const FeederTopology& topo, int edge);

struct NodeVoltage {
    int node = 0;
    double v_nonlinear = 0.0;
    double v_linear = 0.0;
    double relative_gap = 0.0;
};

struct VoltageReport {
    std::vector<NodeVoltage> nodes;
    int iterations = 0;
    bool nonlinear_ok = true;  // v_i >= v_min under the sweep
    bool linear_ok = true;     // v_i >= v_min under the linearization
    double max_relative_gap = 0.0;
};

VoltageReport validate_voltage_solution(const ScheduleDecision& decision,
                                        std::span<const Demand> demands,
                                        const FeederTopology& topo, const VoltageLimits& limits,
                                        int slot = 0);

}  // namespace csp
