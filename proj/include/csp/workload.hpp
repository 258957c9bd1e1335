#pragma once

// Synthetic microgrid workloads: Bernoulli capacity process, commercial and
// residential customers with quadratic or random utilities, and the 4-bus
// benchmark feeder.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "csp/core.hpp"
#include "csp/voltage.hpp"

namespace csp {

inline constexpr double kVA = 1.0;
inline constexpr double kKVA = 1e3;
inline constexpr double kMVA = 1e6;

enum class UtilityMode { Quadratic, Random };

const char* to_string(UtilityMode mode);
UtilityMode parse_utility_mode(const std::string& text);

struct GeneratorConfig {
    int n = 2000;
    int m = 24;
    double base_capacity = 4 * kMVA;
    double bernoulli_p = 0.8;
    double low_capacity = 2 * kMVA;
    int max_duration = 4;
    UtilityMode utility_mode = UtilityMode::Random;
    // u = a|S|^2 + b|S| + c with |S| in VA; the default maps 4 MVA to 16.
    double quad_a = 1e-12;
    double quad_b = 0.0;
    double quad_c = 0.0;
    double commercial_fraction = 0.2;
    double commercial_cap = 1 * kMVA;
    double residential_cap = 20 * kKVA;
    double theta_deg = 36.0;
    std::uint64_t seed = 1;

    double demand_cap() const;
    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
};

CapacityProfile gen_capacity(const GeneratorConfig& cfg);
std::vector<Demand> gen_customers(const GeneratorConfig& cfg);

/// Capacity profile plus customers, with bounds fitted to the realized demands.
Instance generate_instance(const GeneratorConfig& cfg);

/// Uniform placement of each demand on one of the feeder's non-root nodes.
std::map<int, int> place_customers(std::span<const Demand> demands, int depth, std::uint64_t seed);

struct FeederPreset {
    FeederTopology topology;
    VoltageLimits limits;
    double base_kv = 0.0;
    double rated_va = 0.0;
    double node_load_va = 0.0;
};

inline constexpr double kDefaultMinVoltagePu = 0.917;

/// The 4-bus benchmark feeder: 700MCM Cu XLPE sections of
/// 0.1529 + j0.1406 ohm/km at 12.47 kV, each node carrying 2 MVA nominal.
FeederPreset canonical_feeder(double section_km = 1.0, double v_min_pu = kDefaultMinVoltagePu);

}  // namespace csp
