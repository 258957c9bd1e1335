#pragma once

// Shared helpers for the test binaries: hand-built and random instances.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "csp/core.hpp"

namespace csp::test {

inline Demand make_demand(int id, ComplexPower s, double u, int first, int last) {
    return Demand{id, s, u, SlotInterval{first, last}};
}

inline Demand make_demand(int id, ComplexPower s, double u, int slot = 1) {
    return make_demand(id, s, u, slot, slot);
}

inline Instance make_instance(std::vector<double> caps, std::vector<Demand> demands, double theta = -1.0) {
    const auto bounds = SystemBounds::from_demands(demands, theta);
    return Instance(CapacityProfile(std::move(caps)), std::move(demands), bounds);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

struct RandomInstanceOptions {
    int n = 20;
    int m = 6;
    double theta = 0.0;          // phase spread of the demands
    double large_fraction = 0.3; // share of demands near the capacity floor
    int max_duration = 3;
};

/// Random instance satisfying the no-bottleneck assumption: capacities in
/// [1, 2], magnitudes up to the capacity floor, phases within `theta`.
inline Instance random_instance(std::mt19937_64& rng, const RandomInstanceOptions& opt) {
    std::vector<double> caps(static_cast<std::size_t>(opt.m));
    for (auto& c : caps) c = uniform(rng, 1.0, 2.0);
    const double floor = *std::min_element(caps.begin(), caps.end());
    std::vector<Demand> demands;
    for (int k = 1; k <= opt.n; ++k) {
        const bool large = uniform(rng, 0.0, 1.0) < opt.large_fraction;
        const double mag = large ? uniform(rng, 0.4, 1.0) * floor : uniform(rng, 0.01, 0.3) * floor;
        const double phase = opt.theta > 0.0 ? uniform(rng, 0.0, opt.theta) : 0.0;
        const int first = uniform_int(rng, 1, opt.m);
        const int last = std::min(opt.m, first + uniform_int(rng, 0, opt.max_duration - 1));
        demands.push_back(make_demand(k, std::polar(mag, phase), uniform(rng, 1.0, 100.0), first, last));
    }
    return make_instance(std::move(caps), std::move(demands), opt.theta);
}

inline double deg(double d) { return d * std::numbers::pi / 180.0; }

}  // namespace csp::test
