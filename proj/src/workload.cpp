#include "csp/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "csp/rng.hpp"

namespace csp {

namespace {

// std::uniform_*_distribution output is implementation-defined; map engine
// words ourselves so instances are identical across standard libraries.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return unit_interval(engine_()); }
    /// Uniform on (0, 1].
    double uniform_open_closed() { return 1.0 - uniform(); }
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(static_cast<double>(span) * uniform());
    }

private:
    std::mt19937_64 engine_;
};

constexpr std::uint64_t kCapacityStream = 0x43415041ULL;
constexpr std::uint64_t kCustomerStream = 0x43555354ULL;

}  // namespace

const char* to_string(UtilityMode mode) {
    return mode == UtilityMode::Quadratic ? "quadratic" : "random";
}

UtilityMode parse_utility_mode(const std::string& text) {
    if (text == "quadratic") return UtilityMode::Quadratic;
    if (text == "random") return UtilityMode::Random;
    throw std::invalid_argument("unknown utility mode '" + text + "' (expected quadratic|random)");
}

double GeneratorConfig::demand_cap() const {
    return commercial_fraction > 0.0 ? std::max(commercial_cap, residential_cap) : residential_cap;
}

void GeneratorConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("generator config: " + msg); };
    if (n < 0) fail("n must be non-negative");
    if (m < 1) fail("m must be at least 1");
    if (max_duration < 1) fail("max_duration must be at least 1");
    if (!(bernoulli_p >= 0.0 && bernoulli_p <= 1.0)) fail("bernoulli_p must lie in [0, 1]");
    if (!(commercial_fraction >= 0.0 && commercial_fraction <= 1.0))
        fail("commercial_fraction must lie in [0, 1]");
    if (!(commercial_cap > 0.0 && residential_cap > 0.0)) fail("demand caps must be positive");
    if (!(theta_deg >= 0.0 && theta_deg <= 90.0)) fail("theta_deg must lie in [0, 90]");
    if (bernoulli_p > 0.0 && base_capacity < demand_cap())
        fail("base_capacity below the largest demand cap breaks the no-bottleneck assumption");
    if (bernoulli_p < 1.0 && low_capacity < demand_cap())
        fail("low_capacity below the largest demand cap breaks the no-bottleneck assumption");
    if (utility_mode == UtilityMode::Quadratic) {
        if (quad_a < 0.0 || quad_b < 0.0 || quad_c < 0.0) fail("quadratic coefficients must be >= 0");
        if (quad_a == 0.0 && quad_b == 0.0 && quad_c == 0.0) fail("quadratic utility is identically zero");
    }
}

CapacityProfile gen_capacity(const GeneratorConfig& cfg) {
    cfg.validate();
    PortableRng rng(mix64(cfg.seed ^ kCapacityStream));
    std::vector<double> caps(static_cast<std::size_t>(cfg.m));
    for (auto& c : caps) c = rng.uniform() < cfg.bernoulli_p ? cfg.base_capacity : cfg.low_capacity;
    return CapacityProfile(std::move(caps));
}

std::vector<Demand> gen_customers(const GeneratorConfig& cfg) {
    cfg.validate();
    PortableRng rng(mix64(cfg.seed ^ kCustomerStream));
    const double theta = cfg.theta_deg * std::numbers::pi / 180.0;

    struct Draw {
        int arrival;
        Demand d;
    };
    std::vector<Draw> draws;
    draws.reserve(static_cast<std::size_t>(cfg.n));
    for (int i = 0; i < cfg.n; ++i) {
        const int arrival = rng.uniform_int(1, cfg.m);
        const int duration = rng.uniform_int(1, cfg.max_duration);
        const bool commercial = rng.uniform() < cfg.commercial_fraction;
        const double cap = commercial ? cfg.commercial_cap : cfg.residential_cap;
        const double mag = cap * rng.uniform_open_closed();
        const double phase = theta * rng.uniform();
        const double utility_draw = rng.uniform_open_closed();

        Demand d;
        d.power = std::polar(mag, phase);
        d.interval = {arrival, std::min(arrival + duration - 1, cfg.m)};
        if (cfg.utility_mode == UtilityMode::Quadratic) {
            d.utility = cfg.quad_a * mag * mag + cfg.quad_b * mag + cfg.quad_c;
        } else {
            d.utility = cap * utility_draw;
        }
        draws.push_back({arrival, d});
    }
    std::stable_sort(draws.begin(), draws.end(),
                     [](const Draw& a, const Draw& b) { return a.arrival < b.arrival; });
    std::vector<Demand> out;
    out.reserve(draws.size());
    for (auto& dr : draws) {
        dr.d.id = static_cast<int>(out.size()) + 1;
        out.push_back(dr.d);
    }
    return out;
}

Instance generate_instance(const GeneratorConfig& cfg) {
    auto caps = gen_capacity(cfg);
    auto demands = gen_customers(cfg);
    auto bounds = SystemBounds::from_demands(demands, cfg.theta_deg * std::numbers::pi / 180.0);
    return Instance(std::move(caps), std::move(demands), bounds);
}

std::map<int, int> place_customers(std::span<const Demand> demands, int depth, std::uint64_t seed) {
    if (depth < 1) throw std::invalid_argument("feeder has no load nodes");
    PortableRng rng(mix64(seed ^ 0x4e4f4445ULL));
    std::map<int, int> nodes;
    for (const auto& d : demands) nodes[d.id] = rng.uniform_int(1, depth);
    return nodes;
}

FeederPreset canonical_feeder(double section_km, double v_min_pu) {
    FeederPreset preset;
    const std::complex<double> z_per_km{0.1529, 0.1406};
    preset.topology.impedance.assign(4, z_per_km * section_km);
    preset.base_kv = 12.47;
    const double v_base = preset.base_kv * 1e3;
    preset.limits.v0 = v_base * v_base;
    preset.limits.v_min = v_min_pu * v_min_pu * preset.limits.v0;
    preset.rated_va = 8.7 * kMVA;
    preset.node_load_va = 2 * kMVA;
    return preset;
}

}  // namespace csp
