#pragma once

// JSON documents: instances (schema 1), generator configs and feeder configs.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "csp/core.hpp"
#include "csp/voltage.hpp"
#include "csp/workload.hpp"

namespace csp {

inline constexpr int kInstanceSchema = 1;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Instance document as written, before canonical rotation. `nodes` carries
/// optional per-demand feeder placement.
struct InstanceDocument {
    std::vector<double> capacities;
    std::vector<Demand> demands;
    std::optional<SystemBounds> bounds;
    std::map<int, int> nodes;

    int horizon() const { return static_cast<int>(capacities.size()); }
    /// Builds the rotated instance; missing bounds are fitted to the demands.
    Instance to_instance() const;
};

nlohmann::json to_json(const SystemBounds& b);
nlohmann::json to_json(const Instance& inst);
nlohmann::json to_json(const GeneratorConfig& cfg);

InstanceDocument instance_document_from_json(const nlohmann::json& j);
/// Parses text; syntax errors report the line and column.
InstanceDocument parse_instance_document(const std::string& text);
InstanceDocument load_instance_file(const std::filesystem::path& path);
void save_instance_file(const Instance& inst, const std::filesystem::path& path);

/// Powers may be numbers (VA) or strings with a unit: "4 MVA", "20 KVA", "500 VA".
double parse_power(const nlohmann::json& value);

GeneratorConfig generator_config_from_json(const nlohmann::json& j);
GeneratorConfig load_generator_config(const std::filesystem::path& path);

struct FeederConfig {
    FeederTopology topology;
    VoltageLimits limits;
};

/// { "nodes": d+1, "edges": [{"r","x","length_km"}], "v0_kv", "v_min_pu" }
FeederConfig feeder_config_from_json(const nlohmann::json& j);
FeederConfig load_feeder_config(const std::filesystem::path& path);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace csp
