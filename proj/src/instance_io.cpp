#include "csp/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace csp {

using nlohmann::json;

namespace {

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<T>();
}

std::string line_context(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
    const auto line_start = text.rfind('\n', byte == 0 ? 0 : byte - 1);
    const std::size_t col = line_start == std::string::npos ? byte + 1 : byte - line_start;
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_with_context(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": syntax error at " + line_context(text, e.byte == 0 ? 0 : e.byte - 1) +
                         ": " + e.what());
    }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Instance InstanceDocument::to_instance() const {
    SystemBounds b = bounds ? *bounds : SystemBounds::from_demands(demands);
    return Instance(CapacityProfile(capacities), demands, b);
}

json to_json(const SystemBounds& b) {
    return {{"a_min", b.a_min}, {"a_max", b.a_max}, {"u_min", b.u_min},
            {"u_max", b.u_max}, {"t_max", b.t_max}, {"theta", b.theta}};
}

json to_json(const Instance& inst) {
    json demands = json::array();
    for (const auto& d : inst.demands()) {
        demands.push_back({{"id", d.id},
                           {"re", d.power.real()},
                           {"im", d.power.imag()},
                           {"utility", d.utility},
                           {"t_start", d.interval.first},
                           {"t_end", d.interval.last}});
    }
    const auto caps = inst.capacities().values();
    return {{"schema", kInstanceSchema},
            {"horizon", inst.horizon()},
            {"capacities", std::vector<double>(caps.begin(), caps.end())},
            {"bounds", to_json(inst.bounds())},
            {"demands", demands}};
}

json to_json(const GeneratorConfig& c) {
    return {{"n", c.n},
            {"m", c.m},
            {"base_capacity", c.base_capacity},
            {"bernoulli_p", c.bernoulli_p},
            {"low_capacity", c.low_capacity},
            {"max_duration", c.max_duration},
            {"utility_mode", to_string(c.utility_mode)},
            {"quadratic", {{"a", c.quad_a}, {"b", c.quad_b}, {"c", c.quad_c}}},
            {"commercial_fraction", c.commercial_fraction},
            {"commercial_cap", c.commercial_cap},
            {"residential_cap", c.residential_cap},
            {"theta_deg", c.theta_deg},
            {"seed", c.seed}};
}

InstanceDocument instance_document_from_json(const json& j) {
    try {
        const int schema = j.at("schema").get<int>();
        if (schema != kInstanceSchema)
            throw ParseError("unsupported instance schema " + std::to_string(schema));
        InstanceDocument doc;
        doc.capacities = j.at("capacities").get<std::vector<double>>();
        const int horizon = field_or<int>(j, "horizon", doc.horizon());
        if (horizon != doc.horizon())
            throw ParseError("horizon " + std::to_string(horizon) + " does not match " +
                             std::to_string(doc.horizon()) + " capacities");
        if (auto it = j.find("bounds"); it != j.end()) {
            SystemBounds b;
            b.a_min = it->at("a_min").get<double>();
            b.a_max = it->at("a_max").get<double>();
            b.u_min = it->at("u_min").get<double>();
            b.u_max = it->at("u_max").get<double>();
            b.t_max = it->at("t_max").get<int>();
            b.theta = it->at("theta").get<double>();
            doc.bounds = b;
        }
        for (const auto& jd : j.at("demands")) {
            Demand d;
            d.id = jd.at("id").get<int>();
            d.power = {jd.at("re").get<double>(), jd.at("im").get<double>()};
            d.utility = jd.at("utility").get<double>();
            d.interval = {jd.at("t_start").get<int>(), jd.at("t_end").get<int>()};
            if (auto n = jd.find("node"); n != jd.end()) doc.nodes[d.id] = n->get<int>();
            doc.demands.push_back(d);
        }
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance document: ") + e.what());
    }
}

InstanceDocument parse_instance_document(const std::string& text) {
    return instance_document_from_json(parse_with_context(text, "instance document"));
}

InstanceDocument load_instance_file(const std::filesystem::path& path) {
    try {
        return parse_instance_document(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_instance_file(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << to_json(inst).dump(2) << '\n';
}

double parse_power(const json& value) {
    if (value.is_number()) return value.get<double>();
    if (!value.is_string()) throw ParseError("power must be a number or a string with a unit");
    const auto text = value.get<std::string>();
    std::size_t used = 0;
    double magnitude = 0.0;
    try {
        magnitude = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError("cannot parse power '" + text + "'");
    }
    std::string unit;
    for (char c : text.substr(used)) {
        if (!std::isspace(static_cast<unsigned char>(c))) unit += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    if (unit.empty() || unit == "VA") return magnitude * kVA;
    if (unit == "KVA") return magnitude * kKVA;
    if (unit == "MVA") return magnitude * kMVA;
    throw ParseError("unknown power unit in '" + text + "'");
}

GeneratorConfig generator_config_from_json(const json& j) {
    GeneratorConfig c;
    try {
        c.n = field_or(j, "n", c.n);
        c.m = field_or(j, "m", c.m);
        if (j.contains("base_capacity")) c.base_capacity = parse_power(j["base_capacity"]);
        if (j.contains("low_capacity")) c.low_capacity = parse_power(j["low_capacity"]);
        c.bernoulli_p = field_or(j, "bernoulli_p", c.bernoulli_p);
        c.max_duration = field_or(j, "max_duration", c.max_duration);
        if (j.contains("utility_mode")) c.utility_mode = parse_utility_mode(j["utility_mode"].get<std::string>());
        if (auto q = j.find("quadratic"); q != j.end()) {
            c.quad_a = field_or(*q, "a", c.quad_a);
            c.quad_b = field_or(*q, "b", c.quad_b);
            c.quad_c = field_or(*q, "c", c.quad_c);
        }
        c.commercial_fraction = field_or(j, "commercial_fraction", c.commercial_fraction);
        if (j.contains("commercial_cap")) c.commercial_cap = parse_power(j["commercial_cap"]);
        if (j.contains("residential_cap")) c.residential_cap = parse_power(j["residential_cap"]);
        c.theta_deg = field_or(j, "theta_deg", c.theta_deg);
        c.seed = field_or<std::uint64_t>(j, "seed", c.seed);
    } catch (const json::exception& e) {
        throw ParseError(std::string("generator config: ") + e.what());
    }
    c.validate();
    return c;
}

GeneratorConfig load_generator_config(const std::filesystem::path& path) {
    return generator_config_from_json(parse_with_context(read_text_file(path), path.string()));
}

FeederConfig feeder_config_from_json(const json& j) {
    FeederConfig cfg;
    try {
        const auto& edges = j.at("edges");
        const int nodes = field_or<int>(j, "nodes", static_cast<int>(edges.size()) + 1);
        if (nodes != static_cast<int>(edges.size()) + 1)
            throw ParseError("feeder config: a path with " + std::to_string(nodes) + " nodes needs " +
                             std::to_string(nodes - 1) + " edges");
        for (const auto& e : edges) {
            const double len = field_or(e, "length_km", 1.0);
            cfg.topology.impedance.emplace_back(e.at("r").get<double>() * len, e.at("x").get<double>() * len);
        }
        const double v0_kv = j.at("v0_kv").get<double>();
        const double v_min_pu = field_or(j, "v_min_pu", kDefaultMinVoltagePu);
        cfg.limits.v0 = v0_kv * 1e3 * v0_kv * 1e3;
        cfg.limits.v_min = v_min_pu * v_min_pu * cfg.limits.v0;
    } catch (const json::exception& e) {
        throw ParseError(std::string("feeder config: ") + e.what());
    }
    if (!(cfg.limits.v_min > 0.0 && cfg.limits.v_min < cfg.limits.v0))
        throw ParseError("feeder config: need 0 < v_min_pu < 1");
    return cfg;
}

FeederConfig load_feeder_config(const std::filesystem::path& path) {
    return feeder_config_from_json(parse_with_context(read_text_file(path), path.string()));
}

}  // namespace csp
