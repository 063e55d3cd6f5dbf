#include "clusterbench/config.hpp"

#include "clusterbench/error.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>

namespace clusterbench {

namespace {

using nlohmann::json;

template <typename T>
T read_number(const json& value, const std::string& field)
{
    if (!value.is_number()) {
        fail(ErrorKind::Config, field + ": expected a number");
    }
    if constexpr (std::is_integral_v<T>) {
        if (!value.is_number_integer()) {
            fail(ErrorKind::Config, field + ": expected an integer");
        }
        if (value.is_number_integer() && !value.is_number_unsigned() && value.get<std::int64_t>() < 0) {
            fail(ErrorKind::Config, field + ": must be non-negative");
        }
        const auto raw = value.get<std::uint64_t>();
        if (raw > std::numeric_limits<T>::max()) {
            fail(ErrorKind::Config, field + ": out of range");
        }
        return static_cast<T>(raw);
    } else {
        return value.get<T>();
    }
}

std::string read_string(const json& value, const std::string& field)
{
    if (!value.is_string()) {
        fail(ErrorKind::Config, field + ": expected a string");
    }
    return value.get<std::string>();
}

} // namespace

LoadedConfig config_from_json(const json& doc)
{
    if (!doc.is_object()) {
        fail(ErrorKind::Config, "config: top level must be a JSON object");
    }

    static const std::set<std::string> top_keys = {
        "node_count",  "area",         "tx_range",     "energy_threshold",         "execution_time",
        "tick",        "seed",         "initial_energy", "drain_member",           "drain_head",
        "dunn_recluster_threshold",    "validation_interval", "comparator",        "validation_scope",
        "address_prefix",
    };
    std::vector<std::string> unknown;
    for (const auto& [key, _] : doc.items()) {
        if (!top_keys.contains(key)) {
            unknown.push_back(key);
        }
    }
    auto check_nested = [&](const char* parent, std::initializer_list<const char*> allowed) {
        if (!doc.contains(parent)) {
            return;
        }
        const json& obj = doc.at(parent);
        if (!obj.is_object()) {
            fail(ErrorKind::Config, std::string(parent) + ": expected an object");
        }
        for (const auto& [key, _] : obj.items()) {
            if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
                unknown.push_back(std::string(parent) + "." + key);
            }
        }
    };
    check_nested("area", {"width", "height"});
    check_nested("initial_energy", {"min", "max"});
    if (!unknown.empty()) {
        std::string list;
        for (const auto& k : unknown) {
            list += list.empty() ? k : ", " + k;
        }
        fail(ErrorKind::Config, "unknown config keys: " + list);
    }

    LoadedConfig out;
    ScenarioConfig& c = out.config;
    auto number = [&](const char* key, auto& target) {
        if (doc.contains(key)) {
            target = read_number<std::remove_reference_t<decltype(target)>>(doc.at(key), key);
        }
    };
    number("node_count", c.node_count);
    number("tx_range", c.tx_range);
    number("energy_threshold", c.energy_threshold);
    number("execution_time", c.execution_time);
    number("tick", c.tick);
    number("seed", c.seed);
    number("drain_member", c.drain_member);
    number("drain_head", c.drain_head);
    number("dunn_recluster_threshold", c.dunn_recluster_threshold);
    number("validation_interval", c.validation_interval);
    if (doc.contains("area")) {
        const json& area = doc.at("area");
        if (area.contains("width")) {
            c.area_width = read_number<double>(area.at("width"), "area.width");
        }
        if (area.contains("height")) {
            c.area_height = read_number<double>(area.at("height"), "area.height");
        }
    }
    if (doc.contains("initial_energy")) {
        const json& e = doc.at("initial_energy");
        if (e.contains("min")) {
            c.initial_energy_min = read_number<double>(e.at("min"), "initial_energy.min");
        }
        if (e.contains("max")) {
            c.initial_energy_max = read_number<double>(e.at("max"), "initial_energy.max");
        }
    }
    if (doc.contains("comparator")) {
        c.comparator = parse_comparator(read_string(doc.at("comparator"), "comparator"));
    }
    if (doc.contains("validation_scope")) {
        c.validation_scope = parse_validation_scope(read_string(doc.at("validation_scope"), "validation_scope"));
    }
    if (doc.contains("address_prefix")) {
        try {
            c.address_prefix = Prefix48::parse(read_string(doc.at("address_prefix"), "address_prefix"));
        } catch (const Error& e) {
            fail(ErrorKind::Config, std::string("address_prefix: ") + e.what());
        }
    }
    out.seed_given = doc.contains("seed");

    validate_config(c);
    return out;
}

LoadedConfig load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::Config, "cannot read config file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Config, "config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

json to_json(const ScenarioConfig& c)
{
    return json{
        {"node_count", c.node_count},
        {"area", {{"width", c.area_width}, {"height", c.area_height}}},
        {"tx_range", c.tx_range},
        {"energy_threshold", c.energy_threshold},
        {"execution_time", c.execution_time},
        {"tick", c.tick},
        {"seed", c.seed},
        {"initial_energy", {{"min", c.initial_energy_min}, {"max", c.initial_energy_max}}},
        {"drain_member", c.drain_member},
        {"drain_head", c.drain_head},
        {"dunn_recluster_threshold", c.dunn_recluster_threshold},
        {"validation_interval", c.validation_interval},
        {"comparator", std::string(to_string(c.comparator))},
        {"validation_scope", std::string(to_string(c.validation_scope))},
        {"address_prefix", c.address_prefix.to_string()},
    };
}

} // namespace clusterbench
