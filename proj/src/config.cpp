#include "rseri/config.hpp"

#include "rseri/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace rseri {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& section) {
    for (const auto& [key, value] : object.items()) {
        if (known.find(key) == known.end()) {
            throw ConfigError("unknown config key '" + section + key + "'");
        }
    }
}

double number_or(const json& object, const char* key, double fallback,
                 const std::string& section) {
    if (!object.contains(key)) {
        return fallback;
    }
    const auto& value = object.at(key);
    if (!value.is_number()) {
        throw ConfigError("config key '" + section + key + "' must be a number");
    }
    return value.get<double>();
}

std::string string_or(const json& object, const char* key, const std::string& fallback,
                      const std::string& section) {
    if (!object.contains(key)) {
        return fallback;
    }
    const auto& value = object.at(key);
    if (!value.is_string()) {
        throw ConfigError("config key '" + section + key + "' must be a string");
    }
    return value.get<std::string>();
}

void parse_inputs(const json& inputs, PipelineConfig& config) {
    reject_unknown_keys(inputs,
                        {"chargers", "chargers_format", "flood", "substations", "roads", "lads",
                         "lst", "ndvi", "lulc", "legend"},
                        "inputs.");
    config.chargers_path = string_or(inputs, "chargers", "", "inputs.");
    const std::string format = string_or(inputs, "chargers_format", "csv", "inputs.");
    if (format == "csv") {
        config.chargers_format = ChargerFormat::Csv;
    } else if (format == "geojson") {
        config.chargers_format = ChargerFormat::GeoJsonPoints;
    } else {
        throw ConfigError("inputs.chargers_format must be 'csv' or 'geojson'");
    }
    config.flood_path = string_or(inputs, "flood", "", "inputs.");
    config.substations_path = string_or(inputs, "substations", "", "inputs.");
    config.roads_path = string_or(inputs, "roads", "", "inputs.");
    config.lads_path = string_or(inputs, "lads", "", "inputs.");
    if (inputs.contains("lst")) {
        const auto& lst = inputs.at("lst");
        if (!lst.is_array()) {
            throw ConfigError("inputs.lst must be an array of raster paths");
        }
        for (const auto& entry : lst) {
            if (!entry.is_string()) {
                throw ConfigError("inputs.lst entries must be strings");
            }
            config.lst_paths.push_back(entry.get<std::string>());
        }
    }
    config.ndvi_path = string_or(inputs, "ndvi", "", "inputs.");
    config.lulc_path = string_or(inputs, "lulc", "", "inputs.");
    config.legend_path = string_or(inputs, "legend", "", "inputs.");
}

void parse_thresholds(const json& section, PipelineConfig& config) {
    reject_unknown_keys(
        section, {"grid_m", "road_m", "lst_percentile", "ndvi_low", "ndvi_high", "lst_population"},
        "thresholds.");
    auto& t = config.thresholds;
    t.grid_m = number_or(section, "grid_m", t.grid_m, "thresholds.");
    t.road_m = number_or(section, "road_m", t.road_m, "thresholds.");
    t.lst_percentile = number_or(section, "lst_percentile", t.lst_percentile, "thresholds.");
    t.ndvi_low = number_or(section, "ndvi_low", t.ndvi_low, "thresholds.");
    t.ndvi_high = number_or(section, "ndvi_high", t.ndvi_high, "thresholds.");
    const std::string population = string_or(section, "lst_population", "", "thresholds.");
    if (population == "raster") {
        t.lst_population = LstPopulation::Raster;
    } else if (population == "chargers" || population.empty()) {
        t.lst_population = LstPopulation::Chargers;
    } else {
        throw ConfigError("thresholds.lst_population must be 'chargers' or 'raster'");
    }

    if (!(t.grid_m > 0.0)) {
        throw ConfigError("thresholds.grid_m must be positive");
    }
    if (!(t.road_m > 0.0)) {
        throw ConfigError("thresholds.road_m must be positive");
    }
    if (!(t.lst_percentile >= 0.0 && t.lst_percentile <= 1.0)) {
        throw ConfigError("thresholds.lst_percentile must lie in [0,1]");
    }
    if (!(t.ndvi_low >= -1.0 && t.ndvi_low <= t.ndvi_high && t.ndvi_high <= 1.0)) {
        throw ConfigError("thresholds.ndvi_low/ndvi_high must satisfy -1 <= low <= high <= 1");
    }
}

void parse_classes(const json& section, PipelineConfig& config) {
    reject_unknown_keys(section, {"low_max", "moderate_max"}, "classes.");
    auto& c = config.classes;
    c.low_max = number_or(section, "low_max", c.low_max, "classes.");
    c.moderate_max = number_or(section, "moderate_max", c.moderate_max, "classes.");
    if (!(c.low_max > 0.0 && c.low_max <= c.moderate_max && c.moderate_max <= 1.0)) {
        throw ConfigError("classes.low_max/moderate_max must satisfy 0 < low <= moderate <= 1");
    }
}

void parse_weights(const json& section, PipelineConfig& config) {
    reject_unknown_keys(section, {"kind", "custom"}, "weights.");
    const std::string kind = string_or(section, "kind", "equal", "weights.");
    if (kind == "equal") {
        config.weights.kind = WeightScheme::Kind::Equal;
    } else if (kind == "pca") {
        config.weights.kind = WeightScheme::Kind::Pca;
    } else if (kind == "custom") {
        config.weights.kind = WeightScheme::Kind::Custom;
    } else {
        throw ConfigError("weights.kind must be 'equal', 'pca', or 'custom'");
    }
    if (section.contains("custom")) {
        const auto& custom = section.at("custom");
        if (!custom.is_array() || custom.size() != 5) {
            throw ConfigError("weights.custom must be an array of 5 numbers");
        }
        std::array<double, 5> weights{};
        for (std::size_t i = 0; i < 5; ++i) {
            if (!custom[i].is_number()) {
                throw ConfigError("weights.custom entries must be numbers");
            }
            weights[i] = custom[i].get<double>();
        }
        try {
            custom_weights(weights); // validates nonnegativity and the sum
        } catch (const DomainError& e) {
            throw ConfigError(std::string("weights.custom: ") + e.what());
        }
        config.weights.custom = weights;
    }
    if (config.weights.kind == WeightScheme::Kind::Custom && !config.weights.custom) {
        throw ConfigError("weights.kind is 'custom' but weights.custom is missing");
    }
}

void parse_graph(const json& section, PipelineConfig& config) {
    reject_unknown_keys(section, {"k", "symmetrize_export"}, "graph.");
    const double k = number_or(section, "k", static_cast<double>(config.graph.k), "graph.");
    if (!(k >= 1.0) || k != std::floor(k)) {
        throw ConfigError("graph.k must be a positive integer");
    }
    config.graph.k = static_cast<std::size_t>(k);
    if (section.contains("symmetrize_export")) {
        if (!section.at("symmetrize_export").is_boolean()) {
            throw ConfigError("graph.symmetrize_export must be a boolean");
        }
        config.graph.symmetrize_export = section.at("symmetrize_export").get<bool>();
    }
}

void parse_analytics(const json& section, PipelineConfig& config) {
    reject_unknown_keys(section, {"hexbin_cell_m", "histogram_bins", "intersections"},
                        "analytics.");
    auto& a = config.analytics;
    a.hexbin_cell_m = number_or(section, "hexbin_cell_m", a.hexbin_cell_m, "analytics.");
    if (!(a.hexbin_cell_m > 0.0)) {
        throw ConfigError("analytics.hexbin_cell_m must be positive");
    }
    const double bins =
        number_or(section, "histogram_bins", static_cast<double>(a.histogram_bins), "analytics.");
    if (!(bins >= 1.0) || bins != std::floor(bins)) {
        throw ConfigError("analytics.histogram_bins must be a positive integer");
    }
    a.histogram_bins = static_cast<std::size_t>(bins);
    if (section.contains("intersections")) {
        const auto& combos = section.at("intersections");
        if (!combos.is_array()) {
            throw ConfigError("analytics.intersections must be an array of factor-name arrays");
        }
        a.intersections.clear();
        for (const auto& combo : combos) {
            if (!combo.is_array() || combo.empty()) {
                throw ConfigError("each intersection must be a non-empty array of factor names");
            }
            FactorSet set;
            for (const auto& name : combo) {
                if (!name.is_string()) {
                    throw ConfigError("intersection factor names must be strings");
                }
                const std::string factor = name.get<std::string>();
                bool known = false;
                for (const char* candidate : kCompositeFactors) {
                    known = known || factor == candidate;
                }
                if (!known) {
                    throw ConfigError("unknown risk factor '" + factor +
                                      "' in analytics.intersections");
                }
                set.push_back(factor);
            }
            a.intersections.push_back(std::move(set));
        }
    }
}

} // namespace

std::string PipelineConfig::resolve(const std::string& raw) const {
    if (raw.empty()) {
        return raw;
    }
    const std::filesystem::path path(raw);
    if (path.is_absolute() || config_dir.empty()) {
        return raw;
    }
    return (std::filesystem::path(config_dir) / path).string();
}

std::string PipelineConfig::snapshot_json() const {
    json snapshot;
    snapshot["inputs"] = {
        {"chargers", chargers_path},
        {"chargers_format", chargers_format == ChargerFormat::Csv ? "csv" : "geojson"},
        {"flood", flood_path},
        {"substations", substations_path},
        {"roads", roads_path},
        {"lads", lads_path},
        {"lst", lst_paths},
        {"ndvi", ndvi_path},
        {"lulc", lulc_path},
        {"legend", legend_path},
    };
    snapshot["crs"] = {{"mode", crs_mode == CrsMode::Wgs84 ? "wgs84" : "projected"}};
    snapshot["thresholds"] = {
        {"grid_m", thresholds.grid_m},
        {"road_m", thresholds.road_m},
        {"lst_percentile", thresholds.lst_percentile},
        {"ndvi_low", thresholds.ndvi_low},
        {"ndvi_high", thresholds.ndvi_high},
        {"lst_population",
         thresholds.lst_population == LstPopulation::Raster ? "raster" : "chargers"},
    };
    snapshot["classes"] = {{"low_max", classes.low_max}, {"moderate_max", classes.moderate_max}};
    const char* kind = weights.kind == WeightScheme::Kind::Equal
                           ? "equal"
                           : (weights.kind == WeightScheme::Kind::Pca ? "pca" : "custom");
    snapshot["weights"]["kind"] = kind;
    if (weights.custom) {
        snapshot["weights"]["custom"] = *weights.custom;
    }
    snapshot["graph"] = {{"k", graph.k}, {"symmetrize_export", graph.symmetrize_export}};
    snapshot["analytics"] = {
        {"hexbin_cell_m", analytics.hexbin_cell_m},
        {"histogram_bins", analytics.histogram_bins},
        {"intersections", analytics.intersections},
    };
    snapshot["output"] = {{"dir", out_dir}};
    // threads deliberately omitted: worker count must never influence outputs,
    // so it has no place in the digested manifest snapshot.
    return snapshot.dump(2);
}

PipelineConfig parse_config(const std::string& text, const std::string& config_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    reject_unknown_keys(doc,
                        {"inputs", "crs", "thresholds", "classes", "weights", "graph", "analytics",
                         "output", "threads"},
                        "");

    PipelineConfig config;
    config.config_dir = config_dir;

    if (doc.contains("inputs")) {
        parse_inputs(doc.at("inputs"), config);
    }
    if (doc.contains("crs")) {
        const auto& crs = doc.at("crs");
        reject_unknown_keys(crs, {"mode"}, "crs.");
        const std::string mode = string_or(crs, "mode", "wgs84", "crs.");
        if (mode == "wgs84") {
            config.crs_mode = CrsMode::Wgs84;
        } else if (mode == "projected") {
            config.crs_mode = CrsMode::Projected;
        } else {
            throw ConfigError("crs.mode must be 'wgs84' or 'projected'");
        }
    }
    if (doc.contains("thresholds")) {
        parse_thresholds(doc.at("thresholds"), config);
    }
    if (doc.contains("classes")) {
        parse_classes(doc.at("classes"), config);
    }
    if (doc.contains("weights")) {
        parse_weights(doc.at("weights"), config);
    }
    if (doc.contains("graph")) {
        parse_graph(doc.at("graph"), config);
    }
    if (doc.contains("analytics")) {
        parse_analytics(doc.at("analytics"), config);
    }
    if (doc.contains("output")) {
        const auto& output = doc.at("output");
        reject_unknown_keys(output, {"dir"}, "output.");
        config.out_dir = string_or(output, "dir", config.out_dir, "output.");
    }
    if (doc.contains("threads")) {
        const double threads = number_or(doc, "threads", 1.0, "");
        if (!(threads >= 1.0) || threads != std::floor(threads)) {
            throw ConfigError("threads must be a positive integer");
        }
        config.threads = static_cast<unsigned>(threads);
    }
    return config;
}

PipelineConfig load_config_file(const std::string& path) {
    const std::string text = read_file(path);
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    return parse_config(text, parent.string());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw Error("failed reading file: " + path);
    }
    return buffer.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) {
        std::filesystem::create_directories(target.parent_path());
    }
    const std::filesystem::path temp = target.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open file for writing: " + temp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw Error("failed writing file: " + temp.string());
        }
    }
    std::filesystem::rename(temp, target);
}

} // namespace rseri
