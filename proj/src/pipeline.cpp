#include "rseri/pipeline.hpp"

#include "rseri/analytics.hpp"
#include "rseri/ascii_grid.hpp"
#include "rseri/chargers_io.hpp"
#include "rseri/csv.hpp"
#include "rseri/digest.hpp"
#include "rseri/errors.hpp"
#include "rseri/format.hpp"
#include "rseri/geojson.hpp"
#include "rseri/parallel.hpp"
#include "rseri/pca.hpp"
#include "rseri/projection.hpp"
#include "rseri/raster_ops.hpp"
#include "rseri/risk.hpp"
#include "rseri/svg.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <set>

namespace rseri {

namespace {

using nlohmann::json;

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    return std::chrono::duration<double>(elapsed).count();
}

std::optional<double> parse_optional_double(const std::string& text) {
    if (text.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("invalid number '" + text + "'");
    }
    return value;
}

std::optional<bool> parse_optional_bit(const std::string& text) {
    if (text.empty()) {
        return std::nullopt;
    }
    if (text == "0") {
        return false;
    }
    if (text == "1") {
        return true;
    }
    throw ParseError("invalid indicator value '" + text + "' (expected 0, 1 or empty)");
}

RiskLevel parse_risk_level(const std::string& text) {
    if (text == "Low") {
        return RiskLevel::Low;
    }
    if (text == "Moderate") {
        return RiskLevel::Moderate;
    }
    if (text == "High") {
        return RiskLevel::High;
    }
    throw ParseError("invalid risk class '" + text + "'");
}

/// Everything cmd_score reads, plus the digest record for the manifest.
struct LoadedInputs {
    ChargerLoadResult chargers;
    std::optional<VectorLayer> flood;
    std::optional<VectorLayer> substations;
    std::optional<VectorLayer> roads;
    std::optional<VectorLayer> lads;
    std::vector<RasterGrid> lst;
    std::optional<RasterGrid> ndvi;
    std::optional<RasterGrid> lulc;
    std::optional<LulcLegend> legend;
    json input_manifest = json::object();
};

std::string read_and_digest(const PipelineConfig& config, const std::string& configured_path,
                            const char* key, json& manifest) {
    const std::string text = read_file(config.resolve(configured_path));
    manifest[key] = {{"path", configured_path}, {"sha256", sha256_hex(text)}};
    return text;
}

LoadedInputs load_inputs(const PipelineConfig& config) {
    if (config.chargers_path.empty()) {
        throw ConfigError("config provides no chargers input (inputs.chargers)");
    }
    LoadedInputs inputs;

    const std::string charger_text =
        read_and_digest(config, config.chargers_path, "chargers", inputs.input_manifest);
    inputs.chargers = load_chargers(charger_text, config.chargers_format, config.crs_mode);

    const auto load_layer = [&](const std::string& path, const char* key) {
        std::optional<VectorLayer> layer;
        if (!path.empty()) {
            const std::string text = read_and_digest(config, path, key, inputs.input_manifest);
            layer = parse_geojson(text, config.crs_mode, key);
        }
        return layer;
    };
    inputs.flood = load_layer(config.flood_path, "flood");
    inputs.substations = load_layer(config.substations_path, "substations");
    inputs.roads = load_layer(config.roads_path, "roads");
    inputs.lads = load_layer(config.lads_path, "lads");

    if (!config.lst_paths.empty()) {
        json lst_entries = json::array();
        for (const auto& path : config.lst_paths) {
            const std::string text = read_file(config.resolve(path));
            lst_entries.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
            inputs.lst.push_back(parse_ascii_grid(text));
        }
        inputs.input_manifest["lst"] = std::move(lst_entries);
    }
    if (!config.ndvi_path.empty()) {
        inputs.ndvi = parse_ascii_grid(
            read_and_digest(config, config.ndvi_path, "ndvi", inputs.input_manifest));
    }
    if (!config.lulc_path.empty()) {
        inputs.lulc = parse_ascii_grid(
            read_and_digest(config, config.lulc_path, "lulc", inputs.input_manifest));
    }
    if (!config.legend_path.empty()) {
        inputs.legend = parse_lulc_legend(
            read_and_digest(config, config.legend_path, "legend", inputs.input_manifest));
    }
    return inputs;
}

/// Per-charger classification state the indicator pass shares with scoring.
struct SampledClasses {
    std::optional<RiskLevel> ndvi_class;
    std::optional<LulcCategory> lulc_category;
};

struct ScoringOutput {
    std::vector<ChargerStation> chargers;
    std::vector<std::pair<std::string, std::string>> excluded; // id -> reason, input order
    WeightScheme scheme;
    std::optional<double> lst_threshold;
    KnnGraph graph;
    std::vector<std::string> warnings;
};

ScoringOutput run_scoring(const PipelineConfig& config, LoadedInputs& inputs) {
    ScoringOutput output;
    output.chargers = std::move(inputs.chargers.stations);
    auto& chargers = output.chargers;
    if (chargers.size() < 2) {
        throw DomainError("scoring requires at least 2 active chargers, got " +
                          std::to_string(chargers.size()));
    }

    output.graph = build_knn_graph(chargers, config.graph.k, config.threads);

    const bool have_substations = inputs.substations && !inputs.substations->features.empty();
    const bool have_roads = inputs.roads && !inputs.roads->features.empty();

    // Phase 1: sample rasters and measure distances (independent per charger).
    std::vector<std::vector<std::string>> warning_slots(chargers.size());
    parallel_for(chargers.size(), config.threads, [&](std::size_t i) {
        ChargerStation& charger = chargers[i];
        if (have_substations) {
            charger.sampled.substation_dist_m =
                nearest_feature_distance(charger.projected, *inputs.substations);
        }
        if (have_roads) {
            charger.sampled.road_dist_m =
                nearest_feature_distance(charger.projected, *inputs.roads);
        }
        if (!inputs.lst.empty()) {
            std::vector<std::optional<double>> samples;
            samples.reserve(inputs.lst.size());
            for (const auto& grid : inputs.lst) {
                samples.push_back(sample_raster(grid, charger.projected));
            }
            const LstComposite composite = lst_composite(samples);
            charger.sampled.lst = composite.max;
            charger.sampled.lst_median = composite.median;
        }
        if (inputs.ndvi) {
            auto value = sample_raster(*inputs.ndvi, charger.projected);
            if (value && !(*value >= -1.0 && *value <= 1.0)) {
                warning_slots[i].push_back("charger '" + charger.id + "': NDVI value " +
                                           std::to_string(*value) +
                                           " outside [-1,1]; treated as missing");
                value.reset();
            }
            charger.sampled.ndvi = value;
        }
        if (inputs.lulc) {
            const auto value = sample_raster(*inputs.lulc, charger.projected);
            if (value) {
                charger.sampled.lulc_code = static_cast<int>(std::llround(*value));
            }
        }
    });

    // Phase 2: the LST threshold needs the full sample, so it sits between
    // the sampling and indicator passes.
    if (!inputs.lst.empty()) {
        std::vector<double> population;
        if (config.thresholds.lst_population == LstPopulation::Chargers) {
            for (const auto& charger : chargers) {
                if (charger.sampled.lst) {
                    population.push_back(*charger.sampled.lst);
                }
            }
        } else {
            for (const auto& grid : inputs.lst) {
                for (const double value : grid.values) {
                    if (value != grid.nodata) {
                        population.push_back(value);
                    }
                }
            }
        }
        if (!population.empty()) {
            output.lst_threshold =
                percentile(std::move(population), config.thresholds.lst_percentile);
        }
    }

    // Phase 3: indicators (independent per charger again).
    std::vector<SampledClasses> classes(chargers.size());
    parallel_for(chargers.size(), config.threads, [&](std::size_t i) {
        ChargerStation& charger = chargers[i];
        RiskVector& risk = charger.risk;
        if (inputs.flood) {
            risk.flood = flood_indicator(charger.projected, *inputs.flood) == 1;
        }
        if (charger.sampled.lst && output.lst_threshold) {
            risk.lst = lst_indicator(*charger.sampled.lst, *output.lst_threshold) == 1;
        }
        if (charger.sampled.substation_dist_m) {
            risk.grid =
                grid_indicator(*charger.sampled.substation_dist_m, config.thresholds.grid_m) == 1;
        }
        if (charger.sampled.road_dist_m) {
            risk.road = road_indicator(*charger.sampled.road_dist_m, config.thresholds.road_m) == 1;
        }
        if (charger.sampled.ndvi) {
            classes[i].ndvi_class = classify_ndvi(*charger.sampled.ndvi, config.thresholds.ndvi_low,
                                                  config.thresholds.ndvi_high);
            risk.ndvi = ndvi_indicator(*classes[i].ndvi_class) == 1;
        }
        if (charger.sampled.lulc_code && inputs.legend) {
            std::vector<std::string> lulc_warnings;
            classes[i].lulc_category =
                classify_lulc(*charger.sampled.lulc_code, *inputs.legend, &lulc_warnings);
            risk.lulc = lulc_indicator(*classes[i].lulc_category) == 1;
            for (auto& warning : lulc_warnings) {
                warning_slots[i].push_back(std::move(warning));
            }
        }
        if (classes[i].ndvi_class && classes[i].lulc_category) {
            risk.vegetation =
                vegetation_indicator(*classes[i].ndvi_class, *classes[i].lulc_category) == 1;
        }
    });

    // Merge per-charger warnings in input order, deduplicated.
    std::set<std::string> seen_warnings;
    for (auto& slot : warning_slots) {
        for (auto& warning : slot) {
            if (seen_warnings.insert(warning).second) {
                output.warnings.push_back(warning);
            }
        }
    }

    // Phase 4: weights (PCA consumes the completed indicator matrix).
    switch (config.weights.kind) {
    case WeightScheme::Kind::Equal:
        output.scheme = equal_weights();
        break;
    case WeightScheme::Kind::Custom:
        output.scheme = custom_weights(*config.weights.custom);
        break;
    case WeightScheme::Kind::Pca: {
        std::vector<std::array<double, 5>> rows;
        for (const auto& charger : chargers) {
            if (charger.risk.composite_complete()) {
                const auto bits = charger.risk.composite_bits();
                std::array<double, 5> row{};
                for (std::size_t j = 0; j < 5; ++j) {
                    row[j] = static_cast<double>(bits[j]);
                }
                rows.push_back(row);
            }
        }
        if (rows.size() < 5) {
            throw DomainError("PCA weighting requires at least 5 scorable chargers, got " +
                              std::to_string(rows.size()));
        }
        output.scheme = pca_weights(rows);
        break;
    }
    }

    // Phase 5: aggregate scores; incomplete stations are excluded.
    for (auto& charger : chargers) {
        if (!charger.risk.composite_complete()) {
            std::string reason = "missing indicators:";
            for (const auto& name : charger.risk.missing_composite()) {
                reason += ' ';
                reason += name;
            }
            output.excluded.emplace_back(charger.id, reason);
            continue;
        }
        const RseriScore score = compute_rseri(charger.risk, output.scheme,
                                               config.classes.low_max,
                                               config.classes.moderate_max);
        charger.rseri = score.value;
        charger.risk_class = score.level;
    }
    return output;
}

std::string bit_text(const std::optional<bool>& bit) {
    if (!bit) {
        return {};
    }
    return *bit ? "1" : "0";
}

std::string scored_csv(const std::vector<ChargerStation>& chargers) {
    std::string out =
        "id,lon,lat,easting,northing,flood,lst,grid,road,ndvi,lulc,vegetation,"
        "substation_dist_m,road_dist_m,rseri,class\n";
    for (const auto& charger : chargers) {
        if (!charger.scored()) {
            continue;
        }
        out += csv_escape(charger.id);
        out += ',' + format_fixed(charger.location.lon, 6);
        out += ',' + format_fixed(charger.location.lat, 6);
        out += ',' + format_fixed(charger.projected.easting, 6);
        out += ',' + format_fixed(charger.projected.northing, 6);
        out += ',' + bit_text(charger.risk.flood);
        out += ',' + bit_text(charger.risk.lst);
        out += ',' + bit_text(charger.risk.grid);
        out += ',' + bit_text(charger.risk.road);
        out += ',' + bit_text(charger.risk.ndvi);
        out += ',' + bit_text(charger.risk.lulc);
        out += ',' + bit_text(charger.risk.vegetation);
        out += ',';
        if (charger.sampled.substation_dist_m) {
            out += format_fixed(*charger.sampled.substation_dist_m, 6);
        }
        out += ',';
        if (charger.sampled.road_dist_m) {
            out += format_fixed(*charger.sampled.road_dist_m, 6);
        }
        out += ',' + format_fixed(*charger.rseri, 4);
        out += ',' + to_string(*charger.risk_class);
        out += '\n';
    }
    return out;
}

void set_bit_property(PropertyMap& properties, const char* key,
                      const std::optional<bool>& bit) {
    if (bit) {
        properties[key] = static_cast<std::int64_t>(*bit ? 1 : 0);
    } else {
        properties[key] = std::monostate{};
    }
}

void set_number_property(PropertyMap& properties, const char* key,
                         const std::optional<double>& value) {
    if (value) {
        properties[key] = *value;
    } else {
        properties[key] = std::monostate{};
    }
}

/// Scored chargers as WGS84 point features.
VectorLayer scored_layer(const std::vector<ChargerStation>& chargers) {
    VectorLayer layer;
    layer.name = "chargers_scored";
    layer.geometry_kind = GeometryKind::Point;
    for (const auto& charger : chargers) {
        if (!charger.scored()) {
            continue;
        }
        Feature feature;
        feature.geometry = ProjectedPoint{charger.location.lon, charger.location.lat};
        feature.properties["id"] = charger.id;
        set_bit_property(feature.properties, "flood", charger.risk.flood);
        set_bit_property(feature.properties, "lst", charger.risk.lst);
        set_bit_property(feature.properties, "grid", charger.risk.grid);
        set_bit_property(feature.properties, "road", charger.risk.road);
        set_bit_property(feature.properties, "ndvi", charger.risk.ndvi);
        set_bit_property(feature.properties, "lulc", charger.risk.lulc);
        set_bit_property(feature.properties, "vegetation", charger.risk.vegetation);
        set_number_property(feature.properties, "lst_c", charger.sampled.lst);
        set_number_property(feature.properties, "lst_median_c", charger.sampled.lst_median);
        set_number_property(feature.properties, "ndvi_value", charger.sampled.ndvi);
        if (charger.sampled.lulc_code) {
            feature.properties["lulc_code"] =
                static_cast<std::int64_t>(*charger.sampled.lulc_code);
        } else {
            feature.properties["lulc_code"] = std::monostate{};
        }
        set_number_property(feature.properties, "substation_dist_m",
                            charger.sampled.substation_dist_m);
        set_number_property(feature.properties, "road_dist_m", charger.sampled.road_dist_m);
        feature.properties["rseri"] = *charger.rseri;
        feature.properties["class"] = to_string(*charger.risk_class);
        layer.features.push_back(std::move(feature));
    }
    return layer;
}

std::string excluded_csv(const std::vector<std::pair<std::string, std::string>>& excluded) {
    std::string out = "id,reason\n";
    for (const auto& [id, reason] : excluded) {
        out += csv_escape(id);
        out += ',';
        out += csv_escape(reason);
        out += '\n';
    }
    return out;
}

/// Write one artifact and record its digest.
void emit(const PipelineConfig& config, const std::string& name, std::string_view content,
          std::map<std::string, std::string>& digests) {
    digests[name] = sha256_hex(content);
    const std::filesystem::path path = std::filesystem::path(config.out_dir) / name;
    write_file_atomic(path.string(), content);
}

json weights_json(const WeightScheme& scheme) {
    const char* kind = scheme.kind == WeightScheme::Kind::Equal
                           ? "equal"
                           : (scheme.kind == WeightScheme::Kind::Pca ? "pca" : "custom");
    json values = json::object();
    for (std::size_t i = 0; i < scheme.weights.size(); ++i) {
        values[kCompositeFactors[i]] = scheme.weights[i];
    }
    return {{"kind", kind}, {"values", values}};
}

} // namespace

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(
        std::count_if(issues.begin(), issues.end(), [](const auto& i) { return i.error; }));
}

std::size_t ValidationReport::warning_count() const {
    return issues.size() - error_count();
}

std::string ValidationReport::to_text() const {
    std::string out;
    for (const auto& issue : issues) {
        out += issue.error ? "ERROR: " : "WARNING: ";
        out += issue.message;
        out += '\n';
    }
    out += "validation " + std::string(ok() ? "passed" : "failed") + " (" +
           std::to_string(error_count()) + " errors, " + std::to_string(warning_count()) +
           " warnings)\n";
    return out;
}

ValidationReport cmd_validate(const PipelineConfig& config) {
    ValidationReport report;
    const auto error = [&](std::string message) {
        report.issues.push_back(ValidationIssue{true, std::move(message)});
    };
    const auto warning = [&](std::string message) {
        report.issues.push_back(ValidationIssue{false, std::move(message)});
    };

    // Chargers are mandatory; everything else degrades to missing indicators.
    std::vector<ChargerStation> chargers;
    if (config.chargers_path.empty()) {
        error("no chargers input configured (inputs.chargers)");
    } else {
        try {
            const std::string text = read_file(config.resolve(config.chargers_path));
            ChargerLoadResult loaded =
                load_chargers(text, config.chargers_format, config.crs_mode);
            chargers = std::move(loaded.stations);
            for (const auto& w : loaded.warnings) {
                warning(config.chargers_path + ": " + w);
            }
            if (loaded.dropped_inactive > 0) {
                warning(config.chargers_path + ": dropped " +
                        std::to_string(loaded.dropped_inactive) + " inactive stations");
            }
            if (chargers.size() < 2) {
                error(config.chargers_path + ": fewer than 2 active chargers (" +
                      std::to_string(chargers.size()) + "); scoring cannot run");
            }
        } catch (const Error& e) {
            error(config.chargers_path + ": " + e.what());
        }
    }

    const auto check_layer = [&](const std::string& path, const char* key,
                                 GeometryKind expected) -> std::optional<VectorLayer> {
        if (path.empty()) {
            warning(std::string("no ") + key +
                    " layer configured; dependent indicators will be missing and stations "
                    "excluded");
            return std::nullopt;
        }
        try {
            VectorLayer layer = parse_geojson(read_file(config.resolve(path)), config.crs_mode,
                                              key);
            if (!layer.features.empty() && layer.geometry_kind != expected) {
                error(path + ": expected " + to_string(expected) + " features, found " +
                      to_string(layer.geometry_kind));
                return std::nullopt;
            }
            if (layer.features.empty()) {
                warning(path + ": layer has no features");
            }
            // Deeper geometry diagnostics than the parser's structural checks.
            if (expected == GeometryKind::Polygon) {
                for (std::size_t f = 0; f < layer.features.size(); ++f) {
                    const auto& polygon = std::get<Polygon>(layer.features[f].geometry);
                    if (ring_self_intersects(polygon.exterior)) {
                        error(path + ": feature " + std::to_string(f) +
                              " exterior ring self-intersects");
                    }
                }
            }
            return layer;
        } catch (const Error& e) {
            error(path + ": " + e.what());
            return std::nullopt;
        }
    };

    check_layer(config.flood_path, "flood", GeometryKind::Polygon);
    const auto substations = check_layer(config.substations_path, "substations",
                                         GeometryKind::Point);
    if (substations && substations->features.empty()) {
        // already warned; nothing else to check
    }
    check_layer(config.roads_path, "roads", GeometryKind::Polyline);
    const auto lads = check_layer(config.lads_path, "lads", GeometryKind::Polygon);
    if (lads) {
        for (std::size_t f = 0; f < lads->features.size(); ++f) {
            if (lads->features[f].properties.find("name") == lads->features[f].properties.end()) {
                error(config.lads_path + ": feature " + std::to_string(f) +
                      " is missing a 'name' property");
            }
        }
    }

    const auto check_raster = [&](const std::string& path,
                                  const char* key) -> std::optional<RasterGrid> {
        if (path.empty()) {
            warning(std::string("no ") + key +
                    " raster configured; dependent indicators will be missing");
            return std::nullopt;
        }
        try {
            RasterGrid grid = parse_ascii_grid(read_file(config.resolve(path)));
            if (grid.all_nodata()) {
                warning(path + ": raster holds only nodata cells");
            }
            return grid;
        } catch (const Error& e) {
            error(path + ": " + e.what());
            return std::nullopt;
        }
    };

    std::vector<RasterGrid> lst_grids;
    if (config.lst_paths.empty()) {
        warning("no lst rasters configured; the LST indicator will be missing");
    } else {
        for (const auto& path : config.lst_paths) {
            if (auto grid = check_raster(path, "lst")) {
                lst_grids.push_back(std::move(*grid));
            }
        }
    }
    const auto ndvi = check_raster(config.ndvi_path, "ndvi");
    const auto lulc = check_raster(config.lulc_path, "lulc");

    std::optional<LulcLegend> legend;
    if (config.legend_path.empty()) {
        if (lulc) {
            warning("lulc raster configured without a legend; LULC and vegetation indicators "
                    "will be missing");
        }
    } else {
        try {
            legend = parse_lulc_legend(read_file(config.resolve(config.legend_path)));
        } catch (const Error& e) {
            error(config.legend_path + ": " + e.what());
        }
    }

    // Coverage: each charger should fall inside the raster extents.
    const auto coverage = [&](const RasterGrid& grid, const char* key) {
        for (const auto& charger : chargers) {
            if (!sample_raster(grid, charger.projected)) {
                warning(std::string(key) + ": charger '" + charger.id +
                        "' is outside the raster extent or on a nodata cell");
            }
        }
    };
    if (!lst_grids.empty()) {
        // A charger is covered if any LST raster in the series has it.
        for (const auto& charger : chargers) {
            bool covered = false;
            for (const auto& grid : lst_grids) {
                covered = covered || sample_raster(grid, charger.projected).has_value();
            }
            if (!covered) {
                warning("lst: charger '" + charger.id +
                        "' is outside every raster extent or on nodata cells");
            }
        }
    }
    if (ndvi) {
        coverage(*ndvi, "ndvi");
    }
    if (lulc) {
        coverage(*lulc, "lulc");
        if (legend) {
            // Legend completeness over the codes that actually occur.
            std::set<int> missing_codes;
            for (const double value : lulc->values) {
                if (value == lulc->nodata) {
                    continue;
                }
                const int code = static_cast<int>(std::llround(value));
                if (legend->find(code) == legend->end()) {
                    missing_codes.insert(code);
                }
            }
            for (const int code : missing_codes) {
                warning(config.lulc_path + ": code " + std::to_string(code) +
                        " is not in the legend; it will classify as 'other'");
            }
        }
    }

    return report;
}

ScoreSummary cmd_score(const PipelineConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    LoadedInputs inputs = load_inputs(config);
    const double load_seconds = seconds_since(start);

    ScoreSummary summary;
    summary.ingested = inputs.chargers.input_count;
    summary.active = inputs.chargers.stations.size();
    summary.dropped_inactive = inputs.chargers.dropped_inactive;
    summary.dropped_unknown = inputs.chargers.dropped_unknown;
    summary.warnings = inputs.chargers.warnings;

    const auto score_start = std::chrono::steady_clock::now();
    const json input_manifest = inputs.input_manifest;
    ScoringOutput scoring = run_scoring(config, inputs);
    const double score_seconds = seconds_since(score_start);

    summary.excluded = scoring.excluded.size();
    summary.scored = summary.active - summary.excluded;
    summary.scheme = scoring.scheme;
    summary.lst_threshold = scoring.lst_threshold;
    summary.graph_nodes = scoring.graph.node_ids.size();
    summary.graph_edges = scoring.graph.edge_count();
    for (auto& warning : scoring.warnings) {
        summary.warnings.push_back(std::move(warning));
    }
    for (const auto& [id, reason] : scoring.excluded) {
        summary.warnings.push_back("excluded charger '" + id + "': " + reason);
    }

    const auto write_start = std::chrono::steady_clock::now();
    emit(config, "chargers_scored.csv", scored_csv(scoring.chargers), summary.output_digests);
    emit(config, "chargers_scored.geojson", write_geojson(scored_layer(scoring.chargers)),
         summary.output_digests);
    emit(config, "graph_edges.csv",
         knn_graph_to_csv(scoring.graph, config.graph.symmetrize_export),
         summary.output_digests);
    std::map<std::string, ProjectedPoint> wgs_coords;
    for (const auto& charger : scoring.chargers) {
        wgs_coords[charger.id] = ProjectedPoint{charger.location.lon, charger.location.lat};
    }
    emit(config, "graph_edges.geojson",
         write_geojson(
             knn_graph_to_layer(scoring.graph, wgs_coords, config.graph.symmetrize_export)),
         summary.output_digests);
    emit(config, "excluded.csv", excluded_csv(scoring.excluded), summary.output_digests);
    const double write_seconds = seconds_since(write_start);

    json manifest;
    manifest["tool"] = {{"name", "rseri"}, {"version", "0.1.0"}};
    manifest["config"] = json::parse(config.snapshot_json());
    manifest["inputs"] = input_manifest;
    manifest["counts"] = {
        {"ingested", summary.ingested},           {"active", summary.active},
        {"dropped_inactive", summary.dropped_inactive},
        {"dropped_unknown", summary.dropped_unknown},
        {"excluded", summary.excluded},           {"scored", summary.scored},
    };
    manifest["weights"] = weights_json(summary.scheme);
    if (summary.lst_threshold) {
        manifest["lst_threshold"] = *summary.lst_threshold;
    } else {
        manifest["lst_threshold"] = nullptr;
    }
    manifest["graph"] = {{"k", config.graph.k},
                         {"nodes", summary.graph_nodes},
                         {"edges", summary.graph_edges},
                         {"symmetrized_export", config.graph.symmetrize_export}};
    json outputs = json::object();
    for (const auto& [name, digest] : summary.output_digests) {
        outputs[name] = digest;
    }
    manifest["outputs"] = outputs;
    manifest["timings"] = {{"load_s", load_seconds},
                           {"score_s", score_seconds},
                           {"write_s", write_seconds},
                           {"total_s", seconds_since(start)}};
    emit(config, "manifest.json", manifest.dump(2) + "\n", summary.output_digests);
    return summary;
}

std::vector<ChargerStation> read_scored_csv(const std::string& path) {
    const CsvTable table = parse_csv(read_file(path));
    const auto column = [&](const char* name) {
        const auto index = table.column(name);
        if (!index) {
            throw ParseError(path + ": missing column '" + std::string(name) + "'");
        }
        return *index;
    };
    const std::size_t id_col = column("id");
    const std::size_t lon_col = column("lon");
    const std::size_t lat_col = column("lat");
    const std::size_t easting_col = column("easting");
    const std::size_t northing_col = column("northing");
    const std::size_t flood_col = column("flood");
    const std::size_t lst_col = column("lst");
    const std::size_t grid_col = column("grid");
    const std::size_t road_col = column("road");
    const std::size_t ndvi_col = column("ndvi");
    const std::size_t lulc_col = column("lulc");
    const std::size_t vegetation_col = column("vegetation");
    const std::size_t substation_col = column("substation_dist_m");
    const std::size_t road_dist_col = column("road_dist_m");
    const std::size_t rseri_col = column("rseri");
    const std::size_t class_col = column("class");

    std::vector<ChargerStation> chargers;
    chargers.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        ChargerStation charger;
        charger.id = row[id_col];
        charger.status = Status::Active;
        charger.location.lon = *parse_optional_double(row[lon_col]);
        charger.location.lat = *parse_optional_double(row[lat_col]);
        charger.projected.easting = *parse_optional_double(row[easting_col]);
        charger.projected.northing = *parse_optional_double(row[northing_col]);
        charger.risk.flood = parse_optional_bit(row[flood_col]);
        charger.risk.lst = parse_optional_bit(row[lst_col]);
        charger.risk.grid = parse_optional_bit(row[grid_col]);
        charger.risk.road = parse_optional_bit(row[road_col]);
        charger.risk.ndvi = parse_optional_bit(row[ndvi_col]);
        charger.risk.lulc = parse_optional_bit(row[lulc_col]);
        charger.risk.vegetation = parse_optional_bit(row[vegetation_col]);
        charger.sampled.substation_dist_m = parse_optional_double(row[substation_col]);
        charger.sampled.road_dist_m = parse_optional_double(row[road_dist_col]);
        charger.rseri = parse_optional_double(row[rseri_col]);
        if (!charger.rseri) {
            throw ParseError(path + ": charger '" + charger.id + "' has no rseri value");
        }
        charger.risk_class = parse_risk_level(row[class_col]);
        chargers.push_back(std::move(charger));
    }
    return chargers;
}

namespace {

json summary_table_json(const SummaryTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        rows.push_back({{"label", row.label},
                        {"high_count", row.high_count},
                        {"low_count", row.low_count},
                        {"high_pct", row.percent()}});
    }
    return {{"population", table.population}, {"rows", rows}};
}

std::string summary_table_csv(const SummaryTable& table) {
    std::string out = "label,high_count,low_count,high_pct\n";
    for (const auto& row : table.rows) {
        out += csv_escape(row.label);
        out += ',' + std::to_string(row.high_count);
        out += ',' + std::to_string(row.low_count);
        out += ',' + row.percent_text();
        out += '\n';
    }
    return out;
}

GeoPoint to_wgs84(const ProjectedPoint& p) {
    return bng_to_wgs84(p);
}

VectorLayer hexbin_layer(const std::vector<HexCell>& cells, double cell_size_m) {
    VectorLayer layer;
    layer.name = "hexbin";
    layer.geometry_kind = GeometryKind::Polygon;
    for (const auto& cell : cells) {
        Feature feature;
        Polygon polygon;
        for (const auto& corner : hexagon_ring(cell, cell_size_m)) {
            const GeoPoint g = to_wgs84(corner);
            polygon.exterior.push_back(ProjectedPoint{g.lon, g.lat});
        }
        feature.geometry = std::move(polygon);
        feature.properties["q"] = static_cast<std::int64_t>(cell.q);
        feature.properties["r"] = static_cast<std::int64_t>(cell.r);
        feature.properties["count"] = static_cast<std::int64_t>(cell.count);
        feature.properties["mean_rseri"] = cell.mean_score;
        layer.features.push_back(std::move(feature));
    }
    return layer;
}

VectorLayer classed_charger_layer(const std::vector<ChargerStation>& chargers) {
    VectorLayer layer;
    layer.name = "chargers_classed";
    layer.geometry_kind = GeometryKind::Point;
    for (const auto& charger : chargers) {
        if (!charger.scored()) {
            continue;
        }
        Feature feature;
        feature.geometry = ProjectedPoint{charger.location.lon, charger.location.lat};
        feature.properties["id"] = charger.id;
        feature.properties["rseri"] = *charger.rseri;
        feature.properties["class"] = to_string(*charger.risk_class);
        layer.features.push_back(std::move(feature));
    }
    return layer;
}

} // namespace

ReportSummary cmd_report(const PipelineConfig& config) {
    const std::filesystem::path scored_path =
        std::filesystem::path(config.out_dir) / "chargers_scored.csv";
    if (!std::filesystem::exists(scored_path)) {
        throw Error("no scored dataset at '" + scored_path.string() +
                    "'; run the score command first");
    }
    std::vector<ChargerStation> chargers = read_scored_csv(scored_path.string());

    ReportSummary summary;
    summary.scored = chargers.size();

    json report;
    report["population"] = chargers.size();

    const SummaryTable marginals = risk_summary(chargers);
    report["risk_summary"] = summary_table_json(marginals);
    emit(config, "risk_summary.csv", summary_table_csv(marginals), summary.output_digests);

    if (config.analytics.intersections.empty()) {
        summary.notes.push_back("intersections table omitted (no combinations configured)");
        report["risk_intersections"] = nullptr;
    } else {
        const SummaryTable intersections =
            risk_intersections(chargers, config.analytics.intersections);
        report["risk_intersections"] = summary_table_json(intersections);
        emit(config, "risk_intersections.csv", summary_table_csv(intersections),
             summary.output_digests);
    }

    const auto counts = risk_count_distribution(chargers);
    {
        json bins = json::array();
        std::string csv = "risk_count,stations\n";
        for (std::size_t k = 0; k < counts.size(); ++k) {
            bins.push_back(counts[k]);
            csv += std::to_string(k) + ',' + std::to_string(counts[k]) + '\n';
        }
        report["risk_count_distribution"] = bins;
        emit(config, "risk_count_distribution.csv", csv, summary.output_digests);
    }

    const CorrelationMatrix correlation = correlation_matrix(chargers);
    {
        json matrix = json::array();
        std::string csv = "factor";
        for (std::size_t j = 0; j < 5; ++j) {
            csv += ',';
            csv += kCompositeFactors[j];
        }
        csv += '\n';
        for (std::size_t i = 0; i < 5; ++i) {
            json row = json::array();
            csv += kCompositeFactors[i];
            for (std::size_t j = 0; j < 5; ++j) {
                csv += ',';
                if (correlation.values[i][j]) {
                    row.push_back(*correlation.values[i][j]);
                    csv += format_fixed(*correlation.values[i][j], 4);
                } else {
                    row.push_back(nullptr);
                }
            }
            csv += '\n';
            matrix.push_back(row);
        }
        report["correlation_matrix"] = {{"factors", kCompositeFactors}, {"values", matrix}};
        emit(config, "correlation_matrix.csv", csv, summary.output_digests);
    }

    const std::vector<HexCell> cells = hexbin_aggregate(chargers, config.analytics.hexbin_cell_m);
    {
        json cell_rows = json::array();
        for (const auto& cell : cells) {
            cell_rows.push_back({{"q", cell.q},
                                 {"r", cell.r},
                                 {"easting", cell.center.easting},
                                 {"northing", cell.center.northing},
                                 {"count", cell.count},
                                 {"mean_rseri", cell.mean_score}});
        }
        report["hexbin"] = {{"cell_size_m", config.analytics.hexbin_cell_m},
                            {"cells", cell_rows}};
        emit(config, "hexbin.geojson",
             write_geojson(hexbin_layer(cells, config.analytics.hexbin_cell_m)),
             summary.output_digests);
    }

    if (config.lads_path.empty()) {
        summary.notes.push_back("no district layer configured; LAD rankings omitted");
        report["lad_rankings"] = nullptr;
    } else {
        const VectorLayer lads = parse_geojson(read_file(config.resolve(config.lads_path)),
                                               config.crs_mode, "lads");
        assign_lads(chargers, lads);
        const LadAggregate aggregate = lad_aggregate(chargers, lads);
        json rows = json::array();
        std::string csv = "rank,lad_id,lad_name,station_count,mean_rseri\n";
        for (std::size_t i = 0; i < aggregate.ranked.size(); ++i) {
            const auto& lad = aggregate.ranked[i];
            rows.push_back({{"rank", i + 1},
                            {"lad_id", lad.lad_id},
                            {"lad_name", lad.lad_name},
                            {"station_count", lad.station_count},
                            {"mean_rseri", lad.mean_rseri}});
            csv += std::to_string(i + 1);
            csv += ',' + csv_escape(lad.lad_id);
            csv += ',' + csv_escape(lad.lad_name);
            csv += ',' + std::to_string(lad.station_count);
            csv += ',' + format_fixed(lad.mean_rseri, 4);
            csv += '\n';
        }
        report["lad_rankings"] = {{"rows", rows}, {"unassigned", aggregate.unassigned}};
        emit(config, "lad_rankings.csv", csv, summary.output_digests);
    }

    std::vector<double> scores;
    scores.reserve(chargers.size());
    for (const auto& charger : chargers) {
        scores.push_back(*charger.rseri);
    }
    const ScoreDistribution distribution =
        score_histogram_kde(scores, config.analytics.histogram_bins, config.classes.low_max,
                            config.classes.moderate_max);
    {
        json histogram = json::array();
        for (const auto& bin : distribution.histogram) {
            histogram.push_back({{"lo", bin.lo}, {"hi", bin.hi}, {"count", bin.count}});
        }
        json kde;
        if (distribution.kde_skipped) {
            kde = nullptr;
            summary.notes.push_back(distribution.kde_note);
        } else {
            kde = {{"bandwidth", distribution.bandwidth},
                   {"x", distribution.kde_x},
                   {"y", distribution.kde_y}};
        }
        report["score_distribution"] = {{"histogram", histogram},
                                        {"kde", kde},
                                        {"class_low_max", distribution.class_low_max},
                                        {"class_moderate_max", distribution.class_moderate_max}};
    }

    emit(config, "chargers_classed.geojson", write_geojson(classed_charger_layer(chargers)),
         summary.output_digests);
    emit(config, "hexbin_map.svg",
         render_hexbin_svg(cells, config.analytics.hexbin_cell_m, config.classes.low_max,
                           config.classes.moderate_max),
         summary.output_digests);
    emit(config, "risk_counts.svg", render_risk_count_svg(counts), summary.output_digests);
    emit(config, "score_distribution.svg", render_score_distribution_svg(distribution),
         summary.output_digests);

    report["notes"] = summary.notes;
    emit(config, "report.json", report.dump(2) + "\n", summary.output_digests);
    return summary;
}

} // namespace rseri
