#pragma once

#include "rseri/analytics.hpp"
#include "rseri/chargers_io.hpp"
#include "rseri/feature.hpp"
#include "rseri/risk.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rseri {

/// Which sample the LST percentile threshold is taken over: the sampled
/// charger-location values (default) or every raster cell.
enum class LstPopulation { Chargers, Raster };

/// Everything a run needs, parsed from one JSON config file. Relative input
/// paths resolve against the config file's directory.
struct PipelineConfig {
    // inputs; empty path = layer not provided (indicators become missing)
    std::string chargers_path;
    ChargerFormat chargers_format = ChargerFormat::Csv;
    std::string flood_path;
    std::string substations_path;
    std::string roads_path;
    std::string lads_path;
    std::vector<std::string> lst_paths;
    std::string ndvi_path;
    std::string lulc_path;
    std::string legend_path;

    CrsMode crs_mode = CrsMode::Wgs84; // chargers and vector layers; rasters are always projected

    struct Thresholds {
        double grid_m = 5000.0;
        double road_m = 2000.0;
        double lst_percentile = 0.9;
        double ndvi_low = 0.2;
        double ndvi_high = 0.5;
        LstPopulation lst_population = LstPopulation::Chargers;
    } thresholds;

    struct Classes {
        double low_max = 1.0 / 3.0;
        double moderate_max = 2.0 / 3.0;
    } classes;

    struct Weights {
        WeightScheme::Kind kind = WeightScheme::Kind::Equal;
        std::optional<std::array<double, 5>> custom;
    } weights;

    struct Graph {
        std::size_t k = 5;
        bool symmetrize_export = false;
    } graph;

    struct Analytics {
        double hexbin_cell_m = 10000.0;
        std::size_t histogram_bins = 10;
        std::vector<FactorSet> intersections = default_intersections();
    } analytics;

    std::string out_dir = "out";
    unsigned threads = 1;

    std::string config_dir; // directory of the config file, for path resolution

    /// Resolve an input path against the config file location.
    std::string resolve(const std::string& raw) const;

    /// The effective configuration (defaults filled in) as canonical JSON,
    /// recorded in the run manifest.
    std::string snapshot_json() const;
};

/// Parse config text; config_dir anchors relative paths. Unknown keys,
/// malformed values, and out-of-range knobs are ConfigErrors.
PipelineConfig parse_config(const std::string& text, const std::string& config_dir);

/// Read and parse a config file.
PipelineConfig load_config_file(const std::string& path);

/// Read a whole file; throws Error with the path on failure.
std::string read_file(const std::string& path);

/// Write a file atomically (temp file + rename) creating directories first.
void write_file_atomic(const std::string& path, std::string_view content);

} // namespace rseri
