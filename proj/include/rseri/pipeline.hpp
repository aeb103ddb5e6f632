#pragma once

#include "rseri/chargers.hpp"
#include "rseri/config.hpp"
#include "rseri/knn_graph.hpp"
#include "rseri/risk.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rseri {

struct ValidationIssue {
    bool error = false; // false = warning
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    std::size_t error_count() const;
    std::size_t warning_count() const;
    bool ok() const { return error_count() == 0; }
    std::string to_text() const; // one line per issue plus a summary line
};

/// Parse and cross-check every configured input without writing anything.
ValidationReport cmd_validate(const PipelineConfig& config);

struct ScoreSummary {
    std::size_t ingested = 0;
    std::size_t active = 0;
    std::size_t dropped_inactive = 0;
    std::size_t dropped_unknown = 0;
    std::size_t excluded = 0;
    std::size_t scored = 0;
    WeightScheme scheme;
    std::optional<double> lst_threshold;
    std::size_t graph_nodes = 0;
    std::size_t graph_edges = 0;
    std::vector<std::string> warnings;
    std::map<std::string, std::string> output_digests; // file name -> sha256
};

/// Run the full scoring pipeline and write chargers_scored.csv/.geojson,
/// graph_edges.csv/.geojson, excluded.csv, and manifest.json into the
/// configured output directory.
ScoreSummary cmd_score(const PipelineConfig& config);

struct ReportSummary {
    std::size_t scored = 0;
    std::vector<std::string> notes;
    std::map<std::string, std::string> output_digests;
};

/// Build the report bundle (report.json, per-table CSVs, GeoJSON layers,
/// SVG charts) from a previously written scored dataset.
ReportSummary cmd_report(const PipelineConfig& config);

/// Read chargers_scored.csv back into charger records (used by cmd_report
/// and by tests).
std::vector<ChargerStation> read_scored_csv(const std::string& path);

} // namespace rseri
