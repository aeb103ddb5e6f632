#pragma once

#include "rseri/chargers.hpp"
#include "rseri/feature.hpp"
#include "rseri/geometry.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rseri {

/// One line of a marginal/intersection table. Percent is carried in tenths
/// (153 == 15.3%) so the round-half-up rule stays in integer arithmetic.
struct SummaryRow {
    std::string label;
    std::size_t high_count = 0;
    std::size_t low_count = 0;
    long pct_tenths = 0;

    double percent() const { return static_cast<double>(pct_tenths) / 10.0; }
    std::string percent_text() const;
};

struct SummaryTable {
    std::size_t population = 0;
    std::vector<SummaryRow> rows;
};

/// round-half-up(1000 * high / population), i.e. percent in tenths.
long percent_tenths(std::size_t high, std::size_t population);

/// Marginal counts per composite factor plus the "At least 1 Risk" row.
/// Only scored chargers participate; none scored -> error.
SummaryTable risk_summary(const std::vector<ChargerStation>& chargers);

/// A combo is a set of composite factor names, e.g. {"flood", "lst"}.
using FactorSet = std::vector<std::string>;

/// The five intersection rows reported in the study.
std::vector<FactorSet> default_intersections();

/// Count of chargers with every indicator in the combo set, per combo.
SummaryTable risk_intersections(const std::vector<ChargerStation>& chargers,
                                const std::vector<FactorSet>& combos);

/// Histogram over the number of concurrent composite risks (0..5).
std::array<std::size_t, 6> risk_count_distribution(const std::vector<ChargerStation>& chargers);

/// Pearson (phi) correlations between the five binary indicator columns.
/// Entries involving a constant column are missing.
struct CorrelationMatrix {
    std::array<std::array<std::optional<double>, 5>, 5> values{};
};

CorrelationMatrix correlation_matrix(const std::vector<ChargerStation>& chargers);

/// Pointy-top hexagonal bin; cell_size is the hexagon circumradius.
struct HexCell {
    int q = 0;
    int r = 0;
    ProjectedPoint center;
    std::size_t count = 0;
    double mean_score = 0.0;
};

/// Assign scored chargers to hex cells via fractional axial coordinates and
/// cube rounding; cells come back sorted by (q, r).
std::vector<HexCell> hexbin_aggregate(const std::vector<ChargerStation>& chargers,
                                      double cell_size_m);

/// Axial coordinates of the cell containing a point.
std::pair<int, int> hex_cell_of(const ProjectedPoint& p, double cell_size_m);

/// Closed polygon ring of a cell's hexagon (7 vertices, first == last).
Ring hexagon_ring(const HexCell& cell, double cell_size_m);

struct LadSummary {
    std::string lad_id;
    std::string lad_name;
    std::size_t station_count = 0;
    double mean_rseri = 0.0;
};

struct LadAggregate {
    std::vector<LadSummary> ranked; // descending mean, ties by ascending id
    std::size_t unassigned = 0;     // scored chargers inside no district
};

/// Point-in-polygon join of scored chargers onto district polygons. The
/// layer's features need a "name" property; "id" falls back to the name.
LadAggregate lad_aggregate(const std::vector<ChargerStation>& chargers,
                           const VectorLayer& lad_layer);

/// Fill each charger's lad_id from the same join (first containing district
/// in layer order wins).
void assign_lads(std::vector<ChargerStation>& chargers, const VectorLayer& lad_layer);

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

struct ScoreDistribution {
    std::vector<HistogramBin> histogram; // equal-width over [0,1]
    std::vector<double> kde_x;           // 256 points on [0,1]; empty when skipped
    std::vector<double> kde_y;
    double bandwidth = 0.0;
    bool kde_skipped = false;
    std::string kde_note;
    double class_low_max = 1.0 / 3.0;
    double class_moderate_max = 2.0 / 3.0;
};

/// Evaluate a Gaussian KDE with bandwidth h at the given abscissae.
std::vector<double> kde_gaussian(const std::vector<double>& samples, double h,
                                 const std::vector<double>& xs);

/// Histogram plus Silverman-bandwidth Gaussian KDE of the score sample.
/// KDE is skipped (with a note) when n < 2 or the bandwidth degenerates.
ScoreDistribution score_histogram_kde(const std::vector<double>& scores, std::size_t bins,
                                      double low_max = 1.0 / 3.0,
                                      double moderate_max = 2.0 / 3.0);

} // namespace rseri
