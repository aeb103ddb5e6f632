#include "rseri/analytics.hpp"

#include "rseri/errors.hpp"
#include "rseri/raster_ops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace rseri {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<const ChargerStation*> scored_only(const std::vector<ChargerStation>& chargers) {
    std::vector<const ChargerStation*> out;
    out.reserve(chargers.size());
    for (const auto& charger : chargers) {
        if (charger.scored()) {
            out.push_back(&charger);
        }
    }
    return out;
}

std::size_t factor_index(const std::string& name) {
    for (std::size_t i = 0; i < kCompositeFactors.size(); ++i) {
        if (name == kCompositeFactors[i]) {
            return i;
        }
    }
    throw DomainError("unknown risk factor '" + name + "'");
}

std::string factor_display(std::size_t index) {
    static const std::array<const char*, 5> names = {"Flood", "LST", "Grid", "Road",
                                                     "Vegetation"};
    return names[index];
}

std::string property_text(const PropertyValue& value) {
    if (const auto* s = std::get_if<std::string>(&value)) {
        return *s;
    }
    if (const auto* i = std::get_if<std::int64_t>(&value)) {
        return std::to_string(*i);
    }
    if (const auto* d = std::get_if<double>(&value)) {
        if (std::floor(*d) == *d && std::abs(*d) < 1e15) {
            return std::to_string(static_cast<long long>(*d));
        }
        return std::to_string(*d);
    }
    if (const auto* b = std::get_if<bool>(&value)) {
        return *b ? "true" : "false";
    }
    return {};
}

} // namespace

std::string SummaryRow::percent_text() const {
    return std::to_string(pct_tenths / 10) + "." + std::to_string(pct_tenths % 10);
}

long percent_tenths(std::size_t high, std::size_t population) {
    if (population == 0) {
        throw DomainError("percentage of an empty population");
    }
    // round-half-up of 1000*high/population, purely in integers
    const long long numerator = 2000LL * static_cast<long long>(high) +
                                static_cast<long long>(population);
    return static_cast<long>(numerator / (2LL * static_cast<long long>(population)));
}

SummaryTable risk_summary(const std::vector<ChargerStation>& chargers) {
    const auto scored = scored_only(chargers);
    if (scored.empty()) {
        throw DomainError("risk summary requires at least one scored charger");
    }
    SummaryTable table;
    table.population = scored.size();

    std::array<std::size_t, 5> high{};
    std::size_t any = 0;
    for (const auto* charger : scored) {
        const auto bits = charger->risk.composite_bits();
        bool flagged = false;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == 1) {
                ++high[i];
                flagged = true;
            }
        }
        if (flagged) {
            ++any;
        }
    }

    for (std::size_t i = 0; i < high.size(); ++i) {
        SummaryRow row;
        row.label = factor_display(i) + " Risk";
        row.high_count = high[i];
        row.low_count = table.population - high[i];
        row.pct_tenths = percent_tenths(high[i], table.population);
        table.rows.push_back(std::move(row));
    }
    SummaryRow any_row;
    any_row.label = "At least 1 Risk";
    any_row.high_count = any;
    any_row.low_count = table.population - any;
    any_row.pct_tenths = percent_tenths(any, table.population);
    table.rows.push_back(std::move(any_row));
    return table;
}

std::vector<FactorSet> default_intersections() {
    return {
        {"flood", "lst"},          {"flood", "vegetation"},         {"lst", "vegetation"},
        {"grid", "road"},          {"flood", "lst", "vegetation"},
    };
}

SummaryTable risk_intersections(const std::vector<ChargerStation>& chargers,
                                const std::vector<FactorSet>& combos) {
    const auto scored = scored_only(chargers);
    if (scored.empty()) {
        throw DomainError("risk intersections require at least one scored charger");
    }
    SummaryTable table;
    table.population = scored.size();

    for (const auto& combo : combos) {
        if (combo.empty()) {
            throw DomainError("empty factor combination");
        }
        std::vector<std::size_t> indexes;
        indexes.reserve(combo.size());
        std::string label;
        for (const auto& name : combo) {
            const std::size_t index = factor_index(name);
            indexes.push_back(index);
            if (!label.empty()) {
                label += " ∩ "; // set-intersection sign
            }
            label += factor_display(index);
        }
        std::size_t high = 0;
        for (const auto* charger : scored) {
            const auto bits = charger->risk.composite_bits();
            bool all = true;
            for (const std::size_t index : indexes) {
                all = all && bits[index] == 1;
            }
            if (all) {
                ++high;
            }
        }
        SummaryRow row;
        row.label = std::move(label);
        row.high_count = high;
        row.low_count = table.population - high;
        row.pct_tenths = percent_tenths(high, table.population);
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::array<std::size_t, 6> risk_count_distribution(const std::vector<ChargerStation>& chargers) {
    std::array<std::size_t, 6> bins{};
    for (const auto* charger : scored_only(chargers)) {
        const auto bits = charger->risk.composite_bits();
        const int ones = std::accumulate(bits.begin(), bits.end(), 0);
        ++bins[static_cast<std::size_t>(ones)];
    }
    return bins;
}

CorrelationMatrix correlation_matrix(const std::vector<ChargerStation>& chargers) {
    const auto scored = scored_only(chargers);
    const std::size_t n = scored.size();
    CorrelationMatrix matrix;
    if (n == 0) {
        return matrix;
    }

    std::array<std::vector<double>, 5> columns;
    for (auto& column : columns) {
        column.reserve(n);
    }
    for (const auto* charger : scored) {
        const auto bits = charger->risk.composite_bits();
        for (std::size_t i = 0; i < 5; ++i) {
            columns[i].push_back(static_cast<double>(bits[i]));
        }
    }

    std::array<double, 5> mean{};
    std::array<bool, 5> constant{};
    for (std::size_t i = 0; i < 5; ++i) {
        mean[i] = std::accumulate(columns[i].begin(), columns[i].end(), 0.0) /
                  static_cast<double>(n);
        constant[i] = std::all_of(columns[i].begin(), columns[i].end(),
                                  [&](double v) { return v == columns[i].front(); });
    }

    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            if (constant[i] || constant[j]) {
                continue; // undefined, left missing
            }
            double sxy = 0.0;
            double sxx = 0.0;
            double syy = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double dx = columns[i][k] - mean[i];
                const double dy = columns[j][k] - mean[j];
                sxy += dx * dy;
                sxx += dx * dx;
                syy += dy * dy;
            }
            matrix.values[i][j] = i == j ? 1.0 : sxy / std::sqrt(sxx * syy);
        }
    }
    return matrix;
}

std::pair<int, int> hex_cell_of(const ProjectedPoint& p, double cell_size_m) {
    // Fractional axial coordinates for a pointy-top lattice with
    // circumradius cell_size_m, then cube rounding.
    const double s = cell_size_m;
    const double fq = (std::sqrt(3.0) / 3.0 * p.easting - p.northing / 3.0) / s;
    const double fr = (2.0 / 3.0 * p.northing) / s;

    const double cx = fq;
    const double cz = fr;
    const double cy = -cx - cz;
    double rx = std::round(cx);
    double ry = std::round(cy);
    double rz = std::round(cz);
    const double dx = std::abs(rx - cx);
    const double dy = std::abs(ry - cy);
    const double dz = std::abs(rz - cz);
    if (dx > dy && dx > dz) {
        rx = -ry - rz;
    } else if (dy > dz) {
        ry = -rx - rz;
    } else {
        rz = -rx - ry;
    }
    return {static_cast<int>(rx), static_cast<int>(rz)};
}

std::vector<HexCell> hexbin_aggregate(const std::vector<ChargerStation>& chargers,
                                      double cell_size_m) {
    if (!(cell_size_m > 0.0)) {
        throw DomainError("hexbin cell size must be positive");
    }
    struct Accumulator {
        std::size_t count = 0;
        double sum = 0.0;
    };
    std::map<std::pair<int, int>, Accumulator> cells;
    for (const auto* charger : scored_only(chargers)) {
        const auto key = hex_cell_of(charger->projected, cell_size_m);
        auto& acc = cells[key];
        ++acc.count;
        acc.sum += *charger->rseri;
    }

    std::vector<HexCell> out;
    out.reserve(cells.size());
    for (const auto& [key, acc] : cells) {
        HexCell cell;
        cell.q = key.first;
        cell.r = key.second;
        cell.center.easting =
            cell_size_m * (std::sqrt(3.0) * key.first + std::sqrt(3.0) / 2.0 * key.second);
        cell.center.northing = cell_size_m * (1.5 * key.second);
        cell.count = acc.count;
        cell.mean_score = acc.sum / static_cast<double>(acc.count);
        out.push_back(cell);
    }
    return out;
}

Ring hexagon_ring(const HexCell& cell, double cell_size_m) {
    Ring ring;
    ring.reserve(7);
    for (int corner = 0; corner < 6; ++corner) {
        const double angle = kPi / 180.0 * (60.0 * corner - 30.0);
        ring.push_back(ProjectedPoint{cell.center.easting + cell_size_m * std::cos(angle),
                                      cell.center.northing + cell_size_m * std::sin(angle)});
    }
    ring.push_back(ring.front());
    return ring;
}

namespace {

struct LadFeatureInfo {
    std::string id;
    std::string name;
};

LadFeatureInfo lad_info(const Feature& feature, std::size_t index) {
    const auto name_it = feature.properties.find("name");
    if (name_it == feature.properties.end()) {
        throw DomainError("district feature " + std::to_string(index) +
                          " is missing a 'name' property");
    }
    LadFeatureInfo info;
    info.name = property_text(name_it->second);
    const auto id_it = feature.properties.find("id");
    info.id = id_it != feature.properties.end() ? property_text(id_it->second) : info.name;
    return info;
}

std::optional<std::size_t> containing_lad(const ProjectedPoint& point,
                                          const VectorLayer& lad_layer) {
    for (std::size_t f = 0; f < lad_layer.features.size(); ++f) {
        if (point_in_polygon(point, std::get<Polygon>(lad_layer.features[f].geometry))) {
            return f;
        }
    }
    return std::nullopt;
}

} // namespace

LadAggregate lad_aggregate(const std::vector<ChargerStation>& chargers,
                           const VectorLayer& lad_layer) {
    if (!lad_layer.features.empty() && lad_layer.geometry_kind != GeometryKind::Polygon) {
        throw DomainError("district layer must contain polygons");
    }
    struct Accumulator {
        std::size_t count = 0;
        double sum = 0.0;
    };
    std::map<std::size_t, Accumulator> per_feature;
    LadAggregate aggregate;
    for (const auto* charger : scored_only(chargers)) {
        const auto feature = containing_lad(charger->projected, lad_layer);
        if (!feature) {
            ++aggregate.unassigned;
            continue;
        }
        auto& acc = per_feature[*feature];
        ++acc.count;
        acc.sum += *charger->rseri;
    }

    for (const auto& [feature_index, acc] : per_feature) {
        const LadFeatureInfo info = lad_info(lad_layer.features[feature_index], feature_index);
        LadSummary row;
        row.lad_id = info.id;
        row.lad_name = info.name;
        row.station_count = acc.count;
        row.mean_rseri = acc.sum / static_cast<double>(acc.count);
        aggregate.ranked.push_back(std::move(row));
    }
    std::sort(aggregate.ranked.begin(), aggregate.ranked.end(),
              [](const LadSummary& a, const LadSummary& b) {
                  if (a.mean_rseri != b.mean_rseri) {
                      return a.mean_rseri > b.mean_rseri;
                  }
                  return a.lad_id < b.lad_id;
              });
    return aggregate;
}

void assign_lads(std::vector<ChargerStation>& chargers, const VectorLayer& lad_layer) {
    if (!lad_layer.features.empty() && lad_layer.geometry_kind != GeometryKind::Polygon) {
        throw DomainError("district layer must contain polygons");
    }
    for (auto& charger : chargers) {
        const auto feature = containing_lad(charger.projected, lad_layer);
        if (feature) {
            charger.lad_id = lad_info(lad_layer.features[*feature], *feature).id;
        } else {
            charger.lad_id.reset();
        }
    }
}

std::vector<double> kde_gaussian(const std::vector<double>& samples, double h,
                                 const std::vector<double>& xs) {
    if (samples.empty() || !(h > 0.0)) {
        throw DomainError("KDE requires samples and a positive bandwidth");
    }
    const double norm = 1.0 / (static_cast<double>(samples.size()) * h * std::sqrt(2.0 * kPi));
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (const double x : xs) {
        double sum = 0.0;
        for (const double s : samples) {
            const double u = (x - s) / h;
            sum += std::exp(-0.5 * u * u);
        }
        ys.push_back(norm * sum);
    }
    return ys;
}

ScoreDistribution score_histogram_kde(const std::vector<double>& scores, std::size_t bins,
                                      double low_max, double moderate_max) {
    if (bins < 1) {
        throw DomainError("histogram requires at least one bin");
    }
    if (scores.empty()) {
        throw DomainError("histogram of an empty score sample");
    }
    ScoreDistribution out;
    out.class_low_max = low_max;
    out.class_moderate_max = moderate_max;

    out.histogram.resize(bins);
    const double width = 1.0 / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        out.histogram[i].lo = static_cast<double>(i) * width;
        out.histogram[i].hi = static_cast<double>(i + 1) * width;
    }
    for (const double score : scores) {
        auto index = static_cast<std::size_t>(score * static_cast<double>(bins));
        index = std::min(index, bins - 1); // score 1.0 lands in the last bin
        ++out.histogram[index].count;
    }

    if (scores.size() < 2) {
        out.kde_skipped = true;
        out.kde_note = "KDE skipped: fewer than 2 scores";
        return out;
    }

    const double n = static_cast<double>(scores.size());
    double mean = 0.0;
    for (const double score : scores) {
        mean += score;
    }
    mean /= n;
    double ss = 0.0;
    for (const double score : scores) {
        ss += (score - mean) * (score - mean);
    }
    const double sigma = std::sqrt(ss / (n - 1.0));
    const double iqr = percentile(scores, 0.75) - percentile(scores, 0.25);
    const double h = 0.9 * std::min(sigma, iqr / 1.34) * std::pow(n, -0.2);
    if (!(h > 0.0)) {
        out.kde_skipped = true;
        out.kde_note = "KDE skipped: degenerate bandwidth (no score spread)";
        return out;
    }

    out.bandwidth = h;
    out.kde_x.reserve(256);
    for (int i = 0; i < 256; ++i) {
        out.kde_x.push_back(static_cast<double>(i) / 255.0);
    }
    out.kde_y = kde_gaussian(scores, h, out.kde_x);
    return out;
}

} // namespace rseri
