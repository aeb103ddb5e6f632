#include "rseri/risk.hpp"

#include "rseri/errors.hpp"
#include "rseri/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rseri {

WeightScheme equal_weights() {
    return WeightScheme{WeightScheme::Kind::Equal, {0.2, 0.2, 0.2, 0.2, 0.2}};
}

WeightScheme custom_weights(const std::array<double, 5>& weights) {
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0)) {
            throw DomainError(std::string("custom weight for ") + kCompositeFactors[i] +
                              " must be nonnegative");
        }
        sum += weights[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw DomainError("custom weights must sum to 1, got " + std::to_string(sum));
    }
    return WeightScheme{WeightScheme::Kind::Custom, weights};
}

int flood_indicator(const ProjectedPoint& q, const VectorLayer& flood_layer) {
    if (!flood_layer.features.empty() && flood_layer.geometry_kind != GeometryKind::Polygon) {
        throw DomainError("flood layer must contain polygons");
    }
    for (const auto& feature : flood_layer.features) {
        if (point_in_polygon(q, std::get<Polygon>(feature.geometry))) {
            return 1;
        }
    }
    return 0;
}

int lst_indicator(double lst_value, double threshold) {
    return lst_value > threshold ? 1 : 0;
}

int grid_indicator(double substation_dist_m, double threshold_m) {
    if (!(substation_dist_m >= 0.0)) {
        throw DomainError("substation distance must be nonnegative");
    }
    return substation_dist_m > threshold_m ? 1 : 0;
}

int road_indicator(double road_dist_m, double threshold_m) {
    if (!(road_dist_m >= 0.0)) {
        throw DomainError("road distance must be nonnegative");
    }
    return road_dist_m > threshold_m ? 1 : 0;
}

int ndvi_indicator(RiskLevel ndvi_class) {
    return ndvi_class == RiskLevel::Low ? 1 : 0;
}

int lulc_indicator(LulcCategory category) {
    return (category == LulcCategory::Urban || category == LulcCategory::Coastal) ? 1 : 0;
}

int vegetation_indicator(RiskLevel ndvi_class, LulcCategory lulc_category) {
    const bool low_vegetation = ndvi_class == RiskLevel::Low;
    const bool exposed_cover =
        lulc_category == LulcCategory::Urban || lulc_category == LulcCategory::Vegetation;
    return (low_vegetation && exposed_cover) ? 1 : 0;
}

std::vector<double> normalize_minmax(const std::vector<double>& values) {
    if (values.empty()) {
        throw DomainError("cannot normalize an empty list");
    }
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *min_it;
    const double hi = *max_it;
    std::vector<double> out(values.size(), 0.0);
    if (hi == lo) {
        return out; // degenerate rule: constant input -> all zeros
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = (values[i] - lo) / (hi - lo);
    }
    return out;
}

RseriScore compute_rseri(const RiskVector& risk, const WeightScheme& scheme, double low_max,
                         double moderate_max) {
    if (!risk.composite_complete()) {
        std::string missing;
        for (const auto& name : risk.missing_composite()) {
            if (!missing.empty()) {
                missing += ", ";
            }
            missing += name;
        }
        throw DomainError("cannot score charger with missing indicators: " + missing);
    }
    const std::array<int, 5> bits = risk.composite_bits();
    RseriScore score;
    score.scheme = scheme;
    if (scheme.kind == WeightScheme::Kind::Equal) {
        // Exact arithmetic mean, so scores land on {0, 0.2, 0.4, 0.6, 0.8, 1}.
        const int sum = std::accumulate(bits.begin(), bits.end(), 0);
        score.value = static_cast<double>(sum) / 5.0;
    } else {
        double value = 0.0;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            value += scheme.weights[i] * static_cast<double>(bits[i]);
        }
        // Weights are nonnegative and sum to 1 within 1e-12, so the dot
        // product can only leave [0,1] by accumulated rounding; clamp it.
        score.value = std::min(1.0, std::max(0.0, value));
    }
    score.level = classify_rseri(score.value, low_max, moderate_max);
    return score;
}

RiskLevel classify_rseri(double value, double low_max, double moderate_max) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError("RSERI value " + std::to_string(value) + " outside [0,1]");
    }
    if (!(low_max > 0.0 && low_max <= moderate_max && moderate_max <= 1.0)) {
        throw DomainError("invalid class boundaries");
    }
    if (value < low_max) {
        return RiskLevel::Low;
    }
    if (value < moderate_max) {
        return RiskLevel::Moderate;
    }
    return RiskLevel::High;
}

} // namespace rseri
