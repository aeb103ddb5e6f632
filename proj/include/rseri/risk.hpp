#pragma once

#include "rseri/chargers.hpp"
#include "rseri/feature.hpp"

#include <array>
#include <vector>

namespace rseri {

struct WeightScheme {
    enum class Kind { Equal, Pca, Custom };
    Kind kind = Kind::Equal;
    /// Over kCompositeFactors = {flood, lst, grid, road, vegetation}.
    std::array<double, 5> weights = {0.2, 0.2, 0.2, 0.2, 0.2};
};

WeightScheme equal_weights();

/// Validates: nonnegative entries summing to 1 within 1e-12.
WeightScheme custom_weights(const std::array<double, 5>& weights);

struct RseriScore {
    double value = 0.0;  // higher = higher composite risk (resilience = 1 - value)
    WeightScheme scheme; // weights actually used
    RiskLevel level = RiskLevel::Low;
};

/// 1 iff the point lies within any flood polygon (boundary counts as inside).
int flood_indicator(const ProjectedPoint& q, const VectorLayer& flood_layer);

/// 1 iff the temperature strictly exceeds the regional percentile threshold.
int lst_indicator(double lst_value, double threshold);

/// 1 iff the nearest substation is strictly more than threshold_m away.
int grid_indicator(double substation_dist_m, double threshold_m = 5000.0);

/// 1 iff the nearest major road is strictly more than threshold_m away.
int road_indicator(double road_dist_m, double threshold_m = 2000.0);

/// 1 iff vegetation health is Low (diagnostic indicator).
int ndvi_indicator(RiskLevel ndvi_class);

/// 1 iff the land cover is Urban or Coastal (diagnostic indicator).
int lulc_indicator(LulcCategory category);

/// 1 iff vegetation health is Low AND land cover is Urban or Vegetation.
int vegetation_indicator(RiskLevel ndvi_class, LulcCategory lulc_category);

/// Min-max rescale to [0,1]; an all-equal input maps to all zeros.
std::vector<double> normalize_minmax(const std::vector<double>& values);

/// Weighted aggregate of the five composite indicators. Equal weighting is
/// computed as the exact arithmetic mean. Throws DomainError when any
/// composite indicator is missing (the exclusion rule handles that upstream)
/// or when the class boundaries are invalid.
RseriScore compute_rseri(const RiskVector& risk, const WeightScheme& scheme,
                         double low_max = 1.0 / 3.0, double moderate_max = 2.0 / 3.0);

/// Tertile classification of a score in [0,1]: Low below low_max, High at or
/// above moderate_max. Out-of-range values are errors.
RiskLevel classify_rseri(double value, double low_max = 1.0 / 3.0,
                         double moderate_max = 2.0 / 3.0);

} // namespace rseri
