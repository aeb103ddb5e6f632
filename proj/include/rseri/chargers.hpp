#pragma once

#include "rseri/feature.hpp"
#include "rseri/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace rseri {

enum class Status { Active, Inactive, Unknown };

/// Three-level classification shared by NDVI classes and RSERI classes.
enum class RiskLevel { Low, Moderate, High };

enum class LulcCategory { Urban, Vegetation, Coastal, Water, Other };

std::string to_string(Status s);
std::string to_string(RiskLevel level);
std::string to_string(LulcCategory c);

/// Normalize a raw status string. Lower-cased; "operational", "active",
/// "true", "1" map to Active; a matching inactive set maps to Inactive;
/// anything else is Unknown (dropped with a warning downstream).
Status parse_status(std::string_view raw);

/// Per-layer values sampled at the charger location. Absent = the layer
/// did not cover the point (or the cell was nodata).
struct SampledValues {
    std::optional<double> lst;        // degC, max across LST rasters
    std::optional<double> lst_median; // diagnostic companion
    std::optional<double> ndvi;
    std::optional<int> lulc_code;
    std::optional<double> substation_dist_m;
    std::optional<double> road_dist_m;
    std::optional<bool> flood;
};

/// The seven binary indicators. Absent = input missing, which feeds the
/// exclusion rule for the five composite factors.
struct RiskVector {
    std::optional<bool> flood;
    std::optional<bool> lst;
    std::optional<bool> grid;
    std::optional<bool> road;
    std::optional<bool> ndvi;       // diagnostic, not in the composite
    std::optional<bool> lulc;       // diagnostic, not in the composite
    std::optional<bool> vegetation;

    bool composite_complete() const;
    /// Names of missing composite indicators, in canonical order.
    std::vector<std::string> missing_composite() const;
    /// The five composite bits {flood, lst, grid, road, vegetation}.
    /// Requires composite_complete().
    std::array<int, 5> composite_bits() const;
};

/// Canonical composite factor order used across tables and weights.
inline constexpr std::array<const char*, 5> kCompositeFactors = {"flood", "lst", "grid", "road",
                                                                 "vegetation"};

struct ChargerStation {
    std::string id;
    GeoPoint location;        // WGS84
    ProjectedPoint projected; // EPSG:27700
    Status status = Status::Unknown;
    PropertyMap properties;   // extra input columns, preserved
    SampledValues sampled;
    RiskVector risk;
    std::optional<double> rseri;
    std::optional<RiskLevel> risk_class;
    std::optional<std::string> lad_id;

    bool scored() const { return rseri.has_value(); }
};

} // namespace rseri
