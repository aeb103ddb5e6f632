#pragma once

#include "rseri/ascii_grid.hpp"
#include "rseri/chargers.hpp"
#include "rseri/geometry.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rseri {

/// Value of the cell containing q, or nullopt when q falls outside the grid
/// extent or on a nodata cell. Nearest-cell lookup, no interpolation; points
/// exactly on a shared cell edge resolve east/south (half-open intervals).
std::optional<double> sample_raster(const RasterGrid& grid, const ProjectedPoint& q);

/// Linear-interpolation percentile at rank p*(n-1) over the sorted values,
/// p in [0,1]. Throws DomainError on empty input or p outside [0,1].
double percentile(std::vector<double> values, double p);

/// NDVI three-way classification: Low below `low`, High at or above `high`,
/// Moderate in between. Throws DomainError when v is outside [-1,1].
RiskLevel classify_ndvi(double v, double low = 0.2, double high = 0.5);

/// Integer class code -> category, from the sidecar legend file.
using LulcLegend = std::map<int, LulcCategory>;

/// Parse a legend JSON object like {"1": "urban", "2": "vegetation"}.
/// Unrecognized category names are errors; codes must be integers.
LulcLegend parse_lulc_legend(std::string_view text);

/// Look a code up in the legend. Unknown codes classify as Other and append
/// a warning when a sink is provided.
LulcCategory classify_lulc(int code, const LulcLegend& legend,
                           std::vector<std::string>* warnings = nullptr);

/// Max/median composite across a multi-raster time series sampled at one
/// location. Missing samples are skipped; all-missing yields missing.
struct LstComposite {
    std::optional<double> max;
    std::optional<double> median;
};

LstComposite lst_composite(const std::vector<std::optional<double>>& samples);

} // namespace rseri
