#pragma once

#include "rseri/chargers.hpp"
#include "rseri/feature.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rseri {

enum class ChargerFormat { Csv, GeoJsonPoints };

struct ChargerLoadResult {
    std::vector<ChargerStation> stations; // active only, input order
    std::size_t input_count = 0;
    std::size_t dropped_inactive = 0;
    std::size_t dropped_unknown = 0;
    std::vector<std::string> warnings;
};

/// Load charger stations from CSV (columns id, lon, lat, status; extras kept
/// as string properties) or from a GeoJSON FeatureCollection of points with
/// id/status properties. Inactive and unknown-status rows are dropped and
/// counted; unknown statuses also produce a warning. Duplicate ids and
/// unparseable coordinates are errors.
///
/// With CrsMode::Wgs84 the coordinates are lon/lat and get projected to
/// EPSG:27700; with CrsMode::Projected they are easting/northing and the
/// WGS84 location is back-filled via the inverse projection.
ChargerLoadResult load_chargers(std::string_view text, ChargerFormat format, CrsMode crs);

} // namespace rseri
