#pragma once

#include "rseri/feature.hpp"

#include <string>
#include <string_view>

namespace rseri {

/// Parse a GeoJSON FeatureCollection into a homogeneous vector layer.
///
/// Supported geometries: Point, LineString, MultiLineString, Polygon,
/// MultiPolygon. Multi* geometries are flattened into one feature per part,
/// all sharing the parent's properties. Mixed geometry kinds in a single
/// collection are rejected. Coordinates are interpreted per `crs`.
///
/// Throws ParseError (with line/column for malformed JSON).
VectorLayer parse_geojson(std::string_view text, CrsMode crs, const std::string& name = "");

/// Serialize a layer back to GeoJSON with EPSG:27700 coordinates exactly as
/// stored (numbers survive a parse -> write -> parse round trip bit-equal).
std::string write_geojson(const VectorLayer& layer);

} // namespace rseri
