#pragma once

#include "rseri/geometry.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace rseri {

/// Scalar GeoJSON property: null, bool, integer, real or string. Integers
/// are kept apart from reals so they round-trip without a trailing ".0".
using PropertyValue =
    std::variant<std::monostate, bool, std::int64_t, double, std::string>;
using PropertyMap = std::map<std::string, PropertyValue>;

enum class GeometryKind { Point, Polyline, Polygon };

std::string to_string(GeometryKind kind);

using Geometry = std::variant<ProjectedPoint, Polyline, Polygon>;

struct Feature {
    Geometry geometry;
    PropertyMap properties;

    GeometryKind kind() const;
};

/// Homogeneous collection of features (one geometry kind per layer).
struct VectorLayer {
    std::string name;
    GeometryKind geometry_kind = GeometryKind::Point;
    std::vector<Feature> features;
};

/// How input coordinates are interpreted: WGS84 lon/lat (projected on
/// ingest) or already-projected EPSG:27700 easting/northing.
enum class CrsMode { Wgs84, Projected };

} // namespace rseri
