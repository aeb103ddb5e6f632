#include "rseri/geojson.hpp"

#include "rseri/errors.hpp"
#include "rseri/projection.hpp"

#include <json.hpp>

#include <optional>
#include <utility>

namespace rseri {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_column_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

ProjectedPoint read_position(const json& pos, CrsMode crs) {
    if (!pos.is_array() || pos.size() < 2 || pos.size() > 3 || !pos[0].is_number() ||
        !pos[1].is_number()) {
        throw ParseError("GeoJSON position must be an array of 2 or 3 numbers");
    }
    const double x = pos[0].get<double>();
    const double y = pos[1].get<double>();
    if (crs == CrsMode::Wgs84) {
        return project_wgs84_to_bng(GeoPoint{x, y});
    }
    return ProjectedPoint{x, y};
}

Ring read_ring(const json& coords, CrsMode crs) {
    Ring ring;
    for (const json& pos : coords) {
        ring.push_back(read_position(pos, crs));
    }
    return ring;
}

Polygon read_polygon(const json& rings, CrsMode crs, const std::string& what) {
    if (!rings.is_array() || rings.empty()) {
        throw ParseError(what + ": Polygon coordinates must be a non-empty array of rings");
    }
    Polygon poly;
    poly.exterior = read_ring(rings[0], crs);
    for (std::size_t i = 1; i < rings.size(); ++i) {
        poly.holes.push_back(read_ring(rings[i], crs));
    }
    validate_polygon(poly, what);
    return poly;
}

Polyline read_linestring(const json& coords, CrsMode crs, const std::string& what) {
    Polyline line;
    for (const json& pos : coords) {
        line.vertices.push_back(read_position(pos, crs));
    }
    validate_polyline(line, what);
    return line;
}

PropertyValue read_property(const json& value) {
    if (value.is_null()) {
        return std::monostate{};
    }
    if (value.is_boolean()) {
        return value.get<bool>();
    }
    if (value.is_number_integer()) {
        return value.get<std::int64_t>();
    }
    if (value.is_number()) {
        return value.get<double>();
    }
    if (value.is_string()) {
        return value.get<std::string>();
    }
    // Nested objects/arrays are not scalar; keep their JSON text so nothing is lost.
    return value.dump();
}

} // namespace

VectorLayer parse_geojson(std::string_view text, CrsMode crs, const std::string& name) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("malformed GeoJSON: ") + e.what(), line, col);
    }

    if (!root.is_object() || root.value("type", "") != "FeatureCollection") {
        throw ParseError("expected a GeoJSON FeatureCollection");
    }
    if (!root.contains("features") || !root["features"].is_array()) {
        throw ParseError("FeatureCollection without a features array");
    }

    VectorLayer layer;
    layer.name = !name.empty() ? name : root.value("name", "");

    std::optional<GeometryKind> kind;
    auto check_kind = [&](GeometryKind k) {
        if (kind && *kind != k) {
            throw ParseError("mixed geometry kinds in layer '" + layer.name + "': " +
                             to_string(*kind) + " and " + to_string(k));
        }
        kind = k;
    };

    std::size_t index = 0;
    for (const json& f : root["features"]) {
        const std::string what = "feature " + std::to_string(index);
        if (!f.is_object() || f.value("type", "") != "Feature") {
            throw ParseError(what + ": expected a Feature object");
        }
        PropertyMap props;
        if (f.contains("properties") && f["properties"].is_object()) {
            for (const auto& [key, value] : f["properties"].items()) {
                props[key] = read_property(value);
            }
        }
        if (!f.contains("geometry") || f["geometry"].is_null()) {
            throw ParseError(what + ": null geometry is not supported");
        }
        const json& g = f["geometry"];
        const std::string gtype = g.value("type", "");
        const json& coords = g.contains("coordinates") ? g["coordinates"] : json();

        if (gtype == "Point") {
            check_kind(GeometryKind::Point);
            layer.features.push_back({read_position(coords, crs), props});
        } else if (gtype == "LineString") {
            check_kind(GeometryKind::Polyline);
            layer.features.push_back({read_linestring(coords, crs, what), props});
        } else if (gtype == "MultiLineString") {
            check_kind(GeometryKind::Polyline);
            for (const json& part : coords) {
                layer.features.push_back({read_linestring(part, crs, what), props});
            }
        } else if (gtype == "Polygon") {
            check_kind(GeometryKind::Polygon);
            layer.features.push_back({read_polygon(coords, crs, what), props});
        } else if (gtype == "MultiPolygon") {
            check_kind(GeometryKind::Polygon);
            for (const json& part : coords) {
                layer.features.push_back({read_polygon(part, crs, what), props});
            }
        } else {
            throw ParseError(what + ": unsupported geometry type '" + gtype + "'");
        }
        ++index;
    }

    if (kind) {
        layer.geometry_kind = *kind;
    }
    return layer;
}

namespace {

json write_position(const ProjectedPoint& p) {
    return json::array({p.easting, p.northing});
}

json write_ring(const Ring& ring) {
    json out = json::array();
    for (const ProjectedPoint& p : ring) {
        out.push_back(write_position(p));
    }
    return out;
}

json write_property(const PropertyValue& value) {
    if (std::holds_alternative<std::monostate>(value)) {
        return nullptr;
    }
    if (const bool* b = std::get_if<bool>(&value)) {
        return *b;
    }
    if (const std::int64_t* i = std::get_if<std::int64_t>(&value)) {
        return *i;
    }
    if (const double* d = std::get_if<double>(&value)) {
        return *d;
    }
    return std::get<std::string>(value);
}

} // namespace

std::string write_geojson(const VectorLayer& layer) {
    json features = json::array();
    for (const Feature& f : layer.features) {
        json geometry;
        if (const ProjectedPoint* p = std::get_if<ProjectedPoint>(&f.geometry)) {
            geometry = {{"type", "Point"}, {"coordinates", write_position(*p)}};
        } else if (const Polyline* l = std::get_if<Polyline>(&f.geometry)) {
            json coords = json::array();
            for (const ProjectedPoint& v : l->vertices) {
                coords.push_back(write_position(v));
            }
            geometry = {{"type", "LineString"}, {"coordinates", coords}};
        } else {
            const Polygon& poly = std::get<Polygon>(f.geometry);
            json rings = json::array();
            rings.push_back(write_ring(poly.exterior));
            for (const Ring& hole : poly.holes) {
                rings.push_back(write_ring(hole));
            }
            geometry = {{"type", "Polygon"}, {"coordinates", rings}};
        }
        json props = json::object();
        for (const auto& [key, value] : f.properties) {
            props[key] = write_property(value);
        }
        features.push_back({{"type", "Feature"}, {"geometry", geometry}, {"properties", props}});
    }

    json root = {{"type", "FeatureCollection"}, {"features", features}};
    if (!layer.name.empty()) {
        root["name"] = layer.name;
    }
    return root.dump();
}

std::string to_string(GeometryKind kind) {
    switch (kind) {
    case GeometryKind::Point:
        return "Point";
    case GeometryKind::Polyline:
        return "Polyline";
    case GeometryKind::Polygon:
        return "Polygon";
    }
    return "?";
}

GeometryKind Feature::kind() const {
    if (std::holds_alternative<ProjectedPoint>(geometry)) {
        return GeometryKind::Point;
    }
    if (std::holds_alternative<Polyline>(geometry)) {
        return GeometryKind::Polyline;
    }
    return GeometryKind::Polygon;
}

} // namespace rseri
