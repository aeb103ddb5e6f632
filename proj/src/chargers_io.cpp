#include "rseri/chargers_io.hpp"

#include "rseri/csv.hpp"
#include "rseri/errors.hpp"
#include "rseri/geojson.hpp"
#include "rseri/projection.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_set>

namespace rseri {

namespace {

double parse_coordinate(const std::string& text, const std::string& column, std::size_t row) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw ParseError("unparseable coordinate '" + text + "' in column '" + column + "' (row " +
                         std::to_string(row) + ")");
    }
    return value;
}

std::string property_as_id(const PropertyValue& value) {
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
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", *d);
        return buf;
    }
    return {};
}

void fill_coordinates(ChargerStation& station, double x, double y, CrsMode crs) {
    if (crs == CrsMode::Wgs84) {
        station.location = GeoPoint{x, y};
        station.projected = project_wgs84_to_bng(station.location);
    } else {
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw DomainError("non-finite projected coordinate for charger '" + station.id + "'");
        }
        station.projected = ProjectedPoint{x, y};
        station.location = bng_to_wgs84(station.projected);
    }
}

/// Returns true when the station should be kept (active).
bool apply_status(ChargerStation& station, const std::string& raw, ChargerLoadResult& result) {
    station.status = parse_status(raw);
    switch (station.status) {
    case Status::Active:
        return true;
    case Status::Inactive:
        ++result.dropped_inactive;
        return false;
    case Status::Unknown:
        ++result.dropped_unknown;
        result.warnings.push_back("charger '" + station.id + "': unknown status '" + raw +
                                  "'; dropped");
        return false;
    }
    return false;
}

std::size_t require_column(const CsvTable& table, std::string_view name) {
    if (auto index = table.column(name)) {
        return *index;
    }
    throw ParseError("missing required column '" + std::string(name) + "'");
}

ChargerLoadResult load_from_csv(std::string_view text, CrsMode crs) {
    const CsvTable table = parse_csv(text);
    const std::size_t id_col = require_column(table, "id");
    const std::size_t lon_col = require_column(table, "lon");
    const std::size_t lat_col = require_column(table, "lat");
    const std::size_t status_col = require_column(table, "status");

    ChargerLoadResult result;
    result.input_count = table.rows.size();
    std::unordered_set<std::string> seen;
    seen.reserve(table.rows.size());

    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        ChargerStation station;
        station.id = row[id_col];
        if (station.id.empty()) {
            throw ParseError("empty charger id (row " + std::to_string(i + 1) + ")");
        }
        if (!seen.insert(station.id).second) {
            throw ParseError("duplicate charger id '" + station.id + "'");
        }
        if (!apply_status(station, row[status_col], result)) {
            continue;
        }
        const double x = parse_coordinate(row[lon_col], "lon", i + 1);
        const double y = parse_coordinate(row[lat_col], "lat", i + 1);
        fill_coordinates(station, x, y, crs);
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            if (c == id_col || c == lon_col || c == lat_col || c == status_col) {
                continue;
            }
            station.properties[table.header[c]] = row[c];
        }
        result.stations.push_back(std::move(station));
    }
    return result;
}

ChargerLoadResult load_from_geojson(std::string_view text, CrsMode crs) {
    const VectorLayer layer = parse_geojson(text, crs, "chargers");
    if (!layer.features.empty() && layer.geometry_kind != GeometryKind::Point) {
        throw ParseError("charger layer must contain point geometries, got " +
                         to_string(layer.geometry_kind));
    }

    ChargerLoadResult result;
    result.input_count = layer.features.size();
    std::unordered_set<std::string> seen;
    seen.reserve(layer.features.size());

    for (std::size_t i = 0; i < layer.features.size(); ++i) {
        const Feature& feature = layer.features[i];
        ChargerStation station;
        auto id_it = feature.properties.find("id");
        if (id_it != feature.properties.end()) {
            station.id = property_as_id(id_it->second);
        }
        if (station.id.empty()) {
            throw ParseError("charger feature " + std::to_string(i) +
                             " is missing an 'id' property");
        }
        if (!seen.insert(station.id).second) {
            throw ParseError("duplicate charger id '" + station.id + "'");
        }

        std::string raw_status = "";
        auto status_it = feature.properties.find("status");
        if (status_it != feature.properties.end()) {
            if (const auto* s = std::get_if<std::string>(&status_it->second)) {
                raw_status = *s;
            } else {
                raw_status = property_as_id(status_it->second);
            }
        }
        if (!apply_status(station, raw_status, result)) {
            continue;
        }

        // parse_geojson already projected WGS84 input, so recover the
        // geographic location from the stored grid coordinates.
        const auto& point = std::get<ProjectedPoint>(feature.geometry);
        station.projected = point;
        station.location = bng_to_wgs84(point);
        for (const auto& [key, value] : feature.properties) {
            if (key == "id" || key == "status") {
                continue;
            }
            station.properties[key] = value;
        }
        result.stations.push_back(std::move(station));
    }
    return result;
}

} // namespace

ChargerLoadResult load_chargers(std::string_view text, ChargerFormat format, CrsMode crs) {
    if (format == ChargerFormat::Csv) {
        return load_from_csv(text, crs);
    }
    return load_from_geojson(text, crs);
}

} // namespace rseri
