#include "rseri/fixture.hpp"

#include "rseri/ascii_grid.hpp"
#include "rseri/config.hpp"
#include "rseri/errors.hpp"
#include "rseri/feature.hpp"
#include "rseri/format.hpp"
#include "rseri/geojson.hpp"
#include "rseri/geometry.hpp"
#include "rseri/projection.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>

namespace rseri {

namespace {

using nlohmann::json;

/// splitmix64: tiny, seedable, identical everywhere. The standard library's
/// distributions are not bit-stable across implementations, so the fixture
/// rolls its own uniform helpers.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [0, bound).
    std::size_t next_index(std::size_t bound) {
        return static_cast<std::size_t>(next_double() * static_cast<double>(bound));
    }
};

constexpr std::array<const char*, 4> kOperators = {"GridCharge", "VoltWay", "EcoPlug",
                                                   "ChargeNet"};

constexpr std::array<const char*, 16> kDistrictNames = {
    "Aberdale",  "Brynfield", "Caerwen",   "Derwent Vale", "Eastmoor", "Fenbridge",
    "Glynmor",   "Hartcliffe", "Islemere", "Kingsvale",    "Llanwick", "Morfield",
    "Nantglen",  "Oakmarsh",  "Penwick",   "Quarryside"};

std::string charger_id(std::size_t ordinal) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "EV%05zu", ordinal);
    return buf;
}

GeoPoint wgs(double easting, double northing) {
    return bng_to_wgs84(ProjectedPoint{easting, northing});
}

/// GeoJSON layers are written in WGS84, so geometry coordinates hold lon/lat.
ProjectedPoint wgs_coord(double easting, double northing) {
    const GeoPoint g = wgs(easting, northing);
    return ProjectedPoint{g.lon, g.lat};
}

Feature rect_feature(double x0, double y0, double x1, double y1) {
    Feature feature;
    Polygon polygon;
    polygon.exterior = {wgs_coord(x0, y0), wgs_coord(x1, y0), wgs_coord(x1, y1),
                        wgs_coord(x0, y1), wgs_coord(x0, y0)};
    feature.geometry = std::move(polygon);
    return feature;
}

struct FixtureWriter {
    std::string out_dir;
    FixtureResult result;

    void write(const std::string& name, std::string_view content) {
        write_file_atomic((std::filesystem::path(out_dir) / name).string(), content);
        result.files.push_back(name);
    }
};

std::string legend_json() {
    const json legend = {{"1", "urban"},   {"2", "vegetation"}, {"3", "coastal"},
                         {"4", "water"},   {"5", "other"}};
    return legend.dump(2) + "\n";
}

json base_config(const std::vector<std::string>& lst_names) {
    json config;
    config["inputs"] = {{"chargers", "chargers.csv"}, {"chargers_format", "csv"},
                        {"flood", "flood.geojson"},   {"substations", "substations.geojson"},
                        {"roads", "roads.geojson"},   {"lads", "lads.geojson"},
                        {"lst", lst_names},           {"ndvi", "ndvi.asc"},
                        {"lulc", "lulc.asc"},         {"legend", "lulc_legend.json"}};
    config["crs"] = {{"mode", "wgs84"}};
    config["graph"] = {{"k", 5}};
    config["output"] = {{"dir", "out"}};
    return config;
}

// ---------------------------------------------------------------------------
// Match mode: 13 engineered blocks on a 4x4 slot lattice. Each block carries
// one fixed combination of the five composite risks for every charger in it,
// so the scored marginals, pairwise intersections, and the triple are fixed
// by the block populations alone.
// ---------------------------------------------------------------------------

struct Block {
    const char* tag;
    std::size_t count;
    bool flood, lst, veg, grid, road;
};

constexpr std::array<Block, 13> kBlocks = {{
    {"flv", 66, true, true, true, false, false},
    {"fl", 44, true, true, false, false, false},
    {"fv", 19, true, false, true, false, false},
    {"lv", 310, false, true, true, false, false},
    {"f", 12, true, false, false, false, false},
    {"l", 197, false, true, false, false, false},
    {"lg", 6, false, true, false, true, false},
    {"lr", 44, false, true, false, false, true},
    {"v", 88, false, false, true, false, false},
    {"calm", 103, false, false, false, false, false},
    {"g", 3, false, false, false, true, false},
    {"r", 20, false, false, false, false, true},
    {"gr", 8, false, false, false, true, true},
}};

constexpr double kOriginE = 200000.0;
constexpr double kOriginN = 200000.0;
constexpr double kSlotPitch = 15000.0;
constexpr double kChargerPitch = 60.0; // sub-grid spacing inside a block
constexpr double kPatchHalf = 1000.0;  // raster patch half-width around a block center
constexpr double kFloodHalf = 800.0;   // flood rectangle half-width
constexpr double kRoadHalf = 250.0;    // road segment half-length
constexpr double kCell = 200.0;
constexpr std::size_t kGridCells = 300; // 300 * 200 m = 60 km = 4 slots

double slot_center_e(std::size_t block) { return kOriginE + (block % 4) * kSlotPitch + 7500.0; }
double slot_center_n(std::size_t block) { return kOriginN + (block / 4) * kSlotPitch + 7500.0; }

std::string match_chargers_csv() {
    std::string out = "id,lon,lat,status,operator\n";
    std::size_t ordinal = 0;
    for (std::size_t b = 0; b < kBlocks.size(); ++b) {
        const Block& block = kBlocks[b];
        const double cx = slot_center_e(b);
        const double cy = slot_center_n(b);
        const auto cols = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(block.count))));
        const std::size_t rows = (block.count + cols - 1) / cols;
        for (std::size_t p = 0; p < block.count; ++p) {
            ++ordinal;
            const double col = static_cast<double>(p % cols);
            const double row = static_cast<double>(p / cols);
            const double x = cx + (col - (static_cast<double>(cols) - 1.0) / 2.0) * kChargerPitch;
            const double y = cy + (row - (static_cast<double>(rows) - 1.0) / 2.0) * kChargerPitch;
            const GeoPoint g = wgs(x, y);
            out += charger_id(ordinal);
            out += ',' + format_fixed(g.lon, 6);
            out += ',' + format_fixed(g.lat, 6);
            out += ",operational,";
            out += kOperators[ordinal % kOperators.size()];
            out += '\n';
        }
    }
    return out;
}

std::string match_flood_geojson() {
    VectorLayer layer;
    layer.name = "flood";
    layer.geometry_kind = GeometryKind::Polygon;
    for (std::size_t b = 0; b < kBlocks.size(); ++b) {
        if (!kBlocks[b].flood) {
            continue;
        }
        const double cx = slot_center_e(b);
        const double cy = slot_center_n(b);
        Feature feature =
            rect_feature(cx - kFloodHalf, cy - kFloodHalf, cx + kFloodHalf, cy + kFloodHalf);
        feature.properties["name"] = std::string("flood_zone_") + kBlocks[b].tag;
        layer.features.push_back(std::move(feature));
    }
    return write_geojson(layer);
}

std::string match_substations_geojson() {
    VectorLayer layer;
    layer.name = "substations";
    layer.geometry_kind = GeometryKind::Point;
    for (std::size_t b = 0; b < kBlocks.size(); ++b) {
        if (kBlocks[b].grid) {
            continue; // grid-risk blocks get no nearby substation
        }
        Feature feature;
        feature.geometry = wgs_coord(slot_center_e(b), slot_center_n(b));
        feature.properties["name"] = std::string("sub_") + kBlocks[b].tag;
        layer.features.push_back(std::move(feature));
    }
    return write_geojson(layer);
}

std::string match_roads_geojson() {
    VectorLayer layer;
    layer.name = "roads";
    layer.geometry_kind = GeometryKind::Polyline;
    for (std::size_t b = 0; b < kBlocks.size(); ++b) {
        if (kBlocks[b].road) {
            continue; // road-risk blocks get no nearby road
        }
        const double cx = slot_center_e(b);
        const double cy = slot_center_n(b);
        Feature feature;
        Polyline line;
        line.vertices = {wgs_coord(cx - kRoadHalf, cy), wgs_coord(cx + kRoadHalf, cy)};
        feature.geometry = std::move(line);
        feature.properties["name"] = std::string("road_") + kBlocks[b].tag;
        layer.features.push_back(std::move(feature));
    }
    return write_geojson(layer);
}

std::string match_lads_geojson() {
    VectorLayer layer;
    layer.name = "lads";
    layer.geometry_kind = GeometryKind::Polygon;
    for (std::size_t b = 0; b < kBlocks.size(); ++b) {
        const double x0 = kOriginE + (b % 4) * kSlotPitch;
        const double y0 = kOriginN + (b / 4) * kSlotPitch;
        Feature feature = rect_feature(x0, y0, x0 + kSlotPitch, y0 + kSlotPitch);
        char id[8];
        std::snprintf(id, sizeof id, "L%02zu", b + 1);
        feature.properties["id"] = std::string(id);
        feature.properties["name"] = std::string(kDistrictNames[b]);
        layer.features.push_back(std::move(feature));
    }
    return write_geojson(layer);
}

/// Fill a raster with `base`, then stamp `patch` into the 2 km square patch
/// around each block center selected by `wants`.
template <typename Wants>
RasterGrid match_raster(double base, double patch, Wants wants) {
    RasterGrid grid;
    grid.ncols = kGridCells;
    grid.nrows = kGridCells;
    grid.xllcorner = kOriginE;
    grid.yllcorner = kOriginN;
    grid.cellsize = kCell;
    grid.values.assign(kGridCells * kGridCells, base);
    for (std::size_t b = 0; b < kBlocks.size(); ++b) {
        if (!wants(kBlocks[b])) {
            continue;
        }
        const double cx = slot_center_e(b);
        const double cy = slot_center_n(b);
        for (std::size_t row = 0; row < grid.nrows; ++row) {
            // row 0 is the northernmost row
            const double center_y =
                grid.yllcorner + (static_cast<double>(grid.nrows - 1 - row) + 0.5) * kCell;
            if (center_y < cy - kPatchHalf || center_y >= cy + kPatchHalf) {
                continue;
            }
            for (std::size_t col = 0; col < grid.ncols; ++col) {
                const double center_x = grid.xllcorner + (static_cast<double>(col) + 0.5) * kCell;
                if (center_x < cx - kPatchHalf || center_x >= cx + kPatchHalf) {
                    continue;
                }
                grid.values[row * grid.ncols + col] = patch;
            }
        }
    }
    return grid;
}

void generate_match(FixtureWriter& writer) {
    writer.write("chargers.csv", match_chargers_csv());
    writer.write("flood.geojson", match_flood_geojson());
    writer.write("substations.geojson", match_substations_geojson());
    writer.write("roads.geojson", match_roads_geojson());
    writer.write("lads.geojson", match_lads_geojson());
    // Hot LST islands around the LST blocks cover well under 10% of the
    // raster, so the 90th-percentile threshold over all cells stays at the
    // cold value and the strict > test turns exactly those islands on.
    writer.write("lst.asc", write_ascii_grid(match_raster(
                                10.0, 35.0, [](const Block& b) { return b.lst; })));
    writer.write("ndvi.asc", write_ascii_grid(match_raster(
                                 0.8, 0.05, [](const Block& b) { return b.veg; })));
    writer.write("lulc.asc", write_ascii_grid(match_raster(
                                 5.0, 1.0, [](const Block& b) { return b.veg; })));
    writer.write("lulc_legend.json", legend_json());

    json config = base_config({"lst.asc"});
    config["thresholds"] = {{"lst_population", "raster"}};
    writer.write("config.json", config.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Random mode: uniform scatter over a Wales-sized square of the national
// grid, with every layer present so all indicators resolve.
// ---------------------------------------------------------------------------

constexpr double kRandMinE = 180000.0;
constexpr double kRandMinN = 180000.0;
constexpr double kRandSpan = 200000.0; // 100 cells * 2 km
constexpr double kRandCell = 2000.0;
constexpr std::size_t kRandCells = 100;
constexpr double kRandMargin = 5000.0; // keep chargers inside the raster

std::string random_chargers_csv(Rng& rng, std::size_t n) {
    std::string out = "id,lon,lat,status,operator\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(kRandMinE + kRandMargin, kRandMinE + kRandSpan - kRandMargin);
        const double y = rng.uniform(kRandMinN + kRandMargin, kRandMinN + kRandSpan - kRandMargin);
        const char* status = "operational";
        if (i >= 2) { // the first two stay active so even n=2 can score
            const double u = rng.next_double();
            if (u < 0.80) {
                status = "operational";
            } else if (u < 0.90) {
                status = "active";
            } else if (u < 0.96) {
                status = "inactive";
            } else {
                status = "planned"; // unknown status: dropped with a warning
            }
        }
        const GeoPoint g = wgs(x, y);
        out += charger_id(i + 1);
        out += ',' + format_fixed(g.lon, 6);
        out += ',' + format_fixed(g.lat, 6);
        out += ',';
        out += status;
        out += ',';
        out += kOperators[rng.next_index(kOperators.size())];
        out += '\n';
    }
    return out;
}

std::string random_flood_geojson(Rng& rng) {
    VectorLayer layer;
    layer.name = "flood";
    layer.geometry_kind = GeometryKind::Polygon;
    for (std::size_t i = 0; i < 6; ++i) {
        const double cx = rng.uniform(kRandMinE + 10000.0, kRandMinE + kRandSpan - 10000.0);
        const double cy = rng.uniform(kRandMinN + 10000.0, kRandMinN + kRandSpan - 10000.0);
        const double hx = rng.uniform(1000.0, 5000.0);
        const double hy = rng.uniform(1000.0, 5000.0);
        Feature feature = rect_feature(cx - hx, cy - hy, cx + hx, cy + hy);
        feature.properties["name"] = "flood_zone_" + std::to_string(i + 1);
        layer.features.push_back(std::move(feature));
    }
    return write_geojson(layer);
}

std::string random_substations_geojson(Rng& rng) {
    VectorLayer layer;
    layer.name = "substations";
    layer.geometry_kind = GeometryKind::Point;
    for (std::size_t i = 0; i < 40; ++i) {
        Feature feature;
        feature.geometry = wgs_coord(rng.uniform(kRandMinE, kRandMinE + kRandSpan),
                                     rng.uniform(kRandMinN, kRandMinN + kRandSpan));
        feature.properties["name"] = "sub_" + std::to_string(i + 1);
        layer.features.push_back(std::move(feature));
    }
    return write_geojson(layer);
}

std::string random_roads_geojson(Rng& rng) {
    VectorLayer layer;
    layer.name = "roads";
    layer.geometry_kind = GeometryKind::Polyline;
    for (std::size_t i = 0; i < 25; ++i) {
        double x = rng.uniform(kRandMinE + 20000.0, kRandMinE + kRandSpan - 20000.0);
        double y = rng.uniform(kRandMinN + 20000.0, kRandMinN + kRandSpan - 20000.0);
        Polyline line;
        line.vertices.push_back(wgs_coord(x, y));
        const std::size_t segments = 2 + rng.next_index(3);
        for (std::size_t s = 0; s < segments; ++s) {
            x += (rng.next_double() < 0.5 ? -1.0 : 1.0) * rng.uniform(500.0, 4000.0);
            y += (rng.next_double() < 0.5 ? -1.0 : 1.0) * rng.uniform(500.0, 4000.0);
            line.vertices.push_back(wgs_coord(x, y));
        }
        Feature feature;
        feature.geometry = std::move(line);
        feature.properties["name"] = "road_" + std::to_string(i + 1);
        layer.features.push_back(std::move(feature));
    }
    return write_geojson(layer);
}

std::string random_lads_geojson(Rng& rng) {
    // A 4x4 partition of the square with jittered interior cut lines:
    // Voronoi-like rectangles that tile the region exactly.
    std::array<double, 5> xs{};
    std::array<double, 5> ys{};
    for (std::size_t i = 0; i <= 4; ++i) {
        const double base = static_cast<double>(i) * kRandSpan / 4.0;
        const double jitter =
            (i == 0 || i == 4) ? 0.0 : rng.uniform(-8000.0, 8000.0);
        xs[i] = kRandMinE + base + jitter;
    }
    for (std::size_t i = 0; i <= 4; ++i) {
        const double base = static_cast<double>(i) * kRandSpan / 4.0;
        const double jitter =
            (i == 0 || i == 4) ? 0.0 : rng.uniform(-8000.0, 8000.0);
        ys[i] = kRandMinN + base + jitter;
    }
    VectorLayer layer;
    layer.name = "lads";
    layer.geometry_kind = GeometryKind::Polygon;
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t i = 0; i < 4; ++i) {
            const std::size_t index = j * 4 + i;
            Feature feature = rect_feature(xs[i], ys[j], xs[i + 1], ys[j + 1]);
            char id[8];
            std::snprintf(id, sizeof id, "L%02zu", index + 1);
            feature.properties["id"] = std::string(id);
            feature.properties["name"] = std::string(kDistrictNames[index]);
            layer.features.push_back(std::move(feature));
        }
    }
    return write_geojson(layer);
}

RasterGrid random_raster(Rng& rng, double lo, double hi) {
    RasterGrid grid;
    grid.ncols = kRandCells;
    grid.nrows = kRandCells;
    grid.xllcorner = kRandMinE;
    grid.yllcorner = kRandMinN;
    grid.cellsize = kRandCell;
    grid.values.reserve(kRandCells * kRandCells);
    for (std::size_t i = 0; i < kRandCells * kRandCells; ++i) {
        grid.values.push_back(rng.uniform(lo, hi));
    }
    return grid;
}

RasterGrid random_lulc(Rng& rng) {
    RasterGrid grid;
    grid.ncols = kRandCells;
    grid.nrows = kRandCells;
    grid.xllcorner = kRandMinE;
    grid.yllcorner = kRandMinN;
    grid.cellsize = kRandCell;
    grid.values.reserve(kRandCells * kRandCells);
    for (std::size_t i = 0; i < kRandCells * kRandCells; ++i) {
        grid.values.push_back(static_cast<double>(1 + rng.next_index(5)));
    }
    return grid;
}

void generate_random(FixtureWriter& writer, std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    writer.write("chargers.csv", random_chargers_csv(rng, n));
    writer.write("flood.geojson", random_flood_geojson(rng));
    writer.write("substations.geojson", random_substations_geojson(rng));
    writer.write("roads.geojson", random_roads_geojson(rng));
    writer.write("lads.geojson", random_lads_geojson(rng));
    writer.write("lst_scene_1.asc", write_ascii_grid(random_raster(rng, 12.0, 38.0)));
    writer.write("lst_scene_2.asc", write_ascii_grid(random_raster(rng, 12.0, 38.0)));
    writer.write("ndvi.asc", write_ascii_grid(random_raster(rng, -0.05, 0.85)));
    writer.write("lulc.asc", write_ascii_grid(random_lulc(rng)));
    writer.write("lulc_legend.json", legend_json());
    writer.write("config.json", base_config({"lst_scene_1.asc", "lst_scene_2.asc"}).dump(2) + "\n");
}

} // namespace

FixtureResult generate_fixture(const FixtureOptions& options) {
    if (!options.match_paper_marginals && options.n < 2) {
        throw DomainError("fixture needs n >= 2, got " + std::to_string(options.n));
    }
    FixtureWriter writer;
    writer.out_dir = options.out_dir;
    if (options.match_paper_marginals) {
        generate_match(writer);
    } else {
        generate_random(writer, options.seed, options.n);
    }
    writer.result.config_path =
        (std::filesystem::path(options.out_dir) / "config.json").string();
    return writer.result;
}

} // namespace rseri
