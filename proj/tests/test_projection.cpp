#include "rseri/csv.hpp"
#include "rseri/errors.hpp"
#include "rseri/projection.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

using namespace rseri;

namespace {

std::string oracle_path() {
    return std::string(RSERI_TEST_DATA_DIR) + "/bng_oracle_points.csv";
}

} // namespace

TEST_CASE("projection agrees with the committed geodesy oracle") {
    const auto table = parse_csv(testsupport::slurp(oracle_path()));
    REQUIRE(table.rows.size() == 100);
    REQUIRE(table.column("lon").has_value());
    double max_forward_m = 0.0;
    double max_inverse_deg = 0.0;
    for (const auto& row : table.rows) {
        const double lon = std::strtod(row[0].c_str(), nullptr);
        const double lat = std::strtod(row[1].c_str(), nullptr);
        const double e = std::strtod(row[2].c_str(), nullptr);
        const double n = std::strtod(row[3].c_str(), nullptr);

        const ProjectedPoint p = project_wgs84_to_bng({lon, lat});
        max_forward_m = std::max(max_forward_m, std::hypot(p.easting - e, p.northing - n));

        const GeoPoint g = bng_to_wgs84({e, n});
        max_inverse_deg =
            std::max({max_inverse_deg, std::abs(g.lon - lon), std::abs(g.lat - lat)});
    }
    // Contract: within 1 m of the oracle. The grid-free pipeline actually
    // lands within millimeters; assert the headroom too so regressions that
    // stay under a meter still surface.
    CHECK(max_forward_m < 1.0);
    CHECK(max_forward_m < 0.01);
    CHECK(max_inverse_deg < 1e-6);
}

TEST_CASE("transverse Mercator core reproduces the published worked example") {
    // OSGB36 geodetic 52.6575703 N, 1.7179216 E is the classic National Grid
    // worked example; the TM core maps it to TG 51409 13177.
    const ProjectedPoint p = transverse_mercator_osgb({1.7179216, 52.6575703});
    CHECK(std::abs(p.easting - 651409.903) < 0.005);
    CHECK(std::abs(p.northing - 313177.270) < 0.005);

    const GeoPoint back = transverse_mercator_osgb_inverse(p);
    CHECK(std::abs(back.lon - 1.7179216) < 1e-8);
    CHECK(std::abs(back.lat - 52.6575703) < 1e-8);
}

TEST_CASE("transverse Mercator true origin maps to the false origin") {
    const ProjectedPoint p = transverse_mercator_osgb({-2.0, 49.0});
    CHECK(std::abs(p.easting - 400000.0) < 1e-6);
    CHECK(std::abs(p.northing - (-100000.0)) < 1e-6);
}

TEST_CASE("central meridian stays near E0 through the full pipeline") {
    // The Helmert shift moves the OSGB36 longitude of WGS84 -2.0 by about
    // 0.0014 deg, so the easting is near, not exactly, 400 km.
    const ProjectedPoint p = project_wgs84_to_bng({-2.0, 52.0});
    CHECK(std::abs(p.easting - 400000.0) < 150.0);
    CHECK(p.northing > 100000.0);
}

TEST_CASE("projection round trip over a Wales-sized box") {
    testsupport::Rng rng(0x27700);
    for (int trial = 0; trial < 200; ++trial) {
        const GeoPoint g{rng.uniform(-5.5, -2.5), rng.uniform(51.3, 53.5)};
        const ProjectedPoint p = project_wgs84_to_bng(g);
        const GeoPoint back = bng_to_wgs84(p);
        // Inverse iteration + small-angle Helmert inverse cost a few times
        // 1e-8 deg (~millimeters); 1e-6 deg is ~0.1 m of slack.
        CHECK(std::abs(back.lon - g.lon) < 1e-6);
        CHECK(std::abs(back.lat - g.lat) < 1e-6);
    }
}

TEST_CASE("datum transform round trip") {
    testsupport::Rng rng(0x4326);
    for (int trial = 0; trial < 100; ++trial) {
        const GeoPoint g{rng.uniform(-8.0, 2.0), rng.uniform(49.0, 61.0)};
        const GeoPoint osgb = wgs84_to_osgb36(g);
        const GeoPoint back = osgb36_to_wgs84(osgb);
        CHECK(std::abs(back.lon - g.lon) < 1e-7);
        CHECK(std::abs(back.lat - g.lat) < 1e-7);
    }
}

TEST_CASE("geodetic to cartesian round trip on GRS80") {
    testsupport::Rng rng(0x6378137);
    for (int trial = 0; trial < 100; ++trial) {
        const GeoPoint g{rng.uniform(-180.0, 180.0), rng.uniform(-89.0, 89.0)};
        const CartesianPoint c = geodetic_to_cartesian(g, kGrs80);
        const GeoPoint back = cartesian_to_geodetic(c, kGrs80);
        CHECK(std::abs(back.lon - g.lon) < 1e-9);
        CHECK(std::abs(back.lat - g.lat) < 1e-9);
    }
}

TEST_CASE("out-of-range coordinates are rejected") {
    CHECK_THROWS_AS(project_wgs84_to_bng({0.0, 95.0}), DomainError);
    CHECK_THROWS_AS(project_wgs84_to_bng({0.0, -95.0}), DomainError);
    CHECK_THROWS_AS(project_wgs84_to_bng({181.0, 50.0}), DomainError);
    CHECK_THROWS_AS(project_wgs84_to_bng({-181.0, 50.0}), DomainError);
    CHECK_NOTHROW(project_wgs84_to_bng({-180.0, -90.0}));
}

TEST_CASE("Wales grid window sanity check") {
    CHECK(in_wales_grid_window({318000.0, 176000.0}));  // Cardiff-ish
    CHECK_FALSE(in_wales_grid_window({651409.9, 313177.3})); // East Anglia
    CHECK_FALSE(in_wales_grid_window({318000.0, 500000.0}));
}
