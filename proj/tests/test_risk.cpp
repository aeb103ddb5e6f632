#include "rseri/errors.hpp"
#include "rseri/risk.hpp"

#include "support.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

using namespace rseri;

namespace {

RiskVector bits(int flood, int lst, int grid, int road, int veg) {
    RiskVector r;
    r.flood = flood != 0;
    r.lst = lst != 0;
    r.grid = grid != 0;
    r.road = road != 0;
    r.vegetation = veg != 0;
    return r;
}

VectorLayer flood_layer() {
    VectorLayer layer;
    layer.geometry_kind = GeometryKind::Polygon;
    layer.features.push_back(
        {Polygon{{{0, 0}, {100, 0}, {100, 100}, {0, 100}, {0, 0}},
                 {{{40, 40}, {60, 40}, {60, 60}, {40, 60}, {40, 40}}}},
         {}});
    layer.features.push_back(
        {Polygon{{{200, 0}, {300, 0}, {300, 100}, {200, 100}, {200, 0}}, {}}, {}});
    return layer;
}

} // namespace

TEST_CASE("flood indicator: any polygon, boundary inside, holes outside") {
    const auto layer = flood_layer();
    CHECK(flood_indicator({20, 20}, layer) == 1);
    CHECK(flood_indicator({250, 50}, layer) == 1);
    CHECK(flood_indicator({100, 50}, layer) == 1); // boundary counts
    CHECK(flood_indicator({50, 50}, layer) == 0);  // inside the hole
    CHECK(flood_indicator({150, 50}, layer) == 0); // between the polygons
    CHECK(flood_indicator({20, 20}, VectorLayer{}) == 0); // no flood zones at all
}

TEST_CASE("threshold indicators are strictly greater-than") {
    CHECK(lst_indicator(31.1, 31.0) == 1);
    CHECK(lst_indicator(31.0, 31.0) == 0);
    CHECK(lst_indicator(30.9, 31.0) == 0);

    CHECK(grid_indicator(5000.0) == 0);
    CHECK(grid_indicator(5000.0000001) == 1);
    CHECK(grid_indicator(4999.9) == 0);
    CHECK(grid_indicator(120.0, 100.0) == 1);

    CHECK(road_indicator(2000.0) == 0);
    CHECK(road_indicator(2000.1) == 1);
    CHECK(road_indicator(120.0, 100.0) == 1);

    CHECK_THROWS_AS(grid_indicator(-1.0), DomainError);
    CHECK_THROWS_AS(road_indicator(-1.0), DomainError);
}

TEST_CASE("diagnostic and vegetation indicators") {
    CHECK(ndvi_indicator(RiskLevel::Low) == 1);
    CHECK(ndvi_indicator(RiskLevel::Moderate) == 0);
    CHECK(ndvi_indicator(RiskLevel::High) == 0);

    CHECK(lulc_indicator(LulcCategory::Urban) == 1);
    CHECK(lulc_indicator(LulcCategory::Coastal) == 1);
    CHECK(lulc_indicator(LulcCategory::Vegetation) == 0);
    CHECK(lulc_indicator(LulcCategory::Water) == 0);
    CHECK(lulc_indicator(LulcCategory::Other) == 0);

    // Vegetation risk: stressed vegetation on urban or vegetation land cover.
    CHECK(vegetation_indicator(RiskLevel::Low, LulcCategory::Urban) == 1);
    CHECK(vegetation_indicator(RiskLevel::Low, LulcCategory::Vegetation) == 1);
    CHECK(vegetation_indicator(RiskLevel::Low, LulcCategory::Water) == 0);
    CHECK(vegetation_indicator(RiskLevel::Moderate, LulcCategory::Urban) == 0);
    CHECK(vegetation_indicator(RiskLevel::High, LulcCategory::Vegetation) == 0);
}

TEST_CASE("min-max normalization") {
    const auto out = normalize_minmax({10, 20, 15});
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 1.0);
    CHECK(out[2] == 0.5);
    CHECK(normalize_minmax({7, 7, 7}) == std::vector<double>{0, 0, 0});
    CHECK(normalize_minmax({42}) == std::vector<double>{0});
    CHECK_THROWS_AS(normalize_minmax({}), DomainError);
}

TEST_CASE("equal weights give the exact arithmetic mean for all 32 vectors") {
    for (int mask = 0; mask < 32; ++mask) {
        const auto r = bits(mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1,
                            (mask >> 4) & 1);
        const auto score = compute_rseri(r, equal_weights());
        const int ones = __builtin_popcount(static_cast<unsigned>(mask));
        // Exact mean, not approximately: sum/5.0 in double arithmetic.
        CHECK(score.value == static_cast<double>(ones) / 5.0);
    }
}

TEST_CASE("classification boundaries at the tertiles") {
    CHECK(classify_rseri(0.0) == RiskLevel::Low);
    CHECK(classify_rseri(0.2) == RiskLevel::Low);
    CHECK(classify_rseri(1.0 / 3.0) == RiskLevel::Moderate); // boundary goes up
    CHECK(classify_rseri(0.5) == RiskLevel::Moderate);
    CHECK(classify_rseri(2.0 / 3.0) == RiskLevel::High);
    CHECK(classify_rseri(1.0) == RiskLevel::High);
    CHECK_THROWS_AS(classify_rseri(-0.01), DomainError);
    CHECK_THROWS_AS(classify_rseri(1.01), DomainError);
    CHECK_THROWS_AS(classify_rseri(0.5, 0.7, 0.6), DomainError); // inverted boundaries

    // The 2/5 and 3/5 equal-weight scores straddle the tertiles.
    CHECK(compute_rseri(bits(1, 1, 0, 0, 0), equal_weights()).level == RiskLevel::Moderate);
    CHECK(compute_rseri(bits(1, 1, 1, 0, 0), equal_weights()).level == RiskLevel::Moderate);
    CHECK(compute_rseri(bits(1, 1, 1, 1, 0), equal_weights()).level == RiskLevel::High);
    CHECK(compute_rseri(bits(0, 0, 0, 0, 0), equal_weights()).level == RiskLevel::Low);
    CHECK(compute_rseri(bits(1, 0, 0, 0, 0), equal_weights()).level == RiskLevel::Low);
}

TEST_CASE("custom weights validate and apply") {
    const auto w = custom_weights({0.5, 0.2, 0.1, 0.1, 0.1});
    CHECK(w.kind == WeightScheme::Kind::Custom);
    const auto score = compute_rseri(bits(1, 0, 0, 0, 1), w);
    CHECK(score.value == doctest::Approx(0.6).epsilon(1e-15));

    CHECK_THROWS_AS(custom_weights({-0.1, 0.3, 0.3, 0.3, 0.2}), DomainError);
    CHECK_THROWS_AS(custom_weights({0.3, 0.3, 0.3, 0.3, 0.3}), DomainError);
    CHECK_NOTHROW(custom_weights({1.0, 0.0, 0.0, 0.0, 0.0}));
}

TEST_CASE("missing composite indicators refuse to score") {
    RiskVector r = bits(1, 1, 1, 1, 1);
    r.grid.reset();
    CHECK_THROWS_AS(compute_rseri(r, equal_weights()), DomainError);
}

TEST_CASE("score is monotone under any single indicator flip") {
    testsupport::Rng rng(0x1337);
    for (int trial = 0; trial < 100; ++trial) {
        // Random nonnegative weights, normalized.
        std::array<double, 5> w{};
        double sum = 0.0;
        for (auto& x : w) {
            x = rng.next_double();
            sum += x;
        }
        for (auto& x : w) {
            x /= sum;
        }
        const auto scheme = custom_weights(w);
        for (int mask = 0; mask < 32; ++mask) {
            for (int bit = 0; bit < 5; ++bit) {
                if (mask & (1 << bit)) {
                    continue;
                }
                const int flipped = mask | (1 << bit);
                const auto lo = compute_rseri(bits(mask & 1, (mask >> 1) & 1, (mask >> 2) & 1,
                                                   (mask >> 3) & 1, (mask >> 4) & 1),
                                              scheme);
                const auto hi = compute_rseri(bits(flipped & 1, (flipped >> 1) & 1,
                                                   (flipped >> 2) & 1, (flipped >> 3) & 1,
                                                   (flipped >> 4) & 1),
                                              scheme);
                CHECK(hi.value >= lo.value);
            }
        }
    }
}
