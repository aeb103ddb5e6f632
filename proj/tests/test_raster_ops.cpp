#include "rseri/chargers.hpp"
#include "rseri/errors.hpp"
#include "rseri/raster_ops.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace rseri;

namespace {

/// Straight re-statement of the rank definition, used as an oracle.
double percentile_oracle(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double rank = p * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

} // namespace

TEST_CASE("percentile anchors") {
    // p = 0.9 over 1..10 interpolates at rank 8.1.
    CHECK(percentile({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 0.9) ==
          doctest::Approx(9.1).epsilon(1e-12));
    // The ten-value sample from the committed mini dataset.
    CHECK(percentile({10, 12, 14, 16, 18, 20, 22, 24, 30, 40}, 0.9) ==
          doctest::Approx(31.0).epsilon(1e-12));
    CHECK(percentile({5, 1, 3}, 0.0) == 1.0);
    CHECK(percentile({5, 1, 3}, 1.0) == 5.0);
    CHECK(percentile({5, 1, 3}, 0.5) == 3.0);
    CHECK(percentile({42}, 0.37) == 42.0);
    // Order must not matter.
    CHECK(percentile({10, 1, 9, 2, 8, 3, 7, 4, 6, 5}, 0.9) == doctest::Approx(9.1));
}

TEST_CASE("percentile matches the rank definition on random samples") {
    testsupport::Rng rng(0x9e1);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.next_index(50);
        std::vector<double> v(n);
        for (auto& x : v) {
            x = rng.uniform(-100, 100);
        }
        const double p = rng.next_double();
        CHECK(percentile(v, p) == doctest::Approx(percentile_oracle(v, p)).epsilon(1e-12));
    }
}

TEST_CASE("percentile domain errors") {
    CHECK_THROWS_AS(percentile({}, 0.5), DomainError);
    CHECK_THROWS_AS(percentile({1.0}, -0.1), DomainError);
    CHECK_THROWS_AS(percentile({1.0}, 1.1), DomainError);
}

TEST_CASE("NDVI classification boundaries") {
    CHECK(classify_ndvi(0.1) == RiskLevel::Low);
    CHECK(classify_ndvi(0.19999) == RiskLevel::Low);
    // Exactly at `low` is Moderate; exactly at `high` is High.
    CHECK(classify_ndvi(0.2) == RiskLevel::Moderate);
    CHECK(classify_ndvi(0.49999) == RiskLevel::Moderate);
    CHECK(classify_ndvi(0.5) == RiskLevel::High);
    CHECK(classify_ndvi(1.0) == RiskLevel::High);
    CHECK(classify_ndvi(-1.0) == RiskLevel::Low);
    // Custom cutpoints.
    CHECK(classify_ndvi(0.3, 0.35, 0.6) == RiskLevel::Low);
    CHECK(classify_ndvi(0.35, 0.35, 0.6) == RiskLevel::Moderate);
    CHECK_THROWS_AS(classify_ndvi(1.0001), DomainError);
    CHECK_THROWS_AS(classify_ndvi(-1.0001), DomainError);
}

TEST_CASE("LULC legend parsing and lookup") {
    const auto legend = parse_lulc_legend(
        R"({"1": "urban", "2": "vegetation", "3": "coastal", "4": "water", "5": "other"})");
    REQUIRE(legend.size() == 5);
    CHECK(legend.at(1) == LulcCategory::Urban);
    CHECK(legend.at(4) == LulcCategory::Water);

    CHECK(classify_lulc(2, legend) == LulcCategory::Vegetation);

    // Unknown code: Other plus a warning when a sink is provided.
    std::vector<std::string> warnings;
    CHECK(classify_lulc(99, legend, &warnings) == LulcCategory::Other);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("99") != std::string::npos);
    // No sink: still Other, no crash.
    CHECK(classify_lulc(99, legend) == LulcCategory::Other);
}

TEST_CASE("LULC legend rejects bad input") {
    CHECK_THROWS_AS(parse_lulc_legend(R"({"1": "metropolis"})"), Error);
    CHECK_THROWS_AS(parse_lulc_legend(R"({"x": "urban"})"), Error);
    CHECK_THROWS_AS(parse_lulc_legend("[1, 2]"), Error);
    CHECK_THROWS_AS(parse_lulc_legend("{nope"), Error);
}

TEST_CASE("LST composite: max and median with gaps") {
    const auto c = lst_composite({21.0, std::nullopt, 27.0, 24.0});
    REQUIRE(c.max.has_value());
    CHECK(*c.max == 27.0);
    CHECK(*c.median == 24.0);

    // Even count: median interpolates between the middle two.
    const auto even = lst_composite({10.0, 20.0});
    CHECK(*even.median == 15.0);
    CHECK(*even.max == 20.0);

    // All-missing samples stay missing.
    const auto none = lst_composite({std::nullopt, std::nullopt});
    CHECK_FALSE(none.max.has_value());
    CHECK_FALSE(none.median.has_value());

    const auto empty = lst_composite({});
    CHECK_FALSE(empty.max.has_value());
}
