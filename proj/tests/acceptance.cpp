// Acceptance suite: ten end-to-end checks, one printed PASS/FAIL line each.
// Exit status is the number of failed criteria (0 = all good).

#include "rseri/analytics.hpp"
#include "rseri/config.hpp"
#include "rseri/csv.hpp"
#include "rseri/errors.hpp"
#include "rseri/fixture.hpp"
#include "rseri/geometry.hpp"
#include "rseri/kdtree.hpp"
#include "rseri/pca.hpp"
#include "rseri/pipeline.hpp"
#include "rseri/projection.hpp"
#include "rseri/risk.hpp"

#include "support.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace rseri;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<std::string()>& body) {
    std::string detail;
    bool ok = false;
    try {
        detail = body(); // empty string = pass; otherwise the failure reason
        ok = detail.empty();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    if (ok) {
        std::printf("PASS  criterion %2d: %s\n", number, label.c_str());
    } else {
        std::printf("FAIL  criterion %2d: %s -- %s\n", number, label.c_str(), detail.c_str());
        ++failures;
    }
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

ChargerStation make_station(const std::string& id, const std::array<int, 5>& bits, double e,
                            double n, double score) {
    ChargerStation s;
    s.id = id;
    s.projected = {e, n};
    s.status = Status::Active;
    s.risk.flood = bits[0] != 0;
    s.risk.lst = bits[1] != 0;
    s.risk.grid = bits[2] != 0;
    s.risk.road = bits[3] != 0;
    s.risk.vegetation = bits[4] != 0;
    s.rseri = score;
    s.risk_class = classify_rseri(score);
    return s;
}

RiskVector vector_of(int mask) {
    RiskVector r;
    r.flood = (mask & 1) != 0;
    r.lst = (mask & 2) != 0;
    r.grid = (mask & 4) != 0;
    r.road = (mask & 8) != 0;
    r.vegetation = (mask & 16) != 0;
    return r;
}

// Shared state produced by criterion 1, reused by 2b and 10.
std::string match_out_dir;

} // namespace

int main() {
    testsupport::TempDir work("rseri-acceptance");

    // ---------------------------------------------------------------- 1
    criterion(1, "match fixture reproduces the published marginal table in under 10 s", [&] {
        const auto start = std::chrono::steady_clock::now();
        const auto fixture =
            generate_fixture({(work.path() / "match").string(), 1, 0, true});
        auto config = load_config_file(fixture.config_path);
        config.out_dir = (work.path() / "match-out").string();
        cmd_score(config);
        cmd_report(config);
        const double elapsed = seconds_since(start);
        match_out_dir = config.out_dir;

        const std::string expected =
            "label,high_count,low_count,high_pct\n"
            "Flood Risk,141,779,15.3\n"
            "LST Risk,667,253,72.5\n"
            "Grid Risk,17,903,1.8\n"
            "Road Risk,72,848,7.8\n"
            "Vegetation Risk,483,437,52.5\n"
            "At least 1 Risk,817,103,88.8\n";
        const std::string got = read_file(config.out_dir + "/risk_summary.csv");
        if (got != expected) {
            return std::string("risk_summary.csv differs from the published table:\n") + got;
        }
        if (elapsed >= 10.0) {
            return "runtime " + fmt(elapsed) + " s exceeds the 10 s budget";
        }
        return std::string();
    });

    // ---------------------------------------------------------------- 2
    criterion(2, "intersection counts bounded by marginals; percentages round half up", [&] {
        testsupport::Rng rng(0x2222);
        const auto combos = default_intersections();
        for (int trial = 0; trial < 10000; ++trial) {
            const std::size_t n = 1 + rng.next_index(40);
            std::vector<ChargerStation> stations;
            stations.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                std::array<int, 5> bits{};
                for (auto& b : bits) {
                    b = rng.next_double() < 0.4 ? 1 : 0;
                }
                const int ones = bits[0] + bits[1] + bits[2] + bits[3] + bits[4];
                stations.push_back(make_station("s" + std::to_string(i), bits, 0, 0,
                                                static_cast<double>(ones) / 5.0));
            }
            const auto marginals = risk_summary(stations);
            const auto inter = risk_intersections(stations, combos);

            std::map<std::string, std::size_t> marginal_by_factor;
            for (std::size_t i = 0; i < 5; ++i) {
                marginal_by_factor[kCompositeFactors[i]] = marginals.rows[i].high_count;
            }
            for (std::size_t c = 0; c < combos.size(); ++c) {
                std::size_t min_marginal = n;
                for (const auto& factor : combos[c]) {
                    min_marginal = std::min(min_marginal, marginal_by_factor[factor]);
                }
                if (inter.rows[c].high_count > min_marginal) {
                    return "combo '" + inter.rows[c].label + "' count " +
                           std::to_string(inter.rows[c].high_count) + " exceeds min marginal " +
                           std::to_string(min_marginal);
                }
            }
            // Round-half-up oracle, exact in integers:
            // p is correct iff 2000h >= n(2p-1) and 2000h < n(2p+1).
            for (const auto& row : marginals.rows) {
                const long long h = static_cast<long long>(row.high_count);
                const long long nn = static_cast<long long>(marginals.population);
                const long long p = row.pct_tenths;
                if (!(2000 * h >= nn * (2 * p - 1) && 2000 * h < nn * (2 * p + 1))) {
                    return "pct_tenths " + std::to_string(p) + " is not round-half-up of " +
                           std::to_string(h) + "/" + std::to_string(nn);
                }
            }
        }
        // The engineered fixture lands the Grid-and-Road cell on 8 -> 0.9%.
        const std::string inter_csv = read_file(match_out_dir + "/risk_intersections.csv");
        if (inter_csv.find("Grid ∩ Road,8,912,0.9\n") == std::string::npos) {
            return "match fixture Grid/Road intersection row missing or wrong:\n" + inter_csv;
        }
        return std::string();
    });

    // ---------------------------------------------------------------- 3
    criterion(3, "kd-tree kNN equals the brute-force oracle on 100 instances", [&] {
        const auto start = std::chrono::steady_clock::now();
        testsupport::Rng rng(0x3333);
        for (int instance = 0; instance < 100; ++instance) {
            const std::size_t n = 2 + rng.next_index(1999); // up to 2000 points
            std::vector<IndexedPoint> pts;
            pts.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                char id[32];
                std::snprintf(id, sizeof(id), "n%05zu", i);
                // Duplicate coordinates now and then to stress tie handling.
                if (i > 0 && rng.next_double() < 0.02) {
                    pts.push_back({id, pts[rng.next_index(i)].point});
                } else {
                    pts.push_back({id, {rng.uniform(0, 50000), rng.uniform(0, 50000)}});
                }
            }
            const SpatialIndex index(pts);
            for (const auto& p : pts) {
                const auto got = index.knn(p.point, 5, &p.id);
                const auto want = testsupport::brute_force_knn(pts, p.point, 5, &p.id);
                if (got.hits.size() != want.size()) {
                    return "hit count mismatch (n=" + std::to_string(n) + ")";
                }
                for (std::size_t i = 0; i < want.size(); ++i) {
                    if (got.hits[i].id != want[i].id ||
                        got.hits[i].distance_m != want[i].distance_m) {
                        return "rank " + std::to_string(i) + " mismatch at node " + p.id +
                               " (n=" + std::to_string(n) + "): got " + got.hits[i].id +
                               ", want " + want[i].id;
                    }
                }
            }
        }
        const double elapsed = seconds_since(start);
        if (elapsed >= 60.0) {
            return "runtime " + fmt(elapsed) + " s exceeds the 60 s budget";
        }
        return std::string();
    });

    // ---------------------------------------------------------------- 4
    criterion(4, "geometry kernels match winding-number and per-segment oracles", [&] {
        testsupport::Rng rng(0x4444);
        std::size_t polygon_checks = 0;
        while (polygon_checks < 10000) {
            const auto ring = testsupport::random_star_ring(rng, rng.uniform(-50, 50),
                                                            rng.uniform(-50, 50), 10, 40,
                                                            4 + rng.next_index(12));
            const Polygon poly{ring, {}};
            for (int q = 0; q < 8 && polygon_checks < 10000; ++q) {
                const ProjectedPoint probe{rng.uniform(-100, 100), rng.uniform(-100, 100)};
                if (point_to_ring_distance(probe, ring) < 1e-6) {
                    continue; // oracle and library may differ on the boundary itself
                }
                const bool lib = point_in_polygon(probe, poly);
                const bool oracle = testsupport::winding_number_inside(probe, ring);
                if (lib != oracle) {
                    return "containment mismatch at (" + fmt(probe.easting) + ", " +
                           fmt(probe.northing) + ")";
                }
                ++polygon_checks;
            }
        }

        for (int trial = 0; trial < 10000; ++trial) {
            const std::size_t verts = 2 + rng.next_index(10);
            Polyline line;
            for (std::size_t i = 0; i < verts; ++i) {
                line.vertices.push_back({rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)});
            }
            const ProjectedPoint probe{rng.uniform(-1500, 1500), rng.uniform(-1500, 1500)};
            double oracle = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i + 1 < verts; ++i) {
                oracle = std::min(
                    oracle, point_to_segment_distance(probe, line.vertices[i],
                                                      line.vertices[i + 1]));
            }
            const double got = point_to_polyline_distance(probe, line);
            const double rel = std::abs(got - oracle) / std::max(1.0, std::abs(oracle));
            if (rel > 1e-9) {
                return "polyline distance " + fmt(got) + " vs oracle " + fmt(oracle);
            }
        }
        return std::string();
    });

    // ---------------------------------------------------------------- 5
    criterion(5, "projection agrees with the committed geodesy oracle within 1 m", [&] {
        const std::string path = std::string(RSERI_TEST_DATA_DIR) + "/bng_oracle_points.csv";
        const auto table = parse_csv(read_file(path));
        if (table.rows.size() != 100) {
            return "expected 100 oracle points, found " + std::to_string(table.rows.size());
        }
        double worst = 0.0;
        for (const auto& row : table.rows) {
            const GeoPoint g{std::strtod(row[0].c_str(), nullptr),
                             std::strtod(row[1].c_str(), nullptr)};
            const ProjectedPoint want{std::strtod(row[2].c_str(), nullptr),
                                      std::strtod(row[3].c_str(), nullptr)};
            const ProjectedPoint got = project_wgs84_to_bng(g);
            worst = std::max(worst, std::hypot(got.easting - want.easting,
                                               got.northing - want.northing));
        }
        if (worst >= 1.0) {
            return "worst-case error " + fmt(worst) + " m breaches the 1 m bound";
        }
        return std::string();
    });

    // ---------------------------------------------------------------- 6
    criterion(6, "equal weights are the exact mean; flips are monotone for any weights", [&] {
        for (int mask = 0; mask < 32; ++mask) {
            const int ones = __builtin_popcount(static_cast<unsigned>(mask));
            const auto score = compute_rseri(vector_of(mask), equal_weights());
            if (score.value != static_cast<double>(ones) / 5.0) {
                return "equal-weight score for mask " + std::to_string(mask) +
                       " is not the exact mean";
            }
        }
        testsupport::Rng rng(0x6666);
        for (int scheme_trial = 0; scheme_trial < 100; ++scheme_trial) {
            std::array<double, 5> raw{};
            double sum = 0.0;
            for (auto& w : raw) {
                w = rng.next_double();
                sum += w;
            }
            for (auto& w : raw) {
                w /= sum;
            }
            const auto scheme = custom_weights(raw);
            for (int mask = 0; mask < 32; ++mask) {
                const double base = compute_rseri(vector_of(mask), scheme).value;
                for (int bit = 0; bit < 5; ++bit) {
                    if (mask & (1 << bit)) {
                        continue;
                    }
                    const double flipped =
                        compute_rseri(vector_of(mask | (1 << bit)), scheme).value;
                    if (flipped < base) {
                        return "0->1 flip of bit " + std::to_string(bit) +
                               " lowered the score for mask " + std::to_string(mask);
                    }
                }
            }
        }
        return std::string();
    });

    // ---------------------------------------------------------------- 7
    criterion(7, "PCA eigenpair residual < 1e-8; correlated pair splits weight evenly", [&] {
        testsupport::Rng rng(0x7777);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::array<double, 5>> rows(200);
            for (auto& row : rows) {
                for (auto& x : row) {
                    x = rng.next_double();
                }
            }
            const auto d = pca_detail(rows);
            double residual2 = 0.0;
            for (int i = 0; i < 5; ++i) {
                double cv = 0.0;
                for (int j = 0; j < 5; ++j) {
                    cv += d.covariance[i][j] * d.leading_vector[j];
                }
                const double diff = cv - d.leading_value * d.leading_vector[i];
                residual2 += diff * diff;
            }
            if (std::sqrt(residual2) >= 1e-8) {
                return "eigen residual " + fmt(std::sqrt(residual2)) + " too large";
            }
        }

        std::vector<std::array<double, 5>> correlated(120);
        for (auto& row : correlated) {
            const double v = rng.next_double();
            row = {v, v, 0.5, 0.5, 0.5};
        }
        const auto w = pca_weights(correlated);
        const std::array<double, 5> want{0.5, 0.5, 0.0, 0.0, 0.0};
        for (int i = 0; i < 5; ++i) {
            if (std::abs(w.weights[i] - want[i]) >= 1e-9) {
                return "weight " + std::to_string(i) + " = " + fmt(w.weights[i]) +
                       ", want " + fmt(want[i]);
            }
        }
        return std::string();
    });

    // ---------------------------------------------------------------- 8
    criterion(8, "hexbin conserves mass; KDE integrates to 1; correlations match phi", [&] {
        testsupport::Rng rng(0x8888);

        // Hexbin conservation on a random cloud.
        std::vector<ChargerStation> stations;
        double total_score = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const double score = rng.next_double();
            total_score += score;
            stations.push_back(make_station("h" + std::to_string(i), {0, 0, 0, 0, 0},
                                            rng.uniform(0, 200000), rng.uniform(0, 200000),
                                            score));
        }
        const auto cells = hexbin_aggregate(stations, 8000.0);
        std::size_t count = 0;
        double mass = 0.0;
        for (const auto& cell : cells) {
            count += cell.count;
            mass += cell.mean_score * static_cast<double>(cell.count);
        }
        if (count != stations.size()) {
            return "hexbin lost stations: " + std::to_string(count) + " of " +
                   std::to_string(stations.size());
        }
        if (std::abs(mass - total_score) / total_score > 1e-9) {
            return "hexbin score mass drifted by " + fmt(std::abs(mass - total_score));
        }

        // KDE normalization for interior samples.
        std::vector<double> scores(300);
        for (auto& s : scores) {
            s = rng.uniform(0.25, 0.75);
        }
        const auto dist = score_histogram_kde(scores, 10);
        if (dist.kde_skipped) {
            return std::string("KDE unexpectedly skipped");
        }
        double integral = 0.0;
        for (std::size_t i = 0; i + 1 < dist.kde_x.size(); ++i) {
            integral += 0.5 * (dist.kde_y[i] + dist.kde_y[i + 1]) *
                        (dist.kde_x[i + 1] - dist.kde_x[i]);
        }
        if (std::abs(integral - 1.0) > 0.01) {
            return "KDE integral " + fmt(integral) + " outside 1 +/- 0.01";
        }

        // Correlation matrix vs an independent contingency-table phi.
        std::vector<ChargerStation> binary;
        for (int i = 0; i < 500; ++i) {
            std::array<int, 5> bits{};
            const int hidden = rng.next_double() < 0.5 ? 1 : 0;
            for (int b = 0; b < 5; ++b) {
                bits[b] = rng.next_double() < 0.3 + 0.4 * hidden ? 1 : 0;
            }
            const int ones = bits[0] + bits[1] + bits[2] + bits[3] + bits[4];
            binary.push_back(make_station("b" + std::to_string(i), bits, 0, 0,
                                          static_cast<double>(ones) / 5.0));
        }
        const auto matrix = correlation_matrix(binary);
        for (int i = 0; i < 5; ++i) {
            if (!matrix.values[i][i] || *matrix.values[i][i] != 1.0) {
                return "diagonal entry " + std::to_string(i) + " is not exactly 1";
            }
            for (int j = 0; j < 5; ++j) {
                if (!matrix.values[i][j] || !matrix.values[j][i]) {
                    return std::string("unexpected missing correlation entry");
                }
                if (std::abs(*matrix.values[i][j] - *matrix.values[j][i]) > 1e-12) {
                    return "matrix is not symmetric at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")";
                }
                if (i == j) {
                    continue;
                }
                double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
                for (const auto& s : binary) {
                    const auto bits = s.risk.composite_bits();
                    if (bits[i] && bits[j]) {
                        ++n11;
                    } else if (bits[i]) {
                        ++n10;
                    } else if (bits[j]) {
                        ++n01;
                    } else {
                        ++n00;
                    }
                }
                const double phi = (n11 * n00 - n10 * n01) /
                                   std::sqrt((n11 + n10) * (n01 + n00) * (n11 + n01) *
                                             (n10 + n00));
                if (std::abs(*matrix.values[i][j] - phi) > 1e-12) {
                    return "phi mismatch at (" + std::to_string(i) + "," + std::to_string(j) +
                           "): " + fmt(*matrix.values[i][j]) + " vs " + fmt(phi);
                }
            }
        }
        return std::string();
    });

    // ---------------------------------------------------------------- 9
    criterion(9, "1-worker and 8-worker runs write byte-identical outputs", [&] {
        const auto fixture =
            generate_fixture({(work.path() / "det").string(), 42, 200, false});
        auto config = load_config_file(fixture.config_path);
        config.out_dir = (work.path() / "det-out").string();

        const auto snapshot = [&]() {
            std::map<std::string, std::string> bytes;
            for (const auto& entry : std::filesystem::directory_iterator(config.out_dir)) {
                bytes[entry.path().filename().string()] = read_file(entry.path().string());
            }
            return bytes;
        };

        config.threads = 1;
        cmd_score(config);
        cmd_report(config);
        const auto first = snapshot();

        config.threads = 8;
        cmd_score(config);
        cmd_report(config);
        const auto second = snapshot();

        if (first.size() != second.size() || first.size() < 17) {
            return "output sets differ in size (" + std::to_string(first.size()) + " vs " +
                   std::to_string(second.size()) + ")";
        }
        for (const auto& [name, bytes] : first) {
            const auto it = second.find(name);
            if (it == second.end()) {
                return name + " missing from the second run";
            }
            if (name == "manifest.json") {
                // Wall-clock timings are the one sanctioned difference.
                auto a = nlohmann::json::parse(bytes);
                auto b = nlohmann::json::parse(it->second);
                a.erase("timings");
                b.erase("timings");
                if (a != b) {
                    return std::string("manifest differs beyond timings across worker counts");
                }
            } else if (bytes != it->second) {
                return name + " differs across worker counts";
            }
        }
        return std::string();
    });

    // ---------------------------------------------------------------- 10
    criterion(10, "the all->=3-risk district scores mean >= 0.6 and ranks first", [&] {
        const auto table = parse_csv(read_file(match_out_dir + "/lad_rankings.csv"));
        if (table.rows.empty()) {
            return std::string("lad_rankings.csv has no rows");
        }
        const auto& top = table.rows.front();
        // rank, lad_id, lad_name, station_count, mean_rseri
        if (top[0] != "1") {
            return std::string("first row is not rank 1");
        }
        const double mean = std::strtod(top[4].c_str(), nullptr);
        if (!(mean >= 0.6)) {
            return "top district mean " + top[4] + " is below 0.6";
        }
        // The engineered flood+heat+vegetation district is the known winner.
        if (top[1] != "L01") {
            return "expected the L01 district on top, found " + top[1] + " (" + top[2] + ")";
        }
        return std::string();
    });

    if (failures == 0) {
        std::printf("all 10 acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", failures);
    }
    return failures;
}
