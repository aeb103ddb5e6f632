#pragma once

// Shared helpers for the test suite: a bit-stable RNG, a scoped temp
// directory, and independent oracles (winding-number containment,
// brute-force kNN) that the library implementations are checked against.

#include "rseri/geometry.hpp"
#include "rseri/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace testsupport {

/// splitmix64, same construction as the fixture generator: seedable and
/// identical on every platform, unlike <random> distributions.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    std::size_t next_index(std::size_t bound) {
        return static_cast<std::size_t>(next_double() * static_cast<double>(bound));
    }
};

/// Unique directory under the system temp root, removed on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        for (int attempt = 0;; ++attempt) {
            auto candidate = base / (tag + "-" + std::to_string(::getpid()) + "-" +
                                     std::to_string(counter_++) + "-" + std::to_string(attempt));
            std::error_code ec;
            if (std::filesystem::create_directories(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str() const { return path_.string(); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

/// Winding-number containment oracle over one ring (boundary excluded by
/// construction; callers avoid boundary points). Independent of the
/// library's even-odd crossing implementation.
inline bool winding_number_inside(const rseri::ProjectedPoint& q,
                                  const std::vector<rseri::ProjectedPoint>& ring) {
    int winding = 0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& a = ring[i];
        const auto& b = ring[i + 1];
        const double cross = (b.easting - a.easting) * (q.northing - a.northing) -
                             (q.easting - a.easting) * (b.northing - a.northing);
        if (a.northing <= q.northing) {
            if (b.northing > q.northing && cross > 0) {
                ++winding;
            }
        } else {
            if (b.northing <= q.northing && cross < 0) {
                --winding;
            }
        }
    }
    return winding != 0;
}

/// Brute-force exact kNN with the library's documented tie-break:
/// ascending (squared distance, id), optional excluded id.
inline std::vector<rseri::KnnHit> brute_force_knn(const std::vector<rseri::IndexedPoint>& points,
                                                  const rseri::ProjectedPoint& q, std::size_t k,
                                                  const std::string* exclude = nullptr) {
    struct Entry {
        double d2;
        const rseri::IndexedPoint* p;
    };
    std::vector<Entry> entries;
    entries.reserve(points.size());
    for (const auto& p : points) {
        if (exclude != nullptr && p.id == *exclude) {
            continue;
        }
        entries.push_back({rseri::squared_distance(q, p.point), &p});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.d2 != b.d2) {
            return a.d2 < b.d2;
        }
        return a.p->id < b.p->id;
    });
    if (entries.size() > k) {
        entries.resize(k);
    }
    std::vector<rseri::KnnHit> hits;
    hits.reserve(entries.size());
    for (const auto& e : entries) {
        hits.push_back({e.p->id, std::sqrt(e.d2)});
    }
    return hits;
}

/// A random simple-ish polygon: vertices on a jittered circle, radially
/// sorted so the ring never self-intersects.
inline std::vector<rseri::ProjectedPoint> random_star_ring(Rng& rng, double cx, double cy,
                                                           double r_lo, double r_hi,
                                                           std::size_t vertices) {
    std::vector<double> angles(vertices);
    for (auto& a : angles) {
        a = rng.uniform(0.0, 2.0 * 3.141592653589793);
    }
    std::sort(angles.begin(), angles.end());
    // Collapse near-duplicate angles to keep consecutive vertices distinct.
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-4; }),
                 angles.end());
    while (angles.size() < 3) {
        angles.push_back(angles.back() + 0.5);
    }
    std::vector<rseri::ProjectedPoint> ring;
    ring.reserve(angles.size() + 1);
    for (double a : angles) {
        const double r = rng.uniform(r_lo, r_hi);
        ring.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
    }
    ring.push_back(ring.front());
    return ring;
}

} // namespace testsupport
