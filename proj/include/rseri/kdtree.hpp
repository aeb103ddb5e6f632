#pragma once

#include "rseri/geometry.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace rseri {

struct IndexedPoint {
    std::string id;
    ProjectedPoint point;
};

struct KnnHit {
    std::string id;
    double distance_m = 0.0;
};

struct KnnResult {
    std::vector<KnnHit> hits; // ascending by (distance, id)
    bool truncated = false;   // fewer than k candidates were available
};

/// Balanced 2-d tree over projected points. Queries are exact: results always
/// match a brute-force scan, with distance ties broken by lexicographic id.
class SpatialIndex {
  public:
    /// Throws DomainError on empty input or non-finite coordinates.
    explicit SpatialIndex(std::vector<IndexedPoint> points);

    std::size_t size() const { return points_.size(); }

    /// The k nearest points to q, optionally skipping one id (the query
    /// point itself when querying from a member). k must be >= 1; when fewer
    /// candidates exist the result is truncated and flagged.
    KnnResult knn(const ProjectedPoint& q, std::size_t k,
                  const std::string* exclude = nullptr) const;

  private:
    struct Node {
        std::size_t point = 0;
        std::ptrdiff_t left = -1;
        std::ptrdiff_t right = -1;
        int axis = 0;
    };

    std::ptrdiff_t build(std::vector<std::size_t>& order, std::size_t begin, std::size_t end,
                         int depth);

    std::vector<IndexedPoint> points_;
    std::vector<Node> nodes_;
    std::ptrdiff_t root_ = -1;
};

} // namespace rseri
