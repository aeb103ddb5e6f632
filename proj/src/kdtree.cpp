#include "rseri/kdtree.hpp"

#include "rseri/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rseri {

namespace {

double coordinate(const ProjectedPoint& p, int axis) {
    return axis == 0 ? p.easting : p.northing;
}

struct Candidate {
    double d2 = 0.0;
    const std::string* id = nullptr;

    /// Strict-weak order with the worst candidate first: greater squared
    /// distance, then greater id, so the heap top is always the entry a
    /// better find should evict.
    bool operator<(const Candidate& other) const {
        if (d2 != other.d2) {
            return d2 < other.d2;
        }
        return *id < *other.id;
    }
};

} // namespace

SpatialIndex::SpatialIndex(std::vector<IndexedPoint> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw DomainError("cannot build a spatial index over zero points");
    }
    for (const auto& entry : points_) {
        if (!std::isfinite(entry.point.easting) || !std::isfinite(entry.point.northing)) {
            throw DomainError("non-finite coordinate for point '" + entry.id + "'");
        }
    }
    std::vector<std::size_t> order(points_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    nodes_.reserve(points_.size());
    root_ = build(order, 0, points_.size(), 0);
}

std::ptrdiff_t SpatialIndex::build(std::vector<std::size_t>& order, std::size_t begin,
                                   std::size_t end, int depth) {
    if (begin >= end) {
        return -1;
    }
    const int axis = depth % 2;
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order.begin() + static_cast<std::ptrdiff_t>(begin),
                     order.begin() + static_cast<std::ptrdiff_t>(mid),
                     order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                         return coordinate(points_[a].point, axis) <
                                coordinate(points_[b].point, axis);
                     });
    const std::size_t node_index = nodes_.size();
    nodes_.push_back(Node{order[mid], -1, -1, axis});
    const std::ptrdiff_t left = build(order, begin, mid, depth + 1);
    const std::ptrdiff_t right = build(order, mid + 1, end, depth + 1);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return static_cast<std::ptrdiff_t>(node_index);
}

KnnResult SpatialIndex::knn(const ProjectedPoint& q, std::size_t k,
                            const std::string* exclude) const {
    if (k < 1) {
        throw DomainError("knn query requires k >= 1");
    }

    // Bounded best-set kept as a max-heap on (squared distance, id); pruning
    // must be non-strict so equal-distance points still get compared by id.
    std::vector<Candidate> heap;
    heap.reserve(k + 1);

    auto worst_d2 = [&]() { return heap.front().d2; };

    auto offer = [&](std::size_t point_index) {
        const IndexedPoint& entry = points_[point_index];
        if (exclude != nullptr && entry.id == *exclude) {
            return;
        }
        Candidate candidate{squared_distance(q, entry.point), &entry.id};
        if (heap.size() < k) {
            heap.push_back(candidate);
            std::push_heap(heap.begin(), heap.end());
        } else if (candidate < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = candidate;
            std::push_heap(heap.begin(), heap.end());
        }
    };

    auto visit = [&](auto&& self, std::ptrdiff_t node_index) -> void {
        if (node_index < 0) {
            return;
        }
        const Node& node = nodes_[static_cast<std::size_t>(node_index)];
        offer(node.point);
        const double split = coordinate(points_[node.point].point, node.axis);
        const double delta = coordinate(q, node.axis) - split;
        const std::ptrdiff_t near = delta < 0 ? node.left : node.right;
        const std::ptrdiff_t far = delta < 0 ? node.right : node.left;
        self(self, near);
        if (heap.size() < k || delta * delta <= worst_d2()) {
            self(self, far);
        }
    };
    visit(visit, root_);

    std::sort_heap(heap.begin(), heap.end()); // ascending (d2, id)
    KnnResult result;
    result.truncated = heap.size() < k;
    result.hits.reserve(heap.size());
    for (const auto& candidate : heap) {
        result.hits.push_back(KnnHit{*candidate.id, std::sqrt(candidate.d2)});
    }
    return result;
}

} // namespace rseri
