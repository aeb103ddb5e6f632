#pragma once

#include "rseri/chargers.hpp"
#include "rseri/feature.hpp"
#include "rseri/kdtree.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace rseri {

/// Directed k-nearest-neighbor graph over charger locations. Nodes are kept
/// in lexicographic id order so every traversal and export is canonical
/// regardless of input order or thread count.
struct KnnGraph {
    std::size_t k = 5;
    std::vector<std::string> node_ids;      // sorted lexicographically
    std::vector<std::vector<KnnHit>> edges; // parallel to node_ids; each ascending (distance, id)
    bool truncated = false;                 // k exceeded n-1 for every node

    std::size_t edge_count() const;
    /// Out-neighbors of one node; throws DomainError for unknown ids.
    const std::vector<KnnHit>& neighbors(const std::string& id) const;
};

/// Build the directed kNN graph (no symmetrization; exports can symmetrize).
/// Requires at least two chargers.
KnnGraph build_knn_graph(const std::vector<ChargerStation>& chargers, std::size_t k = 5,
                         unsigned threads = 1);

/// Minimum Euclidean distance from q to any feature of the layer: points by
/// point distance, polylines by segment distance, polygons zero when q is
/// inside and exterior-ring distance otherwise. Throws on an empty layer.
double nearest_feature_distance(const ProjectedPoint& q, const VectorLayer& layer);

/// Per-node arithmetic mean of the out-neighbors' values. Every referenced
/// id must have a value.
std::map<std::string, double> neighborhood_mean(const KnnGraph& graph,
                                                const std::map<std::string, double>& values);

/// Edge list as CSV `src,dst,distance_m` (distances fixed at 6 decimals).
/// With symmetrize=true the directed edges collapse into unique undirected
/// pairs ordered (src < dst).
std::string knn_graph_to_csv(const KnnGraph& graph, bool symmetrize = false);

/// Edge list as a LineString layer for mapping; coords supplies the node
/// locations by id.
VectorLayer knn_graph_to_layer(const KnnGraph& graph,
                               const std::map<std::string, ProjectedPoint>& coords,
                               bool symmetrize = false);

} // namespace rseri
