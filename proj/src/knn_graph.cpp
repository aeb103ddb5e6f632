#include "rseri/knn_graph.hpp"

#include "rseri/csv.hpp"
#include "rseri/errors.hpp"
#include "rseri/format.hpp"
#include "rseri/parallel.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

namespace rseri {

std::size_t KnnGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& out : edges) {
        total += out.size();
    }
    return total;
}

const std::vector<KnnHit>& KnnGraph::neighbors(const std::string& id) const {
    const auto it = std::lower_bound(node_ids.begin(), node_ids.end(), id);
    if (it == node_ids.end() || *it != id) {
        throw DomainError("graph has no node '" + id + "'");
    }
    return edges[static_cast<std::size_t>(it - node_ids.begin())];
}

KnnGraph build_knn_graph(const std::vector<ChargerStation>& chargers, std::size_t k,
                         unsigned threads) {
    if (chargers.size() < 2) {
        throw DomainError("kNN graph requires at least 2 chargers, got " +
                          std::to_string(chargers.size()));
    }
    if (k < 1) {
        throw DomainError("kNN graph requires k >= 1");
    }

    std::vector<IndexedPoint> points;
    points.reserve(chargers.size());
    std::map<std::string, ProjectedPoint> by_id;
    for (const auto& charger : chargers) {
        points.push_back(IndexedPoint{charger.id, charger.projected});
        by_id[charger.id] = charger.projected;
    }
    const SpatialIndex index(std::move(points));

    KnnGraph graph;
    graph.k = k;
    graph.node_ids.reserve(by_id.size());
    for (const auto& [id, point] : by_id) {
        graph.node_ids.push_back(id);
    }
    graph.edges.resize(graph.node_ids.size());
    graph.truncated = k > graph.node_ids.size() - 1;

    parallel_for(graph.node_ids.size(), threads, [&](std::size_t i) {
        const std::string& id = graph.node_ids[i];
        KnnResult result = index.knn(by_id.at(id), k, &id);
        graph.edges[i] = std::move(result.hits);
    });
    return graph;
}

double nearest_feature_distance(const ProjectedPoint& q, const VectorLayer& layer) {
    if (layer.features.empty()) {
        throw DomainError("layer '" + layer.name + "' has no features");
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& feature : layer.features) {
        double d = 0.0;
        if (const auto* point = std::get_if<ProjectedPoint>(&feature.geometry)) {
            d = euclidean_distance(q, *point);
        } else if (const auto* line = std::get_if<Polyline>(&feature.geometry)) {
            d = point_to_polyline_distance(q, *line);
        } else {
            const auto& polygon = std::get<Polygon>(feature.geometry);
            d = point_in_polygon(q, polygon) ? 0.0 : point_to_ring_distance(q, polygon.exterior);
        }
        best = std::min(best, d);
    }
    return best;
}

std::map<std::string, double> neighborhood_mean(const KnnGraph& graph,
                                                const std::map<std::string, double>& values) {
    std::map<std::string, double> means;
    for (std::size_t i = 0; i < graph.node_ids.size(); ++i) {
        const auto& out = graph.edges[i];
        double sum = 0.0;
        for (const auto& hit : out) {
            const auto it = values.find(hit.id);
            if (it == values.end()) {
                throw DomainError("no value supplied for node '" + hit.id + "'");
            }
            sum += it->second;
        }
        means[graph.node_ids[i]] = sum / static_cast<double>(out.size());
    }
    return means;
}

namespace {

struct EdgeRow {
    std::string src;
    std::string dst;
    double distance = 0.0;
};

std::vector<EdgeRow> export_rows(const KnnGraph& graph, bool symmetrize) {
    std::vector<EdgeRow> rows;
    rows.reserve(graph.edge_count());
    if (!symmetrize) {
        for (std::size_t i = 0; i < graph.node_ids.size(); ++i) {
            for (const auto& hit : graph.edges[i]) {
                rows.push_back(EdgeRow{graph.node_ids[i], hit.id, hit.distance_m});
            }
        }
        return rows;
    }
    std::map<std::pair<std::string, std::string>, double> unique;
    for (std::size_t i = 0; i < graph.node_ids.size(); ++i) {
        for (const auto& hit : graph.edges[i]) {
            auto key = std::minmax(graph.node_ids[i], hit.id);
            unique.emplace(std::make_pair(key.first, key.second), hit.distance_m);
        }
    }
    for (const auto& [key, distance] : unique) {
        rows.push_back(EdgeRow{key.first, key.second, distance});
    }
    return rows;
}

} // namespace

std::string knn_graph_to_csv(const KnnGraph& graph, bool symmetrize) {
    std::string out = "src,dst,distance_m\n";
    for (const auto& row : export_rows(graph, symmetrize)) {
        out += csv_escape(row.src);
        out += ',';
        out += csv_escape(row.dst);
        out += ',';
        out += format_fixed(row.distance, 6);
        out += '\n';
    }
    return out;
}

VectorLayer knn_graph_to_layer(const KnnGraph& graph,
                               const std::map<std::string, ProjectedPoint>& coords,
                               bool symmetrize) {
    VectorLayer layer;
    layer.name = symmetrize ? "knn_edges_undirected" : "knn_edges";
    layer.geometry_kind = GeometryKind::Polyline;
    for (const auto& row : export_rows(graph, symmetrize)) {
        const auto src_it = coords.find(row.src);
        const auto dst_it = coords.find(row.dst);
        if (src_it == coords.end() || dst_it == coords.end()) {
            throw DomainError("missing coordinates for edge " + row.src + " -> " + row.dst);
        }
        Feature feature;
        feature.geometry = Polyline{{src_it->second, dst_it->second}};
        feature.properties["src"] = row.src;
        feature.properties["dst"] = row.dst;
        feature.properties["distance_m"] = row.distance;
        layer.features.push_back(std::move(feature));
    }
    return layer;
}

} // namespace rseri
