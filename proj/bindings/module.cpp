#include "rseri/analytics.hpp"
#include "rseri/config.hpp"
#include "rseri/errors.hpp"
#include "rseri/fixture.hpp"
#include "rseri/kdtree.hpp"
#include "rseri/pipeline.hpp"
#include "rseri/projection.hpp"
#include "rseri/raster_ops.hpp"
#include "rseri/risk.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;

namespace {

rseri::PipelineConfig load_config(const std::string& config_path,
                                  const std::optional<std::string>& out_dir,
                                  const std::optional<unsigned>& threads) {
    rseri::PipelineConfig config = rseri::load_config_file(config_path);
    if (out_dir) {
        config.out_dir = *out_dir;
    }
    if (threads) {
        config.threads = *threads;
    }
    return config;
}

py::dict weights_dict(const rseri::WeightScheme& scheme) {
    py::dict out;
    for (std::size_t i = 0; i < scheme.weights.size(); ++i) {
        out[rseri::kCompositeFactors[i]] = scheme.weights[i];
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spatial resilience scoring for EV charging networks";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const rseri::ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const rseri::ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const rseri::DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const rseri::Error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def(
        "to_bng",
        [](double lon, double lat) {
            const rseri::ProjectedPoint p =
                rseri::project_wgs84_to_bng(rseri::GeoPoint{lon, lat});
            return std::make_pair(p.easting, p.northing);
        },
        py::arg("lon"), py::arg("lat"),
        "Project WGS84 lon/lat (degrees) to British National Grid easting/northing (meters).");

    m.def(
        "to_wgs84",
        [](double easting, double northing) {
            const rseri::GeoPoint g =
                rseri::bng_to_wgs84(rseri::ProjectedPoint{easting, northing});
            return std::make_pair(g.lon, g.lat);
        },
        py::arg("easting"), py::arg("northing"),
        "Invert the British National Grid projection back to WGS84 lon/lat.");

    m.def(
        "percentile",
        [](std::vector<double> values, double p) { return rseri::percentile(std::move(values), p); },
        py::arg("values"), py::arg("p"),
        "Linear-interpolation percentile of a sample; p in [0, 1].");

    m.def(
        "rseri_score",
        [](bool flood, bool lst, bool grid, bool road, bool vegetation,
           const std::optional<std::array<double, 5>>& weights) {
            rseri::RiskVector risk;
            risk.flood = flood;
            risk.lst = lst;
            risk.grid = grid;
            risk.road = road;
            risk.vegetation = vegetation;
            const rseri::WeightScheme scheme =
                weights ? rseri::custom_weights(*weights) : rseri::equal_weights();
            const rseri::RseriScore score = rseri::compute_rseri(risk, scheme);
            py::dict out;
            out["value"] = score.value;
            out["level"] = rseri::to_string(score.level);
            return out;
        },
        py::arg("flood"), py::arg("lst"), py::arg("grid"), py::arg("road"), py::arg("vegetation"),
        py::arg("weights") = std::nullopt,
        "Composite RSERI score of one indicator vector (equal weights by default).");

    m.def(
        "knn",
        [](const std::vector<std::pair<std::string, std::pair<double, double>>>& points,
           std::size_t k) {
            std::vector<rseri::IndexedPoint> indexed;
            indexed.reserve(points.size());
            for (const auto& [id, xy] : points) {
                indexed.push_back(
                    rseri::IndexedPoint{id, rseri::ProjectedPoint{xy.first, xy.second}});
            }
            const rseri::SpatialIndex index(indexed);
            py::dict out;
            for (const auto& [id, xy] : points) {
                const rseri::KnnResult result =
                    index.knn(rseri::ProjectedPoint{xy.first, xy.second}, k, &id);
                py::list hits;
                for (const auto& hit : result.hits) {
                    hits.append(py::make_tuple(hit.id, hit.distance_m));
                }
                out[py::str(id)] = hits;
            }
            return out;
        },
        py::arg("points"), py::arg("k"),
        "Exact k-nearest-neighbors among labeled planar points; returns "
        "{id: [(neighbor_id, distance_m), ...]} excluding the point itself.");

    m.def(
        "validate",
        [](const std::string& config_path) {
            const rseri::ValidationReport report = rseri::cmd_validate(load_config(
                config_path, std::nullopt, std::nullopt));
            py::list issues;
            for (const auto& issue : report.issues) {
                py::dict entry;
                entry["error"] = issue.error;
                entry["message"] = issue.message;
                issues.append(entry);
            }
            py::dict out;
            out["ok"] = report.ok();
            out["issues"] = issues;
            return out;
        },
        py::arg("config"), "Validate every configured input; returns {ok, issues}.");

    m.def(
        "score",
        [](const std::string& config_path, const std::optional<std::string>& out_dir,
           const std::optional<unsigned>& threads) {
            const rseri::ScoreSummary summary =
                rseri::cmd_score(load_config(config_path, out_dir, threads));
            py::dict out;
            out["ingested"] = summary.ingested;
            out["active"] = summary.active;
            out["dropped_inactive"] = summary.dropped_inactive;
            out["dropped_unknown"] = summary.dropped_unknown;
            out["excluded"] = summary.excluded;
            out["scored"] = summary.scored;
            out["weights"] = weights_dict(summary.scheme);
            out["lst_threshold"] =
                summary.lst_threshold ? py::cast(*summary.lst_threshold) : py::none();
            out["graph_nodes"] = summary.graph_nodes;
            out["graph_edges"] = summary.graph_edges;
            out["warnings"] = summary.warnings;
            out["outputs"] = summary.output_digests;
            return out;
        },
        py::arg("config"), py::arg("out_dir") = std::nullopt, py::arg("threads") = std::nullopt,
        "Run the scoring pipeline; writes the scored dataset and manifest.");

    m.def(
        "report",
        [](const std::string& config_path, const std::optional<std::string>& out_dir) {
            const rseri::ReportSummary summary =
                rseri::cmd_report(load_config(config_path, out_dir, std::nullopt));
            py::dict out;
            out["scored"] = summary.scored;
            out["notes"] = summary.notes;
            out["outputs"] = summary.output_digests;
            return out;
        },
        py::arg("config"), py::arg("out_dir") = std::nullopt,
        "Build the report bundle from a previously scored dataset.");

    m.def(
        "make_fixture",
        [](const std::string& out_dir, std::uint64_t seed, std::size_t n, bool match) {
            rseri::FixtureOptions options;
            options.out_dir = out_dir;
            options.seed = seed;
            options.n = n;
            options.match_paper_marginals = match;
            const rseri::FixtureResult result = rseri::generate_fixture(options);
            py::dict out;
            out["files"] = result.files;
            out["config"] = result.config_path;
            return out;
        },
        py::arg("out_dir"), py::arg("seed") = 1, py::arg("n") = 200,
        py::arg("match_paper_marginals") = false,
        "Write a synthetic dataset plus a ready-to-run config.json.");
}
