#include "rseri/config.hpp"
#include "rseri/errors.hpp"
#include "rseri/fixture.hpp"
#include "rseri/format.hpp"
#include "rseri/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

namespace {

/// Output directory precedence: --out flag, then RSERI_OUT_DIR, then the
/// value already present (config file or built-in default).
std::string effective_out_dir(const std::optional<std::string>& flag,
                              const std::string& fallback) {
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("RSERI_OUT_DIR"); env != nullptr && env[0] != '\0') {
        return env;
    }
    return fallback;
}

rseri::PipelineConfig load_config(const std::string& config_path,
                                  const std::optional<std::string>& out_flag,
                                  const std::optional<unsigned>& threads_flag) {
    rseri::PipelineConfig config = rseri::load_config_file(config_path);
    config.out_dir = effective_out_dir(out_flag, config.out_dir);
    if (threads_flag) {
        if (*threads_flag < 1) {
            throw rseri::ConfigError("--threads must be at least 1");
        }
        config.threads = *threads_flag;
    }
    return config;
}

int run_validate(const std::string& config_path, const std::optional<unsigned>& threads_flag) {
    const rseri::PipelineConfig config = load_config(config_path, std::nullopt, threads_flag);
    const rseri::ValidationReport report = rseri::cmd_validate(config);
    std::fputs(report.to_text().c_str(), stdout);
    return report.ok() ? 0 : 1;
}

int run_score(const std::string& config_path, const std::optional<std::string>& out_flag,
              const std::optional<unsigned>& threads_flag) {
    const rseri::PipelineConfig config = load_config(config_path, out_flag, threads_flag);
    const rseri::ScoreSummary summary = rseri::cmd_score(config);
    for (const auto& warning : summary.warnings) {
        std::fprintf(stderr, "warning: %s\n", warning.c_str());
    }
    std::printf("ingested %zu stations (%zu inactive and %zu unknown-status dropped)\n",
                summary.ingested, summary.dropped_inactive, summary.dropped_unknown);
    std::printf("scored %zu of %zu active stations (%zu excluded)\n", summary.scored,
                summary.active, summary.excluded);
    if (summary.lst_threshold) {
        std::printf("lst threshold: %s degC\n",
                    rseri::format_fixed(*summary.lst_threshold, 4).c_str());
    }
    std::printf("graph: %zu nodes, %zu directed edges (k=%zu)\n", summary.graph_nodes,
                summary.graph_edges, config.graph.k);
    std::printf("weights:");
    for (std::size_t i = 0; i < summary.scheme.weights.size(); ++i) {
        std::printf(" %s=%s", rseri::kCompositeFactors[i],
                    rseri::format_fixed(summary.scheme.weights[i], 4).c_str());
    }
    std::printf("\nwrote %zu files to %s\n", summary.output_digests.size(),
                config.out_dir.c_str());
    return 0;
}

int run_report(const std::string& config_path, const std::optional<std::string>& out_flag,
               const std::optional<unsigned>& threads_flag) {
    const rseri::PipelineConfig config = load_config(config_path, out_flag, threads_flag);
    const rseri::ReportSummary summary = rseri::cmd_report(config);
    for (const auto& note : summary.notes) {
        std::fprintf(stderr, "note: %s\n", note.c_str());
    }
    std::printf("report covers %zu scored stations\n", summary.scored);
    std::printf("wrote %zu files to %s\n", summary.output_digests.size(), config.out_dir.c_str());
    return 0;
}

int run_fixture(const std::optional<std::string>& out_flag, std::uint64_t seed, std::size_t n,
                bool match) {
    rseri::FixtureOptions options;
    options.out_dir = effective_out_dir(out_flag, "fixture");
    options.seed = seed;
    options.n = n;
    options.match_paper_marginals = match;
    const rseri::FixtureResult result = rseri::generate_fixture(options);
    std::printf("wrote %zu files to %s\n", result.files.size(), options.out_dir.c_str());
    std::printf("run: rseri score --config %s\n", result.config_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rseri: spatial resilience scoring for EV charging networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_flag;
    std::optional<unsigned> threads_flag;
    std::uint64_t seed = 1;
    std::size_t n = 200;
    bool match = false;

    CLI::App* validate = app.add_subcommand("validate", "Parse and cross-check every input");
    validate->add_option("--config", config_path, "Pipeline config file")->required();
    validate->add_option("--threads", threads_flag, "Worker threads");

    CLI::App* score = app.add_subcommand("score", "Score chargers and write the dataset");
    score->add_option("--config", config_path, "Pipeline config file")->required();
    score->add_option("--out", out_flag, "Output directory (overrides config and RSERI_OUT_DIR)");
    score->add_option("--threads", threads_flag, "Worker threads");

    CLI::App* report = app.add_subcommand("report", "Build tables, maps and charts");
    report->add_option("--config", config_path, "Pipeline config file")->required();
    report->add_option("--out", out_flag, "Output directory (overrides config and RSERI_OUT_DIR)");
    report->add_option("--threads", threads_flag, "Worker threads");

    CLI::App* fixture = app.add_subcommand("fixture", "Generate a synthetic dataset");
    fixture->add_option("--out", out_flag, "Dataset directory (default: fixture)");
    fixture->add_option("--seed", seed, "Random seed");
    fixture->add_option("--n", n, "Number of charger rows (>= 2)");
    fixture->add_flag("--match-paper-marginals", match,
                      "Engineered 920-station dataset reproducing the published risk table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e); // usage errors: CLI11 prints and picks the code
    }

    try {
        if (validate->parsed()) {
            return run_validate(config_path, threads_flag);
        }
        if (score->parsed()) {
            return run_score(config_path, out_flag, threads_flag);
        }
        if (report->parsed()) {
            return run_report(config_path, out_flag, threads_flag);
        }
        return run_fixture(out_flag, seed, n, match);
    } catch (const rseri::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const rseri::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const rseri::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
