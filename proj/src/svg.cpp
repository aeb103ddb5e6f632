#include "rseri/svg.hpp"

#include "rseri/format.hpp"

#include <algorithm>
#include <cmath>

namespace rseri {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMargin = 40.0;

const char* kLowColor = "#2e7d32";      // green
const char* kModerateColor = "#f9a825"; // amber
const char* kHighColor = "#c62828";     // red

std::string num(double v) {
    return format_fixed(v, 2);
}

std::string svg_open() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

std::string text_at(double x, double y, const std::string& body, int size = 12,
                    const char* anchor = "start") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\"" +
           " font-size=\"" + std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + body +
           "</text>\n";
}

const char* class_color(double score, double low_max, double moderate_max) {
    if (score < low_max) {
        return kLowColor;
    }
    if (score < moderate_max) {
        return kModerateColor;
    }
    return kHighColor;
}

std::string class_legend(double y) {
    std::string out;
    const std::array<std::pair<const char*, const char*>, 3> entries = {
        std::make_pair(kLowColor, "Low"), std::make_pair(kModerateColor, "Moderate"),
        std::make_pair(kHighColor, "High")};
    double x = kMargin;
    for (const auto& [color, label] : entries) {
        out += "<rect x=\"" + num(x) + "\" y=\"" + num(y - 10) +
               "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
        out += text_at(x + 18, y, label);
        x += 110;
    }
    return out;
}

} // namespace

std::string render_hexbin_svg(const std::vector<HexCell>& cells, double cell_size_m,
                              double class_low_max, double class_moderate_max) {
    std::string svg = svg_open();
    svg += text_at(kMargin, 24, "Mean RSERI by hexagonal cell", 16);
    if (cells.empty()) {
        svg += text_at(kWidth / 2, kHeight / 2, "no scored chargers", 14, "middle");
        svg += "</svg>\n";
        return svg;
    }

    double min_x = cells.front().center.easting;
    double max_x = min_x;
    double min_y = cells.front().center.northing;
    double max_y = min_y;
    for (const auto& cell : cells) {
        min_x = std::min(min_x, cell.center.easting);
        max_x = std::max(max_x, cell.center.easting);
        min_y = std::min(min_y, cell.center.northing);
        max_y = std::max(max_y, cell.center.northing);
    }
    min_x -= cell_size_m;
    max_x += cell_size_m;
    min_y -= cell_size_m;
    max_y += cell_size_m;

    // Uniform scale, north up.
    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 3 * kMargin;
    const double scale = std::min(plot_w / (max_x - min_x), plot_h / (max_y - min_y));
    const auto to_px_x = [&](double x) { return kMargin + (x - min_x) * scale; };
    const auto to_px_y = [&](double y) { return kMargin + 20 + (max_y - y) * scale; };

    for (const auto& cell : cells) {
        const Ring ring = hexagon_ring(cell, cell_size_m);
        std::string points;
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            if (!points.empty()) {
                points += ' ';
            }
            points += num(to_px_x(ring[i].easting)) + "," + num(to_px_y(ring[i].northing));
        }
        svg += "<polygon points=\"" + points + "\" fill=\"" +
               class_color(cell.mean_score, class_low_max, class_moderate_max) +
               "\" fill-opacity=\"0.8\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }
    svg += class_legend(kHeight - 14);
    svg += "</svg>\n";
    return svg;
}

std::string render_risk_count_svg(const std::array<std::size_t, 6>& bins) {
    std::string svg = svg_open();
    svg += text_at(kMargin, 24, "Chargers by number of concurrent risk factors", 16);

    const std::size_t max_count = std::max<std::size_t>(
        1, *std::max_element(bins.begin(), bins.end()));
    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 4 * kMargin;
    const double base_y = kMargin + 20 + plot_h;
    const double slot = plot_w / static_cast<double>(bins.size());
    const double bar_w = slot * 0.7;

    for (std::size_t i = 0; i < bins.size(); ++i) {
        const double h = plot_h * static_cast<double>(bins[i]) / static_cast<double>(max_count);
        const double x = kMargin + static_cast<double>(i) * slot + (slot - bar_w) / 2;
        svg += "<rect x=\"" + num(x) + "\" y=\"" + num(base_y - h) + "\" width=\"" + num(bar_w) +
               "\" height=\"" + num(h) + "\" fill=\"#1565c0\"/>\n";
        svg += text_at(x + bar_w / 2, base_y - h - 6, std::to_string(bins[i]), 12, "middle");
        svg += text_at(x + bar_w / 2, base_y + 18, std::to_string(i), 12, "middle");
    }
    svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(base_y) + "\" x2=\"" +
           num(kWidth - kMargin) + "\" y2=\"" + num(base_y) +
           "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += text_at(kWidth / 2, base_y + 38, "concurrent risk factors", 12, "middle");
    svg += "</svg>\n";
    return svg;
}

std::string render_score_distribution_svg(const ScoreDistribution& dist) {
    std::string svg = svg_open();
    svg += text_at(kMargin, 24, "RSERI score distribution", 16);

    std::size_t n = 0;
    std::size_t max_count = 1;
    for (const auto& bin : dist.histogram) {
        n += bin.count;
        max_count = std::max(max_count, bin.count);
    }
    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 4 * kMargin;
    const double base_y = kMargin + 20 + plot_h;
    const auto to_px_x = [&](double score) { return kMargin + score * plot_w; };

    for (const auto& bin : dist.histogram) {
        const double h = plot_h * static_cast<double>(bin.count) /
                         static_cast<double>(max_count);
        svg += "<rect x=\"" + num(to_px_x(bin.lo)) + "\" y=\"" + num(base_y - h) +
               "\" width=\"" + num((bin.hi - bin.lo) * plot_w) + "\" height=\"" + num(h) +
               "\" fill=\"#90a4ae\" stroke=\"#607d8b\" stroke-width=\"1\"/>\n";
    }

    // Class boundaries.
    for (const double boundary : {dist.class_low_max, dist.class_moderate_max}) {
        const double x = to_px_x(boundary);
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kMargin + 20) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(base_y) +
               "\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
        svg += text_at(x, kMargin + 14, format_fixed(boundary, 3), 11, "middle");
    }

    if (!dist.kde_skipped && !dist.kde_x.empty()) {
        // Scale density to expected bin counts so the curve shares the axis.
        const double bin_width = dist.histogram.empty() ? 1.0
                                                        : dist.histogram.front().hi -
                                                              dist.histogram.front().lo;
        std::string points;
        for (std::size_t i = 0; i < dist.kde_x.size(); ++i) {
            const double count_scale =
                dist.kde_y[i] * static_cast<double>(n) * bin_width;
            const double y = base_y - plot_h * count_scale / static_cast<double>(max_count);
            if (!points.empty()) {
                points += ' ';
            }
            points += num(to_px_x(dist.kde_x[i])) + "," + num(y);
        }
        svg += "<polyline points=\"" + points +
               "\" fill=\"none\" stroke=\"#c62828\" stroke-width=\"2\"/>\n";
    } else if (!dist.kde_note.empty()) {
        svg += text_at(kWidth - kMargin, 24, dist.kde_note, 11, "end");
    }

    for (const double tick : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
        svg += text_at(to_px_x(tick), base_y + 18, format_fixed(tick, 1), 11, "middle");
    }
    svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(base_y) + "\" x2=\"" +
           num(kWidth - kMargin) + "\" y2=\"" + num(base_y) +
           "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += text_at(kWidth / 2, base_y + 38, "RSERI score", 12, "middle");
    svg += "</svg>\n";
    return svg;
}

} // namespace rseri
