#include "rseri/raster_ops.hpp"

#include "rseri/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>

namespace rseri {

std::optional<double> sample_raster(const RasterGrid& grid, const ProjectedPoint& q) {
    const double fcol = std::floor((q.easting - grid.xllcorner) / grid.cellsize);
    const double frow = std::floor((grid.y_max() - q.northing) / grid.cellsize);
    if (fcol < 0 || fcol >= static_cast<double>(grid.ncols) || frow < 0 ||
        frow >= static_cast<double>(grid.nrows)) {
        return std::nullopt;
    }
    const double value =
        grid.at(static_cast<std::size_t>(frow), static_cast<std::size_t>(fcol));
    if (value == grid.nodata) {
        return std::nullopt;
    }
    return value;
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) {
        throw DomainError("percentile of an empty sample");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("percentile fraction must lie in [0,1]");
    }
    std::sort(values.begin(), values.end());
    const double rank = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const double frac = rank - static_cast<double>(lo);
    if (frac == 0.0 || lo + 1 >= values.size()) {
        return values[lo];
    }
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

RiskLevel classify_ndvi(double v, double low, double high) {
    if (!(v >= -1.0 && v <= 1.0)) {
        throw DomainError("NDVI value " + std::to_string(v) + " outside [-1,1]");
    }
    if (v < low) {
        return RiskLevel::Low;
    }
    if (v < high) {
        return RiskLevel::Moderate;
    }
    return RiskLevel::High;
}

namespace {

std::optional<LulcCategory> category_from_name(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "urban") return LulcCategory::Urban;
    if (name == "vegetation") return LulcCategory::Vegetation;
    if (name == "coastal") return LulcCategory::Coastal;
    if (name == "water") return LulcCategory::Water;
    if (name == "other") return LulcCategory::Other;
    return std::nullopt;
}

} // namespace

LulcLegend parse_lulc_legend(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("legend is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("legend must be a JSON object mapping codes to categories");
    }
    LulcLegend legend;
    for (const auto& [key, value] : doc.items()) {
        int code = 0;
        try {
            std::size_t used = 0;
            code = std::stoi(key, &used);
            if (used != key.size()) {
                throw std::invalid_argument(key);
            }
        } catch (const std::exception&) {
            throw ParseError("legend code '" + key + "' is not an integer");
        }
        if (!value.is_string()) {
            throw ParseError("legend entry for code " + key + " must be a category name");
        }
        const auto category = category_from_name(value.get<std::string>());
        if (!category) {
            throw ParseError("unknown land-cover category '" + value.get<std::string>() +
                             "' for code " + key);
        }
        legend[code] = *category;
    }
    return legend;
}

LulcCategory classify_lulc(int code, const LulcLegend& legend,
                           std::vector<std::string>* warnings) {
    auto it = legend.find(code);
    if (it != legend.end()) {
        return it->second;
    }
    if (warnings != nullptr) {
        warnings->push_back("land-cover code " + std::to_string(code) +
                            " not in legend; treated as other");
    }
    return LulcCategory::Other;
}

LstComposite lst_composite(const std::vector<std::optional<double>>& samples) {
    std::vector<double> present;
    present.reserve(samples.size());
    for (const auto& s : samples) {
        if (s) {
            present.push_back(*s);
        }
    }
    LstComposite out;
    if (present.empty()) {
        return out;
    }
    out.max = *std::max_element(present.begin(), present.end());
    out.median = percentile(present, 0.5);
    return out;
}

} // namespace rseri
