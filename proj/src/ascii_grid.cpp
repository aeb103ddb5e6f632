#include "rseri/ascii_grid.hpp"

#include "rseri/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

namespace rseri {

bool RasterGrid::all_nodata() const {
    return std::all_of(values.begin(), values.end(), [&](double v) { return v == nodata; });
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

struct Tokenizer {
    std::string_view text;
    std::size_t pos = 0;

    std::string_view next() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        const std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        return text.substr(start, pos - start);
    }
};

double parse_number(std::string_view token, const std::string& context) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(context + ": non-numeric token '" + std::string(token) + "'");
    }
    return value;
}

} // namespace

RasterGrid parse_ascii_grid(std::string_view text) {
    Tokenizer tok{text};
    std::map<std::string, double> header;

    // Header lines come first: alternating key / numeric value tokens.
    std::string_view t = tok.next();
    while (!t.empty() && !std::isdigit(static_cast<unsigned char>(t[0])) && t[0] != '-' &&
           t[0] != '+' && t[0] != '.') {
        const std::string key = lower(t);
        const std::string_view value_tok = tok.next();
        if (value_tok.empty()) {
            throw ParseError("ASCII grid header key '" + key + "' without a value");
        }
        header[key] = parse_number(value_tok, "header '" + key + "'");
        t = tok.next();
    }

    auto require = [&](const char* key) {
        const auto it = header.find(key);
        if (it == header.end()) {
            throw ParseError(std::string("ASCII grid missing header key '") + key + "'");
        }
        return it->second;
    };

    RasterGrid grid;
    const double ncols = require("ncols");
    const double nrows = require("nrows");
    if (ncols < 1 || nrows < 1 || ncols != std::floor(ncols) || nrows != std::floor(nrows)) {
        throw ParseError("ASCII grid ncols/nrows must be positive integers");
    }
    grid.ncols = static_cast<std::size_t>(ncols);
    grid.nrows = static_cast<std::size_t>(nrows);
    grid.xllcorner = require("xllcorner");
    grid.yllcorner = require("yllcorner");
    grid.cellsize = require("cellsize");
    if (!(grid.cellsize > 0.0)) {
        throw ParseError("ASCII grid cellsize must be > 0");
    }
    if (const auto it = header.find("nodata_value"); it != header.end()) {
        grid.nodata = it->second;
    }

    const std::size_t expected = grid.ncols * grid.nrows;
    grid.values.reserve(expected);
    while (!t.empty()) {
        if (grid.values.size() == expected) {
            throw ParseError("ASCII grid has more than ncols*nrows = " + std::to_string(expected) +
                             " values");
        }
        grid.values.push_back(parse_number(t, "grid value " + std::to_string(grid.values.size())));
        t = tok.next();
    }
    if (grid.values.size() != expected) {
        throw ParseError("ASCII grid declares " + std::to_string(expected) + " values but has " +
                         std::to_string(grid.values.size()));
    }
    return grid;
}

std::string write_ascii_grid(const RasterGrid& grid) {
    std::string out;
    out.reserve(grid.values.size() * 8 + 128);
    char buf[64];

    auto append_num = [&](double v) {
        if (v == std::floor(v) && std::abs(v) < 1e15) {
            std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
        } else {
            std::snprintf(buf, sizeof buf, "%.10g", v);
        }
        out += buf;
    };

    out += "ncols " + std::to_string(grid.ncols) + "\n";
    out += "nrows " + std::to_string(grid.nrows) + "\n";
    out += "xllcorner ";
    append_num(grid.xllcorner);
    out += "\nyllcorner ";
    append_num(grid.yllcorner);
    out += "\ncellsize ";
    append_num(grid.cellsize);
    out += "\nNODATA_value ";
    append_num(grid.nodata);
    out += "\n";
    for (std::size_t r = 0; r < grid.nrows; ++r) {
        for (std::size_t c = 0; c < grid.ncols; ++c) {
            if (c > 0) {
                out.push_back(' ');
            }
            append_num(grid.at(r, c));
        }
        out.push_back('\n');
    }
    return out;
}

} // namespace rseri
