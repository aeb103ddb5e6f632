#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rseri {

/// Regular raster grid, ESRI ASCII layout: row 0 is the northernmost row,
/// values stored row-major.
struct RasterGrid {
    std::size_t ncols = 0;
    std::size_t nrows = 0;
    double xllcorner = 0.0;
    double yllcorner = 0.0;
    double cellsize = 0.0;
    double nodata = -9999.0;
    std::vector<double> values;

    double at(std::size_t row, std::size_t col) const { return values[row * ncols + col]; }
    double x_max() const { return xllcorner + cellsize * static_cast<double>(ncols); }
    double y_max() const { return yllcorner + cellsize * static_cast<double>(nrows); }
    bool all_nodata() const;
};

/// Parse an ESRI ASCII grid. Header keys (case-insensitive): ncols, nrows,
/// xllcorner, yllcorner, cellsize, and optional NODATA_value (default -9999).
/// Throws ParseError on missing keys, bad tokens or value count mismatch.
RasterGrid parse_ascii_grid(std::string_view text);

std::string write_ascii_grid(const RasterGrid& grid);

} // namespace rseri
