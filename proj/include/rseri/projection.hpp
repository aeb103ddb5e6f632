#pragma once

#include "rseri/geometry.hpp"

namespace rseri {

struct Ellipsoid {
    double a; // semi-major axis, meters
    double b; // semi-minor axis, meters

    double e2() const { return (a * a - b * b) / (a * a); }
};

// ETRS89/WGS84 side of the datum transform (GRS80 dimensions).
inline constexpr Ellipsoid kGrs80{6378137.0, 6356752.314140356};
// OSGB36 side (Airy 1830).
inline constexpr Ellipsoid kAiry1830{6377563.396, 6356256.909};

/// 7-parameter similarity transform, position-vector convention.
struct HelmertParams {
    double tx, ty, tz;                   // meters
    double rx_arcsec, ry_arcsec, rz_arcsec;
    double scale_ppm;

    /// Small-angle inverse (parameters negated). Exact to well below 1 mm
    /// for transforms of this magnitude.
    HelmertParams inverse() const {
        return {-tx, -ty, -tz, -rx_arcsec, -ry_arcsec, -rz_arcsec, -scale_ppm};
    }
};

// Grid-free WGS84 -> OSGB36 approximation (no OSTN shift, ~1 m class accuracy).
inline constexpr HelmertParams kWgs84ToOsgb36{-446.448, 125.157, -542.060,
                                              -0.1502, -0.2470, -0.8421, 20.4894};

struct CartesianPoint {
    double x, y, z;
};

CartesianPoint geodetic_to_cartesian(const GeoPoint& p, const Ellipsoid& ell);
GeoPoint cartesian_to_geodetic(const CartesianPoint& c, const Ellipsoid& ell);
CartesianPoint helmert_transform(const CartesianPoint& c, const HelmertParams& h);

/// Datum shift of geodetic coordinates, WGS84/GRS80 -> OSGB36/Airy.
GeoPoint wgs84_to_osgb36(const GeoPoint& p);
GeoPoint osgb36_to_wgs84(const GeoPoint& p);

/// Transverse Mercator projection of OSGB36 geodetic coordinates onto the
/// National Grid (F0 = 0.9996012717, origin 49N 2W, E0 = 400000, N0 = -100000).
ProjectedPoint transverse_mercator_osgb(const GeoPoint& osgb36);
GeoPoint transverse_mercator_osgb_inverse(const ProjectedPoint& p);

/// Full EPSG:27700 pipeline from WGS84 degrees. Throws DomainError when
/// lon/lat are outside [-180,180] x [-90,90].
ProjectedPoint project_wgs84_to_bng(const GeoPoint& p);
GeoPoint bng_to_wgs84(const ProjectedPoint& p);

/// Diagnostic-only check: plausible easting/northing window for Wales inputs.
bool in_wales_grid_window(const ProjectedPoint& p);

} // namespace rseri
