#include "rseri/projection.hpp"

#include "rseri/errors.hpp"

#include <cmath>
#include <string>

namespace rseri {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kArcsecToRad = kPi / (180.0 * 3600.0);

// National Grid constants.
constexpr double kF0 = 0.9996012717;
constexpr double kPhi0 = 49.0 * kDegToRad;
constexpr double kLambda0 = -2.0 * kDegToRad;
constexpr double kE0 = 400000.0;
constexpr double kN0 = -100000.0;

// Developed meridional arc on the Airy ellipsoid, scaled by F0.
double meridional_arc(double phi) {
    const double a = kAiry1830.a;
    const double b = kAiry1830.b;
    const double n = (a - b) / (a + b);
    const double n2 = n * n;
    const double n3 = n2 * n;
    const double dphi = phi - kPhi0;
    const double sphi = phi + kPhi0;
    return b * kF0 *
           ((1.0 + n + 1.25 * n2 + 1.25 * n3) * dphi -
            (3.0 * n + 3.0 * n2 + (21.0 / 8.0) * n3) * std::sin(dphi) * std::cos(sphi) +
            ((15.0 / 8.0) * (n2 + n3)) * std::sin(2.0 * dphi) * std::cos(2.0 * sphi) -
            (35.0 / 24.0) * n3 * std::sin(3.0 * dphi) * std::cos(3.0 * sphi));
}

} // namespace

CartesianPoint geodetic_to_cartesian(const GeoPoint& p, const Ellipsoid& ell) {
    const double phi = p.lat * kDegToRad;
    const double lam = p.lon * kDegToRad;
    const double e2 = ell.e2();
    const double sp = std::sin(phi);
    const double nu = ell.a / std::sqrt(1.0 - e2 * sp * sp);
    return {nu * std::cos(phi) * std::cos(lam), nu * std::cos(phi) * std::sin(lam),
            (1.0 - e2) * nu * sp};
}

GeoPoint cartesian_to_geodetic(const CartesianPoint& c, const Ellipsoid& ell) {
    const double e2 = ell.e2();
    const double pr = std::hypot(c.x, c.y);
    double phi = std::atan2(c.z, pr * (1.0 - e2));
    for (int i = 0; i < 16; ++i) {
        const double sp = std::sin(phi);
        const double nu = ell.a / std::sqrt(1.0 - e2 * sp * sp);
        const double next = std::atan2(c.z + e2 * nu * sp, pr);
        const bool done = std::abs(next - phi) < 1e-15;
        phi = next;
        if (done) {
            break;
        }
    }
    return {std::atan2(c.y, c.x) / kDegToRad, phi / kDegToRad};
}

CartesianPoint helmert_transform(const CartesianPoint& c, const HelmertParams& h) {
    const double s = 1.0 + h.scale_ppm * 1e-6;
    const double rx = h.rx_arcsec * kArcsecToRad;
    const double ry = h.ry_arcsec * kArcsecToRad;
    const double rz = h.rz_arcsec * kArcsecToRad;
    return {h.tx + s * c.x - rz * c.y + ry * c.z,
            h.ty + rz * c.x + s * c.y - rx * c.z,
            h.tz - ry * c.x + rx * c.y + s * c.z};
}

GeoPoint wgs84_to_osgb36(const GeoPoint& p) {
    const CartesianPoint cart = geodetic_to_cartesian(p, kGrs80);
    return cartesian_to_geodetic(helmert_transform(cart, kWgs84ToOsgb36), kAiry1830);
}

GeoPoint osgb36_to_wgs84(const GeoPoint& p) {
    const CartesianPoint cart = geodetic_to_cartesian(p, kAiry1830);
    return cartesian_to_geodetic(helmert_transform(cart, kWgs84ToOsgb36.inverse()), kGrs80);
}

ProjectedPoint transverse_mercator_osgb(const GeoPoint& osgb36) {
    const double a = kAiry1830.a;
    const double e2 = kAiry1830.e2();
    const double phi = osgb36.lat * kDegToRad;
    const double lam = osgb36.lon * kDegToRad;

    const double sp = std::sin(phi);
    const double cp = std::cos(phi);
    const double tp = std::tan(phi);
    const double tp2 = tp * tp;
    const double tp4 = tp2 * tp2;

    const double nu = a * kF0 / std::sqrt(1.0 - e2 * sp * sp);
    const double rho = a * kF0 * (1.0 - e2) * std::pow(1.0 - e2 * sp * sp, -1.5);
    const double eta2 = nu / rho - 1.0;

    const double I = meridional_arc(phi) + kN0;
    const double II = nu / 2.0 * sp * cp;
    const double III = nu / 24.0 * sp * cp * cp * cp * (5.0 - tp2 + 9.0 * eta2);
    const double IIIA = nu / 720.0 * sp * std::pow(cp, 5) * (61.0 - 58.0 * tp2 + tp4);
    const double IV = nu * cp;
    const double V = nu / 6.0 * cp * cp * cp * (nu / rho - tp2);
    const double VI =
        nu / 120.0 * std::pow(cp, 5) * (5.0 - 18.0 * tp2 + tp4 + 14.0 * eta2 - 58.0 * tp2 * eta2);

    const double dl = lam - kLambda0;
    const double dl2 = dl * dl;
    return {kE0 + IV * dl + V * dl * dl2 + VI * dl * dl2 * dl2,
            I + II * dl2 + III * dl2 * dl2 + IIIA * dl2 * dl2 * dl2};
}

GeoPoint transverse_mercator_osgb_inverse(const ProjectedPoint& p) {
    const double a = kAiry1830.a;
    const double e2 = kAiry1830.e2();

    double phi = kPhi0 + (p.northing - kN0) / (a * kF0);
    for (int i = 0; i < 32; ++i) {
        const double m = meridional_arc(phi);
        const double delta = p.northing - kN0 - m;
        phi += delta / (a * kF0);
        if (std::abs(delta) < 1e-8) {
            break;
        }
    }

    const double sp = std::sin(phi);
    const double cp = std::cos(phi);
    const double secp = 1.0 / cp;
    const double tp = std::tan(phi);
    const double tp2 = tp * tp;
    const double tp4 = tp2 * tp2;
    const double nu = a * kF0 / std::sqrt(1.0 - e2 * sp * sp);
    const double rho = a * kF0 * (1.0 - e2) * std::pow(1.0 - e2 * sp * sp, -1.5);
    const double eta2 = nu / rho - 1.0;
    const double nu3 = nu * nu * nu;
    const double nu5 = nu3 * nu * nu;
    const double nu7 = nu5 * nu * nu;

    const double VII = tp / (2.0 * rho * nu);
    const double VIII = tp / (24.0 * rho * nu3) * (5.0 + 3.0 * tp2 + eta2 - 9.0 * tp2 * eta2);
    const double IX = tp / (720.0 * rho * nu5) * (61.0 + 90.0 * tp2 + 45.0 * tp4);
    const double X = secp / nu;
    const double XI = secp / (6.0 * nu3) * (nu / rho + 2.0 * tp2);
    const double XII = secp / (120.0 * nu5) * (5.0 + 28.0 * tp2 + 24.0 * tp4);
    const double XIIA =
        secp / (5040.0 * nu7) * (61.0 + 662.0 * tp2 + 1320.0 * tp4 + 720.0 * tp4 * tp2);

    const double de = p.easting - kE0;
    const double de2 = de * de;
    const double lat = phi - VII * de2 + VIII * de2 * de2 - IX * de2 * de2 * de2;
    const double lon =
        kLambda0 + X * de - XI * de * de2 + XII * de * de2 * de2 - XIIA * de * de2 * de2 * de2;
    return {lon / kDegToRad, lat / kDegToRad};
}

ProjectedPoint project_wgs84_to_bng(const GeoPoint& p) {
    if (!(p.lon >= -180.0 && p.lon <= 180.0)) {
        throw DomainError("longitude " + std::to_string(p.lon) + " outside [-180, 180]");
    }
    if (!(p.lat >= -90.0 && p.lat <= 90.0)) {
        throw DomainError("latitude " + std::to_string(p.lat) + " outside [-90, 90]");
    }
    return transverse_mercator_osgb(wgs84_to_osgb36(p));
}

GeoPoint bng_to_wgs84(const ProjectedPoint& p) {
    return osgb36_to_wgs84(transverse_mercator_osgb_inverse(p));
}

bool in_wales_grid_window(const ProjectedPoint& p) {
    return p.easting >= 130000.0 && p.easting <= 420000.0 && p.northing >= 150000.0 &&
           p.northing <= 420000.0;
}

} // namespace rseri
