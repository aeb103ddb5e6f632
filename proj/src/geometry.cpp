#include "rseri/geometry.hpp"

#include "rseri/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rseri {

double squared_distance(const ProjectedPoint& a, const ProjectedPoint& b) {
    const double de = a.easting - b.easting;
    const double dn = a.northing - b.northing;
    return de * de + dn * dn;
}

double euclidean_distance(const ProjectedPoint& a, const ProjectedPoint& b) {
    return std::sqrt(squared_distance(a, b));
}

double point_to_segment_distance(const ProjectedPoint& q, const ProjectedPoint& a,
                                 const ProjectedPoint& b) {
    const double abe = b.easting - a.easting;
    const double abn = b.northing - a.northing;
    const double len2 = abe * abe + abn * abn;
    if (len2 == 0.0) {
        return euclidean_distance(q, a);
    }
    double t = ((q.easting - a.easting) * abe + (q.northing - a.northing) * abn) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const ProjectedPoint proj{a.easting + t * abe, a.northing + t * abn};
    return euclidean_distance(q, proj);
}

double point_to_polyline_distance(const ProjectedPoint& q, const Polyline& line) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < line.vertices.size(); ++i) {
        best = std::min(best, point_to_segment_distance(q, line.vertices[i], line.vertices[i + 1]));
    }
    return best;
}

double point_to_ring_distance(const ProjectedPoint& q, std::span<const ProjectedPoint> ring) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        best = std::min(best, point_to_segment_distance(q, ring[i], ring[i + 1]));
    }
    return best;
}

namespace {

double cross(const ProjectedPoint& o, const ProjectedPoint& a, const ProjectedPoint& b) {
    return (a.easting - o.easting) * (b.northing - o.northing) -
           (a.northing - o.northing) * (b.easting - o.easting);
}

bool on_segment(const ProjectedPoint& q, const ProjectedPoint& a, const ProjectedPoint& b) {
    if (cross(a, b, q) != 0.0) {
        return false;
    }
    return q.easting >= std::min(a.easting, b.easting) &&
           q.easting <= std::max(a.easting, b.easting) &&
           q.northing >= std::min(a.northing, b.northing) &&
           q.northing <= std::max(a.northing, b.northing);
}

} // namespace

bool point_on_ring_boundary(const ProjectedPoint& q, std::span<const ProjectedPoint> ring) {
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        if (on_segment(q, ring[i], ring[i + 1])) {
            return true;
        }
    }
    return false;
}

bool point_in_ring(const ProjectedPoint& q, std::span<const ProjectedPoint> ring) {
    bool inside = false;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        const ProjectedPoint& a = ring[i];
        const ProjectedPoint& b = ring[i + 1];
        if ((a.northing > q.northing) != (b.northing > q.northing)) {
            const double t = (q.northing - a.northing) / (b.northing - a.northing);
            const double xcross = a.easting + t * (b.easting - a.easting);
            if (q.easting < xcross) {
                inside = !inside;
            }
        }
    }
    return inside;
}

bool point_in_polygon(const ProjectedPoint& q, const Polygon& poly) {
    // Boundary points count as inside, hole boundaries included.
    if (point_on_ring_boundary(q, poly.exterior)) {
        return true;
    }
    for (const Ring& hole : poly.holes) {
        if (point_on_ring_boundary(q, hole)) {
            return true;
        }
    }
    if (!point_in_ring(q, poly.exterior)) {
        return false;
    }
    for (const Ring& hole : poly.holes) {
        if (point_in_ring(q, hole)) {
            return false;
        }
    }
    return true;
}

void validate_ring(std::span<const ProjectedPoint> ring, const std::string& what) {
    if (ring.size() < 4) {
        throw ParseError(what + ": ring has " + std::to_string(ring.size()) +
                         " vertices, need at least 4");
    }
    if (!(ring.front() == ring.back())) {
        throw ParseError(what + ": ring is not closed (first vertex != last)");
    }
    for (const ProjectedPoint& p : ring) {
        if (!std::isfinite(p.easting) || !std::isfinite(p.northing)) {
            throw ParseError(what + ": non-finite ring coordinate");
        }
    }
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        if (ring[i] == ring[i + 1]) {
            throw ParseError(what + ": identical consecutive ring vertices at index " +
                             std::to_string(i));
        }
    }
}

void validate_polygon(const Polygon& poly, const std::string& what) {
    validate_ring(poly.exterior, what + " exterior");
    for (std::size_t h = 0; h < poly.holes.size(); ++h) {
        validate_ring(poly.holes[h], what + " hole " + std::to_string(h));
    }
}

void validate_polyline(const Polyline& line, const std::string& what) {
    if (line.vertices.size() < 2) {
        throw ParseError(what + ": polyline needs at least 2 vertices");
    }
    for (const ProjectedPoint& p : line.vertices) {
        if (!std::isfinite(p.easting) || !std::isfinite(p.northing)) {
            throw ParseError(what + ": non-finite polyline coordinate");
        }
    }
    for (std::size_t i = 0; i + 1 < line.vertices.size(); ++i) {
        if (line.vertices[i] == line.vertices[i + 1]) {
            throw ParseError(what + ": identical consecutive polyline vertices at index " +
                             std::to_string(i));
        }
    }
}

namespace {

bool proper_intersection(const ProjectedPoint& a, const ProjectedPoint& b,
                         const ProjectedPoint& c, const ProjectedPoint& d) {
    const double d1 = cross(c, d, a);
    const double d2 = cross(c, d, b);
    const double d3 = cross(a, b, c);
    const double d4 = cross(a, b, d);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

} // namespace

bool ring_self_intersects(std::span<const ProjectedPoint> ring) {
    const std::size_t n = ring.size() >= 1 ? ring.size() - 1 : 0; // edge count
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue; // first and last edges are adjacent
            }
            if (proper_intersection(ring[i], ring[i + 1], ring[j], ring[j + 1])) {
                return true;
            }
        }
    }
    return false;
}

} // namespace rseri
