#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rseri {

/// Geographic coordinate, WGS84 degrees. lon east, lat north.
struct GeoPoint {
    double lon = 0.0;
    double lat = 0.0;
};

/// Planar coordinate in British National Grid meters (EPSG:27700).
struct ProjectedPoint {
    double easting = 0.0;
    double northing = 0.0;
};

inline bool operator==(const ProjectedPoint& a, const ProjectedPoint& b) {
    return a.easting == b.easting && a.northing == b.northing;
}

/// Closed ring: >= 4 vertices, first == last.
using Ring = std::vector<ProjectedPoint>;

struct Polygon {
    Ring exterior;
    std::vector<Ring> holes;
};

struct Polyline {
    std::vector<ProjectedPoint> vertices;
};

double squared_distance(const ProjectedPoint& a, const ProjectedPoint& b);

/// sqrt((de)^2 + (dn)^2), meters.
double euclidean_distance(const ProjectedPoint& a, const ProjectedPoint& b);

double point_to_segment_distance(const ProjectedPoint& q, const ProjectedPoint& a,
                                 const ProjectedPoint& b);

/// Minimum distance from q to any segment of the polyline.
double point_to_polyline_distance(const ProjectedPoint& q, const Polyline& line);

/// Minimum distance from q to the edges of a closed ring.
double point_to_ring_distance(const ProjectedPoint& q, std::span<const ProjectedPoint> ring);

/// True when q lies exactly on an edge or vertex of the ring.
bool point_on_ring_boundary(const ProjectedPoint& q, std::span<const ProjectedPoint> ring);

/// Even-odd crossing test against one ring. Boundary behaviour unspecified;
/// use point_in_polygon for the boundary-inclusive convention.
bool point_in_ring(const ProjectedPoint& q, std::span<const ProjectedPoint> ring);

/// Boundary-inclusive containment: points on any edge or vertex (exterior or
/// hole) count as inside; interior of a hole counts as outside.
bool point_in_polygon(const ProjectedPoint& q, const Polygon& poly);

/// Structural ring validation: >= 4 vertices, closed, finite coordinates,
/// no identical consecutive vertices. Throws ParseError on violation.
void validate_ring(std::span<const ProjectedPoint> ring, const std::string& what);

void validate_polygon(const Polygon& poly, const std::string& what);

/// >= 2 vertices, finite, no identical consecutive vertices.
void validate_polyline(const Polyline& line, const std::string& what);

/// Exact O(n^2) proper self-intersection test between non-adjacent edges.
/// Intended for validation of modest rings, not hot paths.
bool ring_self_intersects(std::span<const ProjectedPoint> ring);

} // namespace rseri
