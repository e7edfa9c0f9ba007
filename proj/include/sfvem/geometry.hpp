#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <span>
#include <vector>

namespace sfvem {

using Point = Eigen::Vector2d;

/// Signed area (positive for counter-clockwise loops).
double signed_area(std::span<const Point> polygon);

/// Area centroid of a simple polygon with non-zero area.
Point polygon_centroid(std::span<const Point> polygon);

/// Largest vertex-to-vertex distance.
double polygon_diameter(std::span<const Point> polygon);

/// True when no two non-adjacent edges intersect and no edge is degenerate.
bool is_simple(std::span<const Point> polygon);

bool point_in_polygon(std::span<const Point> polygon, const Point& p);

/// Clip a convex polygon (CCW) by the half-plane {x : normal . x <= offset}.
std::vector<Point> clip_halfplane(std::span<const Point> convex, const Point& normal,
                                  double offset);

/// Kernel of a simple CCW polygon: the convex set of points that see the whole
/// polygon. Empty when the polygon is not star-shaped.
std::vector<Point> polygon_kernel(std::span<const Point> polygon);

struct InscribedBall {
  Point center;
  double radius = 0.0;
};

/// Chebyshev center of a convex CCW polygon (largest inscribed disc).
InscribedBall chebyshev_center(std::span<const Point> convex);

/// Radius of the largest ball w.r.t. which the polygon is star-shaped, with
/// its center. Radius 0 when the kernel is empty or degenerate.
InscribedBall star_ball(std::span<const Point> polygon);

using Triangle = std::array<Point, 3>;

/// Fan triangulation from the star center when the kernel has positive
/// radius, otherwise ear clipping. All triangles are CCW with positive area.
std::vector<Triangle> triangulate_polygon(std::span<const Point> polygon);

std::vector<Triangle> ear_clip(std::span<const Point> polygon);

}  // namespace sfvem
