#include "sfvem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sfvem {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

double orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a); }

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2,
                        double tol) {
  const double d1 = orient(q1, q2, p1);
  const double d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1);
  const double d4 = orient(p1, p2, q2);
  if (((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
      ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol)))
    return true;
  if (std::abs(d1) <= tol && on_segment(q1, q2, p1)) return true;
  if (std::abs(d2) <= tol && on_segment(q1, q2, p2)) return true;
  if (std::abs(d3) <= tol && on_segment(p1, p2, q1)) return true;
  if (std::abs(d4) <= tol && on_segment(p1, p2, q2)) return true;
  return false;
}

}  // namespace

double signed_area(std::span<const Point> polygon) {
  double a = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(polygon[i], polygon[(i + 1) % n]);
  return 0.5 * a;
}

Point polygon_centroid(std::span<const Point> polygon) {
  // shift to the first vertex for accuracy on small, far-away polygons
  const Point o = polygon[0];
  double a = 0.0;
  Point c = Point::Zero();
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = polygon[i] - o;
    const Point q = polygon[(i + 1) % n] - o;
    const double w = cross(p, q);
    a += w;
    c += w * (p + q);
  }
  return o + c / (3.0 * a);
}

double polygon_diameter(std::span<const Point> polygon) {
  double d = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i)
    for (std::size_t j = i + 1; j < polygon.size(); ++j)
      d = std::max(d, (polygon[i] - polygon[j]).norm());
  return d;
}

bool is_simple(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  const double scale = polygon_diameter(polygon);
  if (scale <= 0.0) return false;
  const double tol = 1e-14 * scale * scale;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % n];
    if ((b - a).norm() <= 1e-14 * scale) return false;
    // folding back onto the previous edge
    const Point& prev = polygon[(i + n - 1) % n];
    if (std::abs(orient(prev, a, b)) <= tol && (a - prev).dot(b - a) < 0.0) return false;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(a, b, polygon[j], polygon[(j + 1) % n], tol)) return false;
    }
  }
  return true;
}

bool point_in_polygon(std::span<const Point> polygon, const Point& p) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = polygon[i];
    const Point& b = polygon[j];
    if ((a.y() > p.y()) != (b.y() > p.y()) &&
        p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x())
      inside = !inside;
  }
  return inside;
}

std::vector<Point> clip_halfplane(std::span<const Point> convex, const Point& normal,
                                  double offset) {
  std::vector<Point> out;
  const std::size_t n = convex.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = convex[i];
    const Point& q = convex[(i + 1) % n];
    const double dp = normal.dot(p) - offset;
    const double dq = normal.dot(q) - offset;
    if (dp <= 0.0) out.push_back(p);
    if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
      const double t = dp / (dp - dq);
      out.push_back(p + t * (q - p));
    }
  }
  if (out.size() < 3) out.clear();
  return out;
}

std::vector<Point> polygon_kernel(std::span<const Point> polygon) {
  Eigen::AlignedBox2d box;
  for (const auto& p : polygon) box.extend(p);
  const Point pad = Point::Constant(0.1 * box.diagonal().norm());
  const Point lo = box.min() - pad;
  const Point hi = box.max() + pad;
  std::vector<Point> kernel{lo, Point(hi.x(), lo.y()), hi, Point(lo.x(), hi.y())};
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n && !kernel.empty(); ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % n];
    const Point d = b - a;
    const Point normal(d.y(), -d.x());
    kernel = clip_halfplane(kernel, normal, normal.dot(a));
  }
  if (!kernel.empty() && signed_area(kernel) <= 0.0) kernel.clear();
  return kernel;
}

InscribedBall chebyshev_center(std::span<const Point> convex) {
  InscribedBall best;
  const std::size_t m = convex.size();
  if (m < 3) return best;
  best.center = polygon_centroid(convex);
  std::vector<Point> normals;
  std::vector<double> offsets;
  for (std::size_t i = 0; i < m; ++i) {
    const Point d = convex[(i + 1) % m] - convex[i];
    const double len = d.norm();
    if (len <= 0.0) continue;
    const Point nrm(d.y() / len, -d.x() / len);
    normals.push_back(nrm);
    offsets.push_back(nrm.dot(convex[i]));
  }
  const std::size_t c = normals.size();
  const double scale = polygon_diameter(convex);
  // the optimum of the 3-variable LP sits at a vertex: three active constraints
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i + 1; j < c; ++j)
      for (std::size_t l = j + 1; l < c; ++l) {
        Eigen::Matrix3d a;
        a << normals[i].x(), normals[i].y(), 1.0, normals[j].x(), normals[j].y(), 1.0,
            normals[l].x(), normals[l].y(), 1.0;
        if (std::abs(a.determinant()) < 1e-12) continue;
        const Eigen::Vector3d sol =
            a.partialPivLu().solve(Eigen::Vector3d(offsets[i], offsets[j], offsets[l]));
        const double r = sol.z();
        if (r <= best.radius) continue;
        const Point x(sol.x(), sol.y());
        bool feasible = true;
        for (std::size_t q = 0; q < c && feasible; ++q)
          feasible = normals[q].dot(x) + r <= offsets[q] + 1e-12 * scale;
        if (feasible) best = {x, r};
      }
  return best;
}

InscribedBall star_ball(std::span<const Point> polygon) {
  const auto kernel = polygon_kernel(polygon);
  if (kernel.empty()) return {};
  return chebyshev_center(kernel);
}

std::vector<Triangle> ear_clip(std::span<const Point> polygon) {
  std::vector<Triangle> tris;
  std::vector<std::size_t> idx(polygon.size());
  std::iota(idx.begin(), idx.end(), 0);
  const double scale = polygon_diameter(polygon);
  const double tol = 1e-14 * scale * scale;
  while (idx.size() > 3) {
    const std::size_t n = idx.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = polygon[idx[(i + n - 1) % n]];
      const Point& b = polygon[idx[i]];
      const Point& c = polygon[idx[(i + 1) % n]];
      if (orient(a, b, c) <= tol) continue;
      bool ear = true;
      for (std::size_t j = 0; j < n && ear; ++j) {
        if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
        const Point& p = polygon[idx[j]];
        ear = !(orient(a, b, p) >= -tol && orient(b, c, p) >= -tol && orient(c, a, p) >= -tol);
      }
      if (!ear) continue;
      tris.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) return {};
  }
  tris.push_back({polygon[idx[0]], polygon[idx[1]], polygon[idx[2]]});
  return tris;
}

std::vector<Triangle> triangulate_polygon(std::span<const Point> polygon) {
  const auto ball = star_ball(polygon);
  const double scale = polygon_diameter(polygon);
  if (ball.radius > 1e-8 * scale) {
    std::vector<Triangle> tris;
    const std::size_t n = polygon.size();
    tris.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      tris.push_back({ball.center, polygon[i], polygon[(i + 1) % n]});
    return tris;
  }
  return ear_clip(polygon);
}

}  // namespace sfvem
