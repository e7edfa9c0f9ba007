#include "sfvem/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "sfvem/error.hpp"

namespace sfvem {

Rule1D gauss_legendre(int n) {
  if (n < 1) throw Error("Gauss-Legendre rule needs at least one point");
  Rule1D r;
  r.points.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // ascending order on [0,1]
    r.points[n - 1 - i] = 0.5 * (x + 1.0);
    r.weights[n - 1 - i] = 0.5 * w;
  }
  return r;
}

Rule1D gauss_lobatto(int n) {
  if (n < 2) throw Error("Gauss-Lobatto rule needs at least two points");
  const int N = n - 1;
  Rule1D r;
  r.points.resize(n);
  r.weights.resize(n);
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * i / N);
    for (int it = 0; it < 200; ++it) {
      p[0] = 1.0;
      p[1] = x;
      for (int k = 2; k <= N; ++k) p[k] = ((2.0 * k - 1.0) * x * p[k - 1] - (k - 1.0) * p[k - 2]) / k;
      const double dx = (x * p[N] - p[N - 1]) / (n * p[N]);
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    p[0] = 1.0;
    p[1] = x;
    for (int k = 2; k <= N; ++k) p[k] = ((2.0 * k - 1.0) * x * p[k - 1] - (k - 1.0) * p[k - 2]) / k;
    r.points[n - 1 - i] = 0.5 * (x + 1.0);
    r.weights[n - 1 - i] = 1.0 / (N * n * p[N] * p[N]);
  }
  r.points.front() = 0.0;
  r.points.back() = 1.0;
  return r;
}

Rule1D gauss_legendre_for_degree(int degree) { return gauss_legendre(std::max(1, degree / 2 + 1)); }

void QuadratureRule::append(const QuadratureRule& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

QuadratureRule triangle_rule(const Triangle& t, int degree) {
  // x(u,v) = A + u (B - A) + u v (C - B), Jacobian 2|T| u
  const int n = std::max(1, (degree + 2 + 1) / 2);
  const Rule1D g = gauss_legendre(n);
  const Point& a = t[0];
  const Point& b = t[1];
  const Point& c = t[2];
  const Point ab = b - a, bc = c - b;
  const double jac = std::abs(ab.x() * (c - a).y() - ab.y() * (c - a).x());
  QuadratureRule rule;
  rule.degree = degree;
  rule.points.reserve(n * n);
  rule.weights.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = g.points[i];
      const double v = g.points[j];
      rule.points.push_back(a + u * ab + u * v * bc);
      rule.weights.push_back(g.weights[i] * g.weights[j] * u * jac);
    }
  return rule;
}

namespace {

void graded(const Triangle& t, int degree, int depth, QuadratureRule& out) {
  if (depth == 0) {
    out.append(triangle_rule(t, degree));
    return;
  }
  const Point& s = t[0];
  const Point b = 0.5 * (s + t[1]);
  const Point c = 0.5 * (s + t[2]);
  out.append(triangle_rule({b, t[1], t[2]}, degree));
  out.append(triangle_rule({b, t[2], c}, degree));
  graded({s, b, c}, degree, depth - 1, out);
}

}  // namespace

QuadratureRule polygon_rule(std::span<const Point> polygon, int degree,
                            const std::optional<Point>& singular, int grading_depth) {
  const auto tris = triangulate_polygon(polygon);
  if (tris.empty()) throw Error("polygon could not be triangulated");
  QuadratureRule rule;
  rule.degree = degree;
  const double scale = polygon_diameter(polygon);
  for (const auto& t : tris) {
    int at = -1;
    if (singular)
      for (int i = 0; i < 3; ++i)
        if ((t[i] - *singular).norm() <= 1e-12 * scale) at = i;
    if (at < 0) {
      rule.append(triangle_rule(t, degree));
      continue;
    }
    const Triangle rotated{t[at], t[(at + 1) % 3], t[(at + 2) % 3]};
    graded(rotated, degree, grading_depth, rule);
  }
  return rule;
}

}  // namespace sfvem
