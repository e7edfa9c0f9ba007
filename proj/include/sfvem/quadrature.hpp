#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sfvem/geometry.hpp"

namespace sfvem {

/// Nodes and weights on the reference interval [0, 1].
struct Rule1D {
  std::vector<double> points;
  std::vector<double> weights;
  std::size_t size() const { return points.size(); }
};

/// n-point Gauss-Legendre rule, exact for degree 2n-1.
Rule1D gauss_legendre(int n);

/// n-point Gauss-Lobatto rule (n >= 2, endpoints included), exact for degree 2n-3.
Rule1D gauss_lobatto(int n);

/// Cheapest Gauss-Legendre rule exact for the given degree.
Rule1D gauss_legendre_for_degree(int degree);

struct QuadratureRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int degree = 0;
  std::size_t size() const { return points.size(); }
  void append(const QuadratureRule& other);
};

/// Collapsed (Duffy) tensor Gauss rule on a triangle; positive weights,
/// interior points, exact for polynomials of the given degree.
QuadratureRule triangle_rule(const Triangle& t, int degree);

/// Rule on a simple polygon through its sub-triangulation. When `singular`
/// is a polygon vertex, the sub-triangles touching it are graded
/// geometrically towards it `grading_depth` times.
QuadratureRule polygon_rule(std::span<const Point> polygon, int degree,
                            const std::optional<Point>& singular = std::nullopt,
                            int grading_depth = 3);

}  // namespace sfvem
