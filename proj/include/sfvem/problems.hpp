#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sfvem/mesh.hpp"

namespace sfvem {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Point(const Point&)>;

/// -div(K grad u) = f in the domain, u = g on its boundary, with K constant
/// on each region.
struct ProblemSpec {
  std::string name;
  Domain domain = Domain::UnitSquare;
  /// First matching box wins; points matching none belong to region 0.
  std::vector<RegionBox> regions;
  /// K by region id.
  std::vector<double> kappa{1.0};
  ScalarField u;
  VectorField grad_u;
  ScalarField f;
  ScalarField g;
  /// Points where u is not smooth.
  std::vector<Point> singular_points;

  int region_at(const Point& p) const;
  double kappa_at(const Point& p) const { return kappa[region_at(p)]; }
  /// Region of each polygon, by centroid.
  std::vector<int> polygon_regions(const PolyMesh& mesh) const;
  std::vector<double> polygon_kappa(const PolyMesh& mesh) const;
};

/// u = sin(2 pi x) sin(2 pi y), K = 1.
ProblemSpec make_test1();

/// u = xi(x) Y(y) with a vertical jump of K at x = 0.5. variant 1: K = 10 | 1,
/// variant 2: K = 1e-3 | 1.
ProblemSpec make_test2(int variant);

/// Four quadrants of [0,1]^2 with K = (K11, K12, K21, K22). variant 3:
/// (1, 1e-3, 1e-2, 10), variant 4: (1, 1e-7, 1e-2, 1e5).
ProblemSpec make_test3(int variant);

/// u = rho^(2/3) on the L-shaped domain, singular at the origin.
ProblemSpec make_test4();

/// A polynomial u of degree k with constant K, which the method reproduces exactly.
ProblemSpec make_patch(int k, double kappa = 1.0, Domain domain = Domain::UnitSquare);

/// test1 | test2-g1 | test2-g2 | test3-g3 | test3-g4 | test4 | patch.
/// Throws ConfigError for unknown names.
ProblemSpec make_problem(const std::string& name, int k = 1);

/// The separable profiles shared by tests 2 and 3.
double profile_y(double y);
double profile_y_d1(double y);
double profile_y_d2(double y);

/// xi for a strip with K = kl on x <= 0.5 and K = kr on x > 0.5, and its derivatives.
struct StripProfile {
  double kl, kr, c;
  StripProfile(double left, double right);
  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;
};

}  // namespace sfvem
