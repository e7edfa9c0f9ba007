#include "sfvem/problems.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "sfvem/error.hpp"

namespace sfvem {

int ProblemSpec::region_at(const Point& p) const {
  for (const auto& box : regions)
    if (box.contains(p)) return box.id;
  return 0;
}

std::vector<int> ProblemSpec::polygon_regions(const PolyMesh& mesh) const {
  return regions_from_boxes(mesh, regions, 0);
}

std::vector<double> ProblemSpec::polygon_kappa(const PolyMesh& mesh) const {
  std::vector<double> out;
  for (int r : polygon_regions(mesh)) out.push_back(kappa[r]);
  return out;
}

double profile_y(double y) { return y * (1.0 - y) * (y - 0.5) * (y - 0.5); }
double profile_y_d1(double y) { return -4.0 * y * y * y + 6.0 * y * y - 2.5 * y + 0.25; }
double profile_y_d2(double y) { return -12.0 * y * y + 12.0 * y - 2.5; }

StripProfile::StripProfile(double left, double right)
    : kl(left), kr(right), c(-(3.0 * left + right) / (4.0 * (left + right))) {}

double StripProfile::value(double x) const {
  if (x <= 0.5) return -(0.5 * x * x + c * x) / kl;
  return -(0.5 * x * x + c * x - c - 0.5) / kr;
}

double StripProfile::d1(double x) const { return -(x + c) / (x <= 0.5 ? kl : kr); }

double StripProfile::d2(double x) const { return -1.0 / (x <= 0.5 ? kl : kr); }

ProblemSpec make_test1() {
  using std::numbers::pi;
  ProblemSpec p;
  p.name = "test1";
  p.u = [](const Point& x) { return std::sin(2 * pi * x.x()) * std::sin(2 * pi * x.y()); };
  p.grad_u = [](const Point& x) {
    return Point(2 * pi * std::cos(2 * pi * x.x()) * std::sin(2 * pi * x.y()),
                 2 * pi * std::sin(2 * pi * x.x()) * std::cos(2 * pi * x.y()));
  };
  p.f = [](const Point& x) {
    return 8 * pi * pi * std::sin(2 * pi * x.x()) * std::sin(2 * pi * x.y());
  };
  p.g = [](const Point&) { return 0.0; };
  return p;
}

namespace {

// u = xi_s(x) Y(y) where the strip s is selected by y.
ProblemSpec separable(std::string name, std::vector<RegionBox> regions, std::vector<double> kappa,
                      StripProfile low, StripProfile high) {
  ProblemSpec p;
  p.name = std::move(name);
  p.regions = std::move(regions);
  p.kappa = std::move(kappa);
  auto strip = [low, high](double y) { return y < 0.5 ? low : high; };
  p.u = [strip](const Point& x) { return strip(x.y()).value(x.x()) * profile_y(x.y()); };
  p.grad_u = [strip](const Point& x) {
    const StripProfile s = strip(x.y());
    return Point(s.d1(x.x()) * profile_y(x.y()), s.value(x.x()) * profile_y_d1(x.y()));
  };
  p.f = [strip](const Point& x) {
    const StripProfile s = strip(x.y());
    const double k = x.x() <= 0.5 ? s.kl : s.kr;
    return -k * (s.d2(x.x()) * profile_y(x.y()) + s.value(x.x()) * profile_y_d2(x.y()));
  };
  p.g = [](const Point&) { return 0.0; };
  return p;
}

}  // namespace

ProblemSpec make_test2(int variant) {
  double left = 0.0;
  if (variant == 1) left = 10.0;
  else if (variant == 2) left = 1e-3;
  else throw ConfigError("test2 variant must be 1 or 2");
  const StripProfile s(left, 1.0);
  return separable("test2-g" + std::to_string(variant), {{0.0, 0.5, 0.0, 1.0, 0}, {0.5, 1.0, 0.0, 1.0, 1}},
                    {left, 1.0}, s, s);
}

ProblemSpec make_test3(int variant) {
  std::array<double, 4> k{};  // K11, K12, K21, K22
  if (variant == 3) k = {1.0, 1e-3, 1e-2, 10.0};
  else if (variant == 4) k = {1.0, 1e-7, 1e-2, 1e5};
  else throw ConfigError("test3 variant must be 3 or 4");
  std::vector<RegionBox> boxes{{0.0, 0.5, 0.0, 0.5, 0},
                               {0.5, 1.0, 0.0, 0.5, 1},
                               {0.0, 0.5, 0.5, 1.0, 2},
                               {0.5, 1.0, 0.5, 1.0, 3}};
  return separable("test3-g" + std::to_string(variant), std::move(boxes), {k[0], k[1], k[2], k[3]},
                   StripProfile(k[0], k[1]), StripProfile(k[2], k[3]));
}

ProblemSpec make_test4() {
  ProblemSpec p;
  p.name = "test4";
  p.domain = Domain::LShape;
  p.u = [](const Point& x) { return std::cbrt(x.squaredNorm()); };
  p.grad_u = [](const Point& x) {
    const double r2 = x.squaredNorm();
    return Point((2.0 / 3.0) * x / std::pow(r2, 2.0 / 3.0));
  };
  p.f = [](const Point& x) { return -(4.0 / 9.0) / std::pow(x.squaredNorm(), 2.0 / 3.0); };
  p.g = p.u;
  p.singular_points = {Point(0.0, 0.0)};
  return p;
}

ProblemSpec make_patch(int k, double kappa, Domain domain) {
  if (k < 1 || k > 3) throw ConfigError("patch problem is defined for k = 1, 2, 3");
  ProblemSpec p;
  p.name = "patch";
  p.domain = domain;
  p.kappa = {kappa};
  // 1 + x - 2y, + x^2/2 - xy + 3y^2/4, + 0.3x^3 - 0.2x^2y + 0.1y^3
  p.u = [k](const Point& q) {
    const double x = q.x(), y = q.y();
    double v = 1.0 + x - 2.0 * y;
    if (k >= 2) v += 0.5 * x * x - x * y + 0.75 * y * y;
    if (k >= 3) v += 0.3 * x * x * x - 0.2 * x * x * y + 0.1 * y * y * y;
    return v;
  };
  p.grad_u = [k](const Point& q) {
    const double x = q.x(), y = q.y();
    Point d(1.0, -2.0);
    if (k >= 2) d += Point(x - y, -x + 1.5 * y);
    if (k >= 3) d += Point(0.9 * x * x - 0.4 * x * y, -0.2 * x * x + 0.3 * y * y);
    return d;
  };
  p.f = [k, kappa](const Point& q) {
    double lap = 0.0;
    if (k >= 2) lap += 1.0 + 1.5;
    if (k >= 3) lap += 1.8 * q.x() - 0.4 * q.y() + 0.6 * q.y();
    return -kappa * lap;
  };
  p.g = p.u;
  return p;
}

ProblemSpec make_problem(const std::string& name, int k) {
  if (name == "test1") return make_test1();
  if (name == "test2-g1") return make_test2(1);
  if (name == "test2-g2") return make_test2(2);
  if (name == "test3-g3") return make_test3(3);
  if (name == "test3-g4") return make_test3(4);
  if (name == "test4") return make_test4();
  if (name == "patch") return make_patch(k);
  throw ConfigError("unknown problem '" + name + "'");
}

}  // namespace sfvem
