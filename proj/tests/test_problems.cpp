#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sfvem/error.hpp"
#include "sfvem/problems.hpp"

using namespace sfvem;

namespace {

std::vector<ProblemSpec> catalog() {
  std::vector<ProblemSpec> out;
  for (const char* name : {"test1", "test2-g1", "test2-g2", "test3-g3", "test3-g4", "test4"}) out.push_back(make_problem(name));
  for (int k = 1; k <= 3; ++k) out.push_back(make_patch(k, 2.0));
  return out;
}

// Away from interfaces (x or y = 0.5) and the re-entrant corner.
bool admissible(const ProblemSpec& p, const Point& x) {
  if (!domain_contains(p.domain, x)) return false;
  if (std::abs(x.x() - 0.5) < 1e-3 || std::abs(x.y() - 0.5) < 1e-3) return false;
  if (p.domain == Domain::LShape && x.norm() < 0.05) return false;
  return true;
}

Point sample(const ProblemSpec& p, std::mt19937_64& g) {
  const double lo = p.domain == Domain::LShape ? -1.0 : 0.0;
  std::uniform_real_distribution<double> u(lo, 1.0);
  return Point(u(g), u(g));
}

}  // namespace

TEST_CASE("gradients match finite differences") {
  std::mt19937_64 g(1);
  for (const auto& p : catalog()) {
    int n = 0;
    while (n < 100) {
      const Point x = sample(p, g);
      if (!admissible(p, x)) continue;
      ++n;
      const Point fd = oracle::fd_gradient(p.u, x, 1e-6);
      CHECK((fd - p.grad_u(x)).norm() <= 1e-6 * (1.0 + p.grad_u(x).norm()));
    }
  }
}

TEST_CASE("loads satisfy the PDE in every region") {
  std::mt19937_64 g(2);
  for (const auto& p : catalog()) {
    const int regions = static_cast<int>(p.kappa.size());
    std::vector<int> count(regions, 0);
    int guard = 0;
    while (*std::min_element(count.begin(), count.end()) < 100 && ++guard < 100000) {
      const Point x = sample(p, g);
      if (!admissible(p, x)) continue;
      const int r = p.region_at(x);
      if (count[r] >= 100) continue;
      ++count[r];
      // -K div(grad u), the divergence by central differences of the exact gradient
      const double h = 1e-6;
      const double div = (p.grad_u(x + Point(h, 0)).x() - p.grad_u(x - Point(h, 0)).x() +
                          p.grad_u(x + Point(0, h)).y() - p.grad_u(x - Point(0, h)).y()) /
                         (2 * h);
      const double f = p.f(x);
      CHECK(-p.kappa[r] * div == doctest::Approx(f).epsilon(1e-6).scale(1.0));
    }
    CHECK(guard < 100000);
  }
}

TEST_CASE("boundary data matches the solution") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& p : catalog()) {
    for (int i = 0; i < 100; ++i) {
      Point x;
      const double t = u(g);
      if (p.domain == Domain::UnitSquare) {
        const Point corners[] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        x = corners[i % 4] + t * (corners[(i + 1) % 4] - corners[i % 4]);
      } else {
        const Point corners[] = {{-1, -1}, {0, -1}, {0, 0}, {1, 0}, {1, 1}, {-1, 1}};
        const Point a = corners[i % 6], b = corners[(i + 1) % 6];
        x = a + t * (b - a);
        if (x.norm() < 1e-12) continue;
      }
      CHECK(p.g(x) == doctest::Approx(p.u(x)).epsilon(1e-14).scale(1.0));
    }
  }
}

TEST_CASE("test 1 values") {
  const ProblemSpec p = make_test1();
  CHECK(p.u(Point(0.25, 0.25)) == doctest::Approx(1.0));
  CHECK(p.f(Point(0.25, 0.25)) == doctest::Approx(8 * std::numbers::pi * std::numbers::pi));
  CHECK(p.grad_u(Point(0, 0)).norm() == 0.0);
  CHECK(p.kappa == std::vector<double>{1.0});
}

TEST_CASE("profile in y") {
  CHECK(profile_y(0.5) == 0.0);
  CHECK(profile_y_d1(0.5) == 0.0);
  CHECK(profile_y(0.0) == 0.0);
  CHECK(profile_y(1.0) == 0.0);
  for (double y : {0.1, 0.37, 0.8}) {
    CHECK(profile_y_d1(y) == doctest::Approx((profile_y(y + 1e-6) - profile_y(y - 1e-6)) / 2e-6).epsilon(1e-6));
    CHECK(profile_y_d2(y) == doctest::Approx((profile_y_d1(y + 1e-6) - profile_y_d1(y - 1e-6)) / 2e-6).epsilon(1e-6));
  }
}

TEST_CASE("strip profiles: boundary values, continuity and flux continuity") {
  for (auto [kl, kr] : {std::pair{10.0, 1.0}, {1e-3, 1.0}, {1.0, 1e-3}, {1e-2, 10.0}, {1.0, 1e-7}, {1e-2, 1e5}}) {
    const StripProfile s(kl, kr);
    const double right = std::nextafter(0.5, 1.0);
    // cancellation in the branch formulas costs about 1e-16 / min(K)
    const double tol = 1e-15 / std::min(kl, kr);
    CHECK(s.value(0.0) == 0.0);
    CHECK(std::abs(s.value(1.0)) <= tol);
    // both branches equal 1 / (4 (kl + kr)) at the interface
    CHECK(std::abs(s.value(0.5) - 0.25 / (kl + kr)) <= tol);
    CHECK(std::abs(s.value(right) - s.d1(right) * (right - 0.5) - 0.25 / (kl + kr)) <= tol);
    // K xi' equals -(1/2 + c) on both sides
    CHECK(kl * s.d1(0.5) == doctest::Approx(-(0.5 + s.c)).epsilon(1e-13));
    CHECK(kr * s.d1(right) == doctest::Approx(-(0.5 + s.c)).epsilon(1e-13));
    CHECK(kl * s.d2(0.25) == -1.0);
    CHECK(kr * s.d2(0.75) == -1.0);
  }
}

TEST_CASE("interfaces: u and the normal flux are continuous") {
  for (const auto& p : {make_test2(1), make_test2(2), make_test3(3), make_test3(4)}) {
    for (int i = 1; i < 50; ++i) {
      const double y = i / 50.0;
      if (y == 0.5) continue;
      const Point l(0.5, y), r(std::nextafter(0.5, 1.0), y);
      const double tol = 1e-15 / *std::min_element(p.kappa.begin(), p.kappa.end());
      CHECK(std::abs(p.u(l) - (p.u(r) - p.grad_u(r).x() * (r.x() - 0.5))) <= tol);
      CHECK(p.kappa_at(l) * p.grad_u(l).x() == doctest::Approx(p.kappa_at(r) * p.grad_u(r).x()).epsilon(1e-8).scale(1e-3));
    }
  }
}

TEST_CASE("region lookup") {
  const ProblemSpec t3 = make_test3(3);
  CHECK(t3.kappa_at(Point(0.75, 0.25)) == 1e-3);
  CHECK(t3.kappa_at(Point(0.25, 0.25)) == 1.0);
  CHECK(t3.kappa_at(Point(0.25, 0.75)) == 1e-2);
  CHECK(t3.kappa_at(Point(0.75, 0.75)) == 10.0);
  const ProblemSpec t4 = make_test3(4);
  const double contrast = *std::max_element(t4.kappa.begin(), t4.kappa.end()) / *std::min_element(t4.kappa.begin(), t4.kappa.end());
  CHECK(contrast == doctest::Approx(1e12));
  CHECK(make_test2(1).kappa_at(Point(0.2, 0.9)) == 10.0);
  CHECK(make_test2(2).kappa_at(Point(0.2, 0.9)) == 1e-3);
  CHECK(make_test2(2).kappa_at(Point(0.7, 0.9)) == 1.0);
}

TEST_CASE("test 4") {
  const ProblemSpec p = make_test4();
  CHECK(p.domain == Domain::LShape);
  for (double th : {0.1, 1.0, 2.5, 4.0}) CHECK(p.u(Point(std::cos(th), std::sin(th))) == doctest::Approx(1.0));
  CHECK(p.f(Point(0.5, 0.0)) == doctest::Approx(-(4.0 / 9.0) * std::pow(0.5, -4.0 / 3.0)));
  // Laplacian of rho^a is a^2 rho^(a-2)
  CHECK(oracle::fd_laplacian(p.u, Point(-0.3, 0.4), 1e-4) == doctest::Approx(-p.f(Point(-0.3, 0.4))).epsilon(1e-5));
  CHECK(p.singular_points.size() == 1);
  CHECK(p.g(Point(1, 1)) == p.u(Point(1, 1)));
}

TEST_CASE("catalog names") {
  CHECK(make_problem("test3-g4").name == "test3-g4");
  CHECK(make_problem("patch", 2).name == "patch");
  CHECK_THROWS_AS(make_problem("test5"), ConfigError);
  CHECK_THROWS_AS(make_test2(3), ConfigError);
  CHECK_THROWS_AS(make_patch(4), ConfigError);
}
