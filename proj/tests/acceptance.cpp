// Acceptance gate: one PASS/FAIL line per criterion. Tolerances and runtime
// limits are pinned below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sfvem/assembly.hpp"
#include "sfvem/error.hpp"
#include "sfvem/estimator.hpp"
#include "sfvem/harness.hpp"
#include "sfvem/mesh_generators.hpp"
#include "sfvem/polybasis.hpp"
#include "sfvem/problems.hpp"
#include "sfvem/projectors.hpp"
#include "sfvem/quadrature.hpp"

using namespace sfvem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// --- 1 -----------------------------------------------------------------------

constexpr double kPatchTol = 1e-9;

Outcome patch_suite() {
  Outcome o;
  const PolyMesh mesh = generate_distorted_cartesian(8, 0.2, 1);
  o.require(mesh.num_polygons() == 64, "mesh does not have 64 elements");
  double worst_err = 0.0, worst_eta = 0.0;
  for (int k = 1; k <= 3; ++k)
    for (double kappa : {1.0, 1e-3, 250.0}) {
      const ProblemSpec p = make_patch(k, kappa);
      const Discretization d = assemble(mesh, p, {.k = k});
      const EstimatorReport r = estimate(mesh, d, solve_full(d), p.f, p.grad_u);
      worst_err = std::max(worst_err, r.error);
      worst_eta = std::max(worst_eta, r.eta);
    }
  o.require(worst_err <= kPatchTol, fmt("error %.2e", worst_err));
  o.require(worst_eta <= kPatchTol, fmt("eta %.2e", worst_eta));
  o.detail = fmt("max error %.2e, max eta %.2e (tol %.0e)", worst_err, worst_eta, kPatchTol) +
             (o.detail.empty() ? "" : " -- " + o.detail);
  return o;
}

// --- 2 -----------------------------------------------------------------------

constexpr double kProjectorTol = 1e-11;

std::vector<Point> random_triangle(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::vector<Point> t{{u(g), u(g)}, {u(g), u(g)}, {u(g), u(g)}};
    const double a = oracle::shoelace(t);
    if (std::abs(a) < 0.05) continue;  // keep angles away from zero
    if (a < 0) std::swap(t[1], t[2]);
    return t;
  }
}

std::vector<Point> distorted_quad(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  const double s = 0.1;
  std::vector<Point> q{{0, 0}, {s, 0}, {s, s}, {0, s}};
  for (auto& p : q) p += s * Point(u(g), u(g)) + Point(0.3, 0.6);
  return q;
}

std::vector<Point> concave_octagon(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.05, 0.45);
  return oracle::star_octagon(u(g), Point(u(g), u(g)), 0.25);
}

Outcome projector_exactness() {
  Outcome o;
  std::mt19937_64 g(77);
  std::normal_distribution<double> n;
  double rep = 0.0, grad = 0.0, orth = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto poly = t % 3 == 0 ? random_triangle(g) : t % 3 == 1 ? distorted_quad(g) : concave_octagon(g);
    const LocalElement el = LocalElement::from_polygon(poly);
    for (int k = 1; k <= 3; ++k) {
      const LocalProjectors lp = build_projectors(el, k, 1.0);
      const ScaledMonomialBasis basis(el.centroid, el.diameter, k);
      Eigen::VectorXd c(basis.size());
      for (auto& x : c) x = n(g);
      const auto p = [&](const Point& x) { return basis.values(x).dot(c); };
      const QuadratureRule q = polygon_rule(el.vertices, element_quadrature_degree(k, lp.ell));
      const Eigen::VectorXd dofs = interpolate_dofs(el, k, p, q);
      // compared as functions on the element: coefficients of thin elements
      // are ill-conditioned without the polynomial being inexact
      const Eigen::VectorXd pc = lp.pinabla * dofs;
      const VectorPolySpace space(el.centroid, el.diameter, k, lp.ell);
      const Eigen::VectorXd gc = lp.projH * dofs;
      double vdiff = 0.0, vscale = 0.0, gdiff = 0.0, gscale = 0.0;
      for (const Point& x : q.points) {
        const Eigen::VectorXd m = basis.values(x);
        vdiff = std::max(vdiff, std::abs(m.dot(pc - c)));
        vscale = std::max(vscale, std::abs(m.dot(c)));
        const Point exact = basis.gradients(x).transpose() * c;
        const Point got = space.values(x).transpose() * gc;
        gdiff = std::max(gdiff, (got - exact).norm());
        gscale = std::max(gscale, exact.norm());
      }
      rep = std::max(rep, vdiff / vscale);
      grad = std::max(grad, gdiff / gscale);

      const Eigen::MatrixXd rhs = projH_rhs(el, k, space);
      orth = std::max(orth, (lp.gram * lp.projH - rhs).norm() / rhs.norm());
    }
  }
  o.require(rep <= kProjectorTol, "pinabla reproduction");
  o.require(grad <= kProjectorTol, "projH reproduction");
  o.require(orth <= kProjectorTol, "orthogonality residual");
  o.detail = fmt("pinabla %.2e, projH %.2e, orthogonality %.2e", rep, grad, orth) + fmt(" (tol %.0e)", kProjectorTol) +
             (o.detail.empty() ? "" : " -- failed: " + o.detail);
  return o;
}

// --- 3 -----------------------------------------------------------------------

Outcome coercivity() {
  Outcome o;
  std::vector<std::pair<std::string, PolyMesh>> meshes;
  for (Domain d : {Domain::UnitSquare, Domain::LShape}) {
    const std::string tag = d == Domain::UnitSquare ? "square" : "lshape";
    for (int n : {8, 16}) {
      meshes.emplace_back("distorted/" + tag, generate_distorted_cartesian(n, 0.2, 1, d));
      meshes.emplace_back("starconcave/" + tag, generate_star_concave(n, 0.3, d));
      const int seeds = d == Domain::UnitSquare ? n * n : 3 * n * n / 4;
      meshes.emplace_back("voronoi/" + tag, generate_voronoi_lloyd(seeds, 50, 1, d));
    }
  }
  int elements = 0, bad = 0, escalated = 0;
  for (const auto& [name, mesh] : meshes)
    for (int k = 1; k <= 3; ++k) {
      try {
        const auto caches = build_element_caches(mesh, std::vector<double>(mesh.num_polygons(), 1.0), {.k = k});
        for (const auto& c : caches) {
          ++elements;
          if (c.proj.kernel_dim != 1 || !c.verified) ++bad;
          if (c.proj.ell > c.proj.requested_ell) ++escalated;
        }
      } catch (const Error& e) {
        o.require(false, name + ": " + e.what());
      }
    }
  o.require(bad == 0, std::to_string(bad) + " elements with kernel dimension != 1");
  o.detail = std::to_string(elements) + " element checks over " + std::to_string(meshes.size()) +
             " meshes, k=1..3; " + std::to_string(escalated) + " needed a larger ell" +
             (o.detail.empty() ? "" : " -- " + o.detail);
  return o;
}

// --- 4-7 ---------------------------------------------------------------------

constexpr double kRateTol = 0.15;
constexpr double kBandRatio = 1.5;
constexpr double kEpsLow = 3.0, kEpsHigh = 30.0;
constexpr double kJumpDiff = 0.15;
constexpr double kSingularLow = 0.55, kSingularHigh = 0.80;

ConvergenceSummary converge(const std::string& problem, MeshFamily family, int k, int levels, bool grade = false) {
  RunConfig c;
  c.problem = problem;
  c.family = family;
  c.k = k;
  c.levels = levels;
  c.n0 = 8;
  c.seed = 1;
  c.grade_corner = grade;
  return run_convergence(c);
}

std::string run_name(const std::string& problem, MeshFamily f, int k) {
  return problem + "/" + family_name(f) + "/k=" + std::to_string(k);
}

// Shared between criteria 4 and 5.
std::vector<std::pair<std::string, ConvergenceSummary>> test1_runs;

Outcome test1_convergence() {
  Outcome o;
  std::string detail;
  for (int k = 1; k <= 3; ++k) {
    const auto s = converge("test1", MeshFamily::Distorted, k, 4);
    test1_runs.emplace_back(run_name("test1", MeshFamily::Distorted, k), s);
    const double m = s.average_rate.value_or(0.0), me = s.average_eta_rate.value_or(0.0);
    o.require(std::abs(m - k) <= kRateTol, fmt("k=%g error rate %.3f", k, m));
    o.require(std::abs(me - k) <= kRateTol, fmt("k=%g eta rate %.3f", k, me));
    detail += fmt("k=%g m=%.3f/%.3f ", k, m, me);
  }
  o.detail = detail + fmt("(error/eta, tol k+-%.2f)", kRateTol) + (o.detail.empty() ? "" : " -- " + o.detail);
  return o;
}

void check_band(Outcome& o, const std::string& name, const ConvergenceSummary& s) {
  const auto ratio = s.epsilon_band_ratio();
  o.require(ratio && *ratio <= kBandRatio, name + fmt(" band ratio %.3f", ratio.value_or(0.0)));
}

Outcome effectivity_stability() {
  Outcome o;
  for (MeshFamily f : {MeshFamily::Voronoi, MeshFamily::StarConcave})
    for (int k = 1; k <= 3; ++k) test1_runs.emplace_back(run_name("test1", f, k), converge("test1", f, k, 3));
  double lo = 1e300, hi = 0.0, worst = 0.0;
  for (const auto& [name, s] : test1_runs) {
    check_band(o, name, s);
    worst = std::max(worst, s.epsilon_band_ratio().value_or(1e300));
    for (const auto& r : s.rows) {
      if (!r.epsilon) continue;
      lo = std::min(lo, *r.epsilon);
      hi = std::max(hi, *r.epsilon);
      o.require(*r.epsilon >= kEpsLow && *r.epsilon <= kEpsHigh, name + fmt(" epsilon %.3f", *r.epsilon));
    }
  }
  o.detail = std::to_string(test1_runs.size()) + " test1 runs: epsilon in " + fmt("[%.2f, %.2f]", lo, hi) +
             fmt(", worst band ratio %.3f (tol %.1f)", worst, kBandRatio) + (o.detail.empty() ? "" : " -- " + o.detail);
  return o;
}

Outcome jump_robustness() {
  Outcome o;
  std::string detail;
  const std::pair<const char*, const char*> pairs[] = {{"test2-g1", "test2-g2"}, {"test3-g3", "test3-g4"}};
  for (auto [mild, severe] : pairs) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 1; k <= 3; ++k) {
      const auto a = converge(mild, MeshFamily::Distorted, k, 4);
      const auto b = converge(severe, MeshFamily::Distorted, k, 4);
      check_band(o, run_name(mild, MeshFamily::Distorted, k), a);
      check_band(o, run_name(severe, MeshFamily::Distorted, k), b);
      const double ea = a.rows.back().epsilon.value_or(0.0), eb = b.rows.back().epsilon.value_or(0.0);
      const double diff = std::abs(ea - eb) / std::min(ea, eb);
      o.require(diff <= kJumpDiff, std::string(mild) + fmt(" k=%g finest epsilon differs by %.1f%%", k, 100 * diff));
      detail += std::string(mild).substr(0, 5) + fmt(" k=%g %.2f vs %.2f; ", k, ea, eb);
    }
    // each test pair has its own five-minute budget
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(s <= 300.0, std::string(mild).substr(0, 5) + fmt(" took %.0f s", s));
  }
  o.detail = detail + fmt("tol %.0f%%", 100 * kJumpDiff) + (o.detail.empty() ? "" : " -- " + o.detail);
  return o;
}

Outcome singular_convergence() {
  Outcome o;
  double lo = 1e300, hi = 0.0, worst = 0.0;
  for (MeshFamily f : {MeshFamily::Distorted, MeshFamily::StarConcave, MeshFamily::Voronoi})
    for (int k = 1; k <= 3; ++k) {
      const auto s = converge("test4", f, k, 4, true);
      const std::string name = run_name("test4", f, k);
      const double m = s.average_rate.value_or(0.0);
      lo = std::min(lo, m);
      hi = std::max(hi, m);
      worst = std::max(worst, s.epsilon_band_ratio().value_or(1e300));
      o.require(m >= kSingularLow && m <= kSingularHigh, name + fmt(" rate %.3f", m));
      check_band(o, name, s);
    }
  o.detail = fmt("rates in [%.3f, %.3f] (tol [%.2f, ", lo, hi, kSingularLow) +
             fmt("%.2f]), worst band ratio %.3f", kSingularHigh, worst) + (o.detail.empty() ? "" : " -- " + o.detail);
  return o;
}

// --- 8 -----------------------------------------------------------------------

Outcome oracle_cross_checks() {
  Outcome o;
  // quadrature against divergence-theorem monomial integrals
  std::mt19937_64 g(5);
  double quad = 0.0;
  for (int t = 0; t < 30; ++t) {
    const auto poly = t % 2 ? oracle::random_convex(g, 3 + t % 8) : oracle::star_octagon(0.1 + 0.01 * t);
    const Point c = Point(0.1, -0.2);
    const double h = 1.3;
    for (int deg = 0; deg <= 8; deg += 2) {
      const QuadratureRule q = polygon_rule(poly, deg);
      const Eigen::VectorXd exact = integrate_monomials(poly, c, h, deg);
      const ScaledMonomialBasis basis(c, h, deg);
      Eigen::VectorXd got = Eigen::VectorXd::Zero(basis.size());
      for (std::size_t i = 0; i < q.size(); ++i) got += q.weights[i] * basis.values(q.points[i]);
      quad = std::max(quad, (got - exact).lpNorm<Eigen::Infinity>() / exact.lpNorm<Eigen::Infinity>());
    }
  }
  o.require(quad <= 1e-12, "quadrature");

  // CG against the direct factorization
  const Discretization d = assemble(generate_distorted_cartesian(16, 0.2, 1), make_test1(), {.k = 2});
  const Eigen::VectorXd direct = solve(d.system);
  const Eigen::VectorXd cg = solve(d.system, SolverKind::ConjugateGradient);
  const double solver = (cg - direct).norm() / direct.norm();
  o.require(solver <= 1e-9, "CG vs direct");

  // symbolic loads against finite-difference PDE residuals
  double pde = 0.0;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* name : {"test1", "test2-g1", "test2-g2", "test3-g3", "test3-g4", "test4"}) {
    const ProblemSpec p = make_problem(name);
    int n = 0;
    while (n < 100) {
      Point x(u(g), u(g));
      if (p.domain == Domain::UnitSquare) x = 0.5 * (x + Point(1, 1));
      if (!domain_contains(p.domain, x) || std::abs(x.x() - 0.5) < 1e-3 || std::abs(x.y() - 0.5) < 1e-3 || x.norm() < 0.05) continue;
      ++n;
      const double hh = 1e-6;
      const double div = (p.grad_u(x + Point(hh, 0)).x() - p.grad_u(x - Point(hh, 0)).x() +
                          p.grad_u(x + Point(0, hh)).y() - p.grad_u(x - Point(0, hh)).y()) / (2 * hh);
      const Point fd = oracle::fd_gradient(p.u, x, hh);
      const double f = p.f(x);
      pde = std::max(pde, std::abs(-p.kappa_at(x) * div - f) / std::max(1.0, std::abs(f)));
      pde = std::max(pde, (fd - p.grad_u(x)).norm() / std::max(1.0, p.grad_u(x).norm()));
    }
  }
  o.require(pde <= 1e-6, "PDE residual");
  o.detail = fmt("quadrature %.2e (tol 1e-12), CG vs direct %.2e (tol 1e-9), PDE residual %.2e (tol 1e-6)", quad, solver, pde) +
             (o.detail.empty() ? "" : " -- failed: " + o.detail);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "patch test", 10.0, patch_suite},
      {2, "projector exactness", 30.0, projector_exactness},
      {3, "coercivity / kernel", 60.0, coercivity},
      {4, "test1 convergence", 300.0, test1_convergence},
      {5, "effectivity stability", 300.0, effectivity_stability},
      {6, "jump robustness", 600.0, jump_robustness},
      {7, "singular convergence", 300.0, singular_convergence},
      {8, "oracle cross-checks", 60.0, oracle_cross_checks},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_seconds) o.pass = false;
    failed += !o.pass;
    std::printf("%s %d %s: %s [%.1f s, limit %.0f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), s,
                c.limit_seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
