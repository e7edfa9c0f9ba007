#include <doctest.h>

#include <set>

#include "sfvem/assembly.hpp"
#include "sfvem/error.hpp"
#include "sfvem/mesh_generators.hpp"
#include "sfvem/problems.hpp"

using namespace sfvem;

namespace {

double max_abs(const Eigen::SparseMatrix<double>& A) {
  double m = 0.0;
  for (int c = 0; c < A.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

}  // namespace

TEST_CASE("dof map: counts, sharing and boundary flags") {
  const PolyMesh m = generate_voronoi_lloyd(40, 10, 6);
  for (int k = 1; k <= 3; ++k) {
    const DofMap d = DofMap::build(m, k);
    int moments = 0;
    for (int e = 0; e < m.num_polygons(); ++e) moments += poly_dim(k - 2);
    CHECK(d.size() == m.num_vertices() + (k - 1) * m.num_edges() + moments);
    int boundary = 0;
    for (int i = 0; i < d.size(); ++i) boundary += d.boundary(i);
    CHECK(boundary == d.num_boundary());
    CHECK(d.num_boundary() == m.num_boundary_edges() * k);

    // both sides of an edge see the same global dofs at the same physical nodes
    for (int e = 0; e < m.num_polygons(); ++e) {
      const auto& ids = d.element(e);
      CHECK(std::set<int>(ids.begin(), ids.end()).size() == ids.size());
      const ElementDofs layout(k, static_cast<int>(m.polygon(e).size()));
      const auto pts = m.polygon_points(e);
      for (int i = 0; i < layout.num_vertices(); ++i) {
        const Point a = pts[i], b = pts[(i + 1) % pts.size()];
        for (int j = 0; j < k - 1; ++j) {
          const Point node = d.nodes()[ids[layout.edge_node(i, j)]];
          // node lies on segment ab
          const double t = (node - a).dot(b - a) / (b - a).squaredNorm();
          CHECK((a + t * (b - a) - node).norm() < 1e-13);
          CHECK(t > 0.0);
          CHECK(t < 1.0);
        }
      }
    }
  }
}

TEST_CASE("edge node order follows the traversal direction") {
  // with k = 3 the two interior nodes are distinct, so a wrong reversal shows up
  const PolyMesh m = generate_distorted_cartesian(4, 0.2, 2);
  const DofMap d = DofMap::build(m, 3);
  for (int e = 0; e < m.num_polygons(); ++e) {
    const auto pts = m.polygon_points(e);
    const ElementDofs layout(3, static_cast<int>(pts.size()));
    for (int i = 0; i < layout.num_vertices(); ++i) {
      const Point a = pts[i];
      const double t0 = (d.nodes()[d.element(e)[layout.edge_node(i, 0)]] - a).norm();
      const double t1 = (d.nodes()[d.element(e)[layout.edge_node(i, 1)]] - a).norm();
      CHECK(t0 < t1);
    }
  }
}

TEST_CASE("zero data gives the zero solution") {
  ProblemSpec p = make_test1();
  p.f = [](const Point&) { return 0.0; };
  p.g = p.f;
  const Discretization d = assemble(generate_distorted_cartesian(4, 0.2, 1), p, {.k = 2});
  CHECK(d.system.b.norm() == 0.0);
  CHECK(solve_full(d).norm() == 0.0);
}

TEST_CASE("load of a constant sums to the area") {
  const PolyMesh m = PolyMesh::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
  for (int k = 1; k <= 3; ++k) {
    auto caches = build_element_caches(m, {1.0}, {.k = k});
    const Eigen::VectorXd fh = project_load(caches[0], [](const Point&) { return 1.0; });
    const Eigen::VectorXd b = caches[0].proj.moments.transpose() * fh;
    // the dofs of 1 combine the basis into 1, so they pair b to the area
    const Eigen::VectorXd one = interpolate_dofs(caches[0].element, k, [](const Point&) { return 1.0; }, caches[0].quad);
    CHECK(b.dot(one) == doctest::Approx(1.0).epsilon(1e-13));
    if (k == 1) CHECK(b.sum() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("global patch test reproduces polynomial dofs") {
  const PolyMesh m = generate_distorted_cartesian(8, 0.2, 3);
  for (int k = 1; k <= 3; ++k) {
    const ProblemSpec p = make_patch(k, 3.0);
    const Discretization d = assemble(m, p, {.k = k});
    const Eigen::VectorXd uh = solve_full(d);
    const Eigen::VectorXd ui = interpolate(m, d.dofs, d.caches, p.u);
    CHECK((uh - ui).lpNorm<Eigen::Infinity>() <= 1e-9);
  }
}

TEST_CASE("harmonic polynomial with zero load") {
  const PolyMesh m = generate_star_concave(2, 0.3);
  ProblemSpec p = make_patch(1);
  p.u = [](const Point& x) { return x.x() * x.x() - x.y() * x.y() + x.x() * x.y(); };
  p.g = p.u;
  p.f = [](const Point&) { return 0.0; };
  const Discretization d = assemble(m, p, {.k = 2});
  CHECK((solve_full(d) - interpolate(m, d.dofs, d.caches, p.u)).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("one free dof") {
  LinearSystem s;
  s.A.resize(1, 1);
  s.A.insert(0, 0) = 4.0;
  s.b = Eigen::VectorXd::Constant(1, 2.0);
  CHECK(solve(s)(0) == doctest::Approx(0.5));
  CHECK(solve(s, SolverKind::ConjugateGradient)(0) == doctest::Approx(0.5));
}

TEST_CASE("system is symmetric and the direct solve is accurate") {
  const Discretization d = assemble(generate_distorted_cartesian(8, 0.2, 1), make_test1(), {.k = 1});
  const Eigen::SparseMatrix<double> At = d.system.A.transpose();
  CHECK(max_abs(d.system.A - At) <= 1e-13 * max_abs(d.system.A));
  SolveInfo info;
  const Eigen::VectorXd x = solve(d.system, SolverKind::Direct, &info);
  CHECK((d.system.A * x - d.system.b).norm() <= 1e-12 * d.system.b.norm());
  CHECK(info.relative_residual <= 1e-12);
}

TEST_CASE("conjugate gradient agrees with the direct solver") {
  const Discretization d = assemble(generate_distorted_cartesian(16, 0.2, 1), make_test1(), {.k = 2});
  SolveInfo info;
  const Eigen::VectorXd direct = solve(d.system);
  const Eigen::VectorXd cg = solve(d.system, SolverKind::ConjugateGradient, &info);
  CHECK((cg - direct).norm() <= 1e-9 * direct.norm());
  CHECK(info.iterations > 0);
  CHECK(info.relative_residual <= 1e-12);
}

TEST_CASE("scaling K and f together leaves the solution unchanged") {
  const PolyMesh m = generate_distorted_cartesian(4, 0.2, 9);
  ProblemSpec p = make_test2(1);
  const Eigen::VectorXd u1 = solve_full(assemble(m.with_regions(p.polygon_regions(m)), p, {.k = 2}));
  for (auto& k : p.kappa) k *= 7.0;
  const auto f = p.f;
  p.f = [f](const Point& x) { return 7.0 * f(x); };
  const Eigen::VectorXd u2 = solve_full(assemble(m, p, {.k = 2}));
  CHECK((u1 - u2).norm() <= 1e-12 * u1.norm());
}

TEST_CASE("forced small ell still ends in a verified system") {
  const PolyMesh m = generate_voronoi_lloyd(30, 10, 2);
  const auto caches = build_element_caches(m, std::vector<double>(m.num_polygons(), 1.0), {.k = 1, .force_ell = 0});
  for (const auto& c : caches) {
    CHECK(c.verified);
    CHECK(c.proj.kernel_dim == 1);
  }
}

TEST_CASE("wrong kappa count is rejected") {
  const PolyMesh m = generate_distorted_cartesian(2, 0.0, 0);
  CHECK_THROWS_AS(build_element_caches(m, {1.0}, {.k = 1}), Error);
}
