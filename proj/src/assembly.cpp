#include "sfvem/assembly.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "sfvem/error.hpp"
#include "sfvem/parallel.hpp"

namespace sfvem {

DofMap DofMap::build(const PolyMesh& mesh, int k) {
  if (k < 1) throw ConfigError("polynomial degree must be >= 1");
  DofMap d;
  d.k_ = k;
  const int nv = mesh.num_vertices();
  const int ne = mesh.num_edges();
  const int per_edge = k - 1;
  const int per_element = poly_dim(k - 2);
  const int nodal = nv + ne * per_edge;
  d.size_ = nodal + mesh.num_polygons() * per_element;
  d.boundary_.assign(d.size_, 0);
  d.nodes_.resize(nodal);

  for (int v = 0; v < nv; ++v) {
    d.nodes_[v] = mesh.vertex(v);
    d.boundary_[v] = mesh.boundary_vertex(v);
  }
  const Rule1D lobatto = gauss_lobatto(k + 1);
  for (int g = 0; g < ne; ++g) {
    const MeshEdge& edge = mesh.edge(g);
    const Point& a = mesh.vertex(edge.vertices[0]);
    const Point& b = mesh.vertex(edge.vertices[1]);
    for (int j = 0; j < per_edge; ++j) {
      const int id = nv + g * per_edge + j;
      d.nodes_[id] = a + lobatto.points[j + 1] * (b - a);
      d.boundary_[id] = edge.boundary();
    }
  }

  d.element_dofs_.resize(mesh.num_polygons());
  for (int e = 0; e < mesh.num_polygons(); ++e) {
    const auto& poly = mesh.polygon(e);
    const int n = static_cast<int>(poly.size());
    const ElementDofs local(k, n);
    auto& ids = d.element_dofs_[e];
    ids.resize(local.size());
    for (int i = 0; i < n; ++i) {
      ids[local.vertex(i)] = poly[i];
      const int g = mesh.polygon_edges(e)[i];
      const bool reversed = poly[i] > poly[(i + 1) % n];
      for (int j = 0; j < per_edge; ++j)
        ids[local.edge_node(i, j)] = nv + g * per_edge + (reversed ? per_edge - 1 - j : j);
    }
    for (int a = 0; a < per_element; ++a) ids[local.moment(a)] = nodal + e * per_element + a;
  }
  return d;
}

int DofMap::num_boundary() const {
  int n = 0;
  for (char b : boundary_) n += b;
  return n;
}

std::vector<ElementCache> build_element_caches(const PolyMesh& mesh, const std::vector<double>& kappa,
                                               const AssemblyOptions& options,
                                               const std::vector<Point>& singular_points) {
  const int k = options.k;
  if (static_cast<int>(kappa.size()) != mesh.num_polygons())
    throw ConfigError("one diffusion value per polygon is required");
  std::vector<ElementCache> caches(mesh.num_polygons());
  parallel_for(mesh.num_polygons(), [&](int e) {
    ElementCache& c = caches[e];
    c.element = LocalElement::from_mesh(mesh, e);
    c.kappa = kappa[e];
    if (!(c.kappa > 0.0)) throw ElementError(e, "diffusion must be positive", c.element.dump());
    const int ell = options.force_ell ? *options.force_ell : select_ell(k, c.element.num_vertices());
    c.proj = verify_coercivity(c.element, k, ell, c.kappa);

    std::optional<Point> singular;
    if (options.grade_corner)
      for (const Point& s : singular_points)
        for (const Point& v : c.element.vertices)
          if ((v - s).norm() <= 1e-12 * c.element.diameter) singular = s;
    const int degree = std::max(element_quadrature_degree(k, c.proj.ell), 2 * k + 6);
    c.quad = polygon_rule(c.element.vertices, degree, singular, options.grading_depth);
    c.verified = true;
  });
  return caches;
}

Eigen::VectorXd LinearSystem::expand(const Eigen::VectorXd& free) const {
  Eigen::VectorXd full = lifting;
  for (std::size_t i = 0; i < free_index.size(); ++i)
    if (free_index[i] >= 0) full[i] = free[free_index[i]];
  return full;
}

Eigen::VectorXd project_load(const ElementCache& cache, const ScalarField& f) {
  const LocalElement& el = cache.element;
  const ScaledMonomialBasis basis(el.centroid, el.diameter, cache.proj.k);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.size());
  for (std::size_t q = 0; q < cache.quad.size(); ++q)
    rhs += cache.quad.weights[q] * f(cache.quad.points[q]) * basis.values(cache.quad.points[q]);
  return cache.proj.mass.ldlt().solve(rhs);
}

Discretization assemble(const PolyMesh& mesh, std::vector<ElementCache> caches, const ScalarField& f,
                        const ScalarField& g, int k) {
  Discretization d;
  d.dofs = DofMap::build(mesh, k);
  d.caches = std::move(caches);
  const int np = mesh.num_polygons();
  for (int e = 0; e < np; ++e) {
    if (!d.caches[e].verified || d.caches[e].proj.k != k)
      throw ElementError(e, "element cache is not verified for this degree", d.caches[e].element.dump());
  }

  LinearSystem& sys = d.system;
  const int n = d.dofs.size();
  sys.lifting = Eigen::VectorXd::Zero(n);
  sys.free_index.assign(n, -1);
  int nfree = 0;
  for (int i = 0; i < n; ++i) {
    if (d.dofs.boundary(i)) sys.lifting[i] = g(d.dofs.nodes()[i]);
    else sys.free_index[i] = nfree++;
  }

  d.f_h.resize(np);
  std::vector<Eigen::VectorXd> loads(np);
  parallel_for(np, [&](int e) {
    d.f_h[e] = project_load(d.caches[e], f);
    loads[e] = d.caches[e].proj.moments.transpose() * d.f_h[e];
  });

  sys.b = Eigen::VectorXd::Zero(nfree);
  std::vector<Eigen::Triplet<double>> triplets;
  for (int e = 0; e < np; ++e) {
    const auto& ids = d.dofs.element(e);
    const Eigen::MatrixXd& s = d.caches[e].proj.stiffness;
    const int m = static_cast<int>(ids.size());
    for (int i = 0; i < m; ++i) {
      const int fi = sys.free_index[ids[i]];
      if (fi < 0) continue;
      sys.b[fi] += loads[e][i];
      for (int j = 0; j < m; ++j) {
        const int fj = sys.free_index[ids[j]];
        if (fj < 0) sys.b[fi] -= s(i, j) * sys.lifting[ids[j]];
        else triplets.emplace_back(fi, fj, s(i, j));
      }
    }
  }
  sys.A.resize(nfree, nfree);
  sys.A.setFromTriplets(triplets.begin(), triplets.end());
  return d;
}

Discretization assemble(const PolyMesh& mesh, const ProblemSpec& problem,
                        const AssemblyOptions& options) {
  auto caches = build_element_caches(mesh, problem.polygon_kappa(mesh), options, problem.singular_points);
  return assemble(mesh, std::move(caches), problem.f, problem.g, options.k);
}

Eigen::VectorXd solve(const LinearSystem& system, SolverKind kind, SolveInfo* info) {
  const Eigen::Index n = system.A.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  SolveInfo local;
  if (n > 0) {
    if (kind == SolverKind::Direct) {
      Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(system.A);
      if (llt.info() != Eigen::Success)
        throw Error("sparse Cholesky factorization failed: matrix is not positive definite");
      x = llt.solve(system.b);
    } else {
      Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                               Eigen::DiagonalPreconditioner<double>>
          cg;
      cg.setTolerance(1e-12);
      cg.setMaxIterations(static_cast<int>(std::max<Eigen::Index>(1000, 20 * n)));
      cg.compute(system.A);
      x = cg.solve(system.b);
      local.iterations = static_cast<int>(cg.iterations());
      if (cg.info() != Eigen::Success)
        throw Error("conjugate gradient did not converge (estimated residual " +
                    std::to_string(cg.error()) + ")");
    }
    const double bn = system.b.norm();
    const double r = (system.A * x - system.b).norm();
    local.relative_residual = bn > 0.0 ? r / bn : r;
  }
  if (info) *info = local;
  return x;
}

Eigen::VectorXd solve_full(const Discretization& d, SolverKind kind, SolveInfo* info) {
  return d.system.expand(solve(d.system, kind, info));
}

Eigen::VectorXd local_values(const DofMap& dofs, int e, const Eigen::VectorXd& global) {
  const auto& ids = dofs.element(e);
  Eigen::VectorXd v(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) v[i] = global[ids[i]];
  return v;
}

Eigen::VectorXd interpolate(const PolyMesh& mesh, const DofMap& dofs,
                            const std::vector<ElementCache>& caches, const ScalarField& f) {
  Eigen::VectorXd v(dofs.size());
  for (std::size_t i = 0; i < dofs.nodes().size(); ++i) v[i] = f(dofs.nodes()[i]);
  const int k = dofs.k();
  if (k < 2) return v;
  for (int e = 0; e < mesh.num_polygons(); ++e) {
    const LocalElement& el = caches[e].element;
    const ScaledMonomialBasis basis(el.centroid, el.diameter, k - 2);
    Eigen::VectorXd m = Eigen::VectorXd::Zero(basis.size());
    for (std::size_t q = 0; q < caches[e].quad.size(); ++q)
      m += caches[e].quad.weights[q] * f(caches[e].quad.points[q]) * basis.values(caches[e].quad.points[q]);
    const ElementDofs local(k, el.num_vertices());
    for (int a = 0; a < basis.size(); ++a) v[dofs.element(e)[local.moment(a)]] = m[a] / el.area;
  }
  return v;
}

}  // namespace sfvem
