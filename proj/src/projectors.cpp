#include "sfvem/projectors.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sfvem/error.hpp"

namespace sfvem {

namespace {

// Lagrange basis through `nodes`, evaluated at s.
Eigen::VectorXd lagrange_values(const std::vector<double>& nodes, double s) {
  const int n = static_cast<int>(nodes.size());
  Eigen::VectorXd l = Eigen::VectorXd::Ones(n);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m)
      if (m != j) l[j] *= (s - nodes[m]) / (nodes[j] - nodes[m]);
  return l;
}

// Calls fn(local_edge, point, weight * |e|, trace_basis_values) for an edge rule.
template <typename Fn>
void for_each_edge_point(const LocalElement& el, int k, const Rule1D& rule, Fn&& fn) {
  const Rule1D lobatto = gauss_lobatto(k + 1);
  std::vector<Eigen::VectorXd> traces;
  traces.reserve(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q) traces.push_back(lagrange_values(lobatto.points, rule.points[q]));
  for (int i = 0; i < el.num_vertices(); ++i) {
    const LocalEdge& e = el.edges[i];
    for (std::size_t q = 0; q < rule.size(); ++q)
      fn(i, Point(e.a + rule.points[q] * (e.b - e.a)), rule.weights[q] * e.length, traces[q]);
  }
}

}  // namespace

Eigen::VectorXd element_monomial_integrals(const LocalElement& el, int max_degree) {
  return integrate_monomials(el.vertices, el.centroid, el.diameter, max_degree);
}

Eigen::MatrixXd pinabla_matrix(const LocalElement& el, int k) {
  const ScaledMonomialBasis basis(el.centroid, el.diameter, k);
  const ElementDofs dofs(k, el.num_vertices());
  const int nk = basis.size();
  const int nd = dofs.size();
  const double h = el.diameter;
  const Eigen::VectorXd integrals = element_monomial_integrals(el, 2 * k);
  const Eigen::MatrixXd stiff = monomial_stiffness_matrix(integrals, h, k);

  // <grad m_i, grad phi_j> = -int_E phi_j lap m_i + int_dE phi_j dn m_i
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nk + 1, nd);
  Eigen::VectorXd boundary_mean = Eigen::VectorXd::Zero(nk);
  for_each_edge_point(el, k, gauss_legendre_for_degree(2 * k), [&](int edge, const Point& x, double w,
                                                                   const Eigen::VectorXd& trace) {
    const Eigen::VectorXd dn = basis.gradients(x) * el.edges[edge].normal;
    for (int j = 0; j <= k; ++j) rhs.block(0, dofs.edge_trace_dof(edge, j), nk, 1) += (w * trace[j]) * dn;
    if (k == 1) boundary_mean += w * basis.values(x);
  });
  const auto& exps = basis.exponents();
  for (int i = 0; i < nk; ++i) {
    const auto [a, b] = exps[i];
    if (a >= 2) rhs(i, dofs.moment(monomial_index(a - 2, b))) -= a * (a - 1) / (h * h) * el.area;
    if (b >= 2) rhs(i, dofs.moment(monomial_index(a, b - 2))) -= b * (b - 1) / (h * h) * el.area;
  }

  // mean constraint, scaled by 1/|E|
  Eigen::VectorXd constraint(nk);
  if (k == 1) {
    constraint = boundary_mean / el.area;
    for (int i = 0; i < el.num_vertices(); ++i) {
      const double half = 0.5 * el.edges[i].length / el.area;
      rhs(nk, dofs.vertex(i)) += half;
      rhs(nk, dofs.vertex((i + 1) % el.num_vertices())) += half;
    }
  } else {
    constraint = integrals.head(nk) / el.area;
    rhs(nk, dofs.moment(0)) = 1.0;
  }

  Eigen::MatrixXd saddle = Eigen::MatrixXd::Zero(nk + 1, nk + 1);
  saddle.topLeftCorner(nk, nk) = stiff;
  saddle.block(0, nk, nk, 1) = constraint;
  saddle.block(nk, 0, 1, nk) = constraint.transpose();
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(saddle);
  if (lu.rank() < nk + 1)
    throw ElementError(el.index, "singular H1 projection system", el.dump());
  return lu.solve(rhs).topRows(nk);
}

Eigen::MatrixXd moments_full(const LocalElement& el, int k, const Eigen::MatrixXd& pinabla,
                             const Eigen::MatrixXd& mass) {
  const ElementDofs dofs(k, el.num_vertices());
  const int nk = poly_dim(k);
  const int low = poly_dim(k - 2);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nk, dofs.size());
  for (int i = 0; i < low; ++i) m(i, dofs.moment(i)) = el.area;
  if (nk > low) m.bottomRows(nk - low) = mass.bottomRows(nk - low) * pinabla;
  return m;
}

Eigen::MatrixXd projH_rhs(const LocalElement& el, int k, const VectorPolySpace& space) {
  const ElementDofs dofs(k, el.num_vertices());
  const int np = space.size();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(np, dofs.size());
  // <grad phi, p> = -int_E phi div p + int_dE phi p.n
  for_each_edge_point(el, k, gauss_legendre_for_degree(2 * k + space.ell()),
                      [&](int edge, const Point& x, double w, const Eigen::VectorXd& trace) {
                        const Eigen::VectorXd pn = space.values(x) * el.edges[edge].normal;
                        for (int j = 0; j <= k; ++j)
                          rhs.col(dofs.edge_trace_dof(edge, j)) += (w * trace[j]) * pn;
                      });
  const auto& members = space.members();
  for (int i = 0; i < space.num_x_members(); ++i)
    rhs(i, dofs.moment(members[i].div_index)) -= members[i].div_coef * el.area;
  return rhs;
}

GradientProjection projH_matrix(const LocalElement& el, int k, int ell, const QuadratureRule& quad) {
  const VectorPolySpace space(el.centroid, el.diameter, k, ell);
  GradientProjection out;
  out.gram = gram_matrix(space, quad);
  const Eigen::MatrixXd rhs = projH_rhs(el, k, space);

  // Jacobi scaling before the pivoted LDL^T solve
  const Eigen::VectorXd d = out.gram.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd scaled = d.asDiagonal() * out.gram * d.asDiagonal();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  out.gram_condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(out.gram_condition <= 1e14))
    throw ElementError(el.index,
                       "numerically singular Gram matrix (condition " +
                           std::to_string(out.gram_condition) + ", ell " + std::to_string(ell) + ")",
                       el.dump());
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(scaled);
  out.projH = d.asDiagonal() * ldlt.solve(d.asDiagonal() * rhs);
  return out;
}

int numerical_kernel_dim(const Eigen::MatrixXd& symmetric) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric, Eigen::EigenvaluesOnly);
  const double threshold = 1e-10 * symmetric.trace() / static_cast<double>(symmetric.rows());
  int count = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
    if (eig.eigenvalues()[i] < threshold) ++count;
  return count;
}

LocalProjectors verify_coercivity(const LocalElement& el, int k, int ell, double kappa) {
  if (k < 1) throw Error("polynomial degree must be >= 1");
  LocalProjectors p;
  p.k = k;
  p.requested_ell = ell;
  p.pinabla = pinabla_matrix(el, k);
  p.mass = monomial_mass_matrix(element_monomial_integrals(el, 2 * k), k);
  p.moments = moments_full(el, k, p.pinabla, p.mass);

  std::string last = "no candidate ell";
  for (int candidate = ell; candidate <= k + 10; ++candidate) {
    const QuadratureRule quad = polygon_rule(el.vertices, element_quadrature_degree(k, candidate));
    GradientProjection gp;
    try {
      gp = projH_matrix(el, k, candidate, quad);
    } catch (const ElementError& err) {
      last = err.what();
      continue;
    }
    Eigen::MatrixXd s = kappa * gp.projH.transpose() * gp.gram * gp.projH;
    s = 0.5 * (s + s.transpose()).eval();
    const int kernel = numerical_kernel_dim(s);
    if (kernel == 1) {
      p.ell = candidate;
      p.projH = std::move(gp.projH);
      p.gram = std::move(gp.gram);
      p.gram_condition = gp.gram_condition;
      p.stiffness = std::move(s);
      p.kernel_dim = kernel;
      return p;
    }
    last = "stiffness kernel of dimension " + std::to_string(kernel) + " at ell " +
           std::to_string(candidate);
  }
  throw ElementError(el.index, "coercivity check failed: " + last, el.dump());
}

LocalProjectors build_projectors(const LocalElement& el, int k, double kappa) {
  return verify_coercivity(el, k, select_ell(k, el.num_vertices()), kappa);
}

Eigen::VectorXd interpolate_dofs(const LocalElement& el, int k,
                                 const std::function<double(const Point&)>& f,
                                 const QuadratureRule& quad) {
  const ElementDofs dofs(k, el.num_vertices());
  Eigen::VectorXd v(dofs.size());
  for (int i = 0; i < el.num_vertices(); ++i) v[dofs.vertex(i)] = f(el.vertices[i]);
  if (k > 1) {
    const Rule1D lobatto = gauss_lobatto(k + 1);
    for (int i = 0; i < el.num_vertices(); ++i)
      for (int j = 1; j < k; ++j) {
        const LocalEdge& e = el.edges[i];
        v[dofs.edge_node(i, j - 1)] = f(e.a + lobatto.points[j] * (e.b - e.a));
      }
    const ScaledMonomialBasis basis(el.centroid, el.diameter, k - 2);
    Eigen::VectorXd m = Eigen::VectorXd::Zero(basis.size());
    for (std::size_t q = 0; q < quad.size(); ++q) m += quad.weights[q] * f(quad.points[q]) * basis.values(quad.points[q]);
    v.tail(basis.size()) = m / el.area;
  }
  return v;
}

}  // namespace sfvem
