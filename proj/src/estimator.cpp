#include "sfvem/estimator.hpp"

#include <cmath>

#include "sfvem/error.hpp"
#include "sfvem/parallel.hpp"

namespace sfvem {

Eigen::VectorXd projected_gradient(const ElementCache& cache, const Eigen::VectorXd& local_dofs) {
  return cache.proj.projH * local_dofs;
}

ElementResidual element_residual(const ElementCache& cache, const Eigen::VectorXd& f_h,
                                 const Eigen::VectorXd& gradient) {
  const LocalElement& el = cache.element;
  const VectorPolySpace space(el.centroid, el.diameter, cache.proj.k, cache.proj.ell);
  ElementResidual r;
  r.coefficients = f_h;
  const auto& members = space.members();
  for (int i = 0; i < space.num_x_members(); ++i)
    r.coefficients[members[i].div_index] += cache.kappa * members[i].div_coef * gradient[i];
  r.norm = std::sqrt(std::max(0.0, r.coefficients.dot(cache.proj.mass * r.coefficients)));
  return r;
}

double edge_jump_norm2(const Point& a, const Point& b, const std::vector<EdgeSide>& sides) {
  int max_ell = 0;
  int k = 1;
  std::vector<VectorPolySpace> spaces;
  for (const auto& s : sides) {
    const LocalElement& el = s.cache->element;
    spaces.emplace_back(el.centroid, el.diameter, s.cache->proj.k, s.cache->proj.ell);
    max_ell = std::max(max_ell, s.cache->proj.ell);
    k = s.cache->proj.k;
  }
  const Rule1D rule = gauss_legendre(k + max_ell + 1);
  const double length = (b - a).norm();
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Point x = a + rule.points[q] * (b - a);
    double j = 0.0;
    for (std::size_t s = 0; s < sides.size(); ++s) {
      const Eigen::Vector2d flux = spaces[s].values(x).transpose() * *sides[s].gradient;
      j += sides[s].cache->kappa * flux.dot(sides[s].normal);
    }
    sum += rule.weights[q] * length * j * j;
  }
  return sum;
}

double data_oscillation2(const ElementCache& cache, const ScalarField& f, const Eigen::VectorXd& f_h) {
  const LocalElement& el = cache.element;
  const ScaledMonomialBasis basis(el.centroid, el.diameter, cache.proj.k);
  double sum = 0.0;
  for (std::size_t q = 0; q < cache.quad.size(); ++q) {
    const double d = f(cache.quad.points[q]) - basis.values(cache.quad.points[q]).dot(f_h);
    sum += cache.quad.weights[q] * d * d;
  }
  return el.diameter * el.diameter / cache.kappa * sum;
}

double error_norm2(const ElementCache& cache, const VectorField& grad_u, const Eigen::VectorXd& gradient) {
  const LocalElement& el = cache.element;
  const VectorPolySpace space(el.centroid, el.diameter, cache.proj.k, cache.proj.ell);
  double sum = 0.0;
  for (std::size_t q = 0; q < cache.quad.size(); ++q) {
    const Point& x = cache.quad.points[q];
    const Eigen::Vector2d d = grad_u(x) - space.values(x).transpose() * gradient;
    sum += cache.quad.weights[q] * d.squaredNorm();
  }
  return cache.kappa * sum;
}

double effectivity(double eta, double error) {
  if (!(error > 1e-14)) throw UnsupportedOperation("effectivity index undefined: error below 1e-14");
  return eta / error;
}

EstimatorReport estimate(const PolyMesh& mesh, const Discretization& d, const Eigen::VectorXd& uh,
                         const ScalarField& f, const VectorField& grad_u) {
  const int np = mesh.num_polygons();
  EstimatorReport report;
  report.elements.resize(np);
  std::vector<Eigen::VectorXd> gradients(np);
  parallel_for(np, [&](int e) {
    const ElementCache& c = d.caches[e];
    gradients[e] = projected_gradient(c, local_values(d.dofs, e, uh));
    ElementEstimate& est = report.elements[e];
    const double h = c.element.diameter;
    const double r = element_residual(c, d.f_h[e], gradients[e]).norm;
    est.volume = h * h / c.kappa * r * r;
    est.F2 = data_oscillation2(c, f, d.f_h[e]);
    est.error2 = error_norm2(c, grad_u, gradients[e]);
  });

  // outward normal of each polygon on each of its edges
  auto normal_of = [&](int e, int g) {
    for (const auto& le : d.caches[e].element.edges)
      if (le.global == g) return le.normal;
    throw Error("edge " + std::to_string(g) + " is not on polygon " + std::to_string(e));
  };

  report.edge_terms.assign(mesh.num_edges(), 0.0);
  parallel_for(mesh.num_edges(), [&](int g) {
    const MeshEdge& edge = mesh.edge(g);
    if (edge.boundary()) return;
    std::vector<EdgeSide> sides;
    double k_omega = 0.0;
    for (int p : edge.polygons) {
      sides.push_back({&d.caches[p], &gradients[p], normal_of(p, g)});
      k_omega += d.caches[p].kappa;
    }
    const double j2 = edge_jump_norm2(mesh.vertex(edge.vertices[0]), mesh.vertex(edge.vertices[1]), sides);
    report.edge_terms[g] = edge.length / k_omega * j2;
  });
  for (int g = 0; g < mesh.num_edges(); ++g) {
    const MeshEdge& edge = mesh.edge(g);
    if (edge.boundary()) continue;
    for (int p : edge.polygons) report.elements[p].edge += 0.5 * report.edge_terms[g];
  }

  double eta2 = 0.0, F2 = 0.0, err2 = 0.0;
  for (auto& est : report.elements) {
    est.eta2 = est.volume + est.edge;
    eta2 += est.eta2;
    F2 += est.F2;
    err2 += est.error2;
  }
  report.eta = std::sqrt(eta2);
  report.F = std::sqrt(F2);
  report.error = std::sqrt(err2);
  if (report.error > 1e-14) report.effectivity = report.eta / report.error;
  return report;
}

}  // namespace sfvem
