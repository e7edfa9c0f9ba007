#include "sfvem/polybasis.hpp"

#include <cmath>

#include "sfvem/error.hpp"

namespace sfvem {

std::vector<Exponent> monomial_exponents(int degree) {
  std::vector<Exponent> e;
  e.reserve(poly_dim(degree));
  for (int d = 0; d <= degree; ++d)
    for (int b = 0; b <= d; ++b) e.push_back({d - b, b});
  return e;
}

ScaledMonomialBasis::ScaledMonomialBasis(Point center, double diameter, int degree)
    : center_(std::move(center)), diameter_(diameter), degree_(degree),
      exponents_(monomial_exponents(degree)) {}

namespace {

void powers(double t, int degree, double* out) {
  out[0] = 1.0;
  for (int i = 1; i <= degree; ++i) out[i] = out[i - 1] * t;
}

}  // namespace

Eigen::VectorXd ScaledMonomialBasis::values(const Point& p) const {
  const Point s = scaled(p);
  std::vector<double> px(degree_ + 1), py(degree_ + 1);
  powers(s.x(), degree_, px.data());
  powers(s.y(), degree_, py.data());
  Eigen::VectorXd v(size());
  for (int i = 0; i < size(); ++i) v[i] = px[exponents_[i].x] * py[exponents_[i].y];
  return v;
}

Eigen::MatrixX2d ScaledMonomialBasis::gradients(const Point& p) const {
  const Point s = scaled(p);
  std::vector<double> px(degree_ + 1), py(degree_ + 1);
  powers(s.x(), degree_, px.data());
  powers(s.y(), degree_, py.data());
  Eigen::MatrixX2d g(size(), 2);
  for (int i = 0; i < size(); ++i) {
    const auto [a, b] = exponents_[i];
    g(i, 0) = a > 0 ? a * px[a - 1] * py[b] / diameter_ : 0.0;
    g(i, 1) = b > 0 ? b * px[a] * py[b - 1] / diameter_ : 0.0;
  }
  return g;
}

VectorPolySpace::VectorPolySpace(Point center, double diameter, int k, int ell)
    : k_(k), ell_(ell), component_basis_(std::move(center), diameter, std::max(k - 1, k + ell - 1)) {
  if (k < 1 || ell < 0) throw Error("vector polynomial space needs k >= 1 and ell >= 0");
  const double h = diameter;
  for (const auto& [a, b] : monomial_exponents(k - 2)) {
    Member m;
    m.x_index = monomial_index(a + 1, b);
    m.x_coef = 1.0;
    m.y_index = monomial_index(a, b + 1);
    m.y_coef = 1.0;
    // div(x m_alpha) = (2 + |alpha|) m_alpha / h by Euler's identity
    m.div_index = monomial_index(a, b);
    m.div_coef = (2.0 + a + b) / h;
    members_.push_back(m);
  }
  for (const auto& [a, b] : monomial_exponents(k + ell)) {
    if (a + b == 0) continue;
    Member m;
    if (b > 0) {
      m.x_index = monomial_index(a, b - 1);
      m.x_coef = b / h;
    }
    if (a > 0) {
      m.y_index = monomial_index(a - 1, b);
      m.y_coef = -a / h;
    }
    members_.push_back(m);
  }
}

Eigen::MatrixX2d VectorPolySpace::values(const Eigen::VectorXd& mono) const {
  Eigen::MatrixX2d v(size(), 2);
  for (int i = 0; i < size(); ++i) {
    const auto& m = members_[i];
    v(i, 0) = m.x_index >= 0 ? m.x_coef * mono[m.x_index] : 0.0;
    v(i, 1) = m.y_index >= 0 ? m.y_coef * mono[m.y_index] : 0.0;
  }
  return v;
}

Eigen::MatrixX2d VectorPolySpace::values(const Point& p) const {
  return values(component_basis_.values(p));
}

int select_ell(int k, int vertex_count) {
  int ell = 0;
  while (poly_dim(k + ell) < k * vertex_count) ++ell;
  return ell;
}

Eigen::VectorXd integrate_monomials(std::span<const Point> polygon, const Point& center,
                                    double diameter, int max_degree) {
  // int_E xi^a eta^b = sum_e n_x int_e h xi^(a+1) eta^b / (a+1)
  const auto exps = monomial_exponents(max_degree);
  Eigen::VectorXd result = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(exps.size()));
  const Rule1D g = gauss_legendre_for_degree(max_degree + 1);
  const std::size_t n = polygon.size();
  std::vector<double> px(max_degree + 2), py(max_degree + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = (polygon[i] - center) / diameter;
    const Point b = (polygon[(i + 1) % n] - center) / diameter;
    // physical n_x * |e| = (b - a).y * h
    const double nx_len = (b - a).y() * diameter;
    if (nx_len == 0.0) continue;
    for (std::size_t q = 0; q < g.size(); ++q) {
      const Point s = a + g.points[q] * (b - a);
      powers(s.x(), max_degree + 1, px.data());
      powers(s.y(), max_degree + 1, py.data());
      const double w = g.weights[q] * nx_len * diameter;
      for (std::size_t j = 0; j < exps.size(); ++j) {
        const auto [ea, eb] = exps[j];
        result[static_cast<Eigen::Index>(j)] += w * px[ea + 1] * py[eb] / (ea + 1.0);
      }
    }
  }
  return result;
}

Eigen::MatrixXd gram_matrix(const VectorPolySpace& space, const QuadratureRule& quad) {
  const int n = space.size();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd vx(n, static_cast<Eigen::Index>(quad.size()));
  Eigen::MatrixXd vy(n, static_cast<Eigen::Index>(quad.size()));
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const Eigen::MatrixX2d v = space.values(quad.points[q]);
    const double sw = std::sqrt(quad.weights[q]);
    vx.col(static_cast<Eigen::Index>(q)) = sw * v.col(0);
    vy.col(static_cast<Eigen::Index>(q)) = sw * v.col(1);
  }
  g.selfadjointView<Eigen::Lower>().rankUpdate(vx);
  g.selfadjointView<Eigen::Lower>().rankUpdate(vy);
  return g.selfadjointView<Eigen::Lower>();
}

Eigen::MatrixXd monomial_mass_matrix(const Eigen::VectorXd& integrals, int degree) {
  const auto exps = monomial_exponents(degree);
  const int n = static_cast<int>(exps.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = integrals[monomial_index(exps[i].x + exps[j].x, exps[i].y + exps[j].y)];
  return m;
}

Eigen::MatrixXd monomial_stiffness_matrix(const Eigen::VectorXd& integrals, double diameter,
                                          int degree) {
  const auto exps = monomial_exponents(degree);
  const int n = static_cast<int>(exps.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  const double h2 = diameter * diameter;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto [ai, bi] = exps[i];
      const auto [aj, bj] = exps[j];
      double v = 0.0;
      if (ai > 0 && aj > 0) v += ai * aj * integrals[monomial_index(ai + aj - 2, bi + bj)];
      if (bi > 0 && bj > 0) v += bi * bj * integrals[monomial_index(ai + aj, bi + bj - 2)];
      s(i, j) = v / h2;
    }
  return s;
}

}  // namespace sfvem
