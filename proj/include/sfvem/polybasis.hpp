#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "sfvem/geometry.hpp"
#include "sfvem/quadrature.hpp"

namespace sfvem {

/// dim P_d in two variables; 0 for d < 0.
constexpr int poly_dim(int degree) { return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2; }

struct Exponent {
  int x = 0;
  int y = 0;
  int degree() const { return x + y; }
};

/// Graded-lexicographic exponents of P_degree: (0,0), (1,0), (0,1), (2,0), (1,1), ...
std::vector<Exponent> monomial_exponents(int degree);

/// Position of x^a y^b in the graded-lexicographic order.
constexpr int monomial_index(int a, int b) { return poly_dim(a + b - 1) + b; }

/// m_alpha(x) = ((x - x_E)/h_E)^alpha, |alpha| <= degree.
class ScaledMonomialBasis {
 public:
  ScaledMonomialBasis(Point center, double diameter, int degree);

  int degree() const { return degree_; }
  int size() const { return poly_dim(degree_); }
  const Point& center() const { return center_; }
  double diameter() const { return diameter_; }
  const std::vector<Exponent>& exponents() const { return exponents_; }

  Point scaled(const Point& p) const { return (p - center_) / diameter_; }
  Eigen::VectorXd values(const Point& p) const;
  /// Physical gradients, one row per member.
  Eigen::MatrixX2d gradients(const Point& p) const;

 private:
  Point center_;
  double diameter_;
  int degree_;
  std::vector<Exponent> exponents_;
};

/// Basis of x P_{k-2} (+) curl P_{k+ell}, with curl p = (dp/dy, -dp/dx) and x
/// the scaled position. Members x*m_alpha come first, then curl m_beta for
/// 1 <= |beta| <= k+ell, both in graded-lexicographic order.
class VectorPolySpace {
 public:
  /// One monomial term per component: coefficient * m_index (index -1: zero).
  struct Member {
    int x_index = -1;
    double x_coef = 0.0;
    int y_index = -1;
    double y_coef = 0.0;
    /// div as coefficient on m_div_index (only the x*m_alpha members have one).
    int div_index = -1;
    double div_coef = 0.0;
  };

  VectorPolySpace(Point center, double diameter, int k, int ell);

  int k() const { return k_; }
  int ell() const { return ell_; }
  int size() const { return static_cast<int>(members_.size()); }
  /// Number of leading x*m_alpha members.
  int num_x_members() const { return poly_dim(k_ - 2); }
  const std::vector<Member>& members() const { return members_; }
  const ScaledMonomialBasis& component_basis() const { return component_basis_; }

  /// Member values at p, one row per member.
  Eigen::MatrixX2d values(const Point& p) const;
  Eigen::MatrixX2d values(const Eigen::VectorXd& monomials) const;

  static int dimension(int k, int ell) { return poly_dim(k - 2) + poly_dim(k + ell) - 1; }

 private:
  int k_;
  int ell_;
  ScaledMonomialBasis component_basis_;
  std::vector<Member> members_;
};

/// Smallest ell >= 0 with dim P_{k+ell} >= k * vertex_count.
int select_ell(int k, int vertex_count);

/// Exact integrals of the scaled monomials of degree <= max_degree over a
/// simple polygon, by the divergence theorem on its edges.
Eigen::VectorXd integrate_monomials(std::span<const Point> polygon, const Point& center,
                                    double diameter, int max_degree);

/// G_ij = int_E p_i . p_j by quadrature.
Eigen::MatrixXd gram_matrix(const VectorPolySpace& space, const QuadratureRule& quad);

/// P_degree mass matrix int_E m_i m_j from exact monomial integrals.
Eigen::MatrixXd monomial_mass_matrix(const Eigen::VectorXd& integrals, int degree);

/// int_E grad m_i . grad m_j from exact monomial integrals.
Eigen::MatrixXd monomial_stiffness_matrix(const Eigen::VectorXd& integrals, double diameter,
                                          int degree);

}  // namespace sfvem
