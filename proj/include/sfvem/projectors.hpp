#pragma once

#include <Eigen/Dense>
#include <functional>

#include "sfvem/local_element.hpp"
#include "sfvem/polybasis.hpp"
#include "sfvem/quadrature.hpp"

namespace sfvem {

/// Local dof layout: vertex values, then k-1 Gauss-Lobatto values per edge
/// (in the element's traversal direction), then the internal moments
/// (1/|E|) int_E v m_alpha, |alpha| <= k-2.
class ElementDofs {
 public:
  ElementDofs(int k, int num_vertices) : k_(k), nv_(num_vertices) {}

  int k() const { return k_; }
  int num_vertices() const { return nv_; }
  int size() const { return k_ * nv_ + poly_dim(k_ - 2); }
  int vertex(int i) const { return i; }
  int edge_node(int edge, int j) const { return nv_ + edge * (k_ - 1) + j; }
  int moment(int alpha) const { return k_ * nv_ + alpha; }
  /// Local dof of node j (0..k) of edge i, endpoints included.
  int edge_trace_dof(int edge, int j) const {
    if (j == 0) return vertex(edge);
    if (j == k_) return vertex((edge + 1) % nv_);
    return edge_node(edge, j - 1);
  }

 private:
  int k_;
  int nv_;
};

/// Degree of the polygon quadrature used for an element with enlargement ell.
inline int element_quadrature_degree(int k, int ell) { return 2 * (k + ell) + 2; }

/// Computable projections of the local virtual basis functions on one element.
struct LocalProjectors {
  int k = 1;
  int ell = 0;
  /// P_k coefficients of the H1 projection of each basis function (columns).
  Eigen::MatrixXd pinabla;
  /// int_E phi_j m_alpha for all |alpha| <= k (rows alpha, columns j).
  Eigen::MatrixXd moments;
  /// P_k mass matrix.
  Eigen::MatrixXd mass;
  /// Coefficients of the L2 projection of grad phi_j onto x P_{k-2} + curl P_{k+ell}.
  Eigen::MatrixXd projH;
  /// Gram matrix of that vector space.
  Eigen::MatrixXd gram;
  /// kappa (projH)^T gram (projH).
  Eigen::MatrixXd stiffness;
  double gram_condition = 0.0;
  /// Dimension of the numerical kernel of `stiffness`.
  int kernel_dim = 0;
  /// ell from the dimension count before any escalation.
  int requested_ell = 0;
};

/// Exact monomial integrals up to degree 2k for the element.
Eigen::VectorXd element_monomial_integrals(const LocalElement& el, int max_degree);

/// H1 projection onto P_k with the mean constraint on E (k > 1) or on its
/// boundary (k = 1). Throws ElementError if the constrained system is singular.
Eigen::MatrixXd pinabla_matrix(const LocalElement& el, int k);

/// Moments of every basis function against P_k; degrees k-1 and k are
/// taken from the H1 projection through the enhancement constraint.
Eigen::MatrixXd moments_full(const LocalElement& el, int k, const Eigen::MatrixXd& pinabla,
                             const Eigen::MatrixXd& mass);

struct GradientProjection {
  Eigen::MatrixXd projH;
  Eigen::MatrixXd gram;
  double gram_condition = 0.0;
};

/// L2 projection of the gradient onto x P_{k-2} + curl P_{k+ell}.
GradientProjection projH_matrix(const LocalElement& el, int k, int ell, const QuadratureRule& quad);

/// Right-hand sides int_E grad phi_j . p_i by parts (rows i, columns j).
Eigen::MatrixXd projH_rhs(const LocalElement& el, int k, const VectorPolySpace& space);

/// Builds all projectors starting at `ell`, increasing it until the stiffness
/// kernel is one-dimensional (at most k + 10). Throws ElementError on failure.
LocalProjectors verify_coercivity(const LocalElement& el, int k, int ell, double kappa);

/// Same, starting from select_ell(k, #vertices).
LocalProjectors build_projectors(const LocalElement& el, int k, double kappa);

/// Kernel dimension: eigenvalues below 1e-10 * trace / n.
int numerical_kernel_dim(const Eigen::MatrixXd& symmetric);

/// Dofs of a function: point values and quadrature moments.
Eigen::VectorXd interpolate_dofs(const LocalElement& el, int k,
                                 const std::function<double(const Point&)>& f,
                                 const QuadratureRule& quad);

}  // namespace sfvem
