#pragma once

#include <optional>
#include <vector>

#include "sfvem/assembly.hpp"

namespace sfvem {

struct ElementEstimate {
  double volume = 0.0;  // h_E^2 / K_E ||r_E||^2
  double edge = 0.0;    // 1/2 sum over interior edges of h_e / K_omega ||j_e||^2
  double eta2 = 0.0;
  double F2 = 0.0;      // h_E^2 / K_E ||f - f_h||^2
  double error2 = 0.0;  // ||sqrt(K)(grad u - projH grad u_h)||^2
};

struct EstimatorReport {
  std::vector<ElementEstimate> elements;
  /// h_e / K_omega ||j_e||^2 per mesh edge, 0 on the boundary.
  std::vector<double> edge_terms;
  double eta = 0.0;
  double F = 0.0;
  double error = 0.0;
  /// eta / error; empty when the error is below 1e-14.
  std::optional<double> effectivity;
};

/// Coefficients of projH grad u_h on one element.
Eigen::VectorXd projected_gradient(const ElementCache& cache, const Eigen::VectorXd& local_dofs);

struct ElementResidual {
  Eigen::VectorXd coefficients;  // P_k
  double norm = 0.0;
};

/// r_E = f_h + K_E div(projH grad u_h).
ElementResidual element_residual(const ElementCache& cache, const Eigen::VectorXd& f_h,
                                 const Eigen::VectorXd& gradient);

struct EdgeSide {
  const ElementCache* cache;
  const Eigen::VectorXd* gradient;
  Point normal;  // outward from that element
};

/// ||j_e||^2 with j_e = sum over sides of K_E projH grad u_h . n_E.
double edge_jump_norm2(const Point& a, const Point& b, const std::vector<EdgeSide>& sides);

double data_oscillation2(const ElementCache& cache, const ScalarField& f, const Eigen::VectorXd& f_h);

double error_norm2(const ElementCache& cache, const VectorField& grad_u, const Eigen::VectorXd& gradient);

/// Throws UnsupportedOperation unless error > 1e-14.
double effectivity(double eta, double error);

EstimatorReport estimate(const PolyMesh& mesh, const Discretization& d, const Eigen::VectorXd& uh,
                         const ScalarField& f, const VectorField& grad_u);

}  // namespace sfvem
