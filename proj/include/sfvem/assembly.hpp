#pragma once

#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "sfvem/local_element.hpp"
#include "sfvem/mesh.hpp"
#include "sfvem/problems.hpp"
#include "sfvem/projectors.hpp"
#include "sfvem/quadrature.hpp"

namespace sfvem {

/// Global numbering: vertices, then k-1 nodes per edge ordered from the
/// smaller to the larger global vertex id, then the moments of each element.
class DofMap {
 public:
  static DofMap build(const PolyMesh& mesh, int k);

  int k() const { return k_; }
  int size() const { return size_; }
  /// Global ids of the local dofs of polygon e, in ElementDofs order.
  const std::vector<int>& element(int e) const { return element_dofs_[e]; }
  bool boundary(int dof) const { return boundary_[dof]; }
  int num_boundary() const;
  /// Physical location of a vertex or edge dof; moments have none.
  const std::vector<Point>& nodes() const { return nodes_; }

 private:
  int k_ = 1;
  int size_ = 0;
  std::vector<std::vector<int>> element_dofs_;
  std::vector<char> boundary_;
  std::vector<Point> nodes_;
};

struct AssemblyOptions {
  int k = 1;
  /// Grade the quadrature towards singular points that are element vertices.
  bool grade_corner = false;
  int grading_depth = 3;
  /// Replace the dimension-count ell (used by tests to trigger escalation).
  std::optional<int> force_ell;
};

/// Everything an element keeps between assembly and estimation.
struct ElementCache {
  LocalElement element;
  LocalProjectors proj;
  QuadratureRule quad;  // for loads and error norms
  double kappa = 1.0;
  bool verified = false;
};

/// Builds and verifies the projectors of every element (in parallel).
/// Throws ElementError for the first element that fails.
std::vector<ElementCache> build_element_caches(const PolyMesh& mesh, const std::vector<double>& kappa,
                                               const AssemblyOptions& options,
                                               const std::vector<Point>& singular_points = {});

struct LinearSystem {
  Eigen::SparseMatrix<double> A;  // free x free
  Eigen::VectorXd b;
  /// Full-length vector holding the Dirichlet values (zero on free dofs).
  Eigen::VectorXd lifting;
  /// Position of each global dof among the free ones, -1 for boundary dofs.
  std::vector<int> free_index;

  Eigen::VectorXd expand(const Eigen::VectorXd& free) const;
};

struct Discretization {
  DofMap dofs;
  std::vector<ElementCache> caches;
  /// P_k coefficients of the L2 projection of f on each element.
  std::vector<Eigen::VectorXd> f_h;
  LinearSystem system;
};

/// L2 projection of f onto P_k on one element.
Eigen::VectorXd project_load(const ElementCache& cache, const ScalarField& f);

/// Assembles with precomputed element caches.
Discretization assemble(const PolyMesh& mesh, std::vector<ElementCache> caches, const ScalarField& f,
                        const ScalarField& g, int k);

Discretization assemble(const PolyMesh& mesh, const ProblemSpec& problem,
                        const AssemblyOptions& options);

enum class SolverKind { Direct, ConjugateGradient };

struct SolveInfo {
  double relative_residual = 0.0;
  int iterations = 0;
};

/// Solves the free system; throws Error if the factorization or iteration fails.
Eigen::VectorXd solve(const LinearSystem& system, SolverKind kind = SolverKind::Direct,
                      SolveInfo* info = nullptr);

/// Full dof vector of u_h.
Eigen::VectorXd solve_full(const Discretization& d, SolverKind kind = SolverKind::Direct,
                           SolveInfo* info = nullptr);

/// Local dof values of polygon e from a global vector.
Eigen::VectorXd local_values(const DofMap& dofs, int e, const Eigen::VectorXd& global);

/// Global dofs of a function: nodal values and element moments.
Eigen::VectorXd interpolate(const PolyMesh& mesh, const DofMap& dofs,
                            const std::vector<ElementCache>& caches, const ScalarField& f);

}  // namespace sfvem
