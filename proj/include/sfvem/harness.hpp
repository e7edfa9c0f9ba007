#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sfvem/assembly.hpp"
#include "sfvem/estimator.hpp"
#include "sfvem/mesh.hpp"
#include "sfvem/problems.hpp"

namespace sfvem {

enum class MeshFamily { Voronoi, Distorted, StarConcave, File };

/// voronoi | distorted | starconcave; anything else is taken as a mesh file path.
MeshFamily parse_family(const std::string& name);
std::string family_name(MeshFamily family);

struct RunConfig {
  std::string problem = "test1";
  MeshFamily family = MeshFamily::Distorted;
  std::string mesh_path;
  int k = 1;
  int levels = 4;
  int n0 = 8;
  std::uint64_t seed = 1;
  double delta = 0.2;
  double alpha = 0.3;
  int lloyd_iterations = 50;
  bool grade_corner = false;
  SolverKind solver = SolverKind::Direct;

  /// Throws ConfigError.
  void validate() const;
};

struct ConvergenceRow {
  double h = 0.0;      // max element diameter
  double h_eff = 0.0;  // sqrt(area / #elements)
  int elements = 0;
  int dofs = 0;
  double error = 0.0;
  double eta = 0.0;
  double F = 0.0;
  std::optional<double> epsilon;
  std::optional<double> rate;      // error, w.r.t. h_eff, from the second level on
  std::optional<double> eta_rate;  // same for eta
  int ell_min = 0;
  int ell_max = 0;
};

struct ConvergenceSummary {
  std::vector<ConvergenceRow> rows;
  std::optional<double> average_rate;
  std::optional<double> average_eta_rate;
  /// min and max of epsilon over the last three levels.
  std::optional<double> epsilon_min;
  std::optional<double> epsilon_max;

  std::optional<double> epsilon_band_ratio() const;
};

/// First mesh of the refinement sequence.
PolyMesh initial_mesh(const RunConfig& config, Domain domain);

/// Solve and estimate on one mesh.
ConvergenceRow run_level(const PolyMesh& mesh, const ProblemSpec& problem, const RunConfig& config);

/// Fills rate and eta_rate of each row from its predecessor.
void compute_rates(std::vector<ConvergenceRow>& rows);

ConvergenceSummary summarize(std::vector<ConvergenceRow> rows);

/// Runs every level; `progress` is called after each one.
ConvergenceSummary run_convergence(const RunConfig& config,
                                   const std::function<void(const ConvergenceRow&)>& progress = {});

void write_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out);
void emit_csv(const std::vector<ConvergenceRow>& rows, const std::string& path);

/// Least-squares slope of log(y) against log(x).
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Log-log plot of error and eta against h with the fitted slopes.
void write_svg(const std::vector<ConvergenceRow>& rows, std::ostream& out);
void emit_svg(const std::vector<ConvergenceRow>& rows, const std::string& path);

}  // namespace sfvem
