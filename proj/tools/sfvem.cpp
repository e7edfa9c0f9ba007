#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "sfvem/error.hpp"
#include "sfvem/harness.hpp"
#include "sfvem/mesh_generators.hpp"
#include "sfvem/mesh_io.hpp"
#include "sfvem/patches.hpp"

namespace {

void print_row(const sfvem::ConvergenceRow& r) {
  auto opt = [](const std::optional<double>& v, const char* fmt) {
    char buf[32];
    if (!v) return std::string("-");
    std::snprintf(buf, sizeof buf, fmt, *v);
    return std::string(buf);
  };
  std::printf("%10.4e %8d %9d %12.5e %12.5e %12.5e %9s %7s %3d %3d\n", r.h, r.elements, r.dofs, r.error, r.eta,
              r.F, opt(r.epsilon, "%.4f").c_str(), opt(r.rate, "%.3f").c_str(), r.ell_min, r.ell_max);
  std::fflush(stdout);
}

int run(const sfvem::RunConfig& config, const std::string& csv, const std::string& svg) {
  std::printf("%10s %8s %9s %12s %12s %12s %9s %7s %3s %3s\n", "h", "elements", "dofs", "error", "eta", "F",
              "epsilon", "rate", "l-", "l+");
  std::optional<sfvem::ConvergenceRow> prev;
  auto summary = sfvem::run_convergence(config, [&](const sfvem::ConvergenceRow& row) {
    std::vector<sfvem::ConvergenceRow> pair;
    if (prev) pair.push_back(*prev);
    pair.push_back(row);
    sfvem::compute_rates(pair);
    print_row(pair.back());
    prev = row;
  });
  if (summary.average_rate) std::printf("average rate m (error): %.3f\n", *summary.average_rate);
  if (summary.average_eta_rate) std::printf("average rate m (eta):   %.3f\n", *summary.average_eta_rate);
  if (summary.epsilon_min)
    std::printf("epsilon band (last 3 levels): [%.4f, %.4f], ratio %.4f\n", *summary.epsilon_min,
                *summary.epsilon_max, *summary.epsilon_band_ratio());
  if (!csv.empty()) sfvem::emit_csv(summary.rows, csv);
  if (!svg.empty()) sfvem::emit_svg(summary.rows, svg);
  return 0;
}

int mesh_command(const sfvem::RunConfig& config, bool lshape, const std::string& out) {
  const sfvem::PolyMesh mesh =
      sfvem::initial_mesh(config, lshape ? sfvem::Domain::LShape : sfvem::Domain::UnitSquare);
  const auto q = sfvem::mesh_quality(mesh);
  std::printf("polygons %d  vertices %d  edges %d (interior %d)  h %.6g\n", mesh.num_polygons(),
              mesh.num_vertices(), mesh.num_edges(), mesh.num_interior_edges(), mesh.h());
  std::printf("min rho/h %.4f  min h_e/h %.4f  kappa_hat %.4f  N_V^max %d  N_VE^max %d\n", q.min_rho_ratio,
              q.min_edge_ratio, q.kappa_hat, q.max_vertices, q.max_elements_per_vertex);
  if (!out.empty()) sfvem::save_mesh(mesh, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilization-free virtual elements for -div(K grad u) = f with a residual estimator"};
  app.require_subcommand(1);

  sfvem::RunConfig config;
  std::string mesh = "distorted";
  std::string csv, svg, out;
  std::string solver = "direct";
  bool lshape = false;

  auto add_mesh_options = [&](CLI::App* cmd) {
    cmd->add_option("--mesh", mesh, "voronoi | distorted | starconcave | path to an sfvem-mesh file")
        ->capture_default_str();
    cmd->add_option("--n0", config.n0, "cells per side of the first level")->capture_default_str();
    cmd->add_option("--seed", config.seed, "random seed")->capture_default_str();
    cmd->add_option("--delta", config.delta, "vertex distortion of distorted meshes")->capture_default_str();
    cmd->add_option("--alpha", config.alpha, "concavity of starconcave meshes")->capture_default_str();
    cmd->add_option("--lloyd", config.lloyd_iterations, "Lloyd iterations of voronoi meshes")
        ->capture_default_str();
  };

  CLI::App* run_cmd = app.add_subcommand("run", "refinement study with error, estimator and effectivity");
  run_cmd->add_option("--problem", config.problem, "test1 | test2-g1 | test2-g2 | test3-g3 | test3-g4 | test4 | patch")
      ->capture_default_str();
  add_mesh_options(run_cmd);
  run_cmd->add_option("--k", config.k, "polynomial degree")->capture_default_str();
  run_cmd->add_option("--levels", config.levels, "number of meshes")->capture_default_str();
  run_cmd->add_option("--csv", csv, "write the convergence table");
  run_cmd->add_option("--svg", svg, "write a log-log plot");
  run_cmd->add_option("--solver", solver, "direct | cg")->capture_default_str();
  run_cmd->add_flag("--grade-corner", config.grade_corner, "grade quadrature towards singular corners");

  CLI::App* mesh_cmd = app.add_subcommand("mesh", "generate a mesh, report its quality, optionally save it");
  add_mesh_options(mesh_cmd);
  mesh_cmd->add_flag("--lshape", lshape, "use the L-shaped domain");
  mesh_cmd->add_option("--out", out, "write the mesh in sfvem-mesh format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    config.family = sfvem::parse_family(mesh);
    if (config.family == sfvem::MeshFamily::File) config.mesh_path = mesh;
    if (solver == "direct") config.solver = sfvem::SolverKind::Direct;
    else if (solver == "cg") config.solver = sfvem::SolverKind::ConjugateGradient;
    else throw sfvem::ConfigError("unknown solver '" + solver + "'");

    if (*run_cmd) return run(config, csv, svg);
    config.levels = 1;
    config.validate();
    return mesh_command(config, lshape, out);
  } catch (const sfvem::ElementError& e) {
    std::cerr << "error: " << e.what() << "\nelement vertices:\n" << e.geometry();
    return 2;
  } catch (const sfvem::MeshError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const sfvem::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
