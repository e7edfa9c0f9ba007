#include "sfvem/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "sfvem/error.hpp"
#include "sfvem/mesh_generators.hpp"
#include "sfvem/mesh_io.hpp"

namespace sfvem {

MeshFamily parse_family(const std::string& name) {
  if (name == "voronoi") return MeshFamily::Voronoi;
  if (name == "distorted") return MeshFamily::Distorted;
  if (name == "starconcave") return MeshFamily::StarConcave;
  return MeshFamily::File;
}

std::string family_name(MeshFamily family) {
  switch (family) {
    case MeshFamily::Voronoi: return "voronoi";
    case MeshFamily::Distorted: return "distorted";
    case MeshFamily::StarConcave: return "starconcave";
    case MeshFamily::File: return "file";
  }
  return "file";
}

void RunConfig::validate() const {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (levels < 1) throw ConfigError("levels must be >= 1");
  if (family == MeshFamily::File) {
    if (mesh_path.empty()) throw ConfigError("mesh file path is empty");
    if (levels > 1) throw ConfigError("a mesh file cannot be refined: use --levels 1");
  } else if (n0 < 2) {
    throw ConfigError("n0 must be >= 2");
  }
  if (family == MeshFamily::StarConcave && n0 % 2 != 0) throw ConfigError("starconcave needs an even n0");
  if (!(delta >= 0.0 && delta < 0.5)) throw ConfigError("delta must lie in [0, 0.5)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (lloyd_iterations < 0) throw ConfigError("Lloyd iterations must be >= 0");
}

PolyMesh initial_mesh(const RunConfig& config, Domain domain) {
  switch (config.family) {
    case MeshFamily::Distorted:
      return generate_distorted_cartesian(config.n0, config.delta, config.seed, domain);
    case MeshFamily::StarConcave:
      return generate_star_concave(config.n0, config.alpha, domain);
    case MeshFamily::Voronoi: {
      // same cell size as an n0 x n0 grid over the bounding box
      const double box = domain == Domain::UnitSquare ? 1.0 : 4.0;
      const int seeds = static_cast<int>(std::lround(config.n0 * config.n0 * domain_area(domain) / box));
      return generate_voronoi_lloyd(seeds, config.lloyd_iterations, config.seed, domain);
    }
    case MeshFamily::File:
      return load_mesh(config.mesh_path);
  }
  throw ConfigError("unknown mesh family");
}

ConvergenceRow run_level(const PolyMesh& mesh, const ProblemSpec& problem, const RunConfig& config) {
  AssemblyOptions options;
  options.k = config.k;
  options.grade_corner = config.grade_corner;
  Discretization d = assemble(mesh, problem, options);
  const Eigen::VectorXd uh = solve_full(d, config.solver);
  const EstimatorReport report = estimate(mesh, d, uh, problem.f, problem.grad_u);

  ConvergenceRow row;
  row.h = mesh.h();
  row.h_eff = std::sqrt(mesh.total_area() / mesh.num_polygons());
  row.elements = mesh.num_polygons();
  row.dofs = d.dofs.size();
  row.error = report.error;
  row.eta = report.eta;
  row.F = report.F;
  row.epsilon = report.effectivity;
  row.ell_min = d.caches.front().proj.ell;
  row.ell_max = row.ell_min;
  for (const auto& c : d.caches) {
    row.ell_min = std::min(row.ell_min, c.proj.ell);
    row.ell_max = std::max(row.ell_max, c.proj.ell);
  }
  return row;
}

namespace {

std::optional<double> local_rate(double e0, double e1, double h0, double h1) {
  if (!(e0 > 1e-12 && e1 > 1e-12) || h0 == h1) return std::nullopt;
  return std::log(e0 / e1) / std::log(h0 / h1);
}

std::optional<double> mean(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

void compute_rates(std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rate.reset();
    rows[i].eta_rate.reset();
    if (i == 0) continue;
    const auto& prev = rows[i - 1];
    rows[i].rate = local_rate(prev.error, rows[i].error, prev.h_eff, rows[i].h_eff);
    rows[i].eta_rate = local_rate(prev.eta, rows[i].eta, prev.h_eff, rows[i].h_eff);
  }
}

std::optional<double> ConvergenceSummary::epsilon_band_ratio() const {
  if (!epsilon_min || !epsilon_max) return std::nullopt;
  return *epsilon_max / *epsilon_min;
}

ConvergenceSummary summarize(std::vector<ConvergenceRow> rows) {
  compute_rates(rows);
  ConvergenceSummary s;
  std::vector<double> rates, eta_rates;
  for (const auto& r : rows) {
    if (r.rate) rates.push_back(*r.rate);
    if (r.eta_rate) eta_rates.push_back(*r.eta_rate);
  }
  s.average_rate = mean(rates);
  s.average_eta_rate = mean(eta_rates);
  const std::size_t first = rows.size() > 3 ? rows.size() - 3 : 0;
  for (std::size_t i = first; i < rows.size(); ++i) {
    if (!rows[i].epsilon) {
      s.epsilon_min.reset();
      s.epsilon_max.reset();
      break;
    }
    const double e = *rows[i].epsilon;
    s.epsilon_min = s.epsilon_min ? std::min(*s.epsilon_min, e) : e;
    s.epsilon_max = s.epsilon_max ? std::max(*s.epsilon_max, e) : e;
  }
  s.rows = std::move(rows);
  return s;
}

ConvergenceSummary run_convergence(const RunConfig& config,
                                   const std::function<void(const ConvergenceRow&)>& progress) {
  config.validate();
  const ProblemSpec problem = make_problem(config.problem, config.k);
  std::vector<ConvergenceRow> rows;
  PolyMesh mesh = initial_mesh(config, problem.domain);
  for (int level = 0; level < config.levels; ++level) {
    if (level > 0) mesh = refine_uniform(mesh);
    rows.push_back(run_level(mesh, problem, config));
    if (progress) progress(rows.back());
  }
  return summarize(std::move(rows));
}

void write_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out) {
  out << "h,elements,dofs,error,eta,F,epsilon,rate,ell_min,ell_max\n";
  out << std::setprecision(10);
  auto opt = [&](const std::optional<double>& v) {
    if (v) out << *v;
  };
  for (const auto& r : rows) {
    out << r.h << ',' << r.elements << ',' << r.dofs << ',' << r.error << ',' << r.eta << ',' << r.F << ',';
    opt(r.epsilon);
    out << ',';
    opt(r.rate);
    out << ',' << r.ell_min << ',' << r.ell_max << '\n';
  }
}

void emit_csv(const std::vector<ConvergenceRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_csv(rows, out);
  if (!out) throw Error("failed writing " + path);
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw Error("a slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw Error("degenerate abscissae for slope fit");
  return (n * sxy - sx * sy) / den;
}

void write_svg(const std::vector<ConvergenceRow>& rows, std::ostream& out) {
  const double width = 480, height = 360, margin = 60;
  std::vector<double> hs, errs, etas;
  for (const auto& r : rows)
    if (r.h > 0 && r.error > 0 && r.eta > 0) {
      hs.push_back(r.h);
      errs.push_back(r.error);
      etas.push_back(r.eta);
    }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (hs.empty()) {
    out << "<text x=\"" << margin << "\" y=\"" << height / 2 << "\">no positive data</text>\n</svg>\n";
    return;
  }
  const auto [hmin, hmax] = std::minmax_element(hs.begin(), hs.end());
  double ylo = std::min(*std::min_element(errs.begin(), errs.end()), *std::min_element(etas.begin(), etas.end()));
  double yhi = std::max(*std::max_element(errs.begin(), errs.end()), *std::max_element(etas.begin(), etas.end()));
  double xlo = std::log10(*hmin), xhi = std::log10(*hmax);
  ylo = std::log10(ylo);
  yhi = std::log10(yhi);
  if (xhi - xlo < 1e-12) { xlo -= 0.5; xhi += 0.5; }
  if (yhi - ylo < 1e-12) { ylo -= 0.5; yhi += 0.5; }
  auto px = [&](double h) { return margin + (std::log10(h) - xlo) / (xhi - xlo) * (width - 2 * margin); };
  auto py = [&](double v) { return height - margin - (std::log10(v) - ylo) / (yhi - ylo) * (height - 2 * margin); };

  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
      << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 20 << "\" text-anchor=\"middle\">h</text>\n";
  auto series = [&](const std::vector<double>& v, const char* color, const char* label, int line) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < hs.size(); ++i) out << px(hs[i]) << ',' << py(v[i]) << ' ';
    out << "\"/>\n";
    for (std::size_t i = 0; i < hs.size(); ++i)
      out << "<circle cx=\"" << px(hs[i]) << "\" cy=\"" << py(v[i]) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    std::ostringstream text;
    text << label;
    if (hs.size() >= 2) text << " (slope " << std::fixed << std::setprecision(2) << fitted_slope(hs, v) << ")";
    out << "<text x=\"" << margin + 10 << "\" y=\"" << margin + 18 * line << "\" fill=\"" << color << "\">"
        << text.str() << "</text>\n";
  };
  series(errs, "steelblue", "error", 1);
  series(etas, "firebrick", "eta", 2);
  out << "</svg>\n";
}

void emit_svg(const std::vector<ConvergenceRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_svg(rows, out);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace sfvem
