#include "sfvem/mesh_generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <unordered_map>

#include "sfvem/error.hpp"

namespace sfvem {

namespace {

// Uniform doubles in [0,1) built directly from the engine output, so meshes
// are bit-identical across standard library implementations.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct Grid {
  int n;
  double lo;
  double step;
  Domain domain;

  Grid(int n_, Domain d)
      : n(n_), lo(d == Domain::UnitSquare ? 0.0 : -1.0),
        step((d == Domain::UnitSquare ? 1.0 : 2.0) / n_), domain(d) {}

  Point node(int i, int j) const { return {lo + i * step, lo + j * step}; }
  bool cell_kept(int i, int j) const {
    if (i < 0 || j < 0 || i >= n || j >= n) return false;
    if (domain == Domain::UnitSquare) return true;
    return !(2 * i >= n && 2 * j < n);
  }
  bool node_on_boundary(int i, int j) const {
    if (i == 0 || j == 0 || i == n || j == n) return true;
    if (domain == Domain::LShape) {
      const int h = n / 2;
      return (i == h && j <= h) || (j == h && i >= h);
    }
    return false;
  }
};

void require_even_for_lshape(int n, Domain domain) {
  if (domain == Domain::LShape && n % 2 != 0)
    throw MeshError("L-shaped grids need an even number of cells per side");
}

bool convex_ccw(const std::array<Point, 4>& q, double tol) {
  for (int i = 0; i < 4; ++i) {
    const Point a = q[(i + 1) % 4] - q[i];
    const Point b = q[(i + 2) % 4] - q[(i + 1) % 4];
    if (a.x() * b.y() - a.y() * b.x() <= tol) return false;
  }
  return true;
}

}  // namespace

PolyMesh generate_distorted_cartesian(int n, double delta, std::uint64_t seed, Domain domain) {
  if (n < 2) throw MeshError("distorted cartesian mesh needs n >= 2");
  if (!(delta >= 0.0 && delta < 0.5)) throw MeshError("distortion must lie in [0, 0.5)");
  require_even_for_lshape(n, domain);
  const Grid grid(n, domain);
  const int stride = n + 1;
  auto key = [stride](int i, int j) { return j * stride + i; };

  std::vector<int> id(stride * stride, -1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (grid.cell_kept(i, j))
        for (auto [di, dj] : {std::pair{0, 0}, {1, 0}, {1, 1}, {0, 1}}) id[key(i + di, j + dj)] = 0;
  std::vector<Point> vertices;
  std::vector<std::pair<int, int>> ij;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      if (id[key(i, j)] == 0) {
        id[key(i, j)] = static_cast<int>(vertices.size());
        vertices.push_back(grid.node(i, j));
        ij.emplace_back(i, j);
      }

  std::vector<std::vector<int>> polygons;
  std::vector<std::vector<int>> cells_of_vertex(vertices.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (grid.cell_kept(i, j)) {
        const int c = static_cast<int>(polygons.size());
        polygons.push_back({id[key(i, j)], id[key(i + 1, j)], id[key(i + 1, j + 1)],
                            id[key(i, j + 1)]});
        for (int v : polygons.back()) cells_of_vertex[v].push_back(c);
      }

  const bool interfaces = domain == Domain::UnitSquare && n % 2 == 0;
  const double radius = delta * grid.step;
  const double tol = 1e-12 * grid.step * grid.step;
  auto cell_ok = [&](int c) {
    const auto& p = polygons[c];
    return convex_ccw({vertices[p[0]], vertices[p[1]], vertices[p[2]], vertices[p[3]]}, tol);
  };

  UniformSource rng(seed);
  constexpr int kAttempts = 100;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto [i, j] = ij[v];
    if (grid.node_on_boundary(i, j) || radius == 0.0) continue;
    const bool on_vertical = interfaces && 2 * i == n;
    const bool on_horizontal = interfaces && 2 * j == n;
    if (on_vertical && on_horizontal) continue;
    const Point origin = vertices[v];
    bool placed = false;
    for (int attempt = 0; attempt < kAttempts && !placed; ++attempt) {
      const double u1 = rng.next();
      const double u2 = rng.next();
      Point d;
      if (on_vertical)
        d = {0.0, radius * (2.0 * u1 - 1.0)};
      else if (on_horizontal)
        d = {radius * (2.0 * u1 - 1.0), 0.0};
      else {
        const double r = radius * std::sqrt(u1);
        const double t = 2.0 * std::numbers::pi * u2;
        d = {r * std::cos(t), r * std::sin(t)};
      }
      vertices[v] = origin + d;
      placed = std::all_of(cells_of_vertex[v].begin(), cells_of_vertex[v].end(), cell_ok);
    }
    if (!placed)
      throw MeshError("distortion " + std::to_string(delta) + " tangles the cells around vertex " +
                      std::to_string(v));
  }
  return PolyMesh::build(std::move(vertices), std::move(polygons), {},
                         DistortedRecipe{n, delta, seed, domain});
}

PolyMesh generate_star_concave(int n, double alpha, Domain domain) {
  if (n < 2 || n % 2 != 0) throw MeshError("star concave mesh needs an even n >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw MeshError("concavity must lie in (0, 1)");
  const Grid grid(n, domain);
  const int stride = n + 1;
  auto key = [stride](int i, int j) { return j * stride + i; };
  auto is_star = [](int i, int j) { return (i + j) % 2 == 0; };
  auto center = [&](int i, int j) { return Point(grid.node(i, j) + 0.5 * Point(grid.step, grid.step)); };

  std::vector<Point> vertices;
  std::vector<int> corner(stride * stride, -1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (grid.cell_kept(i, j))
        for (auto [di, dj] : {std::pair{0, 0}, {1, 0}, {1, 1}, {0, 1}}) corner[key(i + di, j + dj)] = 0;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      if (corner[key(i, j)] == 0) {
        corner[key(i, j)] = static_cast<int>(vertices.size());
        vertices.push_back(grid.node(i, j));
      }

  // hmid(i,j): horizontal edge from node (i,j) to (i+1,j), between cells (i,j-1) and (i,j).
  // vmid(i,j): vertical edge from node (i,j) to (i,j+1), between cells (i-1,j) and (i,j).
  std::vector<int> hmid(stride * stride, -1);
  std::vector<int> vmid(stride * stride, -1);
  auto pulled = [&](const Point& a, const Point& b, int si, int sj) {
    const Point m = 0.5 * (a + b);
    return Point(m + alpha * (center(si, sj) - m));
  };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      if (grid.cell_kept(i, j - 1) && grid.cell_kept(i, j)) {
        const auto [si, sj] = is_star(i, j) ? std::pair{i, j} : std::pair{i, j - 1};
        hmid[key(i, j)] = static_cast<int>(vertices.size());
        vertices.push_back(pulled(grid.node(i, j), grid.node(i + 1, j), si, sj));
      }
      if (grid.cell_kept(i - 1, j) && grid.cell_kept(i, j)) {
        const auto [si, sj] = is_star(i, j) ? std::pair{i, j} : std::pair{i - 1, j};
        vmid[key(i, j)] = static_cast<int>(vertices.size());
        vertices.push_back(pulled(grid.node(i, j), grid.node(i, j + 1), si, sj));
      }
    }

  std::vector<std::vector<int>> polygons;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (!grid.cell_kept(i, j)) continue;
      std::vector<int> poly;
      auto add = [&poly](int v) {
        if (v >= 0) poly.push_back(v);
      };
      add(corner[key(i, j)]);
      add(hmid[key(i, j)]);
      add(corner[key(i + 1, j)]);
      add(vmid[key(i + 1, j)]);
      add(corner[key(i + 1, j + 1)]);
      add(hmid[key(i, j + 1)]);
      add(corner[key(i, j + 1)]);
      add(vmid[key(i, j)]);
      polygons.push_back(std::move(poly));
    }
  return PolyMesh::build(std::move(vertices), std::move(polygons), {},
                         StarConcaveRecipe{n, alpha, domain});
}

// ---------------------------------------------------------------------------
// Voronoi / Lloyd

namespace {

struct Box {
  double lo, hi;
};

Box domain_box(Domain d) { return d == Domain::UnitSquare ? Box{0.0, 1.0} : Box{-1.0, 1.0}; }

// Clip against x (axis 0) or y (axis 1) <= / >= value; crossing points land
// exactly on the line.
std::vector<Point> clip_axis(const std::vector<Point>& poly, int axis, double value, bool keep_below) {
  std::vector<Point> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  auto side = [&](const Point& p) { return keep_below ? p[axis] - value : value - p[axis]; };
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const double dp = side(p);
    const double dq = side(q);
    if (dp <= 0.0) out.push_back(p);
    if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
      Point x = p + (dp / (dp - dq)) * (q - p);
      x[axis] = value;
      out.push_back(x);
    }
  }
  if (out.size() < 3 || signed_area(out) <= 0.0) out.clear();
  return out;
}

struct Cell {
  std::vector<Point> polygon;  // empty if the cell is disconnected
  std::vector<Point> second;   // other half of a cell split at the reentrant corner
  Point centroid = Point::Zero();
  double area = 0.0;
};

bool collinear_between(const Point& a, const Point& p, const Point& b) {
  const Point d = b - a;
  const double cr = d.x() * (p - a).y() - d.y() * (p - a).x();
  return std::abs(cr) <= 1e-12 * d.squaredNorm() && (p - a).dot(b - p) > 0.0;
}

bool strictly_inside(const std::vector<Point>& convex, const Point& p) {
  const std::size_t n = convex.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point d = convex[(i + 1) % n] - convex[i];
    if (d.x() * (p - convex[i]).y() - d.y() * (p - convex[i]).x() <= 1e-12 * d.squaredNorm()) return false;
  }
  return true;
}

// cell \ ([0,1]x[-1,0]) for a convex cell inside (-1,1)^2.
Cell subtract_lshape_notch(const std::vector<Point>& cell) {
  const auto left = clip_axis(cell, 0, 0.0, true);
  const auto right = clip_axis(clip_axis(cell, 0, 0.0, false), 1, 0.0, false);
  Cell out;
  auto accumulate = [&out](const std::vector<Point>& piece) {
    if (piece.empty()) return;
    const double a = signed_area(piece);
    out.centroid += a * polygon_centroid(piece);
    out.area += a;
  };
  accumulate(left);
  accumulate(right);
  if (out.area > 0.0) out.centroid /= out.area;
  if (left.empty()) {
    out.polygon = right;
    return out;
  }
  if (right.empty()) {
    out.polygon = left;
    return out;
  }
  const std::size_t na = left.size();
  const std::size_t nb = right.size();
  // left piece: edge on x = 0 traversed upwards, from bottom to top
  std::size_t a_top = na;
  for (std::size_t i = 0; i < na; ++i) {
    const Point& p = left[(i + na - 1) % na];
    const Point& q = left[i];
    if (p.x() == 0.0 && q.x() == 0.0 && q.y() > p.y()) a_top = i;
  }
  std::size_t b_top = nb, b_bot = nb;
  for (std::size_t j = 0; j < nb; ++j) {
    const Point& p = right[j];
    const Point& q = right[(j + 1) % nb];
    if (p.x() == 0.0 && q.x() == 0.0 && q.y() < p.y()) {
      b_top = j;
      b_bot = (j + 1) % nb;
    }
  }
  if (a_top == na || b_top == nb) return out;  // pieces only touch at a point
  if (strictly_inside(cell, Point::Zero())) {
    // a single cell would have a reflex angle at the corner: split it along x + y = 0
    out.polygon = clip_axis(clip_halfplane(cell, Point(-1.0, -1.0), 0.0), 1, 0.0, false);
    out.second = clip_axis(clip_halfplane(cell, Point(1.0, 1.0), 0.0), 0, 0.0, true);
    return out;
  }
  const std::size_t a_bot = (a_top + na - 1) % na;
  std::vector<Point> merged;
  for (std::size_t i = 0; i < na; ++i) merged.push_back(left[(a_top + i) % na]);
  if ((right[b_bot] - left[a_bot]).norm() > 0.0) merged.push_back(right[b_bot]);
  for (std::size_t j = (b_bot + 1) % nb; j != b_top; j = (j + 1) % nb) merged.push_back(right[j]);
  // drop the artificial split points on the interior part of x = 0
  std::vector<Point> cleaned;
  const std::size_t m = merged.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point& p = merged[i];
    if (p.x() == 0.0 && p.y() > 0.0 &&
        collinear_between(merged[(i + m - 1) % m], p, merged[(i + 1) % m]))
      continue;
    cleaned.push_back(p);
  }
  out.polygon = std::move(cleaned);
  return out;
}

class VoronoiBuilder {
 public:
  VoronoiBuilder(const std::vector<Point>& seeds, Domain domain)
      : seeds_(seeds), domain_(domain), box_(domain_box(domain)) {
    const double len = box_.hi - box_.lo;
    buckets_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(seeds.size()))));
    bucket_size_ = len / buckets_;
    grid_.assign(buckets_ * buckets_, {});
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const auto [bi, bj] = bucket_of(seeds[i]);
      grid_[bj * buckets_ + bi].push_back(static_cast<int>(i));
    }
  }

  Cell cell(int i) const {
    const Point& s = seeds_[i];
    std::vector<Point> poly{{box_.lo, box_.lo}, {box_.hi, box_.lo}, {box_.hi, box_.hi}, {box_.lo, box_.hi}};
    const auto [bi, bj] = bucket_of(s);
    for (int ring = 0; ring <= buckets_; ++ring) {
      if (ring >= 2) {
        double rmax = 0.0;
        for (const auto& p : poly) rmax = std::max(rmax, (p - s).norm());
        if ((ring - 1) * bucket_size_ > 2.0 * rmax) break;
      }
      for (int dj = -ring; dj <= ring; ++dj)
        for (int di = -ring; di <= ring; ++di) {
          if (std::max(std::abs(di), std::abs(dj)) != ring) continue;
          const int ci = bi + di, cj = bj + dj;
          if (ci < 0 || cj < 0 || ci >= buckets_ || cj >= buckets_) continue;
          for (int j : grid_[cj * buckets_ + ci]) {
            if (j == i) continue;
            const Point& t = seeds_[j];
            const Point normal = t - s;
            poly = clip_halfplane(poly, normal, 0.5 * (t.squaredNorm() - s.squaredNorm()));
          }
        }
    }
    if (domain_ == Domain::LShape) return subtract_lshape_notch(poly);
    Cell c;
    c.area = signed_area(poly);
    c.centroid = polygon_centroid(poly);
    c.polygon = std::move(poly);
    return c;
  }

 private:
  std::pair<int, int> bucket_of(const Point& p) const {
    auto idx = [&](double x) {
      return std::clamp(static_cast<int>((x - box_.lo) / bucket_size_), 0, buckets_ - 1);
    };
    return {idx(p.x()), idx(p.y())};
  }

  const std::vector<Point>& seeds_;
  Domain domain_;
  Box box_;
  int buckets_ = 1;
  double bucket_size_ = 1.0;
  std::vector<std::vector<int>> grid_;
};

std::vector<Point> domain_corners(Domain d) {
  if (d == Domain::UnitSquare) return {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  return {{-1, -1}, {0, -1}, {0, 0}, {1, 0}, {1, 1}, {-1, 1}};
}

bool on_domain_boundary(Domain d, const Point& p) {
  const Box b = domain_box(d);
  if (p.x() == b.lo || p.x() == b.hi || p.y() == b.lo || p.y() == b.hi) return true;
  return d == Domain::LShape && ((p.x() == 0.0 && p.y() <= 0.0) || (p.y() == 0.0 && p.x() >= 0.0));
}

// Merge vertices closer than tol; snap to box sides.
struct VertexPool {
  double tol;
  Domain domain;
  std::vector<Point> points;
  std::unordered_map<long long, std::vector<int>> buckets;

  long long bucket_key(long long i, long long j) const { return i * 4000037LL + j; }

  int insert(Point p) {
    const Box b = domain_box(domain);
    for (int a = 0; a < 2; ++a) {
      if (std::abs(p[a] - b.lo) <= tol) p[a] = b.lo;
      if (std::abs(p[a] - b.hi) <= tol) p[a] = b.hi;
      if (domain == Domain::LShape && std::abs(p[a]) <= tol) p[a] = 0.0;
    }
    const long long bi = static_cast<long long>(std::floor(p.x() / tol));
    const long long bj = static_cast<long long>(std::floor(p.y() / tol));
    for (long long di = -1; di <= 1; ++di)
      for (long long dj = -1; dj <= 1; ++dj) {
        auto it = buckets.find(bucket_key(bi + di, bj + dj));
        if (it == buckets.end()) continue;
        for (int v : it->second)
          if ((points[v] - p).norm() <= tol) return v;
      }
    const int v = static_cast<int>(points.size());
    points.push_back(p);
    buckets[bucket_key(bi, bj)].push_back(v);
    return v;
  }
};

// Inserts vertex v into every polygon edge that passes through it.
void insert_on_edges(const std::vector<Point>& vertices, std::vector<std::vector<int>>& polygons, int v) {
  const Point& p = vertices[v];
  for (auto& poly : polygons) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int a = poly[i], b = poly[(i + 1) % n];
      if (a == v || b == v) continue;
      if (collinear_between(vertices[a], p, vertices[b])) {
        poly.insert(poly.begin() + static_cast<std::ptrdiff_t>(i + 1), v);
        break;
      }
    }
  }
}

// Collapses edges shorter than ratio * min(incident diameters), keeping domain
// corners fixed and boundary vertices on the boundary.
void collapse_short_edges(std::vector<Point>& vertices, std::vector<std::vector<int>>& polygons,
                          Domain domain, double ratio) {
  const auto corners = domain_corners(domain);
  auto kind = [&](int v) {
    for (const auto& c : corners)
      if (vertices[v] == c) return 2;
    return on_domain_boundary(domain, vertices[v]) ? 1 : 0;
  };
  for (int pass = 0; pass < 20; ++pass) {
    std::vector<double> diam(polygons.size());
    for (std::size_t e = 0; e < polygons.size(); ++e) {
      std::vector<Point> pts;
      for (int v : polygons[e]) pts.push_back(vertices[v]);
      diam[e] = polygon_diameter(pts);
    }
    std::map<std::pair<int, int>, double> limit;
    for (std::size_t e = 0; e < polygons.size(); ++e) {
      const auto& p = polygons[e];
      for (std::size_t i = 0; i < p.size(); ++i) {
        const auto k = std::minmax(p[i], p[(i + 1) % p.size()]);
        auto [it, inserted] = limit.try_emplace({k.first, k.second}, diam[e]);
        if (!inserted) it->second = std::min(it->second, diam[e]);
      }
    }
    std::vector<int> target(vertices.size());
    for (std::size_t v = 0; v < target.size(); ++v) target[v] = static_cast<int>(v);
    std::vector<char> touched(vertices.size(), 0);
    bool changed = false;
    for (const auto& [edge, d] : limit) {
      const auto [a, b] = edge;
      if (touched[a] || touched[b]) continue;
      if ((vertices[a] - vertices[b]).norm() >= ratio * d) continue;
      const int ka = kind(a), kb = kind(b);
      if (ka == 2 && kb == 2) continue;
      Point p;
      if (ka > kb)
        p = vertices[a];
      else if (kb > ka)
        p = vertices[b];
      else
        p = 0.5 * (vertices[a] + vertices[b]);
      vertices[a] = p;
      target[b] = a;
      touched[a] = touched[b] = 1;
      changed = true;
    }
    if (!changed) return;
    for (auto& poly : polygons) {
      std::vector<int> out;
      for (int v : poly) {
        const int t = target[v];
        if (out.empty() || out.back() != t) out.push_back(t);
      }
      while (out.size() > 1 && out.front() == out.back()) out.pop_back();
      poly = std::move(out);
    }
  }
}

}  // namespace

PolyMesh generate_voronoi_from_seeds(std::vector<Point> seeds, int iterations, Domain domain) {
  if (seeds.size() < 4) throw MeshError("Voronoi mesh needs at least 4 seeds");
  const Box box = domain_box(domain);
  const double len = box.hi - box.lo;
  for (const auto& s : seeds)
    if (!domain_contains(domain, s)) throw MeshError("Voronoi seed outside the domain");
  {
    auto sorted = seeds;
    std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
      return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if ((sorted[i] - sorted[i - 1]).norm() <= 1e-12 * len)
        throw MeshError("coincident Voronoi seeds");
  }

  std::vector<Cell> cells(seeds.size());
  for (int it = 0; it <= iterations; ++it) {
    const VoronoiBuilder builder(seeds, domain);
    for (std::size_t i = 0; i < seeds.size(); ++i) cells[i] = builder.cell(static_cast<int>(i));
    if (it == iterations) break;
    for (std::size_t i = 0; i < seeds.size(); ++i)
      if (cells[i].area > 0.0 && domain_contains(domain, cells[i].centroid))
        seeds[i] = cells[i].centroid;
  }

  VertexPool pool{1e-10 * len, domain, {}, {}};
  std::vector<std::vector<int>> polygons;
  std::vector<int> split_ends;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].polygon.empty())
      throw MeshError("Voronoi cell " + std::to_string(i) + " is disconnected by the domain");
    for (const auto* piece : {&cells[i].polygon, &cells[i].second}) {
      if (piece->empty()) continue;
      std::vector<int> poly;
      for (const auto& p : *piece) {
        const int v = pool.insert(p);
        if (poly.empty() || poly.back() != v) poly.push_back(v);
      }
      while (poly.size() > 1 && poly.front() == poly.back()) poly.pop_back();
      polygons.push_back(std::move(poly));
    }
    if (!cells[i].second.empty())
      for (const auto& p : cells[i].second)
        if (p.x() < 0.0 && std::abs(p.x() + p.y()) <= 1e-12 * len) split_ends.push_back(pool.insert(p));
  }
  // the far end of a corner split lies on an edge of the neighbouring cell
  for (const int v : split_ends) insert_on_edges(pool.points, polygons, v);
  collapse_short_edges(pool.points, polygons, domain, 0.1);

  // drop vertices no longer referenced
  std::vector<int> remap(pool.points.size(), -1);
  std::vector<Point> vertices;
  for (auto& poly : polygons)
    for (int& v : poly) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(vertices.size());
        vertices.push_back(pool.points[v]);
      }
      v = remap[v];
    }
  return PolyMesh::build(std::move(vertices), std::move(polygons));
}

PolyMesh generate_voronoi_lloyd(int seeds, int iterations, std::uint64_t seed, Domain domain) {
  if (seeds < 4) throw MeshError("Voronoi mesh needs at least 4 seeds");
  if (iterations < 0) throw MeshError("negative Lloyd iteration count");
  const Box box = domain_box(domain);
  UniformSource rng(seed);
  std::vector<Point> points;
  points.reserve(seeds);
  while (static_cast<int>(points.size()) < seeds) {
    const Point p(box.lo + (box.hi - box.lo) * rng.next(), box.lo + (box.hi - box.lo) * rng.next());
    if (domain_contains(domain, p) && !on_domain_boundary(domain, p)) points.push_back(p);
  }
  PolyMesh m = generate_voronoi_from_seeds(std::move(points), iterations, domain);
  return PolyMesh::build(m.vertices(), m.polygons(), {},
                         VoronoiRecipe{seeds, iterations, seed, domain});
}

PolyMesh generate(const MeshRecipe& recipe) {
  return std::visit(
      [](const auto& r) -> PolyMesh {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, DistortedRecipe>)
          return generate_distorted_cartesian(r.n, r.delta, r.seed, r.domain);
        else if constexpr (std::is_same_v<R, StarConcaveRecipe>)
          return generate_star_concave(r.n, r.alpha, r.domain);
        else
          return generate_voronoi_lloyd(r.seeds, r.iterations, r.seed, r.domain);
      },
      recipe);
}

PolyMesh refine_uniform(const PolyMesh& mesh) {
  if (!mesh.recipe()) throw UnsupportedOperation("uniform refinement needs a generated mesh");
  MeshRecipe next = *mesh.recipe();
  std::visit(
      [](auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, VoronoiRecipe>)
          r.seeds *= 4;
        else
          r.n *= 2;
      },
      next);
  return generate(next);
}

}  // namespace sfvem
