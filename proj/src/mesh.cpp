#include "sfvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "sfvem/error.hpp"

namespace sfvem {

double domain_area(Domain d) { return d == Domain::UnitSquare ? 1.0 : 3.0; }

bool domain_contains(Domain d, const Point& p) {
  if (d == Domain::UnitSquare) return p.x() >= 0 && p.x() <= 1 && p.y() >= 0 && p.y() <= 1;
  const bool in_box = p.x() >= -1 && p.x() <= 1 && p.y() >= -1 && p.y() <= 1;
  return in_box && !(p.x() > 0 && p.y() < 0);
}

namespace {

std::string edge_name(int a, int b) {
  std::ostringstream os;
  os << "edge (" << a << ", " << b << ")";
  return os.str();
}

// Throws if a boundary edge passes through another vertex: a hanging node.
void check_hanging_nodes(const std::vector<Point>& vertices, const std::vector<MeshEdge>& edges) {
  std::vector<int> order(vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return vertices[a].x() < vertices[b].x(); });
  std::vector<double> xs(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) xs[i] = vertices[order[i]].x();

  for (const auto& e : edges) {
    if (!e.boundary()) continue;
    const Point& a = vertices[e.vertices[0]];
    const Point& b = vertices[e.vertices[1]];
    const double tol = 1e-10 * e.length;
    const double xlo = std::min(a.x(), b.x()) - tol;
    const double xhi = std::max(a.x(), b.x()) + tol;
    auto it = std::lower_bound(xs.begin(), xs.end(), xlo);
    for (auto i = static_cast<std::size_t>(it - xs.begin()); i < xs.size() && xs[i] <= xhi; ++i) {
      const int v = order[i];
      if (v == e.vertices[0] || v == e.vertices[1]) continue;
      const Point& p = vertices[v];
      const Point d = b - a;
      const double t = (p - a).dot(d) / d.squaredNorm();
      if (t <= 1e-10 || t >= 1.0 - 1e-10) continue;
      const double dist = std::abs(d.x() * (p - a).y() - d.y() * (p - a).x()) / e.length;
      if (dist <= tol)
        throw MeshError("nonconforming " + edge_name(e.vertices[0], e.vertices[1]) +
                            ": hanging node " + std::to_string(v) + " lies on it",
                        e.polygons[0]);
    }
  }
}

}  // namespace

PolyMesh PolyMesh::build(std::vector<Point> vertices, std::vector<std::vector<int>> polygons,
                         std::vector<int> regions, std::optional<MeshRecipe> recipe) {
  PolyMesh m;
  m.vertices_ = std::move(vertices);
  m.polygons_ = std::move(polygons);
  m.recipe_ = std::move(recipe);
  const int nv = m.num_vertices();
  const int np = m.num_polygons();
  if (np == 0) throw MeshError("mesh has no polygons");
  if (regions.empty()) regions.assign(np, 0);
  if (static_cast<int>(regions.size()) != np)
    throw MeshError("region count " + std::to_string(regions.size()) +
                    " does not match polygon count " + std::to_string(np));
  m.regions_ = std::move(regions);

  m.areas_.resize(np);
  m.diameters_.resize(np);
  m.centroids_.resize(np);
  m.polygon_edges_.resize(np);
  std::map<std::pair<int, int>, int> edge_index;

  for (int e = 0; e < np; ++e) {
    const auto& poly = m.polygons_[e];
    const int n = static_cast<int>(poly.size());
    if (n < 3) throw MeshError("polygon " + std::to_string(e) + " has fewer than 3 vertices", e);
    for (int v : poly)
      if (v < 0 || v >= nv)
        throw MeshError("polygon " + std::to_string(e) + " references vertex " +
                            std::to_string(v) + " out of range",
                        e);
    auto sorted = poly;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw MeshError("polygon " + std::to_string(e) + " repeats a vertex", e);

    const auto pts = m.polygon_points(e);
    const double a = signed_area(pts);
    if (!(a > 0.0))
      throw MeshError("polygon " + std::to_string(e) + " is not counter-clockwise (area " +
                          std::to_string(a) + ")",
                      e);
    if (!is_simple(pts)) throw MeshError("polygon " + std::to_string(e) + " is not simple", e);
    m.areas_[e] = a;
    m.centroids_[e] = polygon_centroid(pts);
    m.diameters_[e] = polygon_diameter(pts);
    m.h_ = std::max(m.h_, m.diameters_[e]);

    auto& pe = m.polygon_edges_[e];
    pe.resize(n);
    for (int i = 0; i < n; ++i) {
      const int a0 = poly[i];
      const int b0 = poly[(i + 1) % n];
      const auto key = std::minmax(a0, b0);
      auto [it, inserted] = edge_index.try_emplace({key.first, key.second}, m.num_edges());
      if (inserted) {
        MeshEdge edge;
        edge.vertices = {key.first, key.second};
        edge.polygons = {e, -1};
        edge.length = (m.vertices_[b0] - m.vertices_[a0]).norm();
        m.edges_.push_back(edge);
      } else {
        MeshEdge& edge = m.edges_[it->second];
        if (edge.polygons[1] >= 0)
          throw MeshError(edge_name(key.first, key.second) + " shared by more than two polygons",
                          e);
        // the neighbour must traverse the edge in the opposite direction
        const auto& other = m.polygons_[edge.polygons[0]];
        const int no = static_cast<int>(other.size());
        const auto pos = std::find(other.begin(), other.end(), a0) - other.begin();
        if (other[(pos + no - 1) % no] != b0)
          throw MeshError(edge_name(key.first, key.second) +
                              " traversed in the same direction by polygons " +
                              std::to_string(edge.polygons[0]) + " and " + std::to_string(e),
                          e);
        edge.polygons[1] = e;
      }
      pe[i] = it->second;
    }
  }

  m.boundary_vertex_.assign(nv, 0);
  for (const auto& edge : m.edges_)
    if (edge.boundary()) m.boundary_vertex_[edge.vertices[0]] = m.boundary_vertex_[edge.vertices[1]] = 1;
  std::vector<char> used(nv, 0);
  for (const auto& poly : m.polygons_)
    for (int v : poly) used[v] = 1;
  for (int v = 0; v < nv; ++v)
    if (!used[v]) throw MeshError("vertex " + std::to_string(v) + " belongs to no polygon");

  check_hanging_nodes(m.vertices_, m.edges_);
  return m;
}

std::vector<Point> PolyMesh::polygon_points(int e) const {
  std::vector<Point> pts;
  pts.reserve(polygons_[e].size());
  for (int v : polygons_[e]) pts.push_back(vertices_[v]);
  return pts;
}

double PolyMesh::total_area() const {
  double a = 0.0;
  for (double x : areas_) a += x;
  return a;
}

int PolyMesh::num_boundary_edges() const {
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [](const MeshEdge& e) { return e.boundary(); }));
}

PolyMesh PolyMesh::with_regions(std::vector<int> regions) const {
  if (static_cast<int>(regions.size()) != num_polygons())
    throw MeshError("region count does not match polygon count");
  PolyMesh copy = *this;
  copy.regions_ = std::move(regions);
  return copy;
}

std::vector<int> regions_from_boxes(const PolyMesh& mesh, const std::vector<RegionBox>& boxes,
                                    int fallback) {
  std::vector<int> ids(mesh.num_polygons(), fallback);
  for (int e = 0; e < mesh.num_polygons(); ++e)
    for (const auto& b : boxes)
      if (b.contains(mesh.centroid(e))) {
        ids[e] = b.id;
        break;
      }
  return ids;
}

}  // namespace sfvem
