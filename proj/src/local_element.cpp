#include "sfvem/local_element.hpp"

#include <iomanip>
#include <sstream>

namespace sfvem {

namespace {

void fill_geometry(LocalElement& el) {
  const int n = el.num_vertices();
  el.edges.resize(n);
  for (int i = 0; i < n; ++i) {
    LocalEdge& e = el.edges[i];
    e.a = el.vertices[i];
    e.b = el.vertices[(i + 1) % n];
    const Point d = e.b - e.a;
    e.length = d.norm();
    e.normal = Point(d.y(), -d.x()) / e.length;
  }
  el.area = signed_area(el.vertices);
  el.centroid = polygon_centroid(el.vertices);
  el.diameter = polygon_diameter(el.vertices);
}

}  // namespace

LocalElement LocalElement::from_mesh(const PolyMesh& mesh, int e) {
  LocalElement el;
  el.index = e;
  el.vertices = mesh.polygon_points(e);
  el.global_vertices = mesh.polygon(e);
  fill_geometry(el);
  const auto& ids = mesh.polygon_edges(e);
  const int n = el.num_vertices();
  for (int i = 0; i < n; ++i) {
    el.edges[i].global = ids[i];
    el.edges[i].reversed = el.global_vertices[i] > el.global_vertices[(i + 1) % n];
    el.edges[i].boundary = mesh.edge(ids[i]).boundary();
  }
  return el;
}

LocalElement LocalElement::from_polygon(std::vector<Point> vertices) {
  LocalElement el;
  el.vertices = std::move(vertices);
  for (int i = 0; i < el.num_vertices(); ++i) el.global_vertices.push_back(i);
  fill_geometry(el);
  return el;
}

std::string LocalElement::dump() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto& p : vertices) os << p.x() << ' ' << p.y() << '\n';
  return os.str();
}

}  // namespace sfvem
