#include "sfvem/patches.hpp"

#include <algorithm>

#include "sfvem/geometry.hpp"

namespace sfvem {

namespace {

std::vector<int> merged(const std::vector<const std::vector<int>*>& sets) {
  std::vector<int> out;
  for (const auto* s : sets) out.insert(out.end(), s->begin(), s->end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<int>> vertex_to_polygons(const PolyMesh& mesh) {
  std::vector<std::vector<int>> out(mesh.num_vertices());
  for (int e = 0; e < mesh.num_polygons(); ++e)
    for (int v : mesh.polygon(e)) out[v].push_back(e);
  return out;
}

}  // namespace

MeshQualityReport mesh_quality(const PolyMesh& mesh) {
  MeshQualityReport q;
  q.rho.resize(mesh.num_polygons());
  for (int e = 0; e < mesh.num_polygons(); ++e) {
    const auto pts = mesh.polygon_points(e);
    q.rho[e] = star_ball(pts).radius;
    const double h = mesh.diameter(e);
    q.min_rho_ratio = std::min(q.min_rho_ratio, q.rho[e] / h);
    for (int id : mesh.polygon_edges(e)) q.min_edge_ratio = std::min(q.min_edge_ratio, mesh.edge(id).length / h);
    q.max_vertices = std::max(q.max_vertices, static_cast<int>(pts.size()));
  }
  for (const auto& list : vertex_to_polygons(mesh))
    q.max_elements_per_vertex = std::max(q.max_elements_per_vertex, static_cast<int>(list.size()));
  q.kappa_hat = std::min(q.min_rho_ratio, q.min_edge_ratio);
  return q;
}

MeshPatches build_patches(const PolyMesh& mesh) {
  MeshPatches p;
  const int np = mesh.num_polygons();
  const auto by_vertex = vertex_to_polygons(mesh);

  p.element.resize(np, {PatchKind::Element, {}});
  for (int e = 0; e < np; ++e) {
    std::vector<const std::vector<int>*> sets;
    for (int v : mesh.polygon(e)) sets.push_back(&by_vertex[v]);
    p.element[e].members = merged(sets);
  }

  p.edge.resize(mesh.num_edges(), {PatchKind::Edge, {}});
  p.extended_edge.resize(mesh.num_edges(), {PatchKind::ExtendedEdge, {}});
  for (int i = 0; i < mesh.num_edges(); ++i) {
    const auto& edge = mesh.edge(i);
    if (edge.boundary()) continue;
    p.edge[i].members = {std::min(edge.polygons[0], edge.polygons[1]),
                         std::max(edge.polygons[0], edge.polygons[1])};
    p.extended_edge[i].members =
        merged({&p.element[edge.polygons[0]].members, &p.element[edge.polygons[1]].members});
  }

  p.element_edge.resize(np, {PatchKind::ElementEdge, {}});
  for (int e = 0; e < np; ++e) {
    std::vector<const std::vector<int>*> sets;
    for (int id : mesh.polygon_edges(e)) sets.push_back(&p.edge[id].members);
    p.element_edge[e].members = merged(sets);
  }

  p.quality = mesh_quality(mesh);
  return p;
}

}  // namespace sfvem
