#include <doctest.h>

#include <algorithm>

#include "sfvem/mesh_generators.hpp"
#include "sfvem/patches.hpp"

using namespace sfvem;

TEST_CASE("3x3 grid: the center cell touches all nine") {
  const PolyMesh m = generate_distorted_cartesian(3, 0.0, 0);
  const MeshPatches p = build_patches(m);
  int center = -1;
  for (int e = 0; e < m.num_polygons(); ++e)
    if ((m.centroid(e) - Point(0.5, 0.5)).norm() < 1e-12) center = e;
  REQUIRE(center >= 0);
  CHECK(p.element[center].members.size() == 9);
  CHECK(p.element_edge[center].members.size() == 5);
}

TEST_CASE("single element") {
  const PolyMesh m = PolyMesh::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
  const MeshPatches p = build_patches(m);
  CHECK(p.element[0].members == std::vector<int>{0});
  for (const auto& e : p.edge) CHECK(e.members.empty());
  CHECK(p.element_edge[0].members.empty());
}

TEST_CASE("2x1 grid shared edge") {
  const PolyMesh m = PolyMesh::build({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}}, {{0, 1, 4, 3}, {1, 2, 5, 4}});
  const MeshPatches p = build_patches(m);
  int shared = -1;
  for (int i = 0; i < m.num_edges(); ++i)
    if (!m.edge(i).boundary()) shared = i;
  REQUIRE(shared >= 0);
  CHECK(p.edge[shared].members.size() == 2);
  CHECK(p.extended_edge[shared].members.size() == 2);
}

TEST_CASE("patch properties on generated meshes") {
  for (const PolyMesh& m : {generate_voronoi_lloyd(60, 20, 3), generate_star_concave(4, 0.3),
                            generate_distorted_cartesian(6, 0.3, 1, Domain::LShape)}) {
    const MeshPatches p = build_patches(m);
    const auto& q = p.quality;
    CHECK(q.max_vertices > 0);
    CHECK(q.max_elements_per_vertex > 0);
    CHECK(q.kappa_hat > 0.0);
    CHECK(q.kappa_hat <= 1.0);
    const std::size_t bound = q.max_vertices * (q.max_elements_per_vertex - 2) + 1;
    for (int e = 0; e < m.num_polygons(); ++e) {
      const auto& members = p.element[e].members;
      CHECK(std::binary_search(members.begin(), members.end(), e));
      CHECK(members.size() <= bound);
      for (int f : members) {
        const auto& back = p.element[f].members;
        CHECK(std::binary_search(back.begin(), back.end(), e));
      }
    }
    for (int i = 0; i < m.num_edges(); ++i) {
      if (m.edge(i).boundary()) continue;
      CHECK(p.edge[i].members.size() == 2);
      for (int f : p.edge[i].members)
        CHECK(std::includes(p.extended_edge[i].members.begin(), p.extended_edge[i].members.end(),
                            p.element[f].members.begin(), p.element[f].members.end()));
    }
  }
}
