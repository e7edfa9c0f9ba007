#pragma once

#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "sfvem/mesh.hpp"

// Invariant checker written against the raw polygon lists only.
inline void check_mesh_invariants(const sfvem::PolyMesh& mesh, double expected_area) {
  std::map<std::pair<int, int>, std::vector<std::pair<int, bool>>> uses;  // edge -> (polygon, forward)
  double area = 0.0;
  for (int e = 0; e < mesh.num_polygons(); ++e) {
    const auto& poly = mesh.polygon(e);
    REQUIRE(poly.size() >= 3);
    std::vector<oracle::Point> pts;
    for (int v : poly) pts.push_back(mesh.vertex(v));
    const double a = oracle::shoelace(pts);
    CHECK(a > 0.0);
    area += a;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const int p = poly[i], q = poly[(i + 1) % poly.size()];
      uses[{std::min(p, q), std::max(p, q)}].push_back({e, p < q});
    }
  }
  CHECK(area == doctest::Approx(expected_area).epsilon(1e-12));
  int boundary = 0;
  for (const auto& [edge, list] : uses) {
    REQUIRE(list.size() <= 2);
    if (list.size() == 1) ++boundary;
    else CHECK(list[0].second != list[1].second);
  }
  CHECK(static_cast<int>(uses.size()) == mesh.num_edges());
  CHECK(boundary == mesh.num_boundary_edges());
}
