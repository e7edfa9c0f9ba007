#pragma once

#include <string>
#include <vector>

#include "sfvem/geometry.hpp"
#include "sfvem/mesh.hpp"

namespace sfvem {

struct LocalEdge {
  Point a, b;           // CCW traversal order within the element
  double length = 0.0;
  Point normal;         // outward unit normal
  int global = -1;      // mesh edge id, -1 for standalone elements
  bool reversed = false;  // a -> b runs from the larger to the smaller global vertex id
  bool boundary = false;
};

/// Geometry of one polygon as seen by the local VEM computations.
struct LocalElement {
  int index = -1;
  std::vector<Point> vertices;
  std::vector<int> global_vertices;
  std::vector<LocalEdge> edges;  // edge i joins vertices i and i+1
  Point centroid;
  double diameter = 0.0;
  double area = 0.0;

  int num_vertices() const { return static_cast<int>(vertices.size()); }

  static LocalElement from_mesh(const PolyMesh& mesh, int e);
  /// A standalone element (no mesh topology), vertices CCW.
  static LocalElement from_polygon(std::vector<Point> vertices);

  /// "x y" per vertex, for diagnostics.
  std::string dump() const;
};

}  // namespace sfvem
