#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "sfvem/geometry.hpp"

namespace sfvem {

enum class Domain { UnitSquare, LShape };

/// (0,1)^2 or (-1,1)^2 \ [0,1]x[-1,0].
double domain_area(Domain d);
bool domain_contains(Domain d, const Point& p);

struct DistortedRecipe {
  int n = 8;
  double delta = 0.2;
  std::uint64_t seed = 0;
  Domain domain = Domain::UnitSquare;
};

struct StarConcaveRecipe {
  int n = 8;
  double alpha = 0.3;
  Domain domain = Domain::UnitSquare;
};

struct VoronoiRecipe {
  int seeds = 64;
  int iterations = 50;
  std::uint64_t seed = 1;
  Domain domain = Domain::UnitSquare;
};

/// How a generated mesh was built; lets refine_uniform regenerate it.
using MeshRecipe = std::variant<DistortedRecipe, StarConcaveRecipe, VoronoiRecipe>;

struct MeshEdge {
  std::array<int, 2> vertices{};        // canonical: vertices[0] < vertices[1]
  std::array<int, 2> polygons{-1, -1};  // polygons[1] == -1 on the boundary
  double length = 0.0;
  bool boundary() const { return polygons[1] < 0; }
};

/// Conforming polygonal tessellation. Immutable once built.
class PolyMesh {
 public:
  /// Validates and builds the edge topology. Polygons must be simple, CCW,
  /// and conforming (no hanging nodes); violations throw MeshError.
  static PolyMesh build(std::vector<Point> vertices, std::vector<std::vector<int>> polygons,
                        std::vector<int> regions = {}, std::optional<MeshRecipe> recipe = {});

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_polygons() const { return static_cast<int>(polygons_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int v) const { return vertices_[v]; }
  const std::vector<int>& polygon(int e) const { return polygons_[e]; }
  const std::vector<std::vector<int>>& polygons() const { return polygons_; }
  std::vector<Point> polygon_points(int e) const;

  const MeshEdge& edge(int i) const { return edges_[i]; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  /// Edge ids of polygon e, local edge i joining local vertices i and i+1.
  const std::vector<int>& polygon_edges(int e) const { return polygon_edges_[e]; }

  double area(int e) const { return areas_[e]; }
  const Point& centroid(int e) const { return centroids_[e]; }
  double diameter(int e) const { return diameters_[e]; }
  /// max over polygons of the diameter.
  double h() const { return h_; }
  double total_area() const;

  int region(int e) const { return regions_[e]; }
  const std::vector<int>& regions() const { return regions_; }
  PolyMesh with_regions(std::vector<int> regions) const;

  bool boundary_vertex(int v) const { return boundary_vertex_[v]; }
  int num_boundary_edges() const;
  int num_interior_edges() const { return num_edges() - num_boundary_edges(); }

  const std::optional<MeshRecipe>& recipe() const { return recipe_; }

 private:
  std::vector<Point> vertices_;
  std::vector<std::vector<int>> polygons_;
  std::vector<int> regions_;
  std::vector<MeshEdge> edges_;
  std::vector<std::vector<int>> polygon_edges_;
  std::vector<double> areas_;
  std::vector<double> diameters_;
  std::vector<Point> centroids_;
  std::vector<char> boundary_vertex_;
  double h_ = 0.0;
  std::optional<MeshRecipe> recipe_;
};

/// Axis-aligned subdomain [x0,x1]x[y0,y1] tagged with a region id.
struct RegionBox {
  double x0, x1, y0, y1;
  int id;
  bool contains(const Point& p) const {
    return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1;
  }
};

/// Region id of each polygon from its centroid; the first matching box wins,
/// polygons matching none get `fallback`.
std::vector<int> regions_from_boxes(const PolyMesh& mesh, const std::vector<RegionBox>& boxes,
                                    int fallback = 0);

}  // namespace sfvem
