#pragma once

#include <cstdint>
#include <vector>

#include "sfvem/mesh.hpp"

namespace sfvem {

/// n x n cartesian grid with interior vertices displaced by a uniform random
/// vector of norm <= delta * (cell size). Vertices on x = 0.5 / y = 0.5 of the
/// unit square (n even) only slide along those lines, so diffusion interfaces
/// stay aligned with element edges. For the L-shape, n must be even and the
/// grid covers (-1,1)^2.
PolyMesh generate_distorted_cartesian(int n, double delta, std::uint64_t seed,
                                      Domain domain = Domain::UnitSquare);

/// Checkerboard of concave star octagons (interior-edge midpoints pulled
/// towards the cell center by alpha) and the matching convex filler polygons.
PolyMesh generate_star_concave(int n, double alpha, Domain domain = Domain::UnitSquare);

/// Clipped Voronoi diagram of `seeds` random points after `iterations` Lloyd
/// steps. Edges shorter than a tenth of the incident cell diameters are
/// collapsed.
PolyMesh generate_voronoi_lloyd(int seeds, int iterations, std::uint64_t seed,
                                Domain domain = Domain::UnitSquare);

/// Same construction from explicit seed points. The result carries no recipe.
PolyMesh generate_voronoi_from_seeds(std::vector<Point> seeds, int iterations,
                                     Domain domain = Domain::UnitSquare);

PolyMesh generate(const MeshRecipe& recipe);

/// Regenerates the mesh family with half the mesh size: n doubles for the
/// cartesian families, the seed count quadruples for Voronoi meshes.
/// Throws UnsupportedOperation for meshes without a recipe.
PolyMesh refine_uniform(const PolyMesh& mesh);

}  // namespace sfvem
