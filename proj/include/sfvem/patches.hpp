#pragma once

#include <vector>

#include "sfvem/mesh.hpp"

namespace sfvem {

enum class PatchKind { Element, Edge, ExtendedEdge, ElementEdge };

struct Patch {
  PatchKind kind;
  std::vector<int> members;  // sorted polygon ids
};

struct MeshQualityReport {
  std::vector<double> rho;      // star-shapedness radius per polygon
  double min_edge_ratio = 1.0;  // min over e of h_e / h_E
  double min_rho_ratio = 1.0;   // min over E of rho_E / h_E
  int max_vertices = 0;         // N_V^max
  int max_elements_per_vertex = 0;  // N_{V,E}^max
  double kappa_hat = 1.0;       // min(min_rho_ratio, min_edge_ratio)
};

/// Neighbourhoods of a mesh:
///   element[E]       polygons sharing at least a vertex with E (E included)
///   edge[e]          polygons containing e (empty for boundary edges)
///   extended_edge[e] union of element[] over edge[e]
///   element_edge[E]  union of edge[e] over the interior edges of E
struct MeshPatches {
  std::vector<Patch> element;
  std::vector<Patch> edge;
  std::vector<Patch> extended_edge;
  std::vector<Patch> element_edge;
  MeshQualityReport quality;
};

MeshPatches build_patches(const PolyMesh& mesh);

MeshQualityReport mesh_quality(const PolyMesh& mesh);

}  // namespace sfvem
