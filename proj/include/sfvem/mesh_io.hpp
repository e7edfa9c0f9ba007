#pragma once

#include <iosfwd>
#include <string>

#include "sfvem/mesh.hpp"

namespace sfvem {

/// sfvem-mesh v1:
///   sfvem-mesh 1
///   vertices N      followed by N lines "x y"
///   polygons M      followed by M lines "n i0 ... i_{n-1}" (0-based, CCW)
///   regions M       optional, followed by M integers
/// Tokens are whitespace separated; '#' starts a comment.
PolyMesh read_mesh(std::istream& in);
PolyMesh load_mesh(const std::string& path);

void write_mesh(const PolyMesh& mesh, std::ostream& out);
void save_mesh(const PolyMesh& mesh, const std::string& path);

}  // namespace sfvem
