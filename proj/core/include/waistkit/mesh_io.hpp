#pragma once

#include <string>

#include "waistkit/mesh.hpp"

namespace waistkit {

// Loads a triangulated surface from an ASCII OFF or OBJ file (decided by
// extension). If a sidecar file "<path>.lengths" exists, its entries
// ("<va> <vb> <length>" per line) override the embedding-induced metric.
// Validation failures throw MeshError with a diagnostic.
TriMesh load_mesh(const std::string& path);

void save_off(const TriMesh& mesh, const std::string& path);

// Compact summary used by the CLI and reports.
std::string mesh_summary_json(const TriMesh& mesh);

}  // namespace waistkit
