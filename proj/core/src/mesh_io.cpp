#include "waistkit/mesh_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace waistkit {

namespace {

std::string lower_ext(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(c));
  return ext;
}

void apply_sidecar_lengths(TriMesh& mesh, const std::string& path) {
  const std::string sidecar = path + ".lengths";
  std::ifstream in(sidecar);
  if (!in) return;
  int a, b;
  double len;
  int line = 0;
  while (in >> a >> b >> len) {
    line++;
    mesh.set_length(a, b, len);
  }
  (void)line;
}

TriMesh load_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open " + path);
  std::string tok;
  in >> tok;
  if (tok != "OFF") throw MeshError(path + ": missing OFF header");
  long nv = 0, nf = 0, ne = 0;
  in >> nv >> nf >> ne;
  if (!in || nv <= 0 || nf <= 0) throw MeshError(path + ": bad OFF counts");
  TriMesh mesh;
  for (long i = 0; i < nv; i++) {
    VecN p;
    in >> p.c[0] >> p.c[1] >> p.c[2];
    p.dim = 3;
    mesh.add_vertex(p);
  }
  for (long i = 0; i < nf; i++) {
    int k;
    in >> k;
    if (k != 3) throw MeshError(path + ": face " + std::to_string(i) + " is not a triangle");
    int v0, v1, v2;
    in >> v0 >> v1 >> v2;
    mesh.add_face(v0, v1, v2);
  }
  if (!in) throw MeshError(path + ": truncated OFF file");
  return mesh;
}

TriMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open " + path);
  TriMesh mesh;
  std::string line;
  auto parse_index = [](const std::string& ref) {
    // "v", "v/vt", "v/vt/vn", "v//vn" -> v (1-based)
    return std::stoi(ref.substr(0, ref.find('/')));
  };
  long nv = 0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;
    if (head == "v") {
      VecN p;
      ss >> p.c[0] >> p.c[1] >> p.c[2];
      p.dim = 3;
      mesh.add_vertex(p);
      nv++;
    } else if (head == "f") {
      std::vector<int> idx;
      std::string ref;
      while (ss >> ref) idx.push_back(parse_index(ref));
      if (idx.size() != 3)
        throw MeshError(path + ": non-triangular face (got " + std::to_string(idx.size()) +
                        " corners)");
      for (int& v : idx) {
        if (v < 0) v = static_cast<int>(nv) + v + 1;  // negative = relative
        if (v < 1 || v > nv) throw MeshError(path + ": face index out of range");
      }
      mesh.add_face(idx[0] - 1, idx[1] - 1, idx[2] - 1);
    }
  }
  return mesh;
}

}  // namespace

TriMesh load_mesh(const std::string& path) {
  const std::string ext = lower_ext(path);
  TriMesh mesh;
  if (ext == ".off") {
    mesh = load_off(path);
  } else if (ext == ".obj") {
    mesh = load_obj(path);
  } else {
    throw MeshError("unsupported mesh format: " + path);
  }
  apply_sidecar_lengths(mesh, path);
  mesh.finalize();
  return mesh;
}

void save_off(const TriMesh& mesh, const std::string& path) {
  if (!mesh.has_embedding()) throw MeshError("save_off requires an embedding");
  std::ofstream out(path);
  if (!out) throw MeshError("cannot write " + path);
  out << "OFF\n" << mesh.n_vertices() << " " << mesh.n_faces_live() << " 0\n";
  out.precision(17);
  for (int v = 0; v < mesh.n_vertices(); v++) {
    const VecN& p = mesh.position(v);
    out << p[0] << " " << p[1] << " " << p[2] << "\n";
  }
  for (int f = 0; f < mesh.n_faces_total(); f++) {
    if (!mesh.face_alive(f)) continue;
    const auto& F = mesh.face(f);
    out << "3 " << F.v[0] << " " << F.v[1] << " " << F.v[2] << "\n";
  }
}

std::string mesh_summary_json(const TriMesh& mesh) {
  nlohmann::ordered_json j;
  j["vertices"] = mesh.n_vertices();
  j["edges"] = mesh.n_edges();
  j["faces"] = mesh.n_faces_live();
  j["euler_characteristic"] = mesh.euler_characteristic();
  j["genus"] = mesh.genus();
  j["boundary_loops"] = mesh.n_boundary_loops();
  j["area"] = mesh.total_area();
  j["boundary_length"] = mesh.boundary_length();
  j["embedded"] = mesh.has_embedding();
  return j.dump(2);
}

}  // namespace waistkit
