#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "waistkit/vec.hpp"

namespace waistkit {

// Indexing: -1 is the universal "invalid" id for vertices/edges/faces.
constexpr int kInvalid = -1;

struct MeshError : std::runtime_error {
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

// A point on the surface: a face id plus barycentric coordinates with
// respect to that face's corners. Vertices and edge points are the
// degenerate cases (one or two zero coordinates).
struct SurfacePoint {
  int face = kInvalid;
  std::array<double, 3> bary{0.0, 0.0, 0.0};
};

// Triangulated surface with an intrinsic metric (per-edge lengths) and an
// optional 3- or 4-dimensional embedding. Faces may be appended by the two
// local refinement operations (centroid split, edge split); dead faces keep
// their slot but are skipped everywhere.
//
// Invariants maintained after finalize():
//  - each edge bounds one or two live faces (edge-manifold),
//  - every face satisfies the strict triangle inequality,
//  - the complex is connected.
class TriMesh {
 public:
  struct Face {
    std::array<int, 3> v{kInvalid, kInvalid, kInvalid};
    std::array<int, 3> e{kInvalid, kInvalid, kInvalid};  // e[k] opposite v[k]? no: e[k] = (v[k], v[k+1])
    bool dead = false;
    // Local isometric chart: corner positions in the plane.
    std::array<Vec2, 3> chart;
    double area = 0.0;
  };

  struct Edge {
    int a = kInvalid, b = kInvalid;  // a < b
    double length = 0.0;
    std::array<int, 2> face{kInvalid, kInvalid};
  };

  // --- construction -------------------------------------------------------
  // Vertices are created first, then faces; finalize() builds connectivity,
  // charts, and validates the complex.
  int add_vertex();
  int add_vertex(const VecN& position);
  void add_face(int v0, int v1, int v2);
  // Explicit metric: overrides embedding-derived lengths for edge {a,b}.
  void set_length(int a, int b, double length);
  void finalize();

  // --- local refinement (append-only; call sites re-use cached ids) ------
  // Splits face f at its centroid into three faces. Returns the new vertex.
  int split_face_centroid(int f);
  // Splits edge e at its midpoint; the one or two incident faces are each
  // split in two. Returns the new vertex.
  int split_edge_midpoint(int e);

  // --- queries ------------------------------------------------------------
  int n_vertices() const { return static_cast<int>(vertex_count_); }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  int n_faces_total() const { return static_cast<int>(faces_.size()); }
  int n_faces_live() const { return live_face_count_; }

  const Face& face(int f) const { return faces_[f]; }
  const Edge& edge(int e) const { return edges_[e]; }
  bool face_alive(int f) const { return !faces_[f].dead; }

  bool has_embedding() const { return !positions_.empty(); }
  int embedding_dim() const { return embedding_dim_; }
  const VecN& position(int v) const { return positions_[v]; }

  double edge_length(int e) const { return edges_[e].length; }
  double face_area(int f) const { return faces_[f].area; }
  double total_area() const;

  int edge_between(int a, int b) const;  // kInvalid if none
  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[v]; }
  const std::vector<int>& vertex_edges(int v) const { return vertex_edges_[v]; }

  // Faces adjacent to f across its three edges (kInvalid at boundary).
  std::array<int, 3> face_neighbors(int f) const;

  // Corner index (0/1/2) of vertex v in face f; kInvalid if absent.
  int corner_of(int f, int v) const;

  bool is_closed() const { return boundary_edge_count_ == 0; }
  int n_boundary_loops() const { return static_cast<int>(boundary_loops_.size()); }
  const std::vector<std::vector<int>>& boundary_loops() const { return boundary_loops_; }
  double boundary_length() const;

  // Genus from the Euler characteristic: chi = 2 - 2g - b.
  int euler_characteristic() const;
  int genus() const;

  // Chart helpers.
  Vec2 chart_point(int f, const std::array<double, 3>& bary) const;
  Vec2 chart_point(const SurfacePoint& p) const { return chart_point(p.face, p.bary); }
  double distance_in_face(const SurfacePoint& p, const SurfacePoint& q) const;

  // Embedded position of a surface point (barycentric interpolation).
  VecN embed(const SurfacePoint& p) const;

  // Express a point of face `src` in neighboring (or same) face `dst`.
  // Only valid for points on the shared edge or shared vertices.
  SurfacePoint transfer(const SurfacePoint& p, int dst) const;

  // Uniform metric scaling: multiplies every edge length (and embedding,
  // when present) by lambda. Derived quantities scale exactly with it.
  void scale_metric(double lambda);

  // Replace all edge lengths (e.g. a slice of a metric family). The
  // combinatorics stay fixed; charts and areas are rebuilt.
  void assign_lengths(const std::vector<double>& per_edge);

  std::vector<double> lengths_snapshot() const;

 private:
  void build_connectivity();
  void build_face_geometry(int f);
  void validate() const;
  int intern_edge(int a, int b);

  std::size_t vertex_count_ = 0;
  std::vector<VecN> positions_;
  int embedding_dim_ = 3;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::vector<std::pair<std::pair<int, int>, double>> length_overrides_;
  std::vector<std::vector<int>> vertex_faces_;
  std::vector<std::vector<int>> vertex_edges_;
  std::vector<std::vector<int>> boundary_loops_;
  int boundary_edge_count_ = 0;
  int live_face_count_ = 0;
  bool finalized_ = false;
};

// A subsurface: a set of live faces of a mesh. Components and boundary
// structure are derived lazily by free functions below.
struct Region {
  const TriMesh* mesh = nullptr;
  std::vector<int> faces;  // sorted, unique, live
};

double region_area(const Region& r);
// Edges with exactly one incident region face (relative boundary included).
std::vector<int> region_boundary_edges(const Region& r);
double region_boundary_length(const Region& r);
// Vertices incident to region faces but only through boundary edges.
std::vector<char> region_boundary_vertex_mask(const Region& r, std::vector<int>* verts_out = nullptr);
std::vector<Region> region_components(const Region& r);
// chi, boundary loop count, genus of the subsurface.
struct RegionTopology {
  int chi = 0;
  int boundary_loops = 0;
  int genus = 0;
};
RegionTopology region_topology(const Region& r);

// Neighbors of v in cyclic fan order plus whether the link closes (interior
// vertex). Boundary links run from one boundary edge to the other.
std::pair<std::vector<int>, bool> vertex_link(const TriMesh& m, int v);

// Piecewise-geodesic curve: consecutive points share a face (stored per
// segment so lengths are exact in that face's chart).
struct PolyCurve {
  std::vector<SurfacePoint> pts;
  std::vector<int> seg_face;  // size pts.size()-1
  bool closed = false;        // closed implies pts.front() "equals" pts.back()

  std::size_t n_segments() const { return seg_face.size(); }
};

double curve_length(const TriMesh& mesh, const PolyCurve& c);
void validate_curve(const TriMesh& mesh, const PolyCurve& c);

}  // namespace waistkit
