#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "waistkit/mesh.hpp"

namespace waistkit {

// Dijkstra over the vertex/edge graph. Distances are `inf` for unreachable
// vertices. An optional face mask (size n_faces_total, nonzero = allowed)
// restricts the walk to edges of allowed faces.
std::vector<double> vertex_distances(const TriMesh& m, const std::vector<int>& sources,
                                     const std::vector<char>* face_mask = nullptr);
std::vector<double> vertex_distances(const TriMesh& m, int source,
                                     const std::vector<char>* face_mask = nullptr);

// Vertex sequence of a shortest vertex-graph path, inclusive of both ends
// (ties resolved toward lower predecessor ids). Throws when unreachable.
std::vector<int> vertex_path(const TriMesh& m, int from, int to,
                             const std::vector<char>* face_mask = nullptr);

// Farthest-point sampling over (allowed) vertices. The start vertex is the
// (seed mod #allowed)-th allowed vertex; each further sample maximizes the
// distance to the ones already chosen (ties -> lowest id). Returns <= k ids.
std::vector<int> farthest_point_sample(const TriMesh& m, int k, std::uint64_t seed,
                                       const std::vector<char>* face_mask = nullptr);

// Geodesic distances on the PL surface via a Steiner graph: `points_per_edge`
// evenly spaced interior nodes per edge; within each face all boundary nodes
// are linked by their chart chords, and nodes along a mesh edge are chained.
// Every graph edge is a genuine surface segment, so graph distances are
// lengths of actual paths and `distance` below is a true metric on the
// surface (symmetric by canonical argument ordering).
class SteinerGraph {
 public:
  explicit SteinerGraph(const TriMesh& m, int points_per_edge = 4);

  int n_nodes() const { return n_nodes_; }
  int points_per_edge() const { return ppe_; }
  int vertex_node(int v) const { return v; }
  int edge_node(int e, int k) const { return n_mesh_vertices_ + e * ppe_ + k; }
  double edge_node_t(int k) const { return static_cast<double>(k + 1) / (ppe_ + 1); }

  // A representative surface point for a node (vertex corner or edge point).
  SurfacePoint node_point(int node) const;

  // Multi-source Dijkstra; seeds are (node, initial offset).
  std::vector<double> distances(const std::vector<std::pair<int, double>>& seeds) const;

  // Node sequence of a shortest path (inclusive of both endpoints).
  std::vector<int> node_path(int from, int to) const;

  // Surface distance between two points: the in-face chord when a common
  // face exists, and the best boundary-node relay otherwise (the minimum of
  // the two when both apply).
  double distance(const SurfacePoint& p, const SurfacePoint& q) const;

  // Optional exact all-pairs table (only sensible for small graphs); after
  // this, `distance` answers from the table instead of per-query Dijkstra.
  void precompute_all_pairs();
  bool has_all_pairs() const { return !table_.empty(); }

  const TriMesh& mesh() const { return *mesh_; }

 private:
  struct Link {
    int to;
    double w;
  };

  Vec2 node_chart(int face, int node) const;
  std::vector<int> face_nodes(int face) const;
  double directed_distance(const SurfacePoint& p, const SurfacePoint& q) const;

  const TriMesh* mesh_;
  int ppe_;
  int n_mesh_vertices_;
  int n_nodes_;
  std::vector<std::vector<Link>> adj_;
  std::vector<double> table_;  // n_nodes_^2 when built
};

}  // namespace waistkit
