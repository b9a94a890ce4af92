#include "waistkit/shortest_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

namespace waistkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using HeapItem = std::pair<double, int>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>>;

// Edges usable under a face mask: at least one allowed live incident face.
std::vector<char> allowed_edges(const TriMesh& m, const std::vector<char>* face_mask) {
  std::vector<char> ok(m.n_edges(), 0);
  for (int e = 0; e < m.n_edges(); e++) {
    for (int f : m.edge(e).face) {
      if (f == kInvalid || !m.face_alive(f)) continue;
      if (face_mask && !(*face_mask)[f]) continue;
      ok[e] = 1;
      break;
    }
  }
  return ok;
}

}  // namespace

std::vector<double> vertex_distances(const TriMesh& m, const std::vector<int>& sources,
                                     const std::vector<char>* face_mask) {
  const std::vector<char> edge_ok = allowed_edges(m, face_mask);
  std::vector<double> dist(m.n_vertices(), kInf);
  MinHeap heap;
  for (int s : sources) {
    dist[s] = 0.0;
    heap.push({0.0, s});
  }
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (int e : m.vertex_edges(v)) {
      if (!edge_ok[e]) continue;
      const TriMesh::Edge& E = m.edge(e);
      const int w = (E.a == v) ? E.b : E.a;
      const double nd = d + E.length;
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.push({nd, w});
      }
    }
  }
  return dist;
}

std::vector<double> vertex_distances(const TriMesh& m, int source,
                                     const std::vector<char>* face_mask) {
  return vertex_distances(m, std::vector<int>{source}, face_mask);
}

std::vector<int> vertex_path(const TriMesh& m, int from, int to,
                             const std::vector<char>* face_mask) {
  const std::vector<char> edge_ok = allowed_edges(m, face_mask);
  std::vector<double> dist(m.n_vertices(), kInf);
  std::vector<int> prev(m.n_vertices(), kInvalid);
  MinHeap heap;
  dist[from] = 0.0;
  heap.push({0.0, from});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    if (v == to) break;
    for (int e : m.vertex_edges(v)) {
      if (!edge_ok[e]) continue;
      const TriMesh::Edge& E = m.edge(e);
      const int w = (E.a == v) ? E.b : E.a;
      const double nd = d + E.length;
      if (nd < dist[w] || (nd == dist[w] && v < prev[w])) {
        dist[w] = nd;
        prev[w] = v;
        heap.push({nd, w});
      }
    }
  }
  if (!std::isfinite(dist[to])) throw MeshError("vertex_path: unreachable");
  std::vector<int> path{to};
  while (path.back() != from) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> farthest_point_sample(const TriMesh& m, int k, std::uint64_t seed,
                                       const std::vector<char>* face_mask) {
  std::vector<char> vertex_ok(m.n_vertices(), 1);
  if (face_mask) {
    std::fill(vertex_ok.begin(), vertex_ok.end(), 0);
    for (int f = 0; f < m.n_faces_total(); f++) {
      if (!m.face_alive(f) || !(*face_mask)[f]) continue;
      for (int v : m.face(f).v) vertex_ok[v] = 1;
    }
  }
  std::vector<int> allowed;
  for (int v = 0; v < m.n_vertices(); v++)
    if (vertex_ok[v]) allowed.push_back(v);
  if (allowed.empty() || k <= 0) return {};

  std::vector<int> samples{allowed[seed % allowed.size()]};
  std::vector<double> nearest = vertex_distances(m, samples.back(), face_mask);
  while (static_cast<int>(samples.size()) < k) {
    int best = kInvalid;
    double best_d = 0.0;
    for (int v : allowed) {
      if (nearest[v] > best_d && std::isfinite(nearest[v])) {
        best_d = nearest[v];
        best = v;
      }
    }
    if (best == kInvalid || best_d <= 0.0) break;  // everything covered
    samples.push_back(best);
    const std::vector<double> d = vertex_distances(m, best, face_mask);
    for (int v : allowed) nearest[v] = std::min(nearest[v], d[v]);
  }
  return samples;
}

SteinerGraph::SteinerGraph(const TriMesh& m, int points_per_edge)
    : mesh_(&m), ppe_(points_per_edge), n_mesh_vertices_(m.n_vertices()) {
  if (ppe_ < 1) throw MeshError("SteinerGraph needs points_per_edge >= 1");
  n_nodes_ = n_mesh_vertices_ + m.n_edges() * ppe_;
  adj_.resize(n_nodes_);

  auto add_link = [&](int u, int v, double w) {
    adj_[u].push_back({v, w});
    adj_[v].push_back({u, w});
  };

  // Along-edge chains and the exact vertex-to-vertex edge link.
  for (int e = 0; e < m.n_edges(); e++) {
    const TriMesh::Edge& E = m.edge(e);
    bool live = false;
    for (int f : E.face) live |= (f != kInvalid && m.face_alive(f));
    if (!live) continue;
    int prev = vertex_node(E.a);
    double prev_t = 0.0;
    for (int k = 0; k < ppe_; k++) {
      const double t = edge_node_t(k);
      add_link(prev, edge_node(e, k), (t - prev_t) * E.length);
      prev = edge_node(e, k);
      prev_t = t;
    }
    add_link(prev, vertex_node(E.b), (1.0 - prev_t) * E.length);
    add_link(vertex_node(E.a), vertex_node(E.b), E.length);
  }

  // In-face chords between boundary nodes on distinct mesh edges.
  std::vector<int> node_edge(n_nodes_, kInvalid);  // mesh edge carrying the node
  for (int e = 0; e < m.n_edges(); e++)
    for (int k = 0; k < ppe_; k++) node_edge[edge_node(e, k)] = e;

  for (int f = 0; f < m.n_faces_total(); f++) {
    if (!m.face_alive(f)) continue;
    const std::vector<int> nodes = face_nodes(f);
    std::vector<Vec2> pos(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); i++) pos[i] = node_chart(f, nodes[i]);
    for (std::size_t i = 0; i < nodes.size(); i++) {
      for (std::size_t j = i + 1; j < nodes.size(); j++) {
        const int u = nodes[i], v = nodes[j];
        const int eu = node_edge[u], ev = node_edge[v];
        if (eu != kInvalid && eu == ev) continue;  // chained above
        if (u < n_mesh_vertices_ && v < n_mesh_vertices_) continue;  // direct edge link above
        if (eu != kInvalid && v < n_mesh_vertices_ &&
            (m.edge(eu).a == v || m.edge(eu).b == v))
          continue;
        if (ev != kInvalid && u < n_mesh_vertices_ &&
            (m.edge(ev).a == u || m.edge(ev).b == u))
          continue;
        add_link(u, v, (pos[i] - pos[j]).norm());
      }
    }
  }
}

Vec2 SteinerGraph::node_chart(int face, int node) const {
  const TriMesh::Face& F = mesh_->face(face);
  if (node < n_mesh_vertices_) {
    const int c = mesh_->corner_of(face, node);
    if (c == kInvalid) throw MeshError("node_chart: vertex not in face");
    return F.chart[c];
  }
  const int e = (node - n_mesh_vertices_) / ppe_;
  const int k = (node - n_mesh_vertices_) % ppe_;
  const TriMesh::Edge& E = mesh_->edge(e);
  const int ca = mesh_->corner_of(face, E.a);
  const int cb = mesh_->corner_of(face, E.b);
  if (ca == kInvalid || cb == kInvalid) throw MeshError("node_chart: edge not in face");
  const double t = edge_node_t(k);
  return F.chart[ca] * (1.0 - t) + F.chart[cb] * t;
}

std::vector<int> SteinerGraph::face_nodes(int face) const {
  const TriMesh::Face& F = mesh_->face(face);
  std::vector<int> nodes;
  nodes.reserve(3 * (ppe_ + 1));
  for (int k = 0; k < 3; k++) nodes.push_back(vertex_node(F.v[k]));
  for (int k = 0; k < 3; k++)
    for (int s = 0; s < ppe_; s++) nodes.push_back(edge_node(F.e[k], s));
  return nodes;
}

SurfacePoint SteinerGraph::node_point(int node) const {
  SurfacePoint p;
  if (node < n_mesh_vertices_) {
    const auto& faces = mesh_->vertex_faces(node);
    for (int f : faces) {
      if (!mesh_->face_alive(f)) continue;
      p.face = f;
      p.bary[mesh_->corner_of(f, node)] = 1.0;
      return p;
    }
    throw MeshError("node_point: isolated vertex");
  }
  const int e = (node - n_mesh_vertices_) / ppe_;
  const int k = (node - n_mesh_vertices_) % ppe_;
  const TriMesh::Edge& E = mesh_->edge(e);
  int f = kInvalid;
  for (int cand : E.face)
    if (cand != kInvalid && mesh_->face_alive(cand)) f = cand;
  if (f == kInvalid) throw MeshError("node_point: orphaned edge");
  const double t = edge_node_t(k);
  p.face = f;
  p.bary[mesh_->corner_of(f, E.a)] = 1.0 - t;
  p.bary[mesh_->corner_of(f, E.b)] = t;
  return p;
}

std::vector<double> SteinerGraph::distances(
    const std::vector<std::pair<int, double>>& seeds) const {
  std::vector<double> dist(n_nodes_, kInf);
  MinHeap heap;
  for (const auto& [node, offset] : seeds) {
    if (offset < dist[node]) {
      dist[node] = offset;
      heap.push({offset, node});
    }
  }
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (const Link& l : adj_[v]) {
      const double nd = d + l.w;
      if (nd < dist[l.to]) {
        dist[l.to] = nd;
        heap.push({nd, l.to});
      }
    }
  }
  return dist;
}

std::vector<int> SteinerGraph::node_path(int from, int to) const {
  std::vector<double> dist(n_nodes_, kInf);
  std::vector<int> parent(n_nodes_, kInvalid);
  MinHeap heap;
  dist[from] = 0.0;
  heap.push({0.0, from});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    if (v == to) break;
    for (const Link& l : adj_[v]) {
      const double nd = d + l.w;
      if (nd < dist[l.to]) {
        dist[l.to] = nd;
        parent[l.to] = v;
        heap.push({nd, l.to});
      }
    }
  }
  if (!std::isfinite(dist[to])) throw MeshError("node_path: unreachable node");
  std::vector<int> path;
  for (int v = to; v != kInvalid; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

void SteinerGraph::precompute_all_pairs() {
  if (!table_.empty()) return;
  table_.resize(static_cast<std::size_t>(n_nodes_) * n_nodes_);
  for (int s = 0; s < n_nodes_; s++) {
    const std::vector<double> d = distances({{s, 0.0}});
    std::copy(d.begin(), d.end(), table_.begin() + static_cast<std::size_t>(s) * n_nodes_);
  }
}

double SteinerGraph::distance(const SurfacePoint& p, const SurfacePoint& q) const {
  // Canonical argument order makes the result exactly symmetric.
  const auto key = [](const SurfacePoint& s) {
    return std::make_tuple(s.face, s.bary[0], s.bary[1], s.bary[2]);
  };
  return key(p) <= key(q) ? directed_distance(p, q) : directed_distance(q, p);
}

double SteinerGraph::directed_distance(const SurfacePoint& p, const SurfacePoint& q) const {
  double best = kInf;
  // Common-face chord (p's face, then q's face).
  try {
    best = std::min(best, mesh_->distance_in_face(p, mesh_->transfer(q, p.face)));
  } catch (const MeshError&) {
  }
  try {
    best = std::min(best, mesh_->distance_in_face(mesh_->transfer(p, q.face), q));
  } catch (const MeshError&) {
  }
  if (best == 0.0) return 0.0;

  const std::vector<int> pn = face_nodes(p.face);
  const std::vector<int> qn = face_nodes(q.face);
  const Vec2 pc = mesh_->chart_point(p);
  const Vec2 qc = mesh_->chart_point(q);
  std::vector<double> p_off(pn.size()), q_off(qn.size());
  for (std::size_t i = 0; i < pn.size(); i++)
    p_off[i] = (node_chart(p.face, pn[i]) - pc).norm();
  for (std::size_t j = 0; j < qn.size(); j++)
    q_off[j] = (node_chart(q.face, qn[j]) - qc).norm();

  if (!table_.empty()) {
    for (std::size_t i = 0; i < pn.size(); i++) {
      const double* row = table_.data() + static_cast<std::size_t>(pn[i]) * n_nodes_;
      for (std::size_t j = 0; j < qn.size(); j++)
        best = std::min(best, p_off[i] + row[qn[j]] + q_off[j]);
    }
    return best;
  }

  std::vector<std::pair<int, double>> seeds;
  seeds.reserve(pn.size());
  for (std::size_t i = 0; i < pn.size(); i++) seeds.push_back({pn[i], p_off[i]});
  const std::vector<double> d = distances(seeds);
  for (std::size_t j = 0; j < qn.size(); j++) best = std::min(best, d[qn[j]] + q_off[j]);
  return best;
}

}  // namespace waistkit
