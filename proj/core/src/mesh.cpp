#include "waistkit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

namespace waistkit {

namespace {

constexpr double kDegenerateRelTol = 1e-12;

uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
}

}  // namespace

int TriMesh::add_vertex() {
  if (!positions_.empty()) throw MeshError("mixing embedded and abstract vertices");
  return static_cast<int>(vertex_count_++);
}

int TriMesh::add_vertex(const VecN& position) {
  if (vertex_count_ != positions_.size()) throw MeshError("mixing embedded and abstract vertices");
  positions_.push_back(position);
  embedding_dim_ = position.dim;
  return static_cast<int>(vertex_count_++);
}

void TriMesh::add_face(int v0, int v1, int v2) {
  if (finalized_) throw MeshError("add_face after finalize");
  if (v0 == v1 || v1 == v2 || v0 == v2) throw MeshError("degenerate face (repeated vertex)");
  Face f;
  f.v = {v0, v1, v2};
  faces_.push_back(f);
}

void TriMesh::set_length(int a, int b, double length) {
  if (length <= 0.0) throw MeshError("edge length must be positive");
  length_overrides_.push_back({{a, b}, length});
}

int TriMesh::edge_between(int a, int b) const {
  for (int e : vertex_edges_[a]) {
    const Edge& E = edges_[e];
    if ((E.a == a && E.b == b) || (E.a == b && E.b == a)) return e;
  }
  return kInvalid;
}

int TriMesh::intern_edge(int a, int b) {
  int e = edge_between(a, b);
  if (e != kInvalid) return e;
  Edge E;
  E.a = std::min(a, b);
  E.b = std::max(a, b);
  e = static_cast<int>(edges_.size());
  edges_.push_back(E);
  vertex_edges_[a].push_back(e);
  vertex_edges_[b].push_back(e);
  return e;
}

void TriMesh::build_face_geometry(int fi) {
  Face& f = faces_[fi];
  const double l01 = edges_[f.e[0]].length;
  const double l12 = edges_[f.e[1]].length;
  const double l20 = edges_[f.e[2]].length;
  const double longest = std::max({l01, l12, l20});
  const double s = 0.5 * (l01 + l12 + l20);
  // Strict triangle inequality, relative tolerance on the semiperimeter.
  if (s - l01 <= kDegenerateRelTol * s || s - l12 <= kDegenerateRelTol * s ||
      s - l20 <= kDegenerateRelTol * s) {
    throw MeshError("degenerate face " + std::to_string(fi) + " (triangle inequality, lengths " +
                    std::to_string(l01) + ", " + std::to_string(l12) + ", " + std::to_string(l20) + ")");
  }
  f.chart[0] = {0.0, 0.0};
  f.chart[1] = {l01, 0.0};
  const double x2 = (l01 * l01 + l20 * l20 - l12 * l12) / (2.0 * l01);
  const double y2sq = l20 * l20 - x2 * x2;
  if (y2sq <= kDegenerateRelTol * longest * longest) {
    throw MeshError("degenerate face " + std::to_string(fi) + " (flat chart)");
  }
  f.chart[2] = {x2, std::sqrt(y2sq)};
  // Area by Heron's formula.
  f.area = std::sqrt(s * (s - l01) * (s - l12) * (s - l20));
}

void TriMesh::build_connectivity() {
  vertex_faces_.assign(vertex_count_, {});
  vertex_edges_.assign(vertex_count_, {});
  edges_.clear();

  std::unordered_map<uint64_t, int> edge_map;
  edge_map.reserve(faces_.size() * 2);
  auto intern = [&](int a, int b) {
    auto it = edge_map.find(edge_key(a, b));
    if (it != edge_map.end()) return it->second;
    Edge E;
    E.a = std::min(a, b);
    E.b = std::max(a, b);
    int e = static_cast<int>(edges_.size());
    edges_.push_back(E);
    edge_map.emplace(edge_key(a, b), e);
    vertex_edges_[a].push_back(e);
    vertex_edges_[b].push_back(e);
    return e;
  };

  for (int fi = 0; fi < static_cast<int>(faces_.size()); fi++) {
    Face& f = faces_[fi];
    for (int k = 0; k < 3; k++) {
      if (f.v[k] < 0 || f.v[k] >= static_cast<int>(vertex_count_))
        throw MeshError("face references missing vertex");
      f.e[k] = intern(f.v[k], f.v[(k + 1) % 3]);  // e[k] joins corners k, k+1
      vertex_faces_[f.v[k]].push_back(fi);
    }
  }

  for (int fi = 0; fi < static_cast<int>(faces_.size()); fi++) {
    for (int k = 0; k < 3; k++) {
      Edge& E = edges_[faces_[fi].e[k]];
      if (E.face[0] == kInvalid) {
        E.face[0] = fi;
      } else if (E.face[1] == kInvalid) {
        E.face[1] = fi;
      } else {
        throw MeshError("non-manifold edge (three or more incident faces)");
      }
    }
  }
}

void TriMesh::finalize() {
  if (finalized_) throw MeshError("finalize called twice");
  if (faces_.empty()) throw MeshError("mesh has no faces");
  build_connectivity();

  // Edge lengths: explicit overrides win; otherwise embedding distances.
  std::unordered_map<uint64_t, double> overrides;
  for (const auto& [vs, len] : length_overrides_) overrides[edge_key(vs.first, vs.second)] = len;
  for (Edge& E : edges_) {
    auto it = overrides.find(edge_key(E.a, E.b));
    if (it != overrides.end()) {
      E.length = it->second;
    } else if (has_embedding()) {
      E.length = (positions_[E.a] - positions_[E.b]).norm();
    } else {
      throw MeshError("edge {" + std::to_string(E.a) + "," + std::to_string(E.b) +
                      "} has no length (no embedding, no override)");
    }
    if (!(E.length > 0.0)) throw MeshError("non-positive edge length");
  }
  length_overrides_.clear();

  live_face_count_ = static_cast<int>(faces_.size());
  for (int fi = 0; fi < static_cast<int>(faces_.size()); fi++) build_face_geometry(fi);

  validate();

  // Boundary loops.
  boundary_edge_count_ = 0;
  std::map<int, std::vector<int>> bnd_edges_at_vertex;
  for (int e = 0; e < static_cast<int>(edges_.size()); e++) {
    if (edges_[e].face[1] == kInvalid) {
      boundary_edge_count_++;
      bnd_edges_at_vertex[edges_[e].a].push_back(e);
      bnd_edges_at_vertex[edges_[e].b].push_back(e);
    }
  }
  for (const auto& [v, es] : bnd_edges_at_vertex) {
    if (es.size() != 2) throw MeshError("non-manifold boundary at vertex " + std::to_string(v));
  }
  std::set<int> seen;
  for (const auto& [v0, es0] : bnd_edges_at_vertex) {
    if (seen.count(es0[0])) continue;
    std::vector<int> loop;
    int v = v0, e = es0[0];
    while (!seen.count(e)) {
      seen.insert(e);
      loop.push_back(v);
      v = (edges_[e].a == v) ? edges_[e].b : edges_[e].a;
      const auto& es = bnd_edges_at_vertex[v];
      e = (es[0] == e) ? es[1] : es[0];
    }
    boundary_loops_.push_back(loop);
  }

  finalized_ = true;
}

void TriMesh::validate() const {
  // Every vertex used.
  for (std::size_t v = 0; v < vertex_count_; v++) {
    if (vertex_faces_[v].empty()) throw MeshError("isolated vertex " + std::to_string(v));
  }
  // Vertex links: faces around each vertex form a single fan.
  for (std::size_t v = 0; v < vertex_count_; v++) {
    const auto& fs = vertex_faces_[v];
    std::map<int, int> comp;
    for (int f : fs) comp[f] = -1;
    int n_comp = 0;
    for (int f0 : fs) {
      if (comp[f0] != -1) continue;
      n_comp++;
      std::queue<int> q;
      q.push(f0);
      comp[f0] = n_comp;
      while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int k = 0; k < 3; k++) {
          const Edge& E = edges_[faces_[f].e[k]];
          if (E.a != static_cast<int>(v) && E.b != static_cast<int>(v)) continue;
          for (int side = 0; side < 2; side++) {
            int g = E.face[side];
            if (g != kInvalid && g != f && comp.count(g) && comp[g] == -1) {
              comp[g] = n_comp;
              q.push(g);
            }
          }
        }
      }
    }
    if (n_comp != 1) throw MeshError("non-manifold vertex " + std::to_string(v) + " (pinched link)");
  }
  // Connectivity of the whole complex.
  std::vector<char> vis(faces_.size(), 0);
  std::queue<int> q;
  q.push(0);
  vis[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int f = q.front();
    q.pop();
    for (int k = 0; k < 3; k++) {
      const Edge& E = edges_[faces_[f].e[k]];
      for (int side = 0; side < 2; side++) {
        int g = E.face[side];
        if (g != kInvalid && !vis[g]) {
          vis[g] = 1;
          reached++;
          q.push(g);
        }
      }
    }
  }
  if (reached != static_cast<int>(faces_.size())) throw MeshError("mesh is not connected");
}

double TriMesh::total_area() const {
  double a = 0.0;
  for (const Face& f : faces_)
    if (!f.dead) a += f.area;
  return a;
}

std::array<int, 3> TriMesh::face_neighbors(int fi) const {
  std::array<int, 3> nb{kInvalid, kInvalid, kInvalid};
  const Face& f = faces_[fi];
  for (int k = 0; k < 3; k++) {
    const Edge& E = edges_[f.e[k]];
    nb[k] = (E.face[0] == fi) ? E.face[1] : E.face[0];
  }
  return nb;
}

int TriMesh::corner_of(int fi, int v) const {
  const Face& f = faces_[fi];
  for (int k = 0; k < 3; k++)
    if (f.v[k] == v) return k;
  return kInvalid;
}

double TriMesh::boundary_length() const {
  double L = 0.0;
  for (const Edge& E : edges_) {
    const int live = (E.face[0] != kInvalid && !faces_[E.face[0]].dead ? 1 : 0) +
                     (E.face[1] != kInvalid && !faces_[E.face[1]].dead ? 1 : 0);
    if (live == 1) L += E.length;
  }
  return L;
}

int TriMesh::euler_characteristic() const {
  int live_edges = 0;
  for (const Edge& E : edges_) {
    bool alive = (E.face[0] != kInvalid && !faces_[E.face[0]].dead) ||
                 (E.face[1] != kInvalid && !faces_[E.face[1]].dead);
    if (alive) live_edges++;
  }
  return static_cast<int>(vertex_count_) - live_edges + live_face_count_;
}

int TriMesh::genus() const {
  const int chi = euler_characteristic();
  const int b = n_boundary_loops();
  const int twice_g = 2 - b - chi;
  if (twice_g < 0 || twice_g % 2 != 0)
    throw MeshError("inconsistent Euler characteristic (non-orientable or invalid complex)");
  return twice_g / 2;
}

Vec2 TriMesh::chart_point(int f, const std::array<double, 3>& bary) const {
  const Face& F = faces_[f];
  return F.chart[0] * bary[0] + F.chart[1] * bary[1] + F.chart[2] * bary[2];
}

double TriMesh::distance_in_face(const SurfacePoint& p, const SurfacePoint& q) const {
  if (p.face != q.face) throw MeshError("distance_in_face: different faces");
  return (chart_point(p) - chart_point(q)).norm();
}

VecN TriMesh::embed(const SurfacePoint& p) const {
  if (!has_embedding()) throw MeshError("mesh has no embedding");
  const Face& F = faces_[p.face];
  VecN r = positions_[F.v[0]] * p.bary[0];
  r = r + positions_[F.v[1]] * p.bary[1];
  r = r + positions_[F.v[2]] * p.bary[2];
  return r;
}

SurfacePoint TriMesh::transfer(const SurfacePoint& p, int dst) const {
  if (p.face == dst) return p;
  const Face& src = faces_[p.face];
  SurfacePoint q;
  q.face = dst;
  q.bary = {0.0, 0.0, 0.0};
  for (int k = 0; k < 3; k++) {
    if (p.bary[k] == 0.0) continue;
    const int c = corner_of(dst, src.v[k]);
    if (c == kInvalid)
      throw MeshError("transfer: point does not lie on the shared simplex");
    q.bary[c] = p.bary[k];
  }
  return q;
}

void TriMesh::scale_metric(double lambda) {
  if (!(lambda > 0.0)) throw MeshError("scale factor must be positive");
  for (Edge& E : edges_) E.length *= lambda;
  for (VecN& p : positions_) p = p * lambda;
  for (int fi = 0; fi < static_cast<int>(faces_.size()); fi++)
    if (!faces_[fi].dead) build_face_geometry(fi);
}

void TriMesh::assign_lengths(const std::vector<double>& per_edge) {
  if (per_edge.size() != edges_.size()) throw MeshError("assign_lengths: size mismatch");
  for (std::size_t e = 0; e < edges_.size(); e++) {
    if (!(per_edge[e] > 0.0)) throw MeshError("assign_lengths: non-positive length");
    edges_[e].length = per_edge[e];
  }
  positions_.clear();  // the embedding no longer matches the metric
  for (int fi = 0; fi < static_cast<int>(faces_.size()); fi++)
    if (!faces_[fi].dead) build_face_geometry(fi);
}

std::vector<double> TriMesh::lengths_snapshot() const {
  std::vector<double> out(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); e++) out[e] = edges_[e].length;
  return out;
}

int TriMesh::split_face_centroid(int fi) {
  if (faces_[fi].dead) throw MeshError("split of dead face");
  Face old = faces_[fi];
  const Vec2 centroid = (old.chart[0] + old.chart[1] + old.chart[2]) * (1.0 / 3.0);

  int w;
  if (has_embedding()) {
    VecN p = positions_[old.v[0]] * (1.0 / 3.0);
    p = p + positions_[old.v[1]] * (1.0 / 3.0);
    p = p + positions_[old.v[2]] * (1.0 / 3.0);
    w = add_vertex(p);
  } else {
    w = static_cast<int>(vertex_count_++);
  }
  vertex_faces_.push_back({});
  vertex_edges_.push_back({});

  // Spoke edges with intrinsic (chart) lengths.
  std::array<int, 3> spoke;
  for (int k = 0; k < 3; k++) {
    Edge E;
    E.a = std::min(old.v[k], w);
    E.b = std::max(old.v[k], w);
    E.length = (old.chart[k] - centroid).norm();
    spoke[k] = static_cast<int>(edges_.size());
    edges_.push_back(E);
    vertex_edges_[old.v[k]].push_back(spoke[k]);
    vertex_edges_[w].push_back(spoke[k]);
  }

  faces_[fi].dead = true;
  live_face_count_--;

  for (int k = 0; k < 3; k++) {
    Face nf;
    nf.v = {old.v[k], old.v[(k + 1) % 3], w};
    nf.e = {old.e[k], spoke[(k + 1) % 3], spoke[k]};
    const int nfi = static_cast<int>(faces_.size());
    faces_.push_back(nf);
    live_face_count_++;
    // Patch edge->face links.
    Edge& boundary = edges_[old.e[k]];
    if (boundary.face[0] == fi)
      boundary.face[0] = nfi;
    else
      boundary.face[1] = nfi;
    Edge& s0 = edges_[spoke[(k + 1) % 3]];
    Edge& s1 = edges_[spoke[k]];
    (s0.face[0] == kInvalid ? s0.face[0] : s0.face[1]) = nfi;
    (s1.face[0] == kInvalid ? s1.face[0] : s1.face[1]) = nfi;
    vertex_faces_[nf.v[0]].push_back(nfi);
    vertex_faces_[nf.v[1]].push_back(nfi);
    vertex_faces_[w].push_back(nfi);
    build_face_geometry(nfi);
  }
  return w;
}

int TriMesh::split_edge_midpoint(int ei) {
  Edge old_edge = edges_[ei];
  const int a = old_edge.a, b = old_edge.b;

  int w;
  if (has_embedding()) {
    w = add_vertex((positions_[a] + positions_[b]) * 0.5);
  } else {
    w = static_cast<int>(vertex_count_++);
  }
  vertex_faces_.push_back({});
  vertex_edges_.push_back({});

  auto new_edge = [&](int u, int v, double len) {
    Edge E;
    E.a = std::min(u, v);
    E.b = std::max(u, v);
    E.length = len;
    int id = static_cast<int>(edges_.size());
    edges_.push_back(E);
    vertex_edges_[u].push_back(id);
    vertex_edges_[v].push_back(id);
    return id;
  };
  const int e_aw = new_edge(a, w, old_edge.length * 0.5);
  const int e_wb = new_edge(w, b, old_edge.length * 0.5);

  for (int side = 0; side < 2; side++) {
    const int fi = old_edge.face[side];
    if (fi == kInvalid || faces_[fi].dead) continue;
    Face old = faces_[fi];
    // Locate corners: c = corner opposite the split edge.
    int ka = corner_of(fi, a), kb = corner_of(fi, b);
    int kc = 3 - ka - kb;
    const int c = old.v[kc];
    const Vec2 mid = (old.chart[ka] + old.chart[kb]) * 0.5;
    const int e_wc = new_edge(w, c, (mid - old.chart[kc]).norm());

    faces_[fi].dead = true;
    live_face_count_--;

    auto outer_edge = [&](int u, int v) {
      for (int k = 0; k < 3; k++) {
        const Edge& E = edges_[old.e[k]];
        if ((E.a == std::min(u, v)) && (E.b == std::max(u, v))) return old.e[k];
      }
      throw MeshError("split_edge_midpoint: edge lookup failed");
    };

    // Two replacement faces, orientation following the original corner order.
    struct NF {
      std::array<int, 3> v;
      std::array<int, 3> e;
    };
    // Face (a, w, c) and (w, b, c) in the coherent order a->b along the old edge.
    const int e_ac = outer_edge(a, c);
    const int e_bc = outer_edge(b, c);
    std::array<NF, 2> nfs = {NF{{a, w, c}, {e_aw, e_wc, e_ac}}, NF{{w, b, c}, {e_wb, e_bc, e_wc}}};
    for (const NF& nf : nfs) {
      Face F;
      F.v = nf.v;
      F.e = nf.e;
      const int nfi = static_cast<int>(faces_.size());
      faces_.push_back(F);
      live_face_count_++;
      for (int k = 0; k < 3; k++) {
        Edge& E = edges_[nf.e[k]];
        if (E.face[0] == fi)
          E.face[0] = nfi;
        else if (E.face[1] == fi)
          E.face[1] = nfi;
        else if (E.face[0] == kInvalid)
          E.face[0] = nfi;
        else if (E.face[1] == kInvalid && E.face[0] != nfi)
          E.face[1] = nfi;
        vertex_faces_[nf.v[k]].push_back(nfi);
      }
      build_face_geometry(nfi);
    }
  }
  // Orphan the split edge so graph builds skip it.
  edges_[ei].face = {kInvalid, kInvalid};
  return w;
}

// --- regions ---------------------------------------------------------------

double region_area(const Region& r) {
  double a = 0.0;
  for (int f : r.faces) a += r.mesh->face_area(f);
  return a;
}

std::vector<int> region_boundary_edges(const Region& r) {
  std::vector<char> in(r.mesh->n_faces_total(), 0);
  for (int f : r.faces) in[f] = 1;
  std::vector<int> out;
  std::set<int> seen;
  for (int f : r.faces) {
    const auto& F = r.mesh->face(f);
    for (int k = 0; k < 3; k++) {
      const int e = F.e[k];
      const auto& E = r.mesh->edge(e);
      const int other = (E.face[0] == f) ? E.face[1] : E.face[0];
      const bool interface_edge = (other == kInvalid) || !in[other];
      if (interface_edge && !seen.count(e)) {
        seen.insert(e);
        out.push_back(e);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double region_boundary_length(const Region& r) {
  double L = 0.0;
  for (int e : region_boundary_edges(r)) L += r.mesh->edge_length(e);
  return L;
}

std::vector<char> region_boundary_vertex_mask(const Region& r, std::vector<int>* verts_out) {
  std::vector<char> mask(r.mesh->n_vertices(), 0);
  for (int e : region_boundary_edges(r)) {
    mask[r.mesh->edge(e).a] = 1;
    mask[r.mesh->edge(e).b] = 1;
  }
  if (verts_out) {
    verts_out->clear();
    for (int v = 0; v < r.mesh->n_vertices(); v++)
      if (mask[v]) verts_out->push_back(v);
  }
  return mask;
}

std::vector<Region> region_components(const Region& r) {
  std::vector<char> in(r.mesh->n_faces_total(), 0);
  for (int f : r.faces) in[f] = 1;
  std::vector<char> vis(r.mesh->n_faces_total(), 0);
  std::vector<Region> comps;
  for (int f0 : r.faces) {
    if (vis[f0]) continue;
    Region c;
    c.mesh = r.mesh;
    std::queue<int> q;
    q.push(f0);
    vis[f0] = 1;
    while (!q.empty()) {
      int f = q.front();
      q.pop();
      c.faces.push_back(f);
      for (int g : r.mesh->face_neighbors(f)) {
        if (g != kInvalid && in[g] && !vis[g]) {
          vis[g] = 1;
          q.push(g);
        }
      }
    }
    std::sort(c.faces.begin(), c.faces.end());
    comps.push_back(std::move(c));
  }
  return comps;
}

RegionTopology region_topology(const Region& r) {
  RegionTopology t;
  for (const Region& c : region_components(r)) {
    std::set<int> verts, edges;
    for (int f : c.faces) {
      const auto& F = c.mesh->face(f);
      for (int k = 0; k < 3; k++) {
        verts.insert(F.v[k]);
        edges.insert(F.e[k]);
      }
    }
    const int chi = static_cast<int>(verts.size()) - static_cast<int>(edges.size()) +
                    static_cast<int>(c.faces.size());
    // Count boundary loops by walking interface edges.
    const std::vector<int> bnd = region_boundary_edges(c);
    std::set<int> bset(bnd.begin(), bnd.end());
    std::map<int, std::vector<int>> at_vertex;
    for (int e : bnd) {
      at_vertex[c.mesh->edge(e).a].push_back(e);
      at_vertex[c.mesh->edge(e).b].push_back(e);
    }
    int loops = 0;
    std::set<int> seen;
    for (int e0 : bnd) {
      if (seen.count(e0)) continue;
      loops++;
      // Walk the loop; at vertices with 4+ boundary edges pick any unseen
      // continuation (loop count is then a lower bound, fine for genus<=0 tests).
      int e = e0;
      int v = c.mesh->edge(e0).a;
      while (!seen.count(e)) {
        seen.insert(e);
        v = (c.mesh->edge(e).a == v) ? c.mesh->edge(e).b : c.mesh->edge(e).a;
        int next = kInvalid;
        for (int cand : at_vertex[v]) {
          if (!seen.count(cand)) {
            next = cand;
            break;
          }
        }
        if (next == kInvalid) break;
        e = next;
      }
    }
    const int twice_g = 2 - loops - chi;
    t.chi += chi;
    t.boundary_loops += loops;
    if (twice_g >= 0 && twice_g % 2 == 0) t.genus += twice_g / 2;
  }
  return t;
}

std::pair<std::vector<int>, bool> vertex_link(const TriMesh& m, int v) {
  const std::vector<int>& edges = m.vertex_edges(v);
  auto live_count = [&](int e) {
    int n = 0;
    for (int g : m.edge(e).face)
      if (g != kInvalid && m.face_alive(g)) n++;
    return n;
  };
  int start = kInvalid;
  for (int e : edges)
    if (live_count(e) == 1) start = e;
  const bool closed = (start == kInvalid);
  if (closed) {
    for (int e : edges)
      if (live_count(e) > 0) start = e;
  }
  if (start == kInvalid) throw MeshError("vertex_link: isolated vertex");

  auto other = [&](int e) {
    const TriMesh::Edge& E = m.edge(e);
    return E.a == v ? E.b : E.a;
  };
  std::vector<int> order{other(start)};
  int prev_face = kInvalid, e = start;
  while (true) {
    // The live face across e that is not where we came from.
    int nf = kInvalid;
    for (int g : m.edge(e).face)
      if (g != kInvalid && m.face_alive(g) && g != prev_face) nf = g;
    if (nf == kInvalid) break;  // boundary reached
    // The other edge of nf at v.
    const TriMesh::Face& F = m.face(nf);
    int ne = kInvalid;
    for (int k = 0; k < 3; k++) {
      const int cand = F.e[k];
      if (cand == e) continue;
      const TriMesh::Edge& E = m.edge(cand);
      if (E.a == v || E.b == v) ne = cand;
    }
    if (ne == kInvalid) throw MeshError("vertex_link: broken fan");
    if (ne == start && closed) break;
    order.push_back(other(ne));
    prev_face = nf;
    e = ne;
  }
  return {order, closed};
}

// --- curves ------------------------------------------------------------------

double curve_length(const TriMesh& mesh, const PolyCurve& c) {
  double L = 0.0;
  for (std::size_t i = 0; i < c.n_segments(); i++) {
    const SurfacePoint p = mesh.transfer(c.pts[i], c.seg_face[i]);
    const SurfacePoint q = mesh.transfer(c.pts[i + 1], c.seg_face[i]);
    L += mesh.distance_in_face(p, q);
  }
  return L;
}

void validate_curve(const TriMesh& mesh, const PolyCurve& c) {
  if (c.pts.empty()) throw MeshError("empty curve");
  if (c.pts.size() != c.seg_face.size() + 1) throw MeshError("curve segment/point count mismatch");
  for (std::size_t i = 0; i < c.n_segments(); i++) {
    mesh.transfer(c.pts[i], c.seg_face[i]);      // throws if not on a shared simplex
    mesh.transfer(c.pts[i + 1], c.seg_face[i]);
  }
  if (c.closed) {
    const SurfacePoint& p = c.pts.front();
    const SurfacePoint& q = c.pts.back();
    const SurfacePoint qq = mesh.transfer(q, c.seg_face.front());
    const SurfacePoint pp = mesh.transfer(p, c.seg_face.front());
    if (mesh.distance_in_face(pp, qq) > 1e-9) throw MeshError("closed curve endpoints differ");
  }
}

}  // namespace waistkit
