#include "waistkit/gamma.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace waistkit {

namespace {

// --- polyline parametrization ------------------------------------------------

std::vector<double> cumulative_lengths(const TriMesh& m, const PolyCurve& c) {
  std::vector<double> cum{0.0};
  cum.reserve(c.pts.size());
  for (std::size_t i = 0; i < c.n_segments(); i++) {
    const SurfacePoint p = m.transfer(c.pts[i], c.seg_face[i]);
    const SurfacePoint q = m.transfer(c.pts[i + 1], c.seg_face[i]);
    cum.push_back(cum.back() + m.distance_in_face(p, q));
  }
  return cum;
}

// Point at arc-length fraction u in [0,1] (constant-speed parametrization).
SurfacePoint point_at(const TriMesh& m, const PolyCurve& c, const std::vector<double>& cum,
                      double u) {
  if (c.pts.size() == 1 || cum.back() <= 0.0) return c.pts.front();
  const double s = std::clamp(u, 0.0, 1.0) * cum.back();
  std::size_t hi = std::upper_bound(cum.begin(), cum.end(), s) - cum.begin();
  hi = std::clamp<std::size_t>(hi, 1, cum.size() - 1);
  const std::size_t seg = hi - 1;
  const double den = cum[hi] - cum[seg];
  const double t = (den > 0.0) ? (s - cum[seg]) / den : 0.0;
  const SurfacePoint p = m.transfer(c.pts[seg], c.seg_face[seg]);
  const SurfacePoint q = m.transfer(c.pts[seg + 1], c.seg_face[seg]);
  SurfacePoint r;
  r.face = c.seg_face[seg];
  for (int k = 0; k < 3; k++) r.bary[k] = (1.0 - t) * p.bary[k] + t * q.bary[k];
  return r;
}

PolyCurve point_curve(const SurfacePoint& p) {
  PolyCurve c;
  c.pts.push_back(p);
  return c;
}

// --- oriented level components -------------------------------------------------

struct LevelComp {
  PolyCurve curve;
  std::vector<int> pe;     // crossed edge per polyline point
  std::vector<int> edges;  // the distinct crossed edges, ascending
};

// Direct the first segment so corners above the level lie on its left; since
// every chart winds its corners counterclockwise and the generators orient
// faces consistently, this single local rule directs whole components
// coherently and is stable in the level value.
void orient_component(const TriMesh& m, const PLFunction& f, double x, PolyCurve& c,
                      std::vector<int>& pe) {
  if (c.pts.size() < 2) return;
  const int fc = c.seg_face.front();
  const TriMesh::Face& F = m.face(fc);
  std::array<bool, 3> up{};
  for (int k = 0; k < 3; k++) up[k] = f[F.v[k]] >= x;
  int solo = 0;
  for (int k = 0; k < 3; k++)
    if (up[k] != up[(k + 1) % 3] && up[k] != up[(k + 2) % 3]) solo = k;
  const int from = up[solo] ? F.e[solo] : F.e[(solo + 2) % 3];
  const int to = up[solo] ? F.e[(solo + 2) % 3] : F.e[solo];
  if (pe[0] == from && pe[1] == to) return;
  if (pe[0] == to && pe[1] == from) {
    std::reverse(c.pts.begin(), c.pts.end());
    std::reverse(c.seg_face.begin(), c.seg_face.end());
    std::reverse(pe.begin(), pe.end());
    return;
  }
  throw MeshError("orient_component: crossings do not match the face");
}

// Rotate a closed component so its first point is polyline point i.
void rotate_index(PolyCurve& c, std::vector<int>& pe, std::size_t i) {
  const std::size_t n = c.pts.size() - 1;  // distinct points
  if (i == 0) return;
  PolyCurve d;
  d.closed = true;
  std::vector<int> qe;
  for (std::size_t j = 0; j < n; j++) {
    const std::size_t s = (i + j) % n;
    d.pts.push_back(c.pts[s]);
    qe.push_back(pe[s]);
    d.seg_face.push_back(c.seg_face[s]);
  }
  d.pts.push_back(d.pts.front());
  qe.push_back(qe.front());
  c = std::move(d);
  pe = std::move(qe);
}

// Rotate a closed component so its first point is the crossing on start_edge.
void rotate_to_start(PolyCurve& c, std::vector<int>& pe, int start_edge) {
  if (!c.closed) return;
  const std::size_t n = c.pts.size() - 1;
  std::size_t i = 0;
  while (i < n && pe[i] != start_edge) i++;
  if (i >= n) throw MeshError("rotate_to_start: start edge not on the loop");
  rotate_index(c, pe, i);
}

// Re-base a closed loop a fraction lambda of the forward arc length from its
// current basepoint to the crossing on target_edge. Continuous in lambda and
// in the underlying level; lambda = 1 lands exactly on the crossing.
PolyCurve rotate_fraction(const TriMesh& m, const PolyCurve& c, const std::vector<int>& pe,
                          int target_edge, double lambda) {
  if (!c.closed || c.pts.size() < 3) return c;
  const std::size_t n = c.pts.size() - 1;
  std::size_t it = n;
  for (std::size_t i = 0; i < n; i++)
    if (pe[i] == target_edge) {
      it = i;
      break;
    }
  if (it == n) throw MeshError("rotate_fraction: target edge not on the loop");
  const std::vector<double> cum = cumulative_lengths(m, c);
  const double s = std::clamp(lambda, 0.0, 1.0) * cum[it];
  if (s <= 0.0) return c;
  std::size_t hi = std::upper_bound(cum.begin(), cum.end(), s) - cum.begin();
  hi = std::clamp<std::size_t>(hi, 1, n);
  const std::size_t seg = hi - 1;
  if (s == cum[seg]) {
    PolyCurve d = c;
    std::vector<int> qe = pe;
    rotate_index(d, qe, seg);
    return d;
  }
  const double den = cum[seg + 1] - cum[seg];
  const double t = (den > 0.0) ? std::clamp((s - cum[seg]) / den, 0.0, 1.0) : 0.0;
  const SurfacePoint a = m.transfer(c.pts[seg], c.seg_face[seg]);
  const SurfacePoint b = m.transfer(c.pts[seg + 1], c.seg_face[seg]);
  SurfacePoint x;
  x.face = c.seg_face[seg];
  for (int k = 0; k < 3; k++) x.bary[k] = (1.0 - t) * a.bary[k] + t * b.bary[k];
  PolyCurve d;
  d.closed = true;
  d.pts.push_back(x);
  d.seg_face.push_back(c.seg_face[seg]);
  for (std::size_t j = seg + 1; j < n; j++) {
    d.pts.push_back(c.pts[j]);
    d.seg_face.push_back(c.seg_face[j]);
  }
  for (std::size_t j = 0; j <= seg; j++) {
    d.pts.push_back(c.pts[j]);
    d.seg_face.push_back(j < seg ? c.seg_face[j] : c.seg_face[seg]);
  }
  d.pts.push_back(x);
  return d;
}

// Oriented components of {f = x}, sorted by least crossed edge id.
std::vector<LevelComp> level_components(const TriMesh& m, const PLFunction& f, double x) {
  std::vector<std::vector<int>> pes;
  std::vector<PolyCurve> curves = level_set(m, f, x, nullptr, &pes);
  std::vector<LevelComp> out;
  out.reserve(curves.size());
  for (std::size_t i = 0; i < curves.size(); i++) {
    LevelComp lc;
    lc.curve = std::move(curves[i]);
    lc.pe = std::move(pes[i]);
    orient_component(m, f, x, lc.curve, lc.pe);
    lc.edges = lc.pe;
    std::sort(lc.edges.begin(), lc.edges.end());
    lc.edges.erase(std::unique(lc.edges.begin(), lc.edges.end()), lc.edges.end());
    out.push_back(std::move(lc));
  }
  std::sort(out.begin(), out.end(),
            [](const LevelComp& a, const LevelComp& b) { return a.edges.front() < b.edges.front(); });
  return out;
}

int count_shared(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0;
  int n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      i++;
    } else if (a[i] > b[j]) {
      j++;
    } else {
      n++;
      i++;
      j++;
    }
  }
  return n;
}

// --- sweep planner -------------------------------------------------------------

struct SlabComp {
  std::vector<int> edges;  // sorted; disjoint across components of one slab
  int slot = -1;
  int start_edge = kInvalid;
};

struct Slab {
  std::vector<SlabComp> comps;  // sorted by edges.front()
};

// Saddle protocol around a simple saddle w with window half-width eps.
// Split: over [c-eps, c-eps/2) the parent re-bases its parametrization to the
// crossing on e1 while the spare slot rides e1 from w to that crossing; over
// [c-eps/2, c] the parent is cut at the e1 crossing and at a point sweeping
// its spare side. Merge mirrors this above c, and additionally over
// [c-eps, c] both parents re-base to their own crossings adjacent to w
// (rot_keep / rot_spare) so that all basepoints meet at the pinch.
struct SaddleEvent {
  double c = 0.0;
  double eps = 0.0;
  bool split = true;
  int w = kInvalid;
  int e1 = kInvalid, e2 = kInvalid;  // cut anchors on the cut side of c
  int rot_keep = kInvalid, rot_spare = kInvalid;  // below-side rebase targets
  int slot_keep = -1, slot_spare = -1;
  std::vector<int> spare_edges;  // slab edge set of the spare-side child/parent
};

struct ParkMove {
  double t0 = 0.0, t1 = 0.0;
  std::vector<int> verts;   // shortest vertex path, >= 2 entries
  std::vector<double> cum;  // cumulative edge lengths along it
};

struct ParkPlan {
  int home = kInvalid;  // vertex occupied before the first move
  std::vector<ParkMove> moves;
};

// Cut a directed loop at the crossing on e1 and at the point a fraction g of
// the way along its spare side toward the crossing on e2. Returns the
// complement piece first, the spare-side piece second; both inherit the loop
// direction and together they carry the loop exactly.
std::pair<PolyCurve, PolyCurve> protocol_cut(const TriMesh& m, const PolyCurve& loop,
                                             const std::vector<int>& pe, int e1, int e2,
                                             const std::vector<int>& spare_edges, double g) {
  if (!loop.closed || loop.pts.size() < 3) throw MeshError("protocol_cut: loop expected");
  const std::size_t n = loop.pts.size() - 1;
  std::size_t i1 = n, i2 = n;
  for (std::size_t i = 0; i < n; i++) {
    if (pe[i] == e1) i1 = i;
    if (pe[i] == e2) i2 = i;
  }
  if (i1 == n || i2 == n) throw MeshError("protocol_cut: anchor edge not on the loop");

  // Unroll the loop starting at the e1 crossing.
  std::vector<SurfacePoint> pts;
  std::vector<int> faces, edges;
  pts.reserve(n + 1);
  for (std::size_t j = 0; j <= n; j++) {
    const std::size_t s = (i1 + j) % n;
    pts.push_back(loop.pts[s]);
    edges.push_back(pe[s]);
    if (j < n) faces.push_back(loop.seg_face[s]);
  }
  const std::size_t mid = (i2 + n - i1) % n;  // index of the e2 crossing

  std::vector<double> cum{0.0};
  for (std::size_t j = 0; j + 1 <= n; j++) {
    const SurfacePoint p = m.transfer(pts[j], faces[j]);
    const SurfacePoint q = m.transfer(pts[j + 1], faces[j]);
    cum.push_back(cum.back() + m.distance_in_face(p, q));
  }

  // Spare side: the directed piece carrying more of the spare child's edges.
  int fwd_share = 0, bwd_share = 0;
  for (std::size_t j = 0; j <= n; j++) {
    const bool hit = std::binary_search(spare_edges.begin(), spare_edges.end(), edges[j]);
    if (!hit) continue;
    if (j <= mid) fwd_share++;
    if (j >= mid) bwd_share++;
  }
  const bool spare_fwd = fwd_share >= bwd_share;

  const double s_cut = spare_fwd ? g * cum[mid] : cum[mid] + (1.0 - g) * (cum[n] - cum[mid]);
  std::size_t hi = std::upper_bound(cum.begin(), cum.end(), s_cut) - cum.begin();
  hi = std::clamp<std::size_t>(hi, 1, n);
  const std::size_t seg = hi - 1;
  const double den = cum[hi] - cum[seg];
  const double t = (den > 0.0) ? std::clamp((s_cut - cum[seg]) / den, 0.0, 1.0) : 0.0;
  const SurfacePoint a = m.transfer(pts[seg], faces[seg]);
  const SurfacePoint b = m.transfer(pts[seg + 1], faces[seg]);
  SurfacePoint x;
  x.face = faces[seg];
  for (int k = 0; k < 3; k++) x.bary[k] = (1.0 - t) * a.bary[k] + t * b.bary[k];

  PolyCurve head;  // from the e1 crossing to the cut point
  for (std::size_t j = 0; j <= seg; j++) {
    head.pts.push_back(pts[j]);
    if (j < seg) head.seg_face.push_back(faces[j]);
  }
  head.pts.push_back(x);
  head.seg_face.push_back(faces[seg]);
  PolyCurve tail;  // from the cut point around to the e1 crossing
  tail.pts.push_back(x);
  tail.seg_face.push_back(faces[seg]);
  for (std::size_t j = seg + 1; j <= n; j++) {
    tail.pts.push_back(pts[j]);
    if (j < n) tail.seg_face.push_back(faces[j]);
  }
  if (spare_fwd) return {std::move(tail), std::move(head)};
  return {std::move(head), std::move(tail)};
}

// Deterministic continuous-in-t realization of the level-set sweep of a
// function with distinct vertex values on a closed mesh.
class LevelFamily {
 public:
  LevelFamily(const TriMesh& m, PLFunction f);

  int slots() const { return slots_; }
  LoopTuple at(double t) const;

 private:
  int slab_of(double t) const;
  SurfacePoint vertex_point(int v) const;
  SurfacePoint edge_point_from(int e, int w, double s) const;
  SurfacePoint park_position(int slot, double t) const;

  const TriMesh& m_;
  PLFunction f_;
  std::vector<double> vals_;    // sorted vertex values (all distinct)
  std::vector<Slab> slabs_;     // between consecutive values
  std::vector<SaddleEvent> events_;
  std::vector<ParkPlan> parks_;  // per slot
  int slots_ = 0;
};

LevelFamily::LevelFamily(const TriMesh& m, PLFunction f) : m_(m), f_(std::move(f)) {
  if (!m_.is_closed()) throw MeshError("morse_to_gamma: boundary meshes are not supported");
  const int V = m_.n_vertices();

  std::vector<int> order(V);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return f_[a] < f_[b]; });
  vals_.resize(V);
  for (int i = 0; i < V; i++) vals_[i] = f_[order[i]];
  for (int i = 1; i < V; i++)
    if (!(vals_[i] > vals_[i - 1]))
      throw MeshError("morse_to_gamma: vertex values must be distinct");

  // Combinatorial slabs between consecutive vertex values.
  slabs_.resize(V - 1);
  for (int j = 0; j + 1 < V; j++) {
    const double probe = 0.5 * (vals_[j] + vals_[j + 1]);
    for (LevelComp& lc : level_components(m_, f_, probe)) {
      SlabComp sc;
      sc.edges = std::move(lc.edges);
      slabs_[j].comps.push_back(std::move(sc));
    }
    slots_ = std::max(slots_, static_cast<int>(slabs_[j].comps.size()));
  }

  const CriticalReport crit = classify_critical(m_, f_);
  std::vector<char> is_saddle(V, 0);
  for (const CriticalPoint& cp : crit.points)
    if (cp.type == CriticalType::saddle) is_saddle[cp.vertex] = 1;

  // Transition pass: propagate slots and start edges across each vertex
  // value, recording topological events.
  struct RawEvent {
    double c;
    bool split;
    int w;
    int slot_keep, slot_spare;
    int rot_keep, rot_spare;  // merges: below-side rebase targets
    std::vector<int> spare_edges;
  };
  struct ParkStop {
    double t;
    int w;
    bool use;
    bool saddle;  // spare of a split/merge: lead/lag of one window width
  };
  std::vector<RawEvent> raw;
  std::vector<std::vector<ParkStop>> stops(slots_);
  std::vector<double> topo_levels;
  std::set<int> free_slots;
  for (int s = 0; s < slots_; s++) free_slots.insert(s);

  Slab empty_slab;
  auto edge_touches = [&](int e, int w) {
    const TriMesh::Edge& E = m_.edge(e);
    return E.a == w || E.b == w;
  };
  auto start_edge_at = [&](const std::vector<int>& edges, int w) {
    for (int e : edges)
      if (edge_touches(e, w)) return e;  // edges ascending: first hit is least
    return edges.front();
  };

  for (int j = 0; j < V; j++) {
    const int w = order[j];
    const Slab& below = (j == 0) ? empty_slab : slabs_[j - 1];
    Slab& above = (j == V - 1) ? empty_slab : slabs_[j];
    const int nb = static_cast<int>(below.comps.size());
    const int na = static_cast<int>(above.comps.size());

    // Bipartite link graph on shared edges, explored component by component.
    std::vector<std::vector<int>> link_b(nb), link_a(na);
    for (int b = 0; b < nb; b++)
      for (int a = 0; a < na; a++)
        if (count_shared(below.comps[b].edges, above.comps[a].edges) > 0) {
          link_b[b].push_back(a);
          link_a[a].push_back(b);
        }
    std::vector<char> seen_b(nb, 0), seen_a(na, 0);
    bool saw_topology = false;

    auto process_group = [&](const std::vector<int>& bs, const std::vector<int>& as) {
      if (bs.size() == 1 && as.size() == 1) {  // continuation
        const SlabComp& bc = below.comps[bs[0]];
        SlabComp& ac = above.comps[as[0]];
        ac.slot = bc.slot;
        ac.start_edge = std::binary_search(ac.edges.begin(), ac.edges.end(), bc.start_edge)
                            ? bc.start_edge
                            : start_edge_at(ac.edges, w);
        return;
      }
      saw_topology = true;
      topo_levels.push_back(vals_[j]);
      if (bs.empty() && as.size() == 1) {  // birth at a local minimum
        SlabComp& ac = above.comps[as[0]];
        if (free_slots.empty()) throw MeshError("morse_to_gamma: slot bookkeeping failed");
        ac.slot = *free_slots.begin();
        free_slots.erase(free_slots.begin());
        ac.start_edge = start_edge_at(ac.edges, w);
        stops[ac.slot].push_back({vals_[j], w, true, false});
        return;
      }
      if (bs.size() == 1 && as.empty()) {  // death at a local maximum
        const SlabComp& bc = below.comps[bs[0]];
        free_slots.insert(bc.slot);
        stops[bc.slot].push_back({vals_[j], w, false, false});
        return;
      }
      if (bs.size() == 1 && as.size() == 2) {  // split
        const SlabComp& parent = below.comps[bs[0]];
        SlabComp& c0 = above.comps[as[0]];
        SlabComp& c1 = above.comps[as[1]];
        const int s0 = count_shared(c0.edges, parent.edges);
        const int s1 = count_shared(c1.edges, parent.edges);
        const bool keep0 = s0 > s1 || (s0 == s1 && c0.edges.front() < c1.edges.front());
        SlabComp& keep = keep0 ? c0 : c1;
        SlabComp& spare = keep0 ? c1 : c0;
        keep.slot = parent.slot;
        if (free_slots.empty()) throw MeshError("morse_to_gamma: slot bookkeeping failed");
        spare.slot = *free_slots.begin();
        free_slots.erase(free_slots.begin());
        keep.start_edge = start_edge_at(keep.edges, w);
        spare.start_edge = start_edge_at(spare.edges, w);
        raw.push_back({vals_[j], true, w, keep.slot, spare.slot, kInvalid, kInvalid, spare.edges});
        stops[spare.slot].push_back({vals_[j], w, true, true});
        return;
      }
      if (bs.size() == 2 && as.size() == 1) {  // merge
        const SlabComp& p0 = below.comps[bs[0]];
        const SlabComp& p1 = below.comps[bs[1]];
        SlabComp& child = above.comps[as[0]];
        const int s0 = count_shared(p0.edges, child.edges);
        const int s1 = count_shared(p1.edges, child.edges);
        const bool keep0 = s0 > s1 || (s0 == s1 && p0.edges.front() < p1.edges.front());
        const SlabComp& keep = keep0 ? p0 : p1;
        const SlabComp& spare = keep0 ? p1 : p0;
        child.slot = keep.slot;
        child.start_edge = start_edge_at(child.edges, w);
        free_slots.insert(spare.slot);
        raw.push_back({vals_[j], false, w, keep.slot, spare.slot, start_edge_at(keep.edges, w),
                       start_edge_at(spare.edges, w), spare.edges});
        stops[spare.slot].push_back({vals_[j], w, false, true});
        return;
      }
      throw MeshError("morse_to_gamma: non-simple transition at a vertex value");
    };

    for (int b = 0; b < nb; b++) {
      if (seen_b[b]) continue;
      // Flood the bipartite component containing b.
      std::vector<int> bs{b}, as;
      seen_b[b] = 1;
      for (std::size_t q = 0; q < bs.size() || q < as.size(); q++) {
        if (q < bs.size())
          for (int a : link_b[bs[q]])
            if (!seen_a[a]) {
              seen_a[a] = 1;
              as.push_back(a);
            }
        if (q < as.size())
          for (int b2 : link_a[as[q]])
            if (!seen_b[b2]) {
              seen_b[b2] = 1;
              bs.push_back(b2);
            }
      }
      process_group(bs, as);
    }
    for (int a = 0; a < na; a++) {
      if (seen_a[a]) continue;
      seen_a[a] = 1;
      process_group({}, {a});
    }
    if (is_saddle[w] && !saw_topology)
      throw MeshError("morse_to_gamma: saddle reconnecting a component to itself");
  }

  // Window widths: a quarter of the clearance to the neighboring events,
  // shrunk so the anchor crossings persist through the window.
  std::sort(topo_levels.begin(), topo_levels.end());
  std::map<double, double> eps_at;
  for (const RawEvent& re : raw) {
    const auto it = std::lower_bound(topo_levels.begin(), topo_levels.end(), re.c);
    const double prev = (it == topo_levels.begin()) ? 0.0 : *std::prev(it);
    const double next = (std::next(it) == topo_levels.end()) ? 1.0 : *std::next(it);
    double eps = std::min(re.c - prev, next - re.c) / 4.0;

    // Anchor edges: one per passage of the loop through the star of w on the
    // window side (below for splits, above for merges) - exactly two runs.
    auto [ring, closed] = vertex_link(m_, re.w);
    if (!closed) throw MeshError("morse_to_gamma: saddle on the boundary");
    const int R = static_cast<int>(ring.size());
    std::vector<char> side(R);
    for (int i = 0; i < R; i++)
      side[i] = re.split ? (f_[ring[i]] < re.c) : (f_[ring[i]] > re.c);
    int first = 0;
    while (first < R && side[first]) first++;
    if (first == R) throw MeshError("morse_to_gamma: saddle ring is one-sided");
    std::vector<int> anchors;
    for (int q = 0, i = first; q < R; q++, i = (i + 1) % R) {
      if (!side[i]) continue;
      const bool run_start = !side[(i + R - 1) % R];
      const int e = m_.edge_between(re.w, ring[i]);
      if (run_start) {
        anchors.push_back(e);
      } else if (!anchors.empty()) {
        anchors.back() = std::min(anchors.back(), e);
      }
    }
    if (anchors.size() != 2)
      throw MeshError("morse_to_gamma: non-simple transition at a vertex value");
    SaddleEvent ev;
    ev.c = re.c;
    ev.split = re.split;
    ev.w = re.w;
    ev.e1 = std::min(anchors[0], anchors[1]);
    ev.e2 = std::max(anchors[0], anchors[1]);
    ev.rot_keep = re.split ? ev.e1 : re.rot_keep;
    ev.rot_spare = re.rot_spare;
    ev.slot_keep = re.slot_keep;
    ev.slot_spare = re.slot_spare;
    ev.spare_edges = re.spare_edges;
    for (int e : {ev.e1, ev.e2, ev.rot_keep, ev.rot_spare}) {
      if (e == kInvalid) continue;
      const TriMesh::Edge& E = m_.edge(e);
      const int u = (E.a == re.w) ? E.b : E.a;
      eps = std::min(eps, std::abs(f_[u] - re.c) / 2.0);
    }
    ev.eps = eps;
    events_.push_back(std::move(ev));
    eps_at[re.c] = eps;
  }

  // Park plans: every idle slot sits at a vertex, moving along a shortest
  // vertex path between a release and the next engagement.
  parks_.assign(slots_, ParkPlan{});
  const int default_home = order.front();
  for (int s = 0; s < slots_; s++) {
    const auto& st = stops[s];
    ParkPlan& plan = parks_[s];
    if (st.empty()) {
      plan.home = default_home;
      continue;
    }
    if (!st.front().use) throw MeshError("morse_to_gamma: park bookkeeping failed");
    plan.home = st.front().w;
    for (std::size_t i = 1; i + 1 < st.size(); i += 2) {
      const ParkStop& fr = st[i];
      const ParkStop& us = st[i + 1];
      if (fr.use || !us.use) throw MeshError("morse_to_gamma: park bookkeeping failed");
      if (fr.w == us.w) continue;
      ParkMove mv;
      mv.t0 = fr.t + (fr.saddle ? eps_at.at(fr.t) : 0.0);
      mv.t1 = us.t - (us.saddle ? eps_at.at(us.t) : 0.0);
      if (!(mv.t1 > mv.t0)) throw MeshError("morse_to_gamma: park bookkeeping failed");
      mv.verts = vertex_path(m_, fr.w, us.w);
      mv.cum.push_back(0.0);
      for (std::size_t q = 0; q + 1 < mv.verts.size(); q++) {
        const int e = m_.edge_between(mv.verts[q], mv.verts[q + 1]);
        mv.cum.push_back(mv.cum.back() + m_.edge(e).length);
      }
      plan.moves.push_back(std::move(mv));
    }
  }
}

int LevelFamily::slab_of(double t) const {
  const auto it = std::lower_bound(vals_.begin(), vals_.end(), t);
  return static_cast<int>(it - vals_.begin()) - 1;
}

SurfacePoint LevelFamily::vertex_point(int v) const {
  int host = kInvalid;
  for (int fc : m_.vertex_faces(v))
    if (m_.face_alive(fc) && (host == kInvalid || fc < host)) host = fc;
  if (host == kInvalid) throw MeshError("vertex_point: isolated vertex");
  SurfacePoint p;
  p.face = host;
  p.bary[m_.corner_of(host, v)] = 1.0;
  return p;
}

SurfacePoint LevelFamily::edge_point_from(int e, int w, double s) const {
  const TriMesh::Edge& E = m_.edge(e);
  const int u = (E.a == w) ? E.b : E.a;
  int host = kInvalid;
  for (int fc : E.face)
    if (fc != kInvalid && m_.face_alive(fc) && (host == kInvalid || fc < host)) host = fc;
  SurfacePoint p;
  p.face = host;
  const double ss = std::clamp(s, 0.0, 1.0);
  p.bary[m_.corner_of(host, w)] = 1.0 - ss;
  p.bary[m_.corner_of(host, u)] = ss;
  return p;
}

SurfacePoint LevelFamily::park_position(int slot, double t) const {
  const ParkPlan& plan = parks_[slot];
  int at = plan.home;
  for (const ParkMove& mv : plan.moves) {
    if (t <= mv.t0) break;
    if (t >= mv.t1) {
      at = mv.verts.back();
      continue;
    }
    const double s = mv.cum.back() * (t - mv.t0) / (mv.t1 - mv.t0);
    std::size_t hi = std::upper_bound(mv.cum.begin(), mv.cum.end(), s) - mv.cum.begin();
    hi = std::clamp<std::size_t>(hi, 1, mv.cum.size() - 1);
    const std::size_t seg = hi - 1;
    const double den = mv.cum[hi] - mv.cum[seg];
    const double u = (den > 0.0) ? (s - mv.cum[seg]) / den : 0.0;
    const int e = m_.edge_between(mv.verts[seg], mv.verts[seg + 1]);
    return edge_point_from(e, mv.verts[seg], u);
  }
  return vertex_point(at);
}

LoopTuple LevelFamily::at(double t) const {
  if (t < 0.0 || t > 1.0) throw MeshError("morse_to_gamma: parameter outside [0,1]");
  LoopTuple T;
  T.arcs.resize(slots_);
  for (int s = 0; s < slots_; s++) T.arcs[s] = point_curve(park_position(s, t));
  const int j = slab_of(t);
  if (j < 0) return T;  // at or below the first vertex value: empty level

  std::vector<LevelComp> comps = level_components(m_, f_, t);
  const Slab& slab = slabs_[j];
  if (comps.size() != slab.comps.size()) throw MeshError("morse_to_gamma: slab mismatch");
  for (std::size_t r = 0; r < comps.size(); r++)
    if (comps[r].edges != slab.comps[r].edges) throw MeshError("morse_to_gamma: slab mismatch");

  // Protocol phase. Splits act on [c-eps, c]: the approach half rotates the
  // parent basepoint onto the e1 crossing while the spare point rides e1 out
  // of w, the cut half grows the spare side out of the e1 crossing. Merges
  // act on [c-eps, c+eps]: approach rotates both parents onto their w-side
  // crossings, then the cut runs backwards and the spare point retreats.
  enum class Phase { none, split_approach, split_cut, merge_approach, merge_cut, merge_retreat };
  Phase ph = Phase::none;
  double u = 0.0;
  const SaddleEvent* ev = nullptr;
  for (const SaddleEvent& e : events_) {
    const double lo = e.c - e.eps;
    const double hi = e.split ? e.c : e.c + e.eps;
    if (t < lo || t > hi) continue;
    ev = &e;
    const double half = e.eps * 0.5;
    if (e.split) {
      if (t < e.c - half) {
        ph = Phase::split_approach;
        u = (t - lo) / half;
      } else {
        ph = Phase::split_cut;
        u = (t - (e.c - half)) / half;
      }
    } else {
      if (t <= e.c) {
        ph = Phase::merge_approach;
        u = (t - lo) / e.eps;
      } else if (t <= e.c + half) {
        ph = Phase::merge_cut;
        u = ((e.c + half) - t) / half;
      } else {
        ph = Phase::merge_retreat;
        u = ((e.c + e.eps) - t) / half;
      }
    }
    break;
  }

  for (std::size_t r = 0; r < comps.size(); r++) {
    const SlabComp& sc = slab.comps[r];
    LevelComp& lc = comps[r];
    if ((ph == Phase::split_cut || ph == Phase::merge_cut) && sc.slot == ev->slot_keep) {
      auto [keep, spare] = protocol_cut(m_, lc.curve, lc.pe, ev->e1, ev->e2, ev->spare_edges, u);
      T.arcs[ev->slot_keep] = std::move(keep);
      T.arcs[ev->slot_spare] = std::move(spare);
      continue;
    }
    rotate_to_start(lc.curve, lc.pe, sc.start_edge);
    if (ph == Phase::split_approach && sc.slot == ev->slot_keep) {
      T.arcs[sc.slot] = rotate_fraction(m_, lc.curve, lc.pe, ev->rot_keep, u);
    } else if (ph == Phase::merge_approach &&
               (sc.slot == ev->slot_keep || sc.slot == ev->slot_spare)) {
      const int target = (sc.slot == ev->slot_keep) ? ev->rot_keep : ev->rot_spare;
      T.arcs[sc.slot] = rotate_fraction(m_, lc.curve, lc.pe, target, u);
    } else {
      T.arcs[sc.slot] = std::move(lc.curve);
    }
  }
  if (ph == Phase::split_approach || ph == Phase::merge_retreat) {
    const TriMesh::Edge& E = m_.edge(ev->e1);
    const int far = (E.a == ev->w) ? E.b : E.a;
    const double half = ev->eps * 0.5;
    const double s_ref = half / std::abs(f_[far] - ev->c);
    T.arcs[ev->slot_spare] = point_curve(edge_point_from(ev->e1, ev->w, u * s_ref));
  }
  return T;
}

}  // namespace

// --- metric ----------------------------------------------------------------

struct GammaMetric::SampledArc {
  std::vector<SurfacePoint> pts;  // samples_ points at even arc-length fractions
  std::vector<VecN> der;          // samples_-1 forward differences (dim 1 if unembedded)
};

GammaMetric::GammaMetric(const TriMesh& m, int samples, int steiner_ppe, bool precompute_table)
    : mesh_(&m), samples_(samples), graph_(m, steiner_ppe) {
  if (samples_ < 2) throw MeshError("GammaMetric: need at least two samples");
  if (precompute_table) graph_.precompute_all_pairs();
}

GammaMetric::SampledArc GammaMetric::sample(const PolyCurve& arc) const {
  const TriMesh& m = *mesh_;
  SampledArc s;
  const std::vector<double> cum = cumulative_lengths(m, arc);
  s.pts.reserve(samples_);
  for (int j = 0; j < samples_; j++)
    s.pts.push_back(point_at(m, arc, cum, static_cast<double>(j) / (samples_ - 1)));
  const double dt = 1.0 / (samples_ - 1);
  s.der.reserve(samples_ - 1);
  if (m.has_embedding()) {
    std::vector<VecN> pos;
    pos.reserve(samples_);
    for (const SurfacePoint& p : s.pts) pos.push_back(m.embed(p));
    for (int j = 0; j + 1 < samples_; j++) s.der.push_back((pos[j + 1] - pos[j]) * (1.0 / dt));
  } else {
    // Constant-speed parametrization: the only intrinsic derivative datum is
    // the speed itself.
    VecN v;
    v.dim = 1;
    v[0] = cum.back();
    for (int j = 0; j + 1 < samples_; j++) s.der.push_back(v);
  }
  return s;
}

double GammaMetric::pair_cost(const SampledArc& a, const SampledArc& b) const {
  double cmax = 0.0;
  for (int j = 0; j < samples_; j++)
    cmax = std::max(cmax, graph_.distance(a.pts[j], b.pts[j]));
  const double dt = 1.0 / (samples_ - 1);
  double sq = 0.0;
  for (int j = 0; j + 1 < samples_; j++) {
    const VecN g = a.der[j] - b.der[j];
    sq += g.norm2() * dt;
  }
  return cmax + std::sqrt(sq);
}

double GammaMetric::distance(const LoopTuple& a, const LoopTuple& b) const {
  if (a.size() != b.size()) throw MeshError("gamma distance: tuple sizes differ");
  const int k = a.size();
  if (k == 0) return 0.0;
  if (k > 8) throw MeshError("gamma distance: more than eight slots");

  std::vector<SampledArc> sa, sb;
  sa.reserve(k);
  sb.reserve(k);
  for (const PolyCurve& c : a.arcs) sa.push_back(sample(c));
  for (const PolyCurve& c : b.arcs) sb.push_back(sample(c));

  std::vector<std::vector<double>> cost(k, std::vector<double>(k));
  for (int i = 0; i < k; i++)
    for (int j = 0; j < k; j++) cost[i][j] = pair_cost(sa[i], sb[j]);

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < k; i++) worst = std::max(worst, cost[i][perm[i]]);
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double continuity_modulus(const GammaMetric& metric, const GammaFamily& fam) {
  if (fam.tuples.size() < 2) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < fam.tuples.size(); i++)
    worst = std::max(worst, metric.distance(fam.tuples[i], fam.tuples[i + 1]));
  return worst;
}

GammaFamily morse_to_gamma(const TriMesh& m, const PLFunction& f, int n_intervals) {
  if (n_intervals < 1) throw MeshError("morse_to_gamma: need at least one interval");
  PLFunction g = rescale_to_unit(f);
  g = rescale_to_unit(perturb_to_morse(m, g, 1e-9));
  LevelFamily fam(m, std::move(g));
  GammaFamily out;
  out.slots = fam.slots();
  out.t.reserve(n_intervals + 1);
  out.tuples.reserve(n_intervals + 1);
  for (int i = 0; i <= n_intervals; i++) {
    const double t = static_cast<double>(i) / n_intervals;
    out.t.push_back(t);
    out.tuples.push_back(fam.at(t));
  }
  return out;
}

}  // namespace waistkit
