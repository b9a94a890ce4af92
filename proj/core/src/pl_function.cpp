#include "waistkit/pl_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace waistkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> live_faces(const TriMesh& m, const std::vector<int>* faces) {
  if (faces) return *faces;
  std::vector<int> all;
  all.reserve(m.n_faces_live());
  for (int f = 0; f < m.n_faces_total(); f++)
    if (m.face_alive(f)) all.push_back(f);
  return all;
}

// Symbolic side of a vertex w.r.t. level x: values equal to x count as above.
inline bool above(double value, double x) { return value >= x; }

}  // namespace

PLFunction pl_constant(const TriMesh& m, double c) {
  PLFunction f;
  f.v.assign(m.n_vertices(), c);
  return f;
}

PLFunction pl_sample(const TriMesh& m, const std::function<double(const VecN&)>& fn) {
  PLFunction f;
  f.v.resize(m.n_vertices());
  for (int v = 0; v < m.n_vertices(); v++) f.v[v] = fn(m.position(v));
  return f;
}

double min_value(const PLFunction& f) { return *std::min_element(f.v.begin(), f.v.end()); }
double max_value(const PLFunction& f) { return *std::max_element(f.v.begin(), f.v.end()); }

PLFunction rescale_to_unit(const PLFunction& f) {
  const double lo = min_value(f), hi = max_value(f);
  if (!(hi > lo)) throw MeshError("rescale_to_unit: constant function");
  PLFunction g = f;
  for (double& x : g.v) x = (x - lo) / (hi - lo);
  return g;
}

PLFunction remap_values(const PLFunction& f,
                        const std::vector<std::pair<double, double>>& knots) {
  if (knots.size() < 2) throw MeshError("remap_values: need at least two knots");
  for (std::size_t i = 1; i < knots.size(); i++)
    if (!(knots[i].first > knots[i - 1].first))
      throw MeshError("remap_values: knot inputs must increase");
  PLFunction g = f;
  for (double& x : g.v) {
    if (x <= knots.front().first) {
      x = knots.front().second;
      continue;
    }
    if (x >= knots.back().first) {
      x = knots.back().second;
      continue;
    }
    std::size_t k = 1;
    while (knots[k].first < x) k++;
    const auto& [xa, ya] = knots[k - 1];
    const auto& [xb, yb] = knots[k];
    x = ya + (yb - ya) * (x - xa) / (xb - xa);
  }
  return g;
}

std::vector<PolyCurve> level_set(const TriMesh& m, const PLFunction& f, double x,
                                 const std::vector<int>* faces,
                                 std::vector<std::vector<int>>* point_edges) {
  if (point_edges) point_edges->clear();
  const std::vector<int> subset = live_faces(m, faces);
  std::vector<char> in_subset(m.n_faces_total(), 0);
  for (int fc : subset) in_subset[fc] = 1;

  // Crossing point per crossed edge, in the coordinates of its lowest face.
  std::map<int, SurfacePoint> crossing;
  // Faces of the subset adjacent to each crossed edge.
  std::map<int, std::vector<int>> edge_faces;
  // The two crossed edges per crossing face.
  std::map<int, std::array<int, 2>> face_cross;

  for (int fc : subset) {
    const TriMesh::Face& F = m.face(fc);
    std::array<int, 2> crossed{kInvalid, kInvalid};
    int n_crossed = 0;
    for (int k = 0; k < 3; k++) {
      const int u = F.v[k], w = F.v[(k + 1) % 3];
      if (above(f[u], x) == above(f[w], x)) continue;
      if (n_crossed >= 2) throw MeshError("level_set: impossible crossing count");
      crossed[n_crossed++] = F.e[k];
    }
    if (n_crossed == 0) continue;
    if (n_crossed != 2) throw MeshError("level_set: impossible crossing count");
    face_cross[fc] = crossed;
    for (int e : crossed) {
      edge_faces[e].push_back(fc);
      if (crossing.count(e)) continue;
      const TriMesh::Edge& E = m.edge(e);
      const double fa = f[E.a], fb = f[E.b];
      const double t = (fa == fb) ? 0.0 : (x - fa) / (fb - fa);
      int host = kInvalid;
      for (int g : E.face)
        if (g != kInvalid && m.face_alive(g) && (host == kInvalid || g < host)) host = g;
      SurfacePoint p;
      p.face = host;
      p.bary[m.corner_of(host, E.a)] = 1.0 - t;
      p.bary[m.corner_of(host, E.b)] = t;
      crossing[e] = p;
    }
  }

  std::vector<PolyCurve> out;
  std::map<int, char> face_done;

  // Walks from `edge` through `fc` chaining crossings until the component
  // ends (boundary of the subset) or closes.
  auto trace = [&](int start_edge, int start_face) {
    PolyCurve c;
    std::vector<int> pe{start_edge};
    c.pts.push_back(crossing[start_edge]);
    int e = start_edge, fc = start_face;
    while (true) {
      face_done[fc] = 1;
      const auto& ce = face_cross[fc];
      const int next_e = (ce[0] == e) ? ce[1] : ce[0];
      c.pts.push_back(crossing[next_e]);
      pe.push_back(next_e);
      c.seg_face.push_back(fc);
      // Move across next_e to the unvisited neighbor in the subset.
      int nf = kInvalid;
      for (int g : edge_faces[next_e])
        if (g != fc) nf = g;
      e = next_e;
      if (nf == kInvalid) break;  // subset boundary: open arc
      if (nf == start_face && e == start_edge) {
        c.closed = true;
        break;
      }
      if (face_done.count(nf)) break;
      fc = nf;
    }
    out.push_back(std::move(c));
    if (point_edges) point_edges->push_back(std::move(pe));
  };

  // Open arcs first (seeded at edges with a single adjacent crossing face).
  for (const auto& [e, fs] : edge_faces) {
    if (fs.size() != 1 || face_done.count(fs[0])) continue;
    trace(e, fs[0]);
  }
  // Remaining components are loops.
  for (const auto& [fc, ce] : face_cross) {
    if (face_done.count(fc)) continue;
    trace(ce[0], fc);
  }
  return out;
}

double fiber_length(const TriMesh& m, const PLFunction& f, double x,
                    const std::vector<int>* faces) {
  const std::vector<int> subset = live_faces(m, faces);
  double total = 0.0;
  for (int fc : subset) {
    const TriMesh::Face& F = m.face(fc);
    Vec2 pts[2];
    int n = 0;
    for (int k = 0; k < 3 && n < 2; k++) {
      const int u = F.v[k], w = F.v[(k + 1) % 3];
      const double fu = f[u], fw = f[w];
      if (above(fu, x) == above(fw, x)) continue;
      const double t = (fu == fw) ? 0.0 : (x - fu) / (fw - fu);
      pts[n++] = F.chart[k] * (1.0 - t) + F.chart[(k + 1) % 3] * t;
    }
    if (n == 2) total += (pts[0] - pts[1]).norm();
  }
  return total;
}

FiberProfile::FiberProfile(const TriMesh& m, const PLFunction& f,
                           const std::vector<int>* faces) {
  struct Event {
    double x, da, db;
  };
  std::vector<Event> events;
  for (int fc : live_faces(m, faces)) {
    const TriMesh::Face& F = m.face(fc);
    std::array<int, 3> ord{0, 1, 2};
    std::sort(ord.begin(), ord.end(), [&](int i, int j) { return f[F.v[i]] < f[F.v[j]]; });
    const double x0 = f[F.v[ord[0]]], x1 = f[F.v[ord[1]]], x2 = f[F.v[ord[2]]];
    const Vec2 p0 = F.chart[ord[0]], p1 = F.chart[ord[1]], p2 = F.chart[ord[2]];
    if (x0 < x1) {
      // (x - x0) * c on [x0, x1]
      const Vec2 dir = (p1 - p0) * (1.0 / (x1 - x0)) - (p2 - p0) * (1.0 / (x2 - x0));
      const double c = dir.norm();
      events.push_back({x0, -x0 * c, c});
      events.push_back({x1, x0 * c, -c});
    }
    if (x1 < x2) {
      // (x2 - x) * c on [x1, x2]
      const Vec2 dir = (p0 - p2) * (1.0 / (x2 - x0)) - (p1 - p2) * (1.0 / (x2 - x1));
      const double c = dir.norm();
      events.push_back({x1, x2 * c, -c});
      events.push_back({x2, -x2 * c, c});
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });

  double A = 0.0, B = 0.0;
  std::size_t i = 0;
  max_ = 0.0;
  while (i < events.size()) {
    const double s = events[i].x;
    const double left = A + B * s;
    while (i < events.size() && events[i].x == s) {
      A += events[i].da;
      B += events[i].db;
      i++;
    }
    const double right = A + B * s;
    xs_.push_back(s);
    a_.push_back(A);
    b_.push_back(B);
    const double here = std::max(left, right);
    if (here > max_) {
      max_ = here;
      argmax_ = s;
    }
    prefix_max_.push_back(max_);
  }
}

int FiberProfile::piece_of(double x) const {
  // Last breakpoint <= x; -1 when x precedes every breakpoint.
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  return static_cast<int>(it - xs_.begin()) - 1;
}

double FiberProfile::value_left(double x) const {
  const int k = piece_of(x);
  if (k < 0) return 0.0;
  if (xs_[k] == x)  // limit from the previous piece
    return k == 0 ? 0.0 : a_[k - 1] + b_[k - 1] * x;
  return a_[k] + b_[k] * x;
}

double FiberProfile::value_right(double x) const {
  const int k = piece_of(x);
  if (k < 0) return 0.0;
  return a_[k] + b_[k] * x;
}

double FiberProfile::max_on_prefix(double x) const {
  const int k = piece_of(x);
  if (k < 0) return 0.0;
  return std::max(prefix_max_[k], a_[k] + b_[k] * x);
}

double FiberProfile::global_max() const { return max_; }
double FiberProfile::global_argmax() const { return argmax_; }

FiberMax max_fiber_length(const TriMesh& m, const PLFunction& f, const std::vector<int>* faces) {
  FiberProfile profile(m, f, faces);
  return {profile.global_argmax(), profile.global_max()};
}

double sublevel_area(const TriMesh& m, const PLFunction& f, double x,
                     const std::vector<int>* faces) {
  double total = 0.0;
  for (int fc : live_faces(m, faces)) {
    const TriMesh::Face& F = m.face(fc);
    std::array<double, 3> s{f[F.v[0]], f[F.v[1]], f[F.v[2]]};
    std::sort(s.begin(), s.end());
    const double area = F.area;
    if (x <= s[0]) continue;
    if (x >= s[2]) {
      total += area;
      continue;
    }
    if (x <= s[1]) {
      total += area * (x - s[0]) * (x - s[0]) / ((s[1] - s[0]) * (s[2] - s[0]));
    } else {
      total += area * (1.0 - (s[2] - x) * (s[2] - x) / ((s[2] - s[1]) * (s[2] - s[0])));
    }
  }
  return total;
}

double almgren_degree(const TriMesh& m, const PLFunction& f, int n_intervals) {
  if (n_intervals < 1) throw MeshError("almgren_degree: need at least one interval");
  const double lo = min_value(f), hi = max_value(f);
  const double pad = std::max(1.0, hi - lo) * 1e-9;
  const double total = m.total_area();
  double degree = 0.0;
  for (int i = 0; i < n_intervals; i++) {
    const double t0 = lo - pad + (hi - lo + 2 * pad) * i / n_intervals;
    const double t1 = lo - pad + (hi - lo + 2 * pad) * (i + 1) / n_intervals;
    degree += (sublevel_area(m, f, t1) - sublevel_area(m, f, t0)) / total;
  }
  return degree;
}

CriticalReport classify_critical(const TriMesh& m, const PLFunction& f) {
  CriticalReport report;
  auto above_v = [&](int u, int v) {
    return f[u] > f[v] || (f[u] == f[v] && u > v);  // ties by id
  };
  for (int v = 0; v < m.n_vertices(); v++) {
    auto [order, closed] = vertex_link(m, v);
    std::vector<char> up;
    up.reserve(order.size() + 1);
    for (int u : order) up.push_back(above_v(u, v) ? 1 : 0);
    if (!closed) up.push_back(0);  // virtual vertex below everything
    int changes = 0;
    const int n = static_cast<int>(up.size());
    for (int i = 0; i < n; i++) changes += (up[i] != up[(i + 1) % n]) ? 1 : 0;
    if (changes % 2 != 0) throw MeshError("classify_critical: odd sign changes");
    report.index_sum += 1 - changes / 2;
    if (changes == 2) continue;
    CriticalPoint p;
    p.vertex = v;
    if (changes == 0) {
      const bool all_up = std::all_of(up.begin(), up.end(), [](char c) { return c != 0; });
      p.type = all_up ? CriticalType::minimum : CriticalType::maximum;
      (all_up ? report.n_min : report.n_max)++;
    } else {
      p.type = CriticalType::saddle;
      p.multiplicity = changes / 2 - 1;
      report.n_saddle += p.multiplicity;
    }
    report.points.push_back(p);
  }
  return report;
}

bool is_morse(const TriMesh& m, const PLFunction& f) {
  for (int e = 0; e < m.n_edges(); e++) {
    const TriMesh::Edge& E = m.edge(e);
    bool live = false;
    for (int g : E.face) live |= (g != kInvalid && m.face_alive(g));
    if (live && f[E.a] == f[E.b]) return false;
  }
  return true;
}

PLFunction perturb_to_morse(const TriMesh& m, const PLFunction& f, double delta) {
  if (!(delta > 0.0)) throw MeshError("perturb_to_morse: delta must be positive");
  PLFunction g = f;
  std::vector<int> order(g.v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return g.v[i] < g.v[j] || (g.v[i] == g.v[j] && i < j);
  });
  const double step = delta / (static_cast<double>(g.v.size()) + 1.0);
  double prev = -kInf;
  for (int idx : order) {
    if (g.v[idx] <= prev) g.v[idx] = prev + step;
    prev = g.v[idx];
  }
  (void)m;
  return g;
}

}  // namespace waistkit
