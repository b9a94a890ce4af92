#pragma once

#include <functional>
#include <vector>

#include "waistkit/mesh.hpp"

namespace waistkit {

// Piecewise-linear function: one value per mesh vertex, affine on faces.
struct PLFunction {
  std::vector<double> v;

  double operator()(const TriMesh& m, const SurfacePoint& p) const {
    const TriMesh::Face& F = m.face(p.face);
    return v[F.v[0]] * p.bary[0] + v[F.v[1]] * p.bary[1] + v[F.v[2]] * p.bary[2];
  }
  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }
  int size() const { return static_cast<int>(v.size()); }
};

PLFunction pl_constant(const TriMesh& m, double c);
// Samples a function of the embedded vertex position.
PLFunction pl_sample(const TriMesh& m, const std::function<double(const VecN&)>& fn);

double min_value(const PLFunction& f);
double max_value(const PLFunction& f);
// Affine rescale of the value range onto [0,1].
PLFunction rescale_to_unit(const PLFunction& f);
// Monotone piecewise-linear value transform through sorted (in, out) knots;
// values outside the knot range are clamped to the end outputs.
PLFunction remap_values(const PLFunction& f, const std::vector<std::pair<double, double>>& knots);

// The fiber {f = x} as polylines (closed loops on the interior, arcs ending
// on the mesh boundary). Vertices lying exactly at the level are resolved
// symbolically to the upper side, so every face is crossed in 0 or 2 edges;
// a strict local maximum at level x yields a degenerate point loop. When
// `point_edges` is given it receives, per curve, the crossed-edge id of each
// polyline point (parallel to `pts`; for loops the last repeats the first).
std::vector<PolyCurve> level_set(const TriMesh& m, const PLFunction& f, double x,
                                 const std::vector<int>* faces = nullptr,
                                 std::vector<std::vector<int>>* point_edges = nullptr);

// Exact length of {f = x} (same symbolic convention), optionally restricted
// to a face subset.
double fiber_length(const TriMesh& m, const PLFunction& f, double x,
                    const std::vector<int>* faces = nullptr);

// Full fiber-length profile x -> length{f = x}: piecewise linear in x with
// breakpoints at vertex values, continuous except for jumps where an entire
// edge sits at one level. Supremum semantics: queries report limits from
// both sides, so certificates bound every regular fiber.
class FiberProfile {
 public:
  FiberProfile(const TriMesh& m, const PLFunction& f, const std::vector<int>* faces = nullptr);

  double value_left(double x) const;   // lim_{t->x-} length(t)
  double value_right(double x) const;  // lim_{t->x+} length(t)
  double max_on_prefix(double x) const;  // sup over levels <= x (both limits)
  double global_max() const;
  double global_argmax() const;

 private:
  int piece_of(double x) const;
  std::vector<double> xs_;          // distinct breakpoints, ascending
  std::vector<double> a_, b_;       // piece k on [xs_[k], xs_[k+1]): a+b*x
  std::vector<double> prefix_max_;  // sup over (-inf, xs_[k]] (both limits)
  double max_ = 0.0;
  double argmax_ = 0.0;
};

struct FiberMax {
  double level = 0.0;
  double length = 0.0;  // sup over levels of the fiber length
};
FiberMax max_fiber_length(const TriMesh& m, const PLFunction& f,
                          const std::vector<int>* faces = nullptr);

// Exact area of the sublevel set {f <= x} (per-face quadratic clip).
double sublevel_area(const TriMesh& m, const PLFunction& f, double x,
                     const std::vector<int>* faces = nullptr);

// Sum of per-interval sublevel-area increments over a uniform partition of
// the value range, normalized by total area; 1 for any function (telescoping),
// computed the long way to exercise the per-interval machinery.
double almgren_degree(const TriMesh& m, const PLFunction& f, int n_intervals);

// Combinatorial critical-point classification by link sign changes (ties
// broken by vertex id; boundary links are closed through a virtual vertex
// below every value). `index_sum` equals the Euler characteristic exactly.
enum class CriticalType { minimum, maximum, regular, saddle };
struct CriticalPoint {
  int vertex = kInvalid;
  CriticalType type = CriticalType::regular;
  int multiplicity = 0;  // saddle multiplicity (sign changes / 2 - 1)
};
struct CriticalReport {
  std::vector<CriticalPoint> points;  // the non-regular vertices
  int n_min = 0;
  int n_max = 0;
  int n_saddle = 0;  // counted with multiplicity
  int index_sum = 0;
};
CriticalReport classify_critical(const TriMesh& m, const PLFunction& f);

// True when adjacent vertices never share a value (every level is a curve).
bool is_morse(const TriMesh& m, const PLFunction& f);
// Minimal monotone nudge making all vertex values pairwise distinct; moves
// no value by more than delta.
PLFunction perturb_to_morse(const TriMesh& m, const PLFunction& f, double delta);

}  // namespace waistkit
