#pragma once

#include <utility>
#include <vector>

#include "waistkit/mesh.hpp"
#include "waistkit/pl_function.hpp"
#include "waistkit/shortest_path.hpp"

namespace waistkit {

// A point of the cycle space: a fixed-size tuple of parametrized arcs whose
// union carries a 1-cycle (arc endpoints coincide in pairs; closed loops have
// equal first/last points). Idle slots hold zero-length point arcs.
struct LoopTuple {
  std::vector<PolyCurve> arcs;
  int size() const { return static_cast<int>(arcs.size()); }
};

// A discrete path in the cycle space over an ascending parameter grid.
struct GammaFamily {
  std::vector<double> t;
  std::vector<LoopTuple> tuples;
  int slots = 0;
};

// Metric on loop tuples. Each arc is sampled at `samples` arc-length
// fractions; a matched pair of arcs costs the largest sample-to-sample
// surface distance plus the L2 gap of the sampled derivatives (embedding
// derivatives when the mesh carries an embedding, scalar speeds otherwise),
// and the tuple distance is the minimum over slot matchings of the largest
// pair cost. Every ingredient obeys the triangle inequality and matchings
// compose, so this is a pseudometric; evaluation is bitwise symmetric (the
// surface distance canonicalizes its arguments, max/min are exact, and the
// derivative gap is evaluated in a fixed order).
class GammaMetric {
 public:
  explicit GammaMetric(const TriMesh& m, int samples = 32, int steiner_ppe = 2,
                       bool precompute_table = false);

  double distance(const LoopTuple& a, const LoopTuple& b) const;
  int samples() const { return samples_; }
  const SteinerGraph& graph() const { return graph_; }
  const TriMesh& mesh() const { return *mesh_; }

 private:
  struct SampledArc;
  SampledArc sample(const PolyCurve& arc) const;
  double pair_cost(const SampledArc& a, const SampledArc& b) const;

  const TriMesh* mesh_;
  int samples_;
  SteinerGraph graph_;
};

// Largest distance between consecutive tuples of the family.
double continuity_modulus(const GammaMetric& metric, const GammaFamily& fam);

// The level-set family of a Morse function as a path in the cycle space,
// sampled on the uniform grid of n_intervals+1 values in [0,1] (the function
// is perturbed to distinct vertex values and rescaled to unit range first).
// Level components are tracked through slots; each loop is oriented with its
// upper side on the left and parametrized from a start edge that is carried
// continuously through the sweep. Births and deaths shrink loops to points
// parked at their critical vertices, idle slots relocate along shortest
// vertex paths between uses, and a simple saddle splits or merges components
// through a protocol window: a spare point arc rides an anchor edge into the
// saddle, then the affected loop is cut at two points travelling along it,
// so consecutive tuples stay close at every grid resolution. Non-simple
// transitions (a saddle joining a component to itself, or several events at
// one vertex value) are rejected with an error.
GammaFamily morse_to_gamma(const TriMesh& m, const PLFunction& f, int n_intervals);

}  // namespace waistkit
