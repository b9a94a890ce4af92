#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "waistkit/mesh.hpp"
#include "waistkit/meshgen.hpp"
#include "waistkit/shortest_path.hpp"

using namespace waistkit;

namespace {

constexpr double kPi = std::numbers::pi;

SurfacePoint random_point(const TriMesh& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, m.n_faces_total() - 1);
  int f = pick(rng);
  while (!m.face_alive(f)) f = pick(rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(rng), b = u(rng);
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return {f, {a, b, 1.0 - a - b}};
}

}  // namespace

TEST_CASE("vertex distances on the flat torus follow the edge graph") {
  TriMesh m = make_flat_torus(8);
  auto vid = [](int i, int j) { return j * 8 + i; };
  const std::vector<double> d = vertex_distances(m, vid(0, 0));
  // Four axis steps of 1/8.
  CHECK(d[vid(4, 0)] == doctest::Approx(0.5).epsilon(1e-12));
  // Diagonals only run along (+1,+1): (4,4) costs four of them.
  CHECK(d[vid(4, 4)] == doctest::Approx(4.0 * std::sqrt(2.0) / 8.0).epsilon(1e-12));
  // (2,-2) has no aligned diagonal: four axis steps.
  CHECK(d[vid(2, 6)] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("vertex distances respect a face mask") {
  TriMesh m = make_flat_torus(8);
  // Allow only cells with i < 4: a strip; walking around the j-circle stays
  // possible, crossing i = 4 is not.
  std::vector<char> mask(m.n_faces_total(), 0);
  for (int f = 0; f < m.n_faces_total(); f++) {
    bool ok = true;
    for (int v : m.face(f).v)
      ok = ok && (v % 8) <= 4;  // strip vertices have i in {0..4}
    mask[f] = ok ? 1 : 0;
  }
  const std::vector<double> d = vertex_distances(m, 0, &mask);
  CHECK(std::isfinite(d[4]));          // (4,0) reachable inside the strip
  CHECK_FALSE(std::isfinite(d[6]));    // (6,0) only through masked cells
}

TEST_CASE("farthest point sampling is deterministic and spread") {
  TriMesh m = make_icosphere(2);
  const std::vector<int> s1 = farthest_point_sample(m, 8, 17);
  const std::vector<int> s2 = farthest_point_sample(m, 8, 17);
  CHECK(s1 == s2);
  CHECK(s1.size() == 8);
  CHECK(s1[0] == 17 % m.n_vertices());
  for (std::size_t i = 0; i < s1.size(); i++)
    for (std::size_t j = i + 1; j < s1.size(); j++) CHECK(s1[i] != s1[j]);
  // The first two samples of an FPS on the sphere are nearly antipodal.
  const std::vector<double> d = vertex_distances(m, s1[0]);
  CHECK(d[s1[1]] > 2.5);
}

TEST_CASE("steiner distance: aligned diagonal on the flat torus is exact") {
  TriMesh m = make_flat_torus(8);
  SteinerGraph g(m);
  auto vertex_point = [&](int v) { return g.node_point(g.vertex_node(v)); };
  // (0,0) -> (0.5,0.5): the geodesic runs along cell diagonals.
  const double d = g.distance(vertex_point(0), vertex_point(4 * 8 + 4));
  CHECK(d == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  // (0,0) -> (0.5,0): the geodesic runs along axis edges.
  CHECK(g.distance(vertex_point(0), vertex_point(4)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("steiner distance: icosphere antipodal pair is close to pi") {
  TriMesh m = make_icosphere(3);
  SteinerGraph g(m);
  // Icosahedron vertices 0 and 3 are antipodal and survive subdivision.
  const double d = g.distance(g.node_point(g.vertex_node(0)), g.node_point(g.vertex_node(3)));
  CHECK(d > 0.97 * kPi);
  CHECK(d < 1.01 * kPi);
}

TEST_CASE("steiner distance is exactly symmetric and a metric") {
  TriMesh m = make_icosphere(1);
  SteinerGraph g(m);
  g.precompute_all_pairs();
  std::mt19937_64 rng(7);
  for (int it = 0; it < 60; it++) {
    const SurfacePoint p = random_point(m, rng);
    const SurfacePoint q = random_point(m, rng);
    const SurfacePoint r = random_point(m, rng);
    const double pq = g.distance(p, q);
    const double qp = g.distance(q, p);
    CHECK(pq == qp);  // bitwise, by canonical ordering
    CHECK(g.distance(p, p) == 0.0);
    CHECK(g.distance(p, r) <= pq + g.distance(q, r) + 1e-9);
    CHECK(pq >= 0.0);
  }
}

TEST_CASE("all-pairs table answers match per-query search") {
  TriMesh m = make_flat_torus(5);
  SteinerGraph g1(m), g2(m);
  g2.precompute_all_pairs();
  std::mt19937_64 rng(11);
  for (int it = 0; it < 25; it++) {
    const SurfacePoint p = random_point(m, rng);
    const SurfacePoint q = random_point(m, rng);
    CHECK(g1.distance(p, q) == doctest::Approx(g2.distance(p, q)).epsilon(1e-12));
  }
}

TEST_CASE("node paths connect and match the distance") {
  TriMesh m = make_icosphere(2);
  SteinerGraph g(m);
  const int from = g.vertex_node(0);
  const int to = g.vertex_node(3);
  const std::vector<int> path = g.node_path(from, to);
  REQUIRE(path.size() >= 2);
  CHECK(path.front() == from);
  CHECK(path.back() == to);
  const std::vector<double> d = g.distances({{from, 0.0}});
  // Path length reproduces the Dijkstra distance.
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); i++) {
    const SurfacePoint a = g.node_point(path[i]);
    const SurfacePoint b = g.node_point(path[i + 1]);
    // Segment length via a common face chart.
    bool measured = false;
    for (int f = 0; f < m.n_faces_total() && !measured; f++) {
      if (!m.face_alive(f)) continue;
      try {
        const SurfacePoint fa = m.transfer(a, f);
        const SurfacePoint fb = m.transfer(b, f);
        len += m.distance_in_face(fa, fb);
        measured = true;
      } catch (const MeshError&) {
      }
    }
    REQUIRE(measured);
  }
  CHECK(len == doctest::Approx(d[to]).epsilon(1e-9));
}

TEST_CASE("in-face chord beats any relay") {
  TriMesh m = make_tetrahedron();
  SteinerGraph g(m);
  SurfacePoint p{0, {1.0, 0.0, 0.0}};
  SurfacePoint q{0, {0.0, 1.0, 0.0}};
  CHECK(g.distance(p, q) == doctest::Approx(1.0).epsilon(1e-12));
  SurfacePoint mid{0, {0.5, 0.5, 0.0}};
  CHECK(g.distance(p, mid) == doctest::Approx(0.5).epsilon(1e-12));
}
