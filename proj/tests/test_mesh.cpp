#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "waistkit/mesh.hpp"
#include "waistkit/mesh_io.hpp"
#include "waistkit/meshgen.hpp"

using namespace waistkit;

namespace {

// One 3-4-5 right triangle with explicit lengths; chart is P0=(0,0),
// P1=(3,0), P2=(3,4), area 6.
TriMesh right_triangle() {
  TriMesh m;
  m.add_vertex();
  m.add_vertex();
  m.add_vertex();
  m.add_face(0, 1, 2);
  m.set_length(0, 1, 3.0);
  m.set_length(1, 2, 4.0);
  m.set_length(2, 0, 5.0);
  m.finalize();
  return m;
}

}  // namespace

TEST_CASE("right triangle: chart, area, boundary") {
  TriMesh m = right_triangle();
  CHECK(m.n_vertices() == 3);
  CHECK(m.n_edges() == 3);
  CHECK(m.n_faces_live() == 1);
  CHECK(m.face_area(0) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(m.total_area() == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(m.n_boundary_loops() == 1);
  CHECK(m.boundary_length() == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(m.euler_characteristic() == 1);
  CHECK(m.genus() == 0);
  CHECK_FALSE(m.is_closed());

  // Chart positions pin down in-face distances: midpoint of edge 01 to the
  // opposite corner is |(1.5,0)-(3,4)| = sqrt(18.25).
  SurfacePoint mid{0, {0.5, 0.5, 0.0}};
  SurfacePoint apex{0, {0.0, 0.0, 1.0}};
  CHECK(m.distance_in_face(mid, apex) == doctest::Approx(std::sqrt(18.25)).epsilon(1e-12));
}

TEST_CASE("degenerate triangle is rejected") {
  TriMesh m;
  m.add_vertex();
  m.add_vertex();
  m.add_vertex();
  m.add_face(0, 1, 2);
  m.set_length(0, 1, 1.0);
  m.set_length(1, 2, 1.0);
  m.set_length(2, 0, 2.0);  // collapses to a segment
  CHECK_THROWS_AS(m.finalize(), MeshError);
}

TEST_CASE("centroid split preserves area and connectivity") {
  TriMesh m = right_triangle();
  const int w = m.split_face_centroid(0);
  CHECK(w == 3);
  CHECK(m.n_faces_live() == 3);
  CHECK_FALSE(m.face_alive(0));
  CHECK(m.total_area() == doctest::Approx(6.0).epsilon(1e-12));
  // Centroid chart point is (2, 4/3); spoke to corner 0 has length sqrt(4+16/9).
  const int e = m.edge_between(0, w);
  REQUIRE(e != kInvalid);
  CHECK(m.edge_length(e) == doctest::Approx(std::sqrt(4.0 + 16.0 / 9.0)).epsilon(1e-12));
  CHECK(m.boundary_length() == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("edge midpoint split preserves area on an interior edge") {
  TriMesh m;
  for (int i = 0; i < 4; i++) m.add_vertex();
  m.add_face(0, 1, 2);
  m.add_face(0, 2, 3);
  for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 0}}) m.set_length(a, b, 1.0);
  m.set_length(0, 2, std::sqrt(2.0));  // unit square split along its diagonal
  m.finalize();
  CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-12));

  const int diag = m.edge_between(0, 2);
  REQUIRE(diag != kInvalid);
  const int w = m.split_edge_midpoint(diag);
  CHECK(m.n_faces_live() == 4);
  CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-12));
  const int half = m.edge_between(0, w);
  REQUIRE(half != kInvalid);
  CHECK(m.edge_length(half) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(m.n_boundary_loops() == 1);
}

TEST_CASE("regions on the tetrahedron") {
  TriMesh m = make_tetrahedron();
  CHECK(m.total_area() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(m.is_closed());
  CHECK(m.genus() == 0);

  Region one{&m, {0}};
  CHECK(region_area(one) == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
  CHECK(region_boundary_edges(one).size() == 3);
  CHECK(region_boundary_length(one) == doctest::Approx(3.0).epsilon(1e-12));
  RegionTopology t1 = region_topology(one);
  CHECK(t1.chi == 1);
  CHECK(t1.boundary_loops == 1);
  CHECK(t1.genus == 0);

  Region two{&m, {0, 1}};
  CHECK(region_boundary_length(two) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(region_topology(two).chi == 1);

  Region all{&m, {0, 1, 2, 3}};
  CHECK(region_boundary_edges(all).empty());
  RegionTopology ta = region_topology(all);
  CHECK(ta.chi == 2);
  CHECK(ta.boundary_loops == 0);
  CHECK(ta.genus == 0);

  // Any two tetrahedron faces share an edge: always one component.
  Region split{&m, {0, 3}};
  CHECK(region_components(split).size() == 1);

  // Icosahedron faces 0 and 10 share no vertex: two components.
  TriMesh ico = make_icosahedron();
  Region far_apart{&ico, {0, 10}};
  CHECK(region_components(far_apart).size() == 2);
}

TEST_CASE("transfer carries edge points between faces") {
  TriMesh m;
  for (int i = 0; i < 4; i++) m.add_vertex();
  m.add_face(0, 1, 2);
  m.add_face(0, 2, 3);
  for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 0}}) m.set_length(a, b, 1.0);
  m.set_length(0, 2, std::sqrt(2.0));
  m.finalize();

  SurfacePoint p{0, {0.5, 0.0, 0.5}};  // midpoint of shared edge 0-2
  SurfacePoint q = m.transfer(p, 1);
  CHECK(q.face == 1);
  CHECK(q.bary[0] == doctest::Approx(0.5));
  CHECK(q.bary[1] == doctest::Approx(0.5));
  CHECK(q.bary[2] == 0.0);

  SurfacePoint interior{0, {0.25, 0.5, 0.25}};
  CHECK_THROWS_AS(m.transfer(interior, 1), MeshError);
}

TEST_CASE("curves measure exact chart length") {
  TriMesh m;
  for (int i = 0; i < 4; i++) m.add_vertex();
  m.add_face(0, 1, 2);
  m.add_face(0, 2, 3);
  for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 0}}) m.set_length(a, b, 1.0);
  m.set_length(0, 2, std::sqrt(2.0));
  m.finalize();

  // Midpoint of edge 01 -> midpoint of diagonal -> midpoint of edge 23:
  // two segments of length 1/2 each (by the flat square picture).
  PolyCurve c;
  c.pts = {{0, {0.5, 0.5, 0.0}}, {0, {0.5, 0.0, 0.5}}, {1, {0.0, 0.5, 0.5}}};
  c.seg_face = {0, 1};
  validate_curve(m, c);
  CHECK(curve_length(m, c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("metric scaling is exact on lengths and areas") {
  TriMesh m = right_triangle();
  m.scale_metric(2.0);
  CHECK(m.edge_length(m.edge_between(0, 1)) == 6.0);
  CHECK(m.total_area() == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(m.boundary_length() == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("assign_lengths rebuilds geometry") {
  TriMesh m = right_triangle();
  std::vector<double> l(3);
  for (int e = 0; e < 3; e++) l[e] = 1.0;  // equilateral
  m.assign_lengths(l);
  CHECK(m.total_area() == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
  CHECK_FALSE(m.has_embedding());
}

TEST_CASE("off round trip preserves geometry") {
  TriMesh m = make_icosahedron(1.0);
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "wk_roundtrip.off";
  save_off(m, path.string());
  TriMesh back = load_mesh(path.string());
  REQUIRE(back.n_vertices() == m.n_vertices());
  REQUIRE(back.n_edges() == m.n_edges());
  REQUIRE(back.n_faces_live() == m.n_faces_live());
  for (int e = 0; e < m.n_edges(); e++)
    CHECK(back.edge_length(e) == doctest::Approx(m.edge_length(e)).epsilon(1e-12));
  std::filesystem::remove(path);
}

TEST_CASE("length sidecar overrides embedding") {
  TriMesh m = make_tetrahedron(1.0);
  const auto dir = std::filesystem::temp_directory_path();
  const std::filesystem::path path = dir / "wk_sidecar.off";
  save_off(m, path.string());
  {
    std::FILE* f = std::fopen((path.string() + ".lengths").c_str(), "w");
    REQUIRE(f != nullptr);
    std::fprintf(f, "0 1 1.5\n");
    std::fclose(f);
  }
  TriMesh back = load_mesh(path.string());
  CHECK(back.edge_length(back.edge_between(0, 1)) == doctest::Approx(1.5));
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".lengths");
}
