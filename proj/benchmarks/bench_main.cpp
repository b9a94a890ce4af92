#include <benchmark/benchmark.h>

#include "waistkit/meshgen.hpp"
#include "waistkit/shortest_path.hpp"

using namespace waistkit;

static void BM_IcosphereBuild(benchmark::State& state) {
  for (auto _ : state) {
    TriMesh m = make_icosphere(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(m.total_area());
  }
}
BENCHMARK(BM_IcosphereBuild)->Arg(2)->Arg(3);

static void BM_VertexDijkstra(benchmark::State& state) {
  TriMesh m = make_icosphere(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto d = vertex_distances(m, 0);
    benchmark::DoNotOptimize(d.data());
  }
}
BENCHMARK(BM_VertexDijkstra)->Arg(2)->Arg(3)->Arg(4);

static void BM_SteinerDistance(benchmark::State& state) {
  TriMesh m = make_icosphere(static_cast<int>(state.range(0)));
  SteinerGraph g(m);
  const SurfacePoint p = g.node_point(g.vertex_node(0));
  const SurfacePoint q = g.node_point(g.vertex_node(3));
  for (auto _ : state) benchmark::DoNotOptimize(g.distance(p, q));
}
BENCHMARK(BM_SteinerDistance)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
