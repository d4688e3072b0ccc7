#include <benchmark/benchmark.h>

#include <random>

#include "rfmesh/mesh.hpp"

using namespace rfmesh::mesh;

namespace {

std::vector<TowerNode> random_nodes(int count) {
  std::mt19937_64 rng(9000);
  std::uniform_real_distribution<double> lat(-60.0, 60.0);
  std::uniform_real_distribution<double> lon(-180.0, 179.999);
  std::vector<TowerNode> nodes(count);
  for (int i = 0; i < count; ++i) {
    nodes[i].id = i;
    nodes[i].lat_deg = lat(rng);
    nodes[i].lon_deg = lon(rng);
  }
  return nodes;
}

void BM_haversine(benchmark::State& state) {
  const GeoPoint a{15.2832, 73.9862};
  const GeoPoint b{15.4909, 73.8278};
  for (auto _ : state) benchmark::DoNotOptimize(haversine_km(a, b));
}
BENCHMARK(BM_haversine);

void BM_knn_connect(benchmark::State& state) {
  const auto nodes = random_nodes(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(knn_connect(nodes, 3, 2000.0));
}
BENCHMARK(BM_knn_connect)->Arg(50)->Arg(200)->Arg(500);

void BM_nearest_neighbor(benchmark::State& state) {
  const auto nodes = random_nodes(1000);
  double lat = -60.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nearest_neighbor({lat, 12.0}, nodes));
    lat = lat < 59.0 ? lat + 0.37 : -60.0;
  }
}
BENCHMARK(BM_nearest_neighbor);

void BM_nn_tsp_tour(benchmark::State& state) {
  const auto nodes = random_nodes(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nn_tsp_tour(nodes, 0));
}
BENCHMARK(BM_nn_tsp_tour)->Arg(20)->Arg(100);

}  // namespace
