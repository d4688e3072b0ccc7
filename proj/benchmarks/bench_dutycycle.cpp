#include <benchmark/benchmark.h>

#include <numbers>

#include "rfmesh/dutycycle.hpp"

using namespace rfmesh::dutycycle;

namespace {

rfmesh::mesh::MeshGraph tower_grid(int count) {
  rfmesh::mesh::MeshGraph graph;
  const double spacing_deg =
      10.0 / (rfmesh::mesh::kEarthRadiusKm * std::numbers::pi / 180.0);
  for (int i = 0; i < count; ++i) {
    rfmesh::mesh::TowerNode node;
    node.id = i;
    node.lat_deg = spacing_deg * (i / 10);
    node.lon_deg = spacing_deg * (i % 10);
    graph.nodes.push_back(node);
  }
  return graph;
}

std::vector<DeviceSpec> device_cloud(const rfmesh::mesh::MeshGraph& graph,
                                     int per_tower) {
  std::vector<DeviceSpec> devices;
  int id = 0;
  for (const auto& tower : graph.nodes)
    for (int j = 0; j < per_tower; ++j)
      devices.push_back({id++, tower.lat_deg + 1e-4 * (j + 1), tower.lon_deg,
                         0.5 * j, 1e-9});
  return devices;
}

void BM_simulate_energy_only(benchmark::State& state) {
  const auto graph = tower_grid(static_cast<int>(state.range(0)));
  ScheduleConfig config;
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate(graph, {}, config, 60.0, 0.1, 0));
}
BENCHMARK(BM_simulate_energy_only)->Arg(3)->Arg(50);

void BM_simulate_with_devices(benchmark::State& state) {
  const auto graph = tower_grid(10);
  const auto devices = device_cloud(graph, static_cast<int>(state.range(0)));
  ScheduleConfig config;
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate(graph, devices, config, 60.0, 0.1, 0));
}
BENCHMARK(BM_simulate_with_devices)->Arg(1)->Arg(10);

void BM_instantaneous_power(benchmark::State& state) {
  ScheduleConfig config;
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(instantaneous_power(config, t));
    t += 0.1;
  }
}
BENCHMARK(BM_instantaneous_power);

}  // namespace
