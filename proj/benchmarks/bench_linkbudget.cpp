#include <benchmark/benchmark.h>

#include "rfmesh/linkbudget.hpp"

using namespace rfmesh::linkbudget;

namespace {

AntennaSpec beam_antenna() {
  AntennaSpec antenna;
  antenna.pattern = Pattern::gaussian_beam(10.0, 65.0);
  antenna.max_dimension_m = 0.5;
  return antenna;
}

void BM_friis_ratio(benchmark::State& state) {
  const auto antenna = beam_antenna();
  LinkGeometry geometry;
  geometry.frequency_hz = 3.5e9;
  geometry.distance_m = 30e3;
  for (auto _ : state)
    benchmark::DoNotOptimize(friis_ratio(geometry, antenna, antenna, false));
}
BENCHMARK(BM_friis_ratio);

void BM_received_power(benchmark::State& state) {
  const auto antenna = beam_antenna();
  LinkGeometry geometry;
  geometry.frequency_hz = 3.5e9;
  geometry.distance_m = 30e3;
  for (auto _ : state)
    benchmark::DoNotOptimize(received_power(1.0, geometry, antenna, antenna));
}
BENCHMARK(BM_received_power);

void BM_path_loss_db(benchmark::State& state) {
  double distance = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(path_loss_db(3.5e9, distance));
    distance = distance < 1e6 ? distance * 1.1 : 1.0;
  }
}
BENCHMARK(BM_path_loss_db);

void BM_dipole_gain(benchmark::State& state) {
  AntennaSpec dipole;
  dipole.pattern = Pattern::half_wave_dipole();
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gain(dipole, {theta, 0.0}));
    theta = theta < 3.0 ? theta + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_dipole_gain);

}  // namespace
