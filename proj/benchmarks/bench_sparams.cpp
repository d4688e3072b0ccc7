#include <benchmark/benchmark.h>

#include <cmath>
#include <string>

#include "rfmesh/sparams.hpp"

using namespace rfmesh::sparams;

namespace {

FrequencySweep synthetic_sweep(int points) {
  FrequencySweep sweep;
  for (int i = 0; i < points; ++i) {
    const double f = 3e9 + 1e6 * i;
    const double mag =
        0.05 + 0.9 * std::abs(std::sin(static_cast<double>(i) * 0.01));
    sweep.points.push_back({f, {mag, 0.0}});
  }
  return sweep;
}

void BM_parse_touchstone(benchmark::State& state) {
  const auto text = serialize_touchstone(
      synthetic_sweep(static_cast<int>(state.range(0))), DataFormat::kMagAngle);
  for (auto _ : state) benchmark::DoNotOptimize(parse_touchstone(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_parse_touchstone)->Arg(100)->Arg(1000)->Arg(10000);

void BM_bandwidth(benchmark::State& state) {
  const auto sweep = synthetic_sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bandwidth(sweep, 10.0));
}
BENCHMARK(BM_bandwidth)->Arg(1000)->Arg(10000);

void BM_mismatch_efficiency(benchmark::State& state) {
  const auto sweep = synthetic_sweep(10000);
  double f = sweep.points.front().frequency_hz;
  const double f_last = sweep.points.back().frequency_hz;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mismatch_efficiency(sweep, f));
    f = f < f_last - 1e5 ? f + 7.7e4 : sweep.points.front().frequency_hz;
  }
}
BENCHMARK(BM_mismatch_efficiency);

}  // namespace
