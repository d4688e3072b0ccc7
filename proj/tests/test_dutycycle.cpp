#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "rfmesh/dutycycle.hpp"
#include "rfmesh/mesh.hpp"

using namespace rfmesh::dutycycle;
using rfmesh::mesh::MeshGraph;
using rfmesh::mesh::TowerNode;

namespace {

// degrees of latitude per km at the equator scale
double deg_for_km(double km) {
  return km / (rfmesh::mesh::kEarthRadiusKm * std::numbers::pi / 180.0);
}

MeshGraph single_tower() {
  MeshGraph graph;
  graph.nodes.push_back({0, "tower", 0.0, 0.0, {}, 1.0, 1e-12});
  return graph;
}

MeshGraph three_towers() {
  MeshGraph graph;
  graph.nodes.push_back({0, "a", 0.0, 0.0, {}, 1.0, 1e-12});
  graph.nodes.push_back({1, "b", 0.0, deg_for_km(10.0), {}, 1.0, 1e-12});
  graph.nodes.push_back({2, "c", 0.0, deg_for_km(20.0), {}, 1.0, 1e-12});
  return graph;
}

// a device km_offset north of the given tower
DeviceSpec device_near(const TowerNode& tower, int id, double km_offset,
                       double arrival_s) {
  return {id, tower.lat_deg + deg_for_km(km_offset), tower.lon_deg, arrival_s,
          1e-9};
}

bool reports_equal(const EnergyReport& a, const EnergyReport& b) {
  if (a.per_tower_energy_j != b.per_tower_energy_j) return false;
  if (a.always_on_energy_j != b.always_on_energy_j) return false;
  if (a.saving_fraction != b.saving_fraction) return false;
  if (a.discoveries.size() != b.discoveries.size()) return false;
  for (std::size_t i = 0; i < a.discoveries.size(); ++i) {
    if (a.discoveries[i].device_id != b.discoveries[i].device_id ||
        a.discoveries[i].tower_id != b.discoveries[i].tower_id ||
        a.discoveries[i].time_s != b.discoveries[i].time_s)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("instantaneous_power") {
  ScheduleConfig config;  // T=6, d=1.5, p_max=1, idle fraction 0.1
  CHECK(instantaneous_power(config, 0.0) == 1.0);
  CHECK(instantaneous_power(config, 1.4999) == 1.0);
  CHECK(instantaneous_power(config, 1.5) == doctest::Approx(0.1));
  CHECK(instantaneous_power(config, 5.9) == doctest::Approx(0.1));
  CHECK(instantaneous_power(config, 6.0) == 1.0);
  CHECK(instantaneous_power(config, 7.0) == 1.0);  // second cycle, 1 s in
  CHECK_THROWS_AS(instantaneous_power(config, -0.1), std::domain_error);

  SUBCASE("phase offset shifts the window") {
    config.phase_offset_s = 2.0;
    CHECK(instantaneous_power(config, 0.0) == doctest::Approx(0.1));
    CHECK(instantaneous_power(config, 2.0) == 1.0);
    CHECK(instantaneous_power(config, 3.5) == doctest::Approx(0.1));
  }
}

TEST_CASE("cycle_energy") {
  ScheduleConfig config;
  CHECK(cycle_energy(config) == doctest::Approx(1.95).epsilon(1e-12));

  config.p_idle_fraction = 0.0;
  config.beacon_duration_s = 5.999;
  CHECK(cycle_energy(config) == doctest::Approx(5.999).epsilon(1e-12));

  config.p_idle_fraction = 0.1;
  config.beacon_duration_s = 6.0;  // degenerate always-on
  CHECK(cycle_energy(config) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("saving_fraction") {
  ScheduleConfig config;
  CHECK(std::abs(saving_fraction(config) - 0.675) <= 1e-12);

  config.beacon_duration_s = config.period_s;
  CHECK(saving_fraction(config) == doctest::Approx(0.0));

  config.beacon_duration_s = 1.5;
  config.p_idle_fraction = 1.0;
  CHECK(saving_fraction(config) == doctest::Approx(0.0));
}

TEST_CASE("saving_fraction bounds and monotonicity") {
  ScheduleConfig config;
  double previous = 1.0;
  for (double d = 0.5; d <= 6.0; d += 0.5) {
    config.beacon_duration_s = d;
    const double s = saving_fraction(config);
    CHECK(s >= 0.0);
    CHECK(s < 1.0);
    CHECK(s < previous);
    previous = s;
  }
  config.beacon_duration_s = 1.5;
  previous = 1.0;
  for (double f = 0.0; f <= 1.0; f += 0.1) {
    config.p_idle_fraction = f;
    const double s = saving_fraction(config);
    CHECK(s >= 0.0);
    CHECK(s < 1.0);
    CHECK(s < previous);
    previous = s;
  }
}

TEST_CASE("schedule validation") {
  ScheduleConfig config;
  config.beacon_duration_s = 6.5;
  CHECK_THROWS_AS(config.validate(), std::domain_error);
  config.beacon_duration_s = 0.0;
  CHECK_THROWS_AS(config.validate(), std::domain_error);
  config.beacon_duration_s = 1.5;
  config.p_max_w = 0.0;
  CHECK_THROWS_AS(config.validate(), std::domain_error);
  config.p_max_w = 1.0;
  config.p_idle_fraction = 1.1;
  CHECK_THROWS_AS(config.validate(), std::domain_error);
}

TEST_CASE("simulate with no devices matches the closed form") {
  ScheduleConfig config;
  const auto result = simulate(three_towers(), {}, config, 60.0, 0.1, 0);
  CHECK(result.report.discoveries.empty());
  const double expected = cycle_energy(config) * 10.0;
  for (const auto& [id, energy] : result.report.per_tower_energy_j)
    CHECK(energy == doctest::Approx(expected).epsilon(1e-9));
  CHECK(result.report.always_on_energy_j == doctest::Approx(180.0));
  CHECK(std::abs(result.report.saving_fraction - 0.675) <= 1e-9);
  // report invariant
  double total = 0.0;
  for (const auto& [id, energy] : result.report.per_tower_energy_j)
    total += energy;
  CHECK(std::abs(result.report.saving_fraction -
                 (1.0 - total / result.report.always_on_energy_j)) <= 1e-12);

  SUBCASE("staggered offsets do not change whole-period energy") {
    config.phase_offset_s = 2.0;
    const auto staggered = simulate(three_towers(), {}, config, 60.0, 0.1, 0);
    for (const auto& [id, energy] : staggered.report.per_tower_energy_j)
      CHECK(energy == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("simulate discovers devices during beacons only") {
  ScheduleConfig config;
  auto graph = single_tower();
  const auto near = device_near(graph.nodes[0], 0, 0.01, 0.0);  // 10 m away

  SUBCASE("device present at t=0 is discovered at t=0") {
    const auto result = simulate(graph, {near}, config, 12.0, 0.1, 0);
    REQUIRE(result.report.discoveries.size() == 1);
    CHECK(result.report.discoveries[0].device_id == 0);
    CHECK(result.report.discoveries[0].tower_id == 0);
    CHECK(result.report.discoveries[0].time_s == 0.0);
  }

  SUBCASE("arrival after the window waits for the next beacon") {
    auto late = near;
    late.arrival_time_s = 2.0;
    const auto result = simulate(graph, {late}, config, 12.0, 0.1, 0);
    REQUIRE(result.report.discoveries.size() == 1);
    CHECK(result.report.discoveries[0].time_s == doctest::Approx(6.0));

    const auto stats = latency_stats(result.report, {late});
    CHECK(stats.discovered_count == 1);
    CHECK(stats.mean_s == doctest::Approx(4.0));
    CHECK(stats.max_s == doctest::Approx(4.0));
    CHECK(stats.undiscovered_ids.empty());
  }

  SUBCASE("a device out of range is never discovered") {
    const auto far = device_near(graph.nodes[0], 1, 500.0, 0.0);
    const auto result = simulate(graph, {far}, config, 12.0, 0.1, 0);
    CHECK(result.report.discoveries.empty());
    const auto stats = latency_stats(result.report, {far});
    CHECK(stats.discovered_count == 0);
    CHECK(stats.undiscovered_ids == std::vector<int>{1});
  }

  SUBCASE("discovery times always fall inside a beacon window") {
    config.phase_offset_s = 2.0;
    auto towers = three_towers();
    std::vector<DeviceSpec> devices;
    for (int i = 0; i < 6; ++i)
      devices.push_back(device_near(towers.nodes[i % 3], i, 0.05,
                                    0.7 * static_cast<double>(i)));
    const auto result = simulate(towers, devices, config, 30.0, 0.1, 0);
    CHECK_FALSE(result.report.discoveries.empty());
    for (const auto& d : result.report.discoveries) {
      const double offset = 2.0 * d.tower_id;  // ids equal indices here
      double phase = std::fmod(d.time_s - offset, config.period_s);
      if (phase < 0.0) phase += config.period_s;
      CHECK(phase < config.beacon_duration_s);
      // never before arrival
      CHECK(d.time_s >= devices[d.device_id].arrival_time_s);
    }
  }
}

TEST_CASE("discovery latency stays within one period plus a step") {
  ScheduleConfig config;
  auto towers = three_towers();
  std::vector<DeviceSpec> devices;
  for (int i = 0; i < 24; ++i)
    devices.push_back(
        device_near(towers.nodes[i % 3], i, 0.02 + 0.01 * (i / 3),
                    0.25 * static_cast<double>(i)));
  const auto result = simulate(towers, devices, config, 30.0, 0.1, 0);
  const auto stats = latency_stats(result.report, devices);
  CHECK(stats.discovered_count == devices.size());
  CHECK(stats.max_s <= config.period_s + 0.1);
  CHECK(stats.max_s < config.period_s);  // synchronized towers
}

TEST_CASE("simulate is deterministic") {
  ScheduleConfig config;
  config.phase_offset_s = 1.0;
  auto towers = three_towers();
  std::vector<DeviceSpec> devices;
  for (int i = 0; i < 5; ++i)
    devices.push_back(device_near(towers.nodes[i % 3], i, 0.1, 1.3 * i));
  const auto a = simulate(towers, devices, config, 42.0, 0.1, 99);
  const auto b = simulate(towers, devices, config, 42.0, 0.1, 99);
  CHECK(reports_equal(a.report, b.report));
  CHECK(events_to_csv(a.events) == events_to_csv(b.events));
  CHECK(a.seed == 99);
}

TEST_CASE("event log structure") {
  ScheduleConfig config;
  const auto result = simulate(single_tower(), {}, config, 12.0, 0.1, 0);
  // two periods: beacon_start at 0 and 6, beacon_end at 1.5 and 7.5
  REQUIRE(result.events.size() == 4);
  CHECK(result.events[0].type == EventType::kBeaconStart);
  CHECK(result.events[0].time_s == 0.0);
  CHECK(result.events[1].type == EventType::kBeaconEnd);
  CHECK(result.events[1].time_s == doctest::Approx(1.5));
  CHECK(result.events[2].time_s == doctest::Approx(6.0));
  CHECK(result.events[3].time_s == doctest::Approx(7.5));

  const auto csv = events_to_csv(result.events);
  CHECK(csv.starts_with("time_s,event_type,tower_id,device_id,power_w\n"));
  CHECK(csv.find("beacon_start") != std::string::npos);
  CHECK(csv.find(",0,,1\n") != std::string::npos);  // empty device column
}

TEST_CASE("simulate input validation") {
  ScheduleConfig config;
  const auto graph = single_tower();
  CHECK_THROWS_AS(simulate(graph, {}, config, 10.0, 0.0, 0), std::domain_error);
  CHECK_THROWS_AS(simulate(graph, {}, config, 0.05, 0.1, 0), std::domain_error);
  CHECK_THROWS_AS(simulate(graph, {}, config, 0.25, 0.1, 0), std::domain_error);
  CHECK_THROWS_AS(simulate(MeshGraph{}, {}, config, 10.0, 0.1, 0),
                  std::domain_error);

  // duplicate device ids
  const auto d0 = device_near(graph.nodes[0], 0, 0.01, 0.0);
  CHECK_THROWS_AS(simulate(graph, {d0, d0}, config, 10.0, 0.1, 0),
                  std::domain_error);

  // device exactly on the tower has no defined link geometry
  DeviceSpec on_top{1, 0.0, 0.0, 0.0, 1e-9};
  CHECK_THROWS_AS(simulate(graph, {on_top}, config, 10.0, 0.1, 0),
                  std::domain_error);
}
