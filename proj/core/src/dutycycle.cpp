#include "rfmesh/dutycycle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "rfmesh/numfmt.hpp"

namespace rfmesh::dutycycle {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::domain_error(message);
}

// Time since the start of the current period, in [0, T).
double wrapped_phase(double t_s, double offset_s, double period_s) {
  double x = std::fmod(t_s - offset_s, period_s);
  if (x < 0.0) x += period_s;
  if (x >= period_s) x = 0.0;  // fmod rounding at the period boundary
  return x;
}

bool in_beacon(const ScheduleConfig& config, double t_s, double offset_s) {
  return wrapped_phase(t_s, offset_s, config.period_s) <
         config.beacon_duration_s;
}

}  // namespace

void ScheduleConfig::validate() const {
  require(std::isfinite(period_s) && period_s > 0.0,
          "schedule: period must be > 0");
  require(std::isfinite(beacon_duration_s) && beacon_duration_s > 0.0 &&
              beacon_duration_s <= period_s,
          "schedule: beacon duration must lie in (0, period]");
  require(std::isfinite(p_max_w) && p_max_w > 0.0,
          "schedule: beacon power must be > 0");
  require(std::isfinite(p_idle_fraction) && p_idle_fraction >= 0.0 &&
              p_idle_fraction <= 1.0,
          "schedule: idle fraction must lie in [0, 1]");
  require(std::isfinite(phase_offset_s), "schedule: phase offset must be finite");
}

double instantaneous_power(const ScheduleConfig& config, double t_s) {
  config.validate();
  require(std::isfinite(t_s) && t_s >= 0.0, "instantaneous_power: t must be >= 0");
  return in_beacon(config, t_s, config.phase_offset_s)
             ? config.p_max_w
             : config.p_idle_fraction * config.p_max_w;
}

double cycle_energy(const ScheduleConfig& config) {
  config.validate();
  return config.p_max_w * config.beacon_duration_s +
         config.p_idle_fraction * config.p_max_w *
             (config.period_s - config.beacon_duration_s);
}

double saving_fraction(const ScheduleConfig& config) {
  return 1.0 - cycle_energy(config) / (config.p_max_w * config.period_s);
}

SimulationResult simulate(const mesh::MeshGraph& mesh,
                          const std::vector<DeviceSpec>& devices,
                          const ScheduleConfig& config, double duration_s,
                          double step_s, std::uint64_t seed,
                          const SimulationOptions& options) {
  config.validate();
  require(std::isfinite(step_s) && step_s > 0.0, "simulate: step must be > 0");
  require(std::isfinite(duration_s) && duration_s >= step_s,
          "simulate: duration must be >= step");
  const auto n_steps = static_cast<long long>(std::llround(duration_s / step_s));
  require(n_steps >= 1 && std::abs(static_cast<double>(n_steps) * step_s -
                                   duration_s) <=
                              1e-9 * std::max(1.0, duration_s),
          "simulate: duration must be a whole number of steps");
  require(!mesh.nodes.empty(), "simulate: mesh has no towers");
  require(options.frequency_hz > 0.0, "simulate: frequency must be > 0");
  {
    std::unordered_set<int> ids;
    for (const auto& d : devices)
      require(d.id >= 0 && ids.insert(d.id).second,
              "simulate: device ids must be unique and >= 0");
  }

  const std::size_t n_towers = mesh.nodes.size();

  // Towers iterate in id order regardless of the node list's order; the
  // beacon phase offset follows the list position.
  std::vector<std::size_t> tower_order(n_towers);
  for (std::size_t i = 0; i < n_towers; ++i) tower_order[i] = i;
  std::sort(tower_order.begin(), tower_order.end(),
            [&](std::size_t a, std::size_t b) {
              return mesh.nodes[a].id < mesh.nodes[b].id;
            });
  std::vector<double> offsets(n_towers);
  for (std::size_t i = 0; i < n_towers; ++i)
    offsets[i] = static_cast<double>(i) * config.phase_offset_s;

  std::vector<std::size_t> device_order(devices.size());
  for (std::size_t i = 0; i < devices.size(); ++i) device_order[i] = i;
  std::sort(device_order.begin(), device_order.end(),
            [&](std::size_t a, std::size_t b) {
              return devices[a].id < devices[b].id;
            });

  // Beacon-power reachability is static per (tower, device) pair.
  linkbudget::AntennaSpec device_antenna;  // unit-gain isotropic, matched
  std::vector<std::vector<char>> reachable(n_towers,
                                           std::vector<char>(devices.size()));
  for (std::size_t t = 0; t < n_towers; ++t) {
    const auto& tower = mesh.nodes[t];
    const auto port = options.tower_port_efficiency.find(tower.id);
    const double port_scale =
        port == options.tower_port_efficiency.end() ? 1.0 : port->second;
    for (std::size_t d = 0; d < devices.size(); ++d) {
      linkbudget::LinkGeometry geometry;
      geometry.frequency_hz = options.frequency_hz;
      geometry.distance_m =
          mesh::haversine_km(tower.position(), devices[d].position()) * 1000.0;
      geometry.tx_direction = linkbudget::peak_direction(tower.antenna.pattern);
      const double p_rx =
          linkbudget::received_power(config.p_max_w, geometry, tower.antenna,
                                     device_antenna)
              .received_power_w *
          port_scale;
      reachable[t][d] = p_rx >= devices[d].rx_sensitivity_w;
    }
  }

  SimulationResult result;
  result.seed = seed;
  std::vector<double> energy(n_towers, 0.0);
  std::vector<char> was_in_beacon(n_towers, 0);
  std::vector<std::vector<char>> discovered(n_towers,
                                            std::vector<char>(devices.size()));

  for (long long step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * step_s;

    for (std::size_t idx : tower_order) {
      const bool beacon = in_beacon(config, t, offsets[idx]);
      const double power =
          beacon ? config.p_max_w : config.p_idle_fraction * config.p_max_w;
      energy[idx] += power * step_s;
      if (beacon && (step == 0 || !was_in_beacon[idx]))
        result.events.push_back(
            {t, EventType::kBeaconStart, mesh.nodes[idx].id, -1, power});
      else if (!beacon && step != 0 && was_in_beacon[idx])
        result.events.push_back(
            {t, EventType::kBeaconEnd, mesh.nodes[idx].id, -1, power});
      was_in_beacon[idx] = beacon;
    }

    for (std::size_t d : device_order) {
      if (t < devices[d].arrival_time_s) continue;
      for (std::size_t idx : tower_order) {
        if (discovered[idx][d] || !reachable[idx][d]) continue;
        if (!in_beacon(config, t, offsets[idx])) continue;
        discovered[idx][d] = 1;
        result.report.discoveries.push_back(
            {devices[d].id, mesh.nodes[idx].id, t});
        result.events.push_back({t, EventType::kDiscovery, mesh.nodes[idx].id,
                                 devices[d].id, config.p_max_w});
      }
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i < n_towers; ++i) {
    result.report.per_tower_energy_j[mesh.nodes[i].id] = energy[i];
    total += energy[i];
  }
  result.report.always_on_energy_j =
      config.p_max_w * duration_s * static_cast<double>(n_towers);
  result.report.saving_fraction = 1.0 - total / result.report.always_on_energy_j;
  std::stable_sort(result.report.discoveries.begin(),
                   result.report.discoveries.end(),
                   [](const Discovery& a, const Discovery& b) {
                     if (a.time_s != b.time_s) return a.time_s < b.time_s;
                     if (a.device_id != b.device_id)
                       return a.device_id < b.device_id;
                     return a.tower_id < b.tower_id;
                   });
  return result;
}

LatencyStats latency_stats(const EnergyReport& report,
                           const std::vector<DeviceSpec>& devices) {
  std::map<int, double> first_seen;
  for (const auto& d : report.discoveries)
    first_seen.try_emplace(d.device_id, d.time_s);  // discoveries are sorted

  LatencyStats stats;
  double sum = 0.0;
  for (const auto& device : devices) {
    const auto it = first_seen.find(device.id);
    if (it == first_seen.end()) {
      stats.undiscovered_ids.push_back(device.id);
      continue;
    }
    const double latency = it->second - device.arrival_time_s;
    sum += latency;
    stats.max_s = std::max(stats.max_s, latency);
    ++stats.discovered_count;
  }
  std::sort(stats.undiscovered_ids.begin(), stats.undiscovered_ids.end());
  if (stats.discovered_count > 0)
    stats.mean_s = sum / static_cast<double>(stats.discovered_count);
  return stats;
}

std::string events_to_csv(const std::vector<Event>& events) {
  std::string csv = "time_s,event_type,tower_id,device_id,power_w\n";
  for (const auto& e : events) {
    csv += shortest_double(e.time_s);
    switch (e.type) {
      case EventType::kBeaconStart: csv += ",beacon_start,"; break;
      case EventType::kBeaconEnd: csv += ",beacon_end,"; break;
      case EventType::kDiscovery: csv += ",discovery,"; break;
    }
    csv += std::to_string(e.tower_id);
    csv += ',';
    if (e.device_id >= 0) csv += std::to_string(e.device_id);
    csv += ',';
    csv += shortest_double(e.power_w);
    csv += '\n';
  }
  return csv;
}

}  // namespace rfmesh::dutycycle
