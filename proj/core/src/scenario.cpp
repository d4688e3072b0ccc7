#include "rfmesh/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rfmesh::scenario {

namespace {

using nlohmann::json;

double number_or(const json& obj, const char* key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ScenarioError(std::string(key) + " must be a number");
  return it->get<double>();
}

double required_number(const json& obj, const char* key,
                       const std::string& context) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number())
    throw ScenarioError(context + ": missing numeric field '" + key + "'");
  return it->get<double>();
}

int required_id(const json& obj, const std::string& context) {
  const auto it = obj.find("id");
  if (it == obj.end() || !it->is_number_integer() || it->get<int>() < 0)
    throw ScenarioError(context + ": 'id' must be a non-negative integer");
  return it->get<int>();
}

linkbudget::JonesVector parse_polarization(const json& value) {
  if (value.is_string()) {
    const std::string name = value.get<std::string>();
    if (name == "h" || name == "horizontal") return linkbudget::polarization_horizontal();
    if (name == "v" || name == "vertical") return linkbudget::polarization_vertical();
    if (name == "rhcp") return linkbudget::polarization_rhcp();
    if (name == "lhcp") return linkbudget::polarization_lhcp();
    if (name == "slant45") return linkbudget::polarization_slant45();
    throw ScenarioError("unknown polarization '" + name + "'");
  }
  if (value.is_array() && value.size() == 2 && value[0].is_array() &&
      value[1].is_array() && value[0].size() == 2 && value[1].size() == 2) {
    return {{{value[0][0].get<double>(), value[0][1].get<double>()},
             {value[1][0].get<double>(), value[1][1].get<double>()}}};
  }
  throw ScenarioError(
      "polarization must be a name or [[re, im], [re, im]] pair");
}

linkbudget::AntennaSpec parse_antenna(const json& obj,
                                      const std::string& context) {
  linkbudget::AntennaSpec antenna;
  const std::string kind = obj.value("pattern", std::string("isotropic"));
  if (kind == "isotropic") {
    antenna.pattern = linkbudget::Pattern::isotropic();
  } else if (kind == "half-wave-dipole") {
    antenna.pattern = linkbudget::Pattern::half_wave_dipole();
  } else if (kind == "gaussian-beam") {
    antenna.pattern = linkbudget::Pattern::gaussian_beam(
        required_number(obj, "boresight_directivity", context),
        number_or(obj, "hpbw_deg", 65.0));
  } else {
    throw ScenarioError(context + ": unknown pattern '" + kind + "'");
  }
  antenna.radiation_efficiency = number_or(obj, "radiation_efficiency", 1.0);
  antenna.feedline_efficiency = number_or(obj, "feedline_efficiency", 1.0);
  antenna.max_dimension_m = number_or(obj, "max_dimension_m", 0.0);
  if (const auto it = obj.find("polarization"); it != obj.end())
    antenna.polarization = parse_polarization(*it);
  try {
    antenna.validate();
  } catch (const std::domain_error& e) {
    throw ScenarioError(context + ": " + e.what());
  }
  return antenna;
}

std::string resolve_path(const std::string& base_dir, const std::string& rel) {
  const std::filesystem::path p(rel);
  if (p.is_absolute()) return rel;
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

std::map<int, double> Scenario::port_efficiency(double frequency_hz) const {
  std::map<int, double> factors;
  for (const auto& [id, sweep] : sweeps) {
    try {
      factors[id] = sparams::mismatch_efficiency(sweep, frequency_hz);
    } catch (const std::out_of_range&) {
      throw ScenarioError("sweep for tower " + std::to_string(id) +
                          " does not cover the link frequency");
    }
  }
  return factors;
}

Scenario parse_scenario(const std::string& json_text,
                        const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario JSON: ") + e.what());
  }
  if (!root.is_object()) throw ScenarioError("scenario must be a JSON object");

  Scenario scenario;
  try {
    scenario.frequency_hz =
        number_or(root, "frequency_hz", linkbudget::kDefaultFrequencyHz);
    if (scenario.frequency_hz <= 0.0)
      throw ScenarioError("frequency_hz must be > 0");

    const auto nodes_it = root.find("nodes");
    if (nodes_it == root.end() || !nodes_it->is_array() || nodes_it->empty())
      throw ScenarioError("scenario needs a non-empty 'nodes' array");
    for (const auto& node_json : *nodes_it) {
      mesh::TowerNode node;
      node.id = required_id(node_json, "node");
      const std::string context = "node " + std::to_string(node.id);
      node.name = node_json.value("name", "tower-" + std::to_string(node.id));
      node.lat_deg = required_number(node_json, "lat", context);
      node.lon_deg = required_number(node_json, "lon", context);
      if (const auto it = node_json.find("antenna"); it != node_json.end())
        node.antenna = parse_antenna(*it, context);
      node.tx_power_w = number_or(node_json, "tx_power_w", 1.0);
      node.rx_sensitivity_w = number_or(node_json, "rx_sensitivity_w", 1e-12);
      if (node.tx_power_w <= 0.0 || node.rx_sensitivity_w <= 0.0)
        throw ScenarioError(context + ": powers must be > 0");
      for (const auto& existing : scenario.nodes)
        if (existing.id == node.id)
          throw ScenarioError("duplicate node id " + std::to_string(node.id));
      scenario.nodes.push_back(std::move(node));
    }

    if (const auto it = root.find("mesh"); it != root.end()) {
      const double k = number_or(*it, "k", 2.0);
      if (k < 1.0 || k != std::floor(k))
        throw ScenarioError("mesh.k must be a positive integer");
      scenario.mesh_params.k = static_cast<int>(k);
      scenario.mesh_params.max_range_km =
          number_or(*it, "max_range_km", scenario.mesh_params.max_range_km);
      if (scenario.mesh_params.max_range_km <= 0.0)
        throw ScenarioError("mesh.max_range_km must be > 0");
      scenario.mesh_params.frequency_hz = number_or(*it, "frequency_hz", 0.0);
    }

    if (const auto it = root.find("devices"); it != root.end()) {
      if (!it->is_array()) throw ScenarioError("'devices' must be an array");
      for (const auto& device_json : *it) {
        dutycycle::DeviceSpec device;
        device.id = required_id(device_json, "device");
        const std::string context = "device " + std::to_string(device.id);
        device.lat_deg = required_number(device_json, "lat", context);
        device.lon_deg = required_number(device_json, "lon", context);
        device.arrival_time_s = number_or(device_json, "arrival_time_s", 0.0);
        device.rx_sensitivity_w =
            number_or(device_json, "rx_sensitivity_w", 1e-9);
        if (device.arrival_time_s < 0.0)
          throw ScenarioError(context + ": arrival_time_s must be >= 0");
        if (device.rx_sensitivity_w <= 0.0)
          throw ScenarioError(context + ": rx_sensitivity_w must be > 0");
        for (const auto& existing : scenario.devices)
          if (existing.id == device.id)
            throw ScenarioError("duplicate device id " +
                                std::to_string(device.id));
        scenario.devices.push_back(device);
      }
    }

    if (const auto it = root.find("schedule"); it != root.end()) {
      auto& schedule = scenario.sim.schedule;
      schedule.period_s = number_or(*it, "period_s", schedule.period_s);
      schedule.beacon_duration_s =
          number_or(*it, "beacon_duration_s", schedule.beacon_duration_s);
      schedule.p_max_w = number_or(*it, "p_max_w", schedule.p_max_w);
      schedule.p_idle_fraction =
          number_or(*it, "p_idle_fraction", schedule.p_idle_fraction);
      schedule.phase_offset_s =
          number_or(*it, "phase_offset_s", schedule.phase_offset_s);
      scenario.sim.step_s = number_or(*it, "step_s", scenario.sim.step_s);
      scenario.sim.duration_s =
          number_or(*it, "duration_s", scenario.sim.duration_s);
      try {
        schedule.validate();
      } catch (const std::domain_error& e) {
        throw ScenarioError(e.what());
      }
    }

    if (const auto it = root.find("sweeps"); it != root.end()) {
      if (!it->is_object())
        throw ScenarioError("'sweeps' must map tower ids to file paths");
      for (const auto& [key, value] : it->items()) {
        int id = 0;
        try {
          id = std::stoi(key);
        } catch (const std::exception&) {
          throw ScenarioError("sweeps: key '" + key + "' is not a tower id");
        }
        const bool known = std::any_of(
            scenario.nodes.begin(), scenario.nodes.end(),
            [&](const mesh::TowerNode& n) { return n.id == id; });
        if (!known)
          throw ScenarioError("sweeps: no tower with id " + key);
        if (!value.is_string())
          throw ScenarioError("sweeps: path for tower " + key +
                              " must be a string");
        const std::string path =
            resolve_path(base_dir, value.get<std::string>());
        try {
          scenario.sweeps[id] = sparams::load_touchstone(path);
        } catch (const std::exception& e) {
          throw ScenarioError("sweep '" + path + "': " + e.what());
        }
      }
    }
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("scenario JSON: ") + e.what());
  }
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(),
                        std::filesystem::path(path).parent_path().string());
}

mesh::MeshGraph build_graph(const Scenario& scenario) {
  auto graph = mesh::knn_connect(scenario.nodes, scenario.mesh_params.k,
                                 scenario.mesh_params.max_range_km);
  const double frequency = scenario.link_frequency_hz();
  mesh::annotate_links(graph, frequency, scenario.port_efficiency(frequency));
  return graph;
}

}  // namespace rfmesh::scenario
