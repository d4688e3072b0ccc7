#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfmesh/dutycycle.hpp"
#include "rfmesh/mesh.hpp"
#include "rfmesh/sparams.hpp"

// Scenario files tie the modules together: tower nodes with antenna
// parameters, mesh construction settings, devices, a beacon schedule and
// optional per-tower Touchstone sweeps whose mismatch efficiency scales that
// tower's links. Everything cross-references by tower id and is validated on
// load.

namespace rfmesh::scenario {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MeshParams {
  int k = 2;
  double max_range_km = std::numeric_limits<double>::infinity();
  double frequency_hz = 0.0;  // 0 = inherit the scenario frequency
};

struct SimParams {
  dutycycle::ScheduleConfig schedule;
  double step_s = 0.1;
  double duration_s = 60.0;
};

struct Scenario {
  double frequency_hz = linkbudget::kDefaultFrequencyHz;
  std::vector<mesh::TowerNode> nodes;
  MeshParams mesh_params;
  std::vector<dutycycle::DeviceSpec> devices;
  SimParams sim;
  std::map<int, sparams::FrequencySweep> sweeps;  // tower id -> parsed sweep

  double link_frequency_hz() const {
    return mesh_params.frequency_hz > 0.0 ? mesh_params.frequency_hz
                                          : frequency_hz;
  }

  /// Mismatch efficiency per swept tower at frequency f. Throws
  /// ScenarioError when a sweep does not cover f.
  std::map<int, double> port_efficiency(double frequency_hz) const;
};

/// Parses scenario JSON. Touchstone paths resolve relative to base_dir.
/// Throws ScenarioError on malformed JSON, missing fields, duplicate or
/// unresolved ids, or unreadable/invalid sweep files.
Scenario parse_scenario(const std::string& json_text,
                        const std::string& base_dir = ".");

/// Reads and parses a scenario file; sweep paths resolve relative to it.
Scenario load_scenario(const std::string& path);

/// knn_connect with the scenario's mesh parameters, link-annotated at the
/// scenario frequency with any per-tower mismatch efficiencies applied.
mesh::MeshGraph build_graph(const Scenario& scenario);

}  // namespace rfmesh::scenario
