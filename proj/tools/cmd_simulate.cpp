#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include <json.hpp>

#include "commands.hpp"
#include "output.hpp"
#include "rfmesh/scenario.hpp"

namespace rfmesh::cli {

namespace {

struct SimulateOptions {
  std::string scenario_path;
  std::uint64_t seed = 0;
  double duration_override = 0.0;  // 0 = scenario value
  double step_override = 0.0;      // 0 = scenario value
};

nlohmann::json report_json(const scenario::Scenario& scenario,
                           const dutycycle::SimulationResult& result,
                           const dutycycle::LatencyStats& stats,
                           double duration_s, double step_s) {
  const auto& schedule = scenario.sim.schedule;
  nlohmann::json per_tower = nlohmann::json::object();
  for (const auto& [id, energy] : result.report.per_tower_energy_j)
    per_tower[std::to_string(id)] = energy;
  nlohmann::json discoveries = nlohmann::json::array();
  for (const auto& d : result.report.discoveries)
    discoveries.push_back({{"device_id", d.device_id},
                           {"tower_id", d.tower_id},
                           {"time_s", d.time_s}});
  return nlohmann::json{
      {"seed", result.seed},
      {"frequency_hz", scenario.link_frequency_hz()},
      {"duration_s", duration_s},
      {"step_s", step_s},
      {"schedule",
       {{"period_s", schedule.period_s},
        {"beacon_duration_s", schedule.beacon_duration_s},
        {"p_max_w", schedule.p_max_w},
        {"p_idle_fraction", schedule.p_idle_fraction},
        {"phase_offset_s", schedule.phase_offset_s}}},
      {"per_tower_energy_j", per_tower},
      {"always_on_energy_j", result.report.always_on_energy_j},
      {"saving_fraction", result.report.saving_fraction},
      {"saving_fraction_closed_form", dutycycle::saving_fraction(schedule)},
      {"discoveries", discoveries},
      {"latency",
       {{"mean_s", stats.mean_s},
        {"max_s", stats.max_s},
        {"discovered_count", stats.discovered_count},
        {"undiscovered_ids", stats.undiscovered_ids}}},
  };
}

void run(const SimulateOptions& options, const GlobalOptions& global) {
  const auto scenario = scenario::load_scenario(options.scenario_path);
  const double duration_s = options.duration_override > 0.0
                                ? options.duration_override
                                : scenario.sim.duration_s;
  const double step_s =
      options.step_override > 0.0 ? options.step_override : scenario.sim.step_s;

  mesh::MeshGraph graph;
  graph.nodes = scenario.nodes;

  dutycycle::SimulationOptions sim_options;
  sim_options.frequency_hz = scenario.link_frequency_hz();
  sim_options.tower_port_efficiency =
      scenario.port_efficiency(sim_options.frequency_hz);

  const auto result =
      dutycycle::simulate(graph, scenario.devices, scenario.sim.schedule,
                          duration_s, step_s, options.seed, sim_options);
  const auto stats = dutycycle::latency_stats(result.report, scenario.devices);
  const auto report =
      report_json(scenario, result, stats, duration_s, step_s);

  std::filesystem::create_directories(global.out_dir);
  const auto report_path = std::filesystem::path(global.out_dir) / "report.json";
  const auto events_path = std::filesystem::path(global.out_dir) / "events.csv";
  {
    std::ofstream report_file(report_path);
    report_file << report.dump(2) << "\n";
    std::ofstream events_file(events_path);
    events_file << dutycycle::events_to_csv(result.events);
    if (!report_file || !events_file)
      throw std::runtime_error("failed to write reports into " +
                               global.out_dir);
  }

  if (global.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    const auto& schedule = scenario.sim.schedule;
    std::cout << "towers: " << graph.nodes.size()
              << ", devices: " << scenario.devices.size()
              << ", duration: " << fmt_g(duration_s, 6) << " s, step: "
              << fmt_g(step_s, 6) << " s\n";
    std::cout << "saving_fraction: " << fmt_g(result.report.saving_fraction, 6)
              << " (closed form 1 - [d + f*(T-d)]/T = "
              << fmt_g(dutycycle::saving_fraction(schedule), 6)
              << " with T=" << fmt_g(schedule.period_s, 6)
              << ", d=" << fmt_g(schedule.beacon_duration_s, 6)
              << ", f=" << fmt_g(schedule.p_idle_fraction, 6) << ")\n";
    std::cout << "discoveries: " << result.report.discoveries.size()
              << " (devices discovered: " << stats.discovered_count
              << ", mean latency " << fmt_g(stats.mean_s, 6) << " s, max "
              << fmt_g(stats.max_s, 6) << " s)\n";
    std::cout << "undiscovered:";
    if (stats.undiscovered_ids.empty()) std::cout << " none";
    for (int id : stats.undiscovered_ids) std::cout << ' ' << id;
    std::cout << "\n";
    std::cout << "wrote " << report_path.string() << ", "
              << events_path.string() << "\n";
  }
}

}  // namespace

void register_simulate_command(CLI::App& app, const GlobalOptions& global) {
  auto options = std::make_shared<SimulateOptions>();
  CLI::App* cmd = app.add_subcommand(
      "simulate",
      "Run the duty-cycled beacon protocol over a scenario's towers");
  cmd->add_option("scenario", options->scenario_path, "Scenario JSON file")
      ->required();
  cmd->add_option("--seed", options->seed,
                  "Seed recorded in the report for reproducibility")
      ->capture_default_str();
  cmd->add_option("--duration", options->duration_override,
                  "Simulation length in seconds (overrides the scenario)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--step", options->step_override,
                  "Step size in seconds (overrides the scenario)")
      ->check(CLI::PositiveNumber);
  cmd->callback([options, &global] { run(*options, global); });
}

}  // namespace rfmesh::cli
