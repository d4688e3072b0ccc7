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

struct MeshOptions {
  std::string scenario_path;
  int k_override = 0;              // 0 = scenario value
  double range_override = 0.0;     // 0 = scenario value
  bool tsp = false;
  int tsp_start = -1;              // -1 = lowest id
  bool plot_data = false;
};

const mesh::TowerNode& node_by_id(const std::vector<mesh::TowerNode>& nodes,
                                  int id) {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw std::domain_error("unknown node id " + std::to_string(id));
}

std::string label(const mesh::TowerNode& node) {
  return node.name + "(" + std::to_string(node.id) + ")";
}

void write_plot_data(const mesh::MeshGraph& graph, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto nodes_path = std::filesystem::path(out_dir) / "nodes.csv";
  const auto edges_path = std::filesystem::path(out_dir) / "edges.csv";

  std::ofstream nodes_csv(nodes_path);
  nodes_csv << "id,name,lat,lon\n";
  for (const auto& n : graph.nodes)
    nodes_csv << n.id << ',' << n.name << ',' << fmt_g(n.lat_deg) << ','
              << fmt_g(n.lon_deg) << "\n";

  std::ofstream edges_csv(edges_path);
  edges_csv << "id_a,id_b,distance_km,feasible,received_power_w\n";
  for (const auto& e : graph.edges)
    edges_csv << e.id_a << ',' << e.id_b << ',' << fmt_g(e.distance_km) << ','
              << (e.feasible ? 1 : 0) << ',' << fmt_g(e.received_power_w)
              << "\n";

  if (!nodes_csv || !edges_csv)
    throw std::runtime_error("failed to write plot data into " + out_dir);
  std::cout << "wrote " << nodes_path.string() << ", " << edges_path.string()
            << "\n";
}

void run(const MeshOptions& options, const GlobalOptions& global) {
  auto scenario = scenario::load_scenario(options.scenario_path);
  if (options.k_override > 0) scenario.mesh_params.k = options.k_override;
  if (options.range_override > 0.0)
    scenario.mesh_params.max_range_km = options.range_override;

  const auto graph = scenario::build_graph(scenario);
  const auto components = mesh::connected_components(graph);

  mesh::Tour tour;
  bool have_tour = false;
  if (options.tsp) {
    int start = options.tsp_start;
    if (start < 0) {
      start = graph.nodes.front().id;
      for (const auto& n : graph.nodes) start = std::min(start, n.id);
    }
    tour = mesh::nn_tsp_tour(graph.nodes, start);
    have_tour = true;
  }

  if (global.json) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : graph.nodes)
      nodes.push_back({{"id", n.id},
                       {"name", n.name},
                       {"lat", n.lat_deg},
                       {"lon", n.lon_deg}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : graph.edges)
      edges.push_back({{"id_a", e.id_a},
                       {"id_b", e.id_b},
                       {"distance_km", e.distance_km},
                       {"feasible", e.feasible},
                       {"received_power_w", e.received_power_w}});
    nlohmann::json out{{"frequency_hz", scenario.link_frequency_hz()},
                       {"k", scenario.mesh_params.k},
                       {"max_range_km", scenario.mesh_params.max_range_km},
                       {"nodes", nodes},
                       {"edges", edges},
                       {"components", components}};
    if (have_tour)
      out["tour"] = {{"order", tour.order}, {"total_km", tour.total_km}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "nodes: " << graph.nodes.size()
              << ", edges: " << graph.edges.size()
              << ", components: " << components.size() << "\n";
    for (const auto& e : graph.edges)
      std::cout << "edge " << label(node_by_id(graph.nodes, e.id_a)) << " -- "
                << label(node_by_id(graph.nodes, e.id_b)) << ": "
                << fmt_g(e.distance_km, 6) << " km, "
                << (e.feasible ? "feasible" : "infeasible") << ", p_rx "
                << fmt_g(e.received_power_w, 6) << " W\n";
    for (std::size_t i = 0; i < components.size(); ++i) {
      std::cout << "component " << i << ":";
      for (int id : components[i])
        std::cout << ' ' << label(node_by_id(graph.nodes, id));
      std::cout << "\n";
    }
    if (have_tour) {
      std::cout << "tour:";
      for (int id : tour.order)
        std::cout << ' ' << label(node_by_id(graph.nodes, id)) << " ->";
      std::cout << ' ' << label(node_by_id(graph.nodes, tour.order.front()))
                << ", total " << fmt_g(tour.total_km, 6) << " km\n";
    }
  }

  if (options.plot_data) write_plot_data(graph, global.out_dir);
}

}  // namespace

void register_mesh_command(CLI::App& app, const GlobalOptions& global) {
  auto options = std::make_shared<MeshOptions>();
  CLI::App* cmd = app.add_subcommand(
      "mesh", "Build and analyze the tower connectivity graph of a scenario");
  cmd->add_option("scenario", options->scenario_path, "Scenario JSON file")
      ->required();
  cmd->add_option("--k", options->k_override,
                  "Neighbours per tower (overrides the scenario)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-range", options->range_override,
                  "Maximum link range in km (overrides the scenario)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--tsp", options->tsp, "Append a greedy round tour");
  cmd->add_option("--start", options->tsp_start, "Tour start node id")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--plot-data", options->plot_data,
                "Write nodes.csv and edges.csv into --out");
  cmd->callback([options, &global] { run(*options, global); });
}

}  // namespace rfmesh::cli
