#include "rfmesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace rfmesh::mesh {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void validate_point(const GeoPoint& p) {
  if (!(std::isfinite(p.lat_deg) && p.lat_deg >= -90.0 && p.lat_deg <= 90.0))
    throw std::domain_error("latitude must lie in [-90, 90]");
  if (!(std::isfinite(p.lon_deg) && p.lon_deg >= -180.0 && p.lon_deg < 180.0))
    throw std::domain_error("longitude must lie in [-180, 180)");
}

void validate_unique_ids(const std::vector<TowerNode>& nodes) {
  std::unordered_set<int> seen;
  for (const auto& n : nodes) {
    if (n.id < 0) throw std::domain_error("node ids must be >= 0");
    if (!seen.insert(n.id).second)
      throw std::domain_error("duplicate node id " + std::to_string(n.id));
  }
}

double port_factor(const std::map<int, double>& port_efficiency, int id) {
  const auto it = port_efficiency.find(id);
  return it == port_efficiency.end() ? 1.0 : it->second;
}

}  // namespace

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  validate_point(a);
  validate_point(b);
  const double lat_a = a.lat_deg * kDegToRad;
  const double lat_b = b.lat_deg * kDegToRad;
  const double dlat = (b.lat_deg - a.lat_deg) * kDegToRad;
  const double dlon = (b.lon_deg - a.lon_deg) * kDegToRad;
  const double sl = std::sin(dlat / 2.0);
  const double so = std::sin(dlon / 2.0);
  const double h = sl * sl + std::cos(lat_a) * std::cos(lat_b) * so * so;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

MeshGraph knn_connect(const std::vector<TowerNode>& nodes, int k,
                      double max_range_km) {
  if (k < 1) throw std::domain_error("knn_connect: k must be >= 1");
  if (nodes.size() < 2)
    throw std::domain_error("knn_connect: need at least 2 nodes");
  validate_unique_ids(nodes);

  MeshGraph graph;
  graph.nodes = nodes;

  struct Candidate {
    double distance_km;
    int id;
    std::size_t index;
  };

  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::vector<Candidate> candidates;
    candidates.reserve(nodes.size() - 1);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      candidates.push_back({haversine_km(nodes[i].position(),
                                         nodes[j].position()),
                            nodes[j].id, j});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.distance_km != b.distance_km
                           ? a.distance_km < b.distance_km
                           : a.id < b.id;
              });
    const std::size_t take = std::min<std::size_t>(k, candidates.size());
    for (std::size_t c = 0; c < take; ++c) {
      if (candidates[c].distance_km > max_range_km) break;  // sorted suffix
      const auto key = std::minmax(nodes[i].id, candidates[c].id);
      if (!seen.insert(key).second) continue;
      graph.edges.push_back(
          {key.first, key.second, candidates[c].distance_km, false, 0.0});
    }
  }

  std::sort(graph.edges.begin(), graph.edges.end(),
            [](const MeshEdge& a, const MeshEdge& b) {
              return a.id_a != b.id_a ? a.id_a < b.id_a : a.id_b < b.id_b;
            });
  return graph;
}

const TowerNode& nearest_neighbor(const GeoPoint& query,
                                  const std::vector<TowerNode>& nodes) {
  if (nodes.empty())
    throw std::domain_error("nearest_neighbor: empty node list");
  const TowerNode* best = &nodes.front();
  double best_distance = haversine_km(query, best->position());
  for (const auto& node : nodes) {
    const double d = haversine_km(query, node.position());
    if (d < best_distance || (d == best_distance && node.id < best->id)) {
      best = &node;
      best_distance = d;
    }
  }
  return *best;
}

LinkCheck link_feasible(const TowerNode& a, const TowerNode& b,
                        double frequency_hz) {
  linkbudget::LinkGeometry geometry;
  geometry.frequency_hz = frequency_hz;
  geometry.distance_m = haversine_km(a.position(), b.position()) * 1000.0;
  geometry.tx_direction = linkbudget::peak_direction(a.antenna.pattern);
  geometry.rx_direction = linkbudget::peak_direction(b.antenna.pattern);
  const auto budget =
      linkbudget::received_power(a.tx_power_w, geometry, a.antenna, b.antenna);
  return {budget.received_power_w >= b.rx_sensitivity_w,
          budget.received_power_w};
}

void annotate_links(MeshGraph& graph, double frequency_hz,
                    const std::map<int, double>& port_efficiency) {
  std::unordered_map<int, const TowerNode*> by_id;
  for (const auto& node : graph.nodes) by_id[node.id] = &node;

  for (auto& edge : graph.edges) {
    const auto it_a = by_id.find(edge.id_a);
    const auto it_b = by_id.find(edge.id_b);
    if (it_a == by_id.end() || it_b == by_id.end())
      throw std::domain_error("annotate_links: edge references unknown id");
    const TowerNode& a = *it_a->second;
    const TowerNode& b = *it_b->second;
    const double scale =
        port_factor(port_efficiency, a.id) * port_factor(port_efficiency, b.id);
    const double p_ab = link_feasible(a, b, frequency_hz).received_power_w * scale;
    const double p_ba = link_feasible(b, a, frequency_hz).received_power_w * scale;
    edge.feasible = p_ab >= b.rx_sensitivity_w && p_ba >= a.rx_sensitivity_w;
    edge.received_power_w = std::min(p_ab, p_ba);
  }
}

std::vector<std::vector<int>> connected_components(const MeshGraph& graph) {
  std::map<int, std::vector<int>> adjacency;
  for (const auto& node : graph.nodes) adjacency[node.id];
  for (const auto& edge : graph.edges) {
    adjacency[edge.id_a].push_back(edge.id_b);
    adjacency[edge.id_b].push_back(edge.id_a);
  }

  std::vector<std::vector<int>> components;
  std::unordered_set<int> visited;
  for (const auto& [id, _] : adjacency) {
    if (visited.count(id)) continue;
    std::vector<int> component;
    std::vector<int> stack{id};
    visited.insert(id);
    while (!stack.empty()) {
      const int current = stack.back();
      stack.pop_back();
      component.push_back(current);
      for (int next : adjacency[current])
        if (visited.insert(next).second) stack.push_back(next);
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  // adjacency iterates ids ascending, so components are already ordered by
  // smallest member.
  return components;
}

Tour nn_tsp_tour(const std::vector<TowerNode>& nodes, int start_id) {
  if (nodes.size() < 2)
    throw std::domain_error("nn_tsp_tour: need at least 2 nodes");
  validate_unique_ids(nodes);
  const auto start = std::find_if(nodes.begin(), nodes.end(),
                                  [&](const TowerNode& n) { return n.id == start_id; });
  if (start == nodes.end())
    throw std::domain_error("nn_tsp_tour: unknown start id " +
                            std::to_string(start_id));

  Tour tour;
  std::unordered_set<int> visited{start_id};
  tour.order.push_back(start_id);
  const TowerNode* current = &*start;
  while (tour.order.size() < nodes.size()) {
    std::size_t next = nodes.size();
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (visited.count(nodes[i].id)) continue;
      const double d = haversine_km(current->position(), nodes[i].position());
      if (d < best_distance ||
          (d == best_distance && nodes[i].id < nodes[next].id)) {
        next = i;
        best_distance = d;
      }
    }
    if (next == nodes.size())
      throw std::logic_error("nn_tsp_tour: no unvisited node left");
    tour.order.push_back(nodes[next].id);
    tour.total_km += best_distance;
    visited.insert(nodes[next].id);
    current = &nodes[next];
  }
  tour.total_km += haversine_km(current->position(), start->position());
  return tour;
}

}  // namespace rfmesh::mesh
