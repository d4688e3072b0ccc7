#pragma once

#include <map>
#include <string>
#include <vector>

#include "rfmesh/linkbudget.hpp"

// Geographic tower mesh: haversine geometry on a spherical Earth,
// k-nearest-neighbour linking under a range constraint, per-edge link
// feasibility, connected components and a greedy travelling-salesman tour.
// Every operation is deterministic; distance ties break toward the lower id.

namespace rfmesh::mesh {

inline constexpr double kEarthRadiusKm = 6371.0088;  // IUGG mean radius

struct GeoPoint {
  double lat_deg = 0.0;  // [-90, 90]
  double lon_deg = 0.0;  // [-180, 180)
};

struct TowerNode {
  int id = 0;  // unique, >= 0
  std::string name;
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  linkbudget::AntennaSpec antenna;
  double tx_power_w = 1.0;
  double rx_sensitivity_w = 1e-12;  // minimum detectable received power

  GeoPoint position() const { return {lat_deg, lon_deg}; }
};

/// Undirected edge, stored with id_a < id_b. feasible/received_power_w are
/// filled by annotate_links; knn_connect leaves them at their defaults.
struct MeshEdge {
  int id_a = 0;
  int id_b = 0;
  double distance_km = 0.0;
  bool feasible = false;
  double received_power_w = 0.0;  // worse of the two directions
};

struct MeshGraph {
  std::vector<TowerNode> nodes;
  std::vector<MeshEdge> edges;
};

/// Great-circle distance in km. Throws std::domain_error on out-of-range
/// coordinates.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

/// Links every node to its k nearest neighbours within max_range_km,
/// deduplicated as undirected edges sorted by (id_a, id_b). Requires k >= 1,
/// at least 2 nodes and unique ids.
MeshGraph knn_connect(const std::vector<TowerNode>& nodes, int k,
                      double max_range_km);

/// Node minimizing haversine distance to the query.
const TowerNode& nearest_neighbor(const GeoPoint& query,
                                  const std::vector<TowerNode>& nodes);

struct LinkCheck {
  bool feasible = false;
  double received_power_w = 0.0;
};

/// One-directional check: a transmits at a.tx_power_w, b receives; feasible
/// iff the received power clears b's sensitivity. Antennas are sampled at
/// their pattern peaks. Coincident towers are a domain error (zero distance).
LinkCheck link_feasible(const TowerNode& a, const TowerNode& b,
                        double frequency_hz);

/// Fills feasible/received_power_w on every edge. An edge is feasible only
/// when both directions clear their sensitivities. port_efficiency scales a
/// node's links by a per-id factor (e.g. measured mismatch efficiency);
/// absent ids count as 1.
void annotate_links(MeshGraph& graph, double frequency_hz,
                    const std::map<int, double>& port_efficiency = {});

/// Partition of node ids by undirected reachability, each component sorted,
/// components ordered by smallest member.
std::vector<std::vector<int>> connected_components(const MeshGraph& graph);

struct Tour {
  std::vector<int> order;  // starts at start_id, each node exactly once
  double total_km = 0.0;   // cycle length including the return leg
};

/// Greedy nearest-neighbour tour over all nodes, returning to the start.
Tour nn_tsp_tour(const std::vector<TowerNode>& nodes, int start_id);

}  // namespace rfmesh::mesh
