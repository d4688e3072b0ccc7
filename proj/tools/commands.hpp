#pragma once

#include <string>

#include <CLI11.hpp>

namespace rfmesh::cli {

struct GlobalOptions {
  bool json = false;
  std::string out_dir = ".";
};

void register_link_command(CLI::App& app, const GlobalOptions& global);
void register_sparams_command(CLI::App& app, const GlobalOptions& global);
void register_mesh_command(CLI::App& app, const GlobalOptions& global);
void register_simulate_command(CLI::App& app, const GlobalOptions& global);

}  // namespace rfmesh::cli
