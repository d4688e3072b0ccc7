#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

// Exit codes: 0 success, 1 domain or I/O error, 2 usage error.

int main(int argc, char** argv) {
  CLI::App app{
      "rfmesh - antenna link budgets, S-parameter sweeps, tower mesh "
      "planning and duty-cycled beacon simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  rfmesh::cli::GlobalOptions global;
  app.add_flag("--json", global.json, "Emit a JSON object instead of text");
  app.add_option("--out", global.out_dir,
                 "Directory for generated report files")
      ->capture_default_str();

  rfmesh::cli::register_link_command(app, global);
  rfmesh::cli::register_sparams_command(app, global);
  rfmesh::cli::register_mesh_command(app, global);
  rfmesh::cli::register_simulate_command(app, global);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
