#include <iostream>
#include <memory>

#include <json.hpp>

#include "commands.hpp"
#include "output.hpp"
#include "rfmesh/linkbudget.hpp"

namespace rfmesh::cli {

namespace {

struct LinkOptions {
  double frequency_hz = 0.0;
  double distance_m = 0.0;
  double tx_power_w = 1.0;
  double tx_gain = 1.0;
  double rx_gain = 1.0;
  double feedline_efficiency = 1.0;
  std::string tx_polarization = "h";
  std::string rx_polarization = "h";
  double tx_max_dimension_m = 0.0;
  double rx_max_dimension_m = 0.0;
};

linkbudget::AntennaSpec make_antenna(double gain, const std::string& pol,
                                     double max_dimension_m,
                                     double feedline_efficiency) {
  linkbudget::AntennaSpec antenna;
  // a gaussian beam with boresight directivity g sampled at boresight gives
  // exactly the requested numeric gain
  antenna.pattern = linkbudget::Pattern::gaussian_beam(gain, 65.0);
  antenna.polarization = polarization_by_name(pol);
  antenna.max_dimension_m = max_dimension_m;
  antenna.feedline_efficiency = feedline_efficiency;
  return antenna;
}

void run(const LinkOptions& options, const GlobalOptions& global) {
  linkbudget::LinkGeometry geometry;
  geometry.frequency_hz = options.frequency_hz;
  geometry.distance_m = options.distance_m;

  const auto tx = make_antenna(options.tx_gain, options.tx_polarization,
                               options.tx_max_dimension_m,
                               options.feedline_efficiency);
  const auto rx = make_antenna(options.rx_gain, options.rx_polarization,
                               options.rx_max_dimension_m, 1.0);

  const auto result =
      linkbudget::received_power(options.tx_power_w, geometry, tx, rx);
  const double ratio = linkbudget::friis_ratio(geometry, tx, rx, false);

  if (global.json) {
    nlohmann::json out{
        {"received_power_w", result.received_power_w},
        {"received_power_dbm", watts_to_dbm(result.received_power_w)},
        {"friis_ratio", ratio},
        {"path_loss_db", result.path_loss_db},
        {"power_density_w_m2", result.power_density_w_m2},
        {"plf", result.plf},
        {"far_field_ok", result.far_field_ok},
    };
    std::cout << out.dump(2) << "\n";
    return;
  }

  std::cout << "received_power_w    " << fmt_g(result.received_power_w) << "\n"
            << "received_power_dbm  "
            << fmt_g(watts_to_dbm(result.received_power_w), 6) << "\n"
            << "friis_ratio         " << fmt_g(ratio) << "\n"
            << "path_loss_db        " << fmt_g(result.path_loss_db, 6) << "\n"
            << "power_density_w_m2  " << fmt_g(result.power_density_w_m2)
            << "\n"
            << "plf                 " << fmt_g(result.plf, 6) << "\n"
            << "far_field_ok        " << (result.far_field_ok ? "yes" : "no")
            << "\n";
}

}  // namespace

void register_link_command(CLI::App& app, const GlobalOptions& global) {
  auto options = std::make_shared<LinkOptions>();
  CLI::App* cmd = app.add_subcommand(
      "link", "Point-to-point link budget from antenna and path parameters");
  cmd->add_option("--freq", options->frequency_hz, "Carrier frequency in Hz")
      ->required();
  cmd->add_option("--dist", options->distance_m, "Link distance in meters")
      ->required();
  cmd->add_option("--pt", options->tx_power_w, "Transmit power in watts")
      ->capture_default_str();
  cmd->add_option("--gt", options->tx_gain, "Transmit gain, linear")
      ->capture_default_str();
  cmd->add_option("--gr", options->rx_gain, "Receive gain, linear")
      ->capture_default_str();
  cmd->add_option("--etl", options->feedline_efficiency,
                  "Transmit feed-line efficiency in (0, 1]")
      ->capture_default_str();
  cmd->add_option("--pol-tx", options->tx_polarization,
                  "Transmit polarization: h, v, rhcp, lhcp, slant45")
      ->capture_default_str();
  cmd->add_option("--pol-rx", options->rx_polarization,
                  "Receive polarization: h, v, rhcp, lhcp, slant45")
      ->capture_default_str();
  cmd->add_option("--dmax-tx", options->tx_max_dimension_m,
                  "Transmit antenna max dimension in meters")
      ->capture_default_str();
  cmd->add_option("--dmax-rx", options->rx_max_dimension_m,
                  "Receive antenna max dimension in meters")
      ->capture_default_str();
  cmd->callback([options, &global] { run(*options, global); });
}

}  // namespace rfmesh::cli
