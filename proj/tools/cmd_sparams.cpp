#include <cmath>
#include <iostream>
#include <memory>

#include <json.hpp>

#include "commands.hpp"
#include "output.hpp"
#include "rfmesh/sparams.hpp"

namespace rfmesh::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SparamsOptions {
  std::string path;
  double threshold_db = 10.0;
};

struct Row {
  double frequency_hz;
  double s11_mag;
  double return_loss_db;
  double vswr;
  double accepted;
  double transmitted_to_reflected;
};

// Lossy samples (|S11| > 1) render as NaN instead of failing the whole
// table; singular points render as inf.
Row make_row(double frequency_hz, double mag) {
  Row row{frequency_hz, mag, kNaN, kNaN, kNaN, kNaN};
  if (mag > 1.0) return row;
  row.return_loss_db = sparams::return_loss_db(mag);
  row.vswr = mag == 1.0 ? kInf : sparams::vswr(mag);
  row.accepted = sparams::accepted_power_fraction(mag);
  row.transmitted_to_reflected =
      mag == 0.0 ? kInf : sparams::transmitted_to_reflected_ratio(mag);
  return row;
}

void run(const SparamsOptions& options, const GlobalOptions& global) {
  const auto sweep = sparams::load_touchstone(options.path);

  std::vector<Row> rows;
  rows.reserve(sweep.points.size());
  bool passive = true;
  for (const auto& point : sweep.points) {
    rows.push_back(make_row(point.frequency_hz, std::abs(point.s11)));
    passive = passive && rows.back().s11_mag <= 1.0;
  }

  const double resonance = sparams::resonant_frequency(sweep);
  std::vector<sparams::Band> bands;
  if (passive) bands = sparams::bandwidth(sweep, options.threshold_db);

  if (global.json) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& row : rows) {
      points.push_back({{"frequency_hz", row.frequency_hz},
                        {"s11_mag", row.s11_mag},
                        {"return_loss_db", row.return_loss_db},
                        {"vswr", row.vswr},
                        {"accepted_fraction", row.accepted},
                        {"transmitted_to_reflected",
                         row.transmitted_to_reflected}});
    }
    nlohmann::json json_bands = nlohmann::json::array();
    for (const auto& band : bands)
      json_bands.push_back({band.f_low_hz, band.f_high_hz});
    const nlohmann::json out{
        {"reference_impedance_ohm", sweep.header.reference_impedance_ohm},
        {"points", points},
        {"resonant_frequency_hz", resonance},
        {"threshold_db", options.threshold_db},
        {"bands_hz", json_bands},
    };
    std::cout << out.dump(2) << "\n";
    return;
  }

  std::cout << "frequency_hz,s11_mag,return_loss_db,vswr,accepted_fraction,"
               "transmitted_to_reflected\n";
  for (const auto& row : rows) {
    std::cout << fmt_g(row.frequency_hz) << ',' << fmt_g(row.s11_mag) << ','
              << fmt_g(row.return_loss_db) << ',' << fmt_g(row.vswr) << ','
              << fmt_g(row.accepted) << ','
              << fmt_g(row.transmitted_to_reflected) << "\n";
  }
  std::cout << "# resonant_frequency_hz: " << fmt_g(resonance) << "\n";
  if (!passive) {
    std::cout << "# bands: unavailable (|S11| > 1 in sweep)\n";
    return;
  }
  std::cout << "# bands above " << fmt_g(options.threshold_db, 6) << " dB:";
  if (bands.empty()) std::cout << " none";
  for (const auto& band : bands)
    std::cout << " [" << fmt_g(band.f_low_hz) << ", " << fmt_g(band.f_high_hz)
              << "]";
  std::cout << "\n";
}

}  // namespace

void register_sparams_command(CLI::App& app, const GlobalOptions& global) {
  auto options = std::make_shared<SparamsOptions>();
  CLI::App* cmd = app.add_subcommand(
      "sparams", "Reflection metrics from a Touchstone .s1p sweep");
  cmd->add_option("file", options->path, "Touchstone .s1p file")->required();
  cmd->add_option("--threshold-db", options->threshold_db,
                  "Return-loss threshold for band edges")
      ->capture_default_str();
  cmd->callback([options, &global] { run(*options, global); });
}

}  // namespace rfmesh::cli
