#include "rfmesh/sparams.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace rfmesh::sparams {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::string to_upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

bool parse_double(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

double unit_scale(FrequencyUnit unit) {
  switch (unit) {
    case FrequencyUnit::kHz: return 1.0;
    case FrequencyUnit::kKHz: return 1e3;
    case FrequencyUnit::kMHz: return 1e6;
    case FrequencyUnit::kGHz: return 1e9;
  }
  return 1.0;
}

TouchstoneHeader parse_option_line(const std::vector<std::string>& tokens,
                                   int line_no) {
  TouchstoneHeader header;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const std::string tok = to_upper(tokens[i]);
    if (tok == "HZ") {
      header.frequency_unit = FrequencyUnit::kHz;
    } else if (tok == "KHZ") {
      header.frequency_unit = FrequencyUnit::kKHz;
    } else if (tok == "MHZ") {
      header.frequency_unit = FrequencyUnit::kMHz;
    } else if (tok == "GHZ") {
      header.frequency_unit = FrequencyUnit::kGHz;
    } else if (tok == "S") {
      // only parameter type in scope
    } else if (tok == "Y" || tok == "Z" || tok == "G" || tok == "H") {
      throw ParseError("only S-parameter files are supported", line_no);
    } else if (tok == "RI") {
      header.format = DataFormat::kRealImag;
    } else if (tok == "MA") {
      header.format = DataFormat::kMagAngle;
    } else if (tok == "DB") {
      header.format = DataFormat::kDbAngle;
    } else if (tok == "R") {
      if (i + 1 >= tokens.size())
        throw ParseError("option line: R must be followed by an impedance",
                         line_no);
      double z = 0.0;
      if (!parse_double(tokens[++i], z) || z <= 0.0)
        throw ParseError("option line: invalid reference impedance", line_no);
      header.reference_impedance_ohm = z;
    } else {
      throw ParseError("option line: unrecognized token '" + tokens[i] + "'",
                       line_no);
    }
  }
  return header;
}

std::complex<double> decode_point(DataFormat format, double a, double b) {
  switch (format) {
    case DataFormat::kRealImag:
      return {a, b};
    case DataFormat::kMagAngle:
      return std::polar(a, b * std::numbers::pi / 180.0);
    case DataFormat::kDbAngle:
      return std::polar(std::pow(10.0, a / 20.0),
                        b * std::numbers::pi / 180.0);
  }
  return {};
}

std::string fmt(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
  return buf;
}

void require_in_range(double s11_mag, double lo, double hi, const char* what) {
  if (!(std::isfinite(s11_mag) && s11_mag >= lo && s11_mag <= hi))
    throw std::domain_error(std::string(what) +
                            ": |S11| outside the passive range");
}

// Return-loss threshold crossing between two samples, linear in dB. An
// infinite return loss (perfect match) pins the edge at the finite sample.
double crossing(double fa, double rl_a, double fb, double rl_b,
                double threshold_db) {
  if (std::isinf(rl_a)) return fb;
  if (std::isinf(rl_b)) return fa;
  return fa + (threshold_db - rl_a) * (fb - fa) / (rl_b - rl_a);
}

}  // namespace

FrequencySweep parse_touchstone(std::istream& in) {
  FrequencySweep sweep;
  bool have_options = false;
  bool have_data = false;
  int line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto bang = line.find('!'); bang != std::string::npos)
      line.erase(bang);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (tokens[0][0] == '#') {
      if (have_options)
        throw ParseError("duplicate option line", line_no);
      if (have_data)
        throw ParseError("option line after data", line_no);
      // A bare "#" keeps the defaults; only a standalone token list is
      // accepted, "#GHz" style is rejected.
      if (tokens[0].size() > 1)
        throw ParseError("option line: '#' must be a standalone token",
                         line_no);
      sweep.header = parse_option_line(tokens, line_no);
      have_options = true;
      continue;
    }

    if (tokens.size() != 3)
      throw ParseError("expected 3 columns (frequency, a, b), got " +
                           std::to_string(tokens.size()),
                       line_no);
    double raw_freq = 0.0, a = 0.0, b = 0.0;
    if (!parse_double(tokens[0], raw_freq) || !parse_double(tokens[1], a) ||
        !parse_double(tokens[2], b))
      throw ParseError("unparseable number", line_no);

    const double freq_hz = raw_freq * unit_scale(sweep.header.frequency_unit);
    if (!sweep.points.empty() && freq_hz <= sweep.points.back().frequency_hz)
      throw ParseError("frequencies must be strictly increasing", line_no);
    sweep.points.push_back({freq_hz, decode_point(sweep.header.format, a, b)});
    have_data = true;
  }

  if (sweep.points.empty())
    throw ParseError("no data points", line_no == 0 ? 1 : line_no);
  return sweep;
}

FrequencySweep parse_touchstone(const std::string& text) {
  std::istringstream in(text);
  return parse_touchstone(in);
}

FrequencySweep load_touchstone(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_touchstone(in);
}

std::string serialize_touchstone(const FrequencySweep& sweep,
                                 DataFormat format) {
  const char* fmt_name = format == DataFormat::kRealImag   ? "RI"
                         : format == DataFormat::kMagAngle ? "MA"
                                                           : "DB";
  std::string out = "# GHz S " + std::string(fmt_name) + " R " +
                    fmt(sweep.header.reference_impedance_ohm, 9) + "\n";
  for (const auto& p : sweep.points) {
    out += fmt(p.frequency_hz / 1e9, 9);
    const double mag = std::abs(p.s11);
    const double angle_deg = std::arg(p.s11) * 180.0 / std::numbers::pi;
    // 12 digits on the S11 fields: 9 leaves up to 5e-9 relative quantization,
    // which cannot re-parse within 1e-9.
    switch (format) {
      case DataFormat::kRealImag:
        out += ' ' + fmt(p.s11.real(), 12) + ' ' + fmt(p.s11.imag(), 12);
        break;
      case DataFormat::kMagAngle:
        out += ' ' + fmt(mag, 12) + ' ' + fmt(angle_deg, 12);
        break;
      case DataFormat::kDbAngle:
        out += ' ' + fmt(mag > 0.0 ? 20.0 * std::log10(mag) : -400.0, 12) +
               ' ' + fmt(angle_deg, 12);
        break;
    }
    out += '\n';
  }
  return out;
}

double return_loss_db(double s11_mag) {
  require_in_range(s11_mag, 0.0, 1.0, "return_loss_db");
  if (s11_mag == 0.0) return kInf;
  return -20.0 * std::log10(s11_mag);
}

double vswr(double s11_mag) {
  require_in_range(s11_mag, 0.0, 1.0, "vswr");
  if (s11_mag == 1.0)
    throw std::domain_error("vswr: singular at total reflection");
  return (1.0 + s11_mag) / (1.0 - s11_mag);
}

double accepted_power_fraction(double s11_mag) {
  require_in_range(s11_mag, 0.0, 1.0, "accepted_power_fraction");
  return 1.0 - s11_mag * s11_mag;
}

double transmitted_to_reflected_ratio(double s11_mag) {
  require_in_range(s11_mag, 0.0, 1.0, "transmitted_to_reflected_ratio");
  if (s11_mag == 0.0)
    throw std::domain_error(
        "transmitted_to_reflected_ratio: no reflected wave");
  return (1.0 - s11_mag * s11_mag) / (s11_mag * s11_mag);
}

std::vector<Band> bandwidth(const FrequencySweep& sweep, double threshold_db) {
  if (sweep.points.empty())
    throw std::domain_error("bandwidth: empty sweep");
  if (!(std::isfinite(threshold_db) && threshold_db > 0.0))
    throw std::domain_error("bandwidth: threshold must be > 0 dB");

  std::vector<double> rl(sweep.points.size());
  for (std::size_t i = 0; i < sweep.points.size(); ++i)
    rl[i] = return_loss_db(std::abs(sweep.points[i].s11));

  std::vector<Band> bands;
  bool in_band = rl[0] >= threshold_db;
  double start = sweep.points[0].frequency_hz;
  for (std::size_t i = 0; i + 1 < sweep.points.size(); ++i) {
    const double fa = sweep.points[i].frequency_hz;
    const double fb = sweep.points[i + 1].frequency_hz;
    const bool next_in = rl[i + 1] >= threshold_db;
    if (!in_band && next_in)
      start = crossing(fa, rl[i], fb, rl[i + 1], threshold_db);
    else if (in_band && !next_in)
      bands.push_back({start, crossing(fa, rl[i], fb, rl[i + 1], threshold_db)});
    in_band = next_in;
  }
  if (in_band) bands.push_back({start, sweep.points.back().frequency_hz});
  return bands;
}

double resonant_frequency(const FrequencySweep& sweep) {
  if (sweep.points.empty())
    throw std::domain_error("resonant_frequency: empty sweep");
  std::size_t best = 0;
  for (std::size_t i = 1; i < sweep.points.size(); ++i)
    if (std::abs(sweep.points[i].s11) < std::abs(sweep.points[best].s11))
      best = i;
  return sweep.points[best].frequency_hz;
}

double mismatch_efficiency(const FrequencySweep& sweep, double frequency_hz) {
  if (sweep.points.empty())
    throw std::domain_error("mismatch_efficiency: empty sweep");
  if (!(frequency_hz >= sweep.points.front().frequency_hz &&
        frequency_hz <= sweep.points.back().frequency_hz))
    throw std::out_of_range("mismatch_efficiency: frequency outside sweep");

  const auto upper = std::lower_bound(
      sweep.points.begin(), sweep.points.end(), frequency_hz,
      [](const SweepPoint& p, double f) { return p.frequency_hz < f; });
  if (upper->frequency_hz == frequency_hz)
    return accepted_power_fraction(std::abs(upper->s11));

  const auto lower = upper - 1;
  const double ma = std::abs(lower->s11);
  const double mb = std::abs(upper->s11);
  double mag = 0.0;
  if (ma > 0.0 && mb > 0.0) {
    const double t = (frequency_hz - lower->frequency_hz) /
                     (upper->frequency_hz - lower->frequency_hz);
    const double db =
        (1.0 - t) * 20.0 * std::log10(ma) + t * 20.0 * std::log10(mb);
    mag = std::pow(10.0, db / 20.0);
  }
  return accepted_power_fraction(mag);
}

}  // namespace rfmesh::sparams
