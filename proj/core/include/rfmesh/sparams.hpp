#pragma once

#include <complex>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

// Touchstone v1 one-port (.s1p) ingestion and the reflection metrics derived
// from an S11 sweep: return loss, VSWR, accepted-power fraction,
// transmitted-to-reflected ratio, return-loss bandwidth and resonance.
//
// Files with |S11| > 1 still parse; the passive-device assumption is enforced
// by the metric functions, not the parser.

namespace rfmesh::sparams {

enum class FrequencyUnit { kHz, kKHz, kMHz, kGHz };

enum class DataFormat {
  kRealImag,   // RI
  kMagAngle,   // MA, angle in degrees
  kDbAngle,    // DB, 20*log10 magnitude / angle in degrees
};

struct TouchstoneHeader {
  FrequencyUnit frequency_unit = FrequencyUnit::kGHz;
  DataFormat format = DataFormat::kMagAngle;
  double reference_impedance_ohm = 50.0;
};

struct SweepPoint {
  double frequency_hz = 0.0;
  std::complex<double> s11;
};

/// Ordered S11-vs-frequency samples; frequencies strictly increasing,
/// at least one point.
struct FrequencySweep {
  TouchstoneHeader header;
  std::vector<SweepPoint> points;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Parses a .s1p document. `!` comments are stripped, the `#` option line is
/// case-insensitive with per-token defaults "# GHz S MA R 50", data rows are
/// (frequency, a, b) triplets. Throws ParseError with the offending line.
FrequencySweep parse_touchstone(std::istream& in);
FrequencySweep parse_touchstone(const std::string& text);
FrequencySweep load_touchstone(const std::string& path);

/// Emits a .s1p document in the requested format. Frequencies are written in
/// GHz; the option line carries the sweep's reference impedance. A zero
/// magnitude is written as -400 dB in DB format (exact zero has no dB form).
std::string serialize_touchstone(const FrequencySweep& sweep, DataFormat format);

/// -20*log10|S11| in dB; +infinity for a perfect match. Requires |S11| in [0, 1].
double return_loss_db(double s11_mag);

/// (1 + |S11|) / (1 - |S11|), >= 1. Requires |S11| in [0, 1); total
/// reflection is a singularity.
double vswr(double s11_mag);

/// Fraction of stimulated power not reflected: 1 - |S11|^2, in [0, 1].
double accepted_power_fraction(double s11_mag);

/// (1 - |S11|^2) / |S11|^2. Requires |S11| in (0, 1]; a perfect match has no
/// reflected wave to compare against.
double transmitted_to_reflected_ratio(double s11_mag);

struct Band {
  double f_low_hz = 0.0;
  double f_high_hz = 0.0;
};

/// Maximal frequency intervals where return loss >= threshold_db, with band
/// edges located by linear interpolation of return loss in dB between
/// adjacent samples. Intervals come back disjoint and sorted.
std::vector<Band> bandwidth(const FrequencySweep& sweep,
                            double threshold_db = 10.0);

/// Frequency of the sample with minimal |S11|; ties go to the lowest frequency.
double resonant_frequency(const FrequencySweep& sweep);

/// 1 - |S11(f)|^2 with |S11| interpolated linearly in dB-magnitude between
/// the neighbouring samples; exact at sample points. Throws std::out_of_range
/// when f lies outside the sweep.
double mismatch_efficiency(const FrequencySweep& sweep, double frequency_hz);

}  // namespace rfmesh::sparams
