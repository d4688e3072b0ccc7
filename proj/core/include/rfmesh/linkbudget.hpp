#pragma once

#include <array>
#include <complex>

// Closed-form free-space link budget: transmit power density, effective
// aperture, polarization loss and the Friis power ratio, plus the Fraunhofer
// far-field validity check. All power math is in linear watts; dB appears
// only in path_loss_db and at presentation boundaries.

namespace rfmesh::linkbudget {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact

// Default carrier used by scenario tooling when none is given (mid-band 5G).
inline constexpr double kDefaultFrequencyHz = 3.5e9;

// Jones-style polarization state: complex amplitudes on two orthogonal axes.
// All consumers require unit norm to within 1e-9.
using JonesVector = std::array<std::complex<double>, 2>;

JonesVector polarization_horizontal();
JonesVector polarization_vertical();
JonesVector polarization_rhcp();
JonesVector polarization_lhcp();
JonesVector polarization_slant45();

/// Spherical direction relative to an antenna's boresight.
struct Direction {
  double theta_rad = 0.0;  // polar angle in [0, pi]
  double phi_rad = 0.0;    // azimuth in [0, 2*pi)
};

enum class PatternKind {
  kIsotropic,
  kHalfWaveDipole,
  kGaussianBeam,
};

/// Directivity model. Isotropic and half-wave dipole are parameter-free;
/// the gaussian beam takes a boresight directivity and a half-power
/// beamwidth and is azimuth-symmetric.
struct Pattern {
  PatternKind kind = PatternKind::kIsotropic;
  double boresight_directivity = 1.0;      // gaussian beam only
  double half_power_beamwidth_deg = 65.0;  // gaussian beam only

  static Pattern isotropic();
  static Pattern half_wave_dipole();
  static Pattern gaussian_beam(double boresight_directivity,
                               double half_power_beamwidth_deg);
};

/// Directivity D(theta) of a pattern; >= 0 and finite for valid inputs.
/// Half-wave dipole: 1.643 * [cos(pi/2 * cos(theta)) / sin(theta)]^2 with the
/// endpoint limits D(0) = D(pi) = 0.
double directivity(const Pattern& pattern, double theta_rad);

/// Direction of maximum directivity (broadside theta = pi/2 for the dipole,
/// boresight otherwise). Link evaluation between geographic nodes assumes
/// antennas are aimed and samples the pattern here.
Direction peak_direction(const Pattern& pattern);

struct AntennaSpec {
  Pattern pattern;
  double radiation_efficiency = 1.0;  // e, in (0, 1]
  double feedline_efficiency = 1.0;   // e_TL, in (0, 1]
  JonesVector polarization{{{1.0, 0.0}, {0.0, 0.0}}};
  double max_dimension_m = 0.0;  // largest physical dimension, >= 0

  /// Throws std::domain_error when any field violates its range.
  void validate() const;
};

struct LinkGeometry {
  double frequency_hz = kDefaultFrequencyHz;  // > 0
  double distance_m = 0.0;                    // > 0
  Direction tx_direction;  // from transmitter boresight toward receiver
  Direction rx_direction;  // from receiver boresight toward transmitter

  void validate() const;
};

struct LinkBudgetResult {
  double power_density_w_m2 = 0.0;
  double received_power_w = 0.0;
  double path_loss_db = 0.0;
  double plf = 1.0;
  bool far_field_ok = true;
};

/// c / f. Throws std::domain_error unless f > 0.
double wavelength(double frequency_hz);

/// Gain G = e * D(theta). Validates the antenna and the direction.
double gain(const AntennaSpec& antenna, const Direction& direction);

/// Radiated power density W = P_t * G_t / (4 pi R^2) in W/m^2.
double power_density(double tx_power_w, double tx_gain, double distance_m);

/// Effective collecting area A = lambda^2 * G / (4 pi) in m^2.
double effective_aperture(double rx_gain, double wavelength_m);

/// |<rho_t, rho_r>|^2 with the conjugated inner product; in [0, 1].
/// Throws std::domain_error if either vector is not unit-norm (1e-9).
double polarization_loss_factor(const JonesVector& rho_t,
                                const JonesVector& rho_r);

/// P_r / P_t = (lambda / 4 pi R)^2 * G_t * G_r, with gains sampled at the
/// geometry's direction angles. When matched is false the ratio additionally
/// carries the polarization loss factor and the transmitter's feed-line
/// efficiency (receive efficiency is already inside G_r).
double friis_ratio(const LinkGeometry& geometry, const AntennaSpec& tx,
                   const AntennaSpec& rx, bool matched);

/// Free-space loss 20 * log10(4 pi R / lambda) in dB.
double path_loss_db(double frequency_hz, double distance_m);

/// Full receive chain: power density from the transmit gain, aperture from
/// the receive directivity, then e_r, PLF and the transmit feed-line
/// efficiency applied exactly once each. far_field_ok uses the larger of the
/// two antenna dimensions.
LinkBudgetResult received_power(double tx_power_w, const LinkGeometry& geometry,
                                const AntennaSpec& tx, const AntennaSpec& rx);

/// Transmitter-side radiated power P_t * G_t * e_TL.
double eirp(double tx_power_w, double tx_gain, double feedline_efficiency);

/// Isotropic-equivalent total power 4 pi * U_max from a peak radiation
/// intensity in W/sr.
double total_radiated_power(double peak_intensity_w_sr);

/// Fraunhofer criterion R >= 2 * D_max^2 / lambda. A zero-size antenna is
/// always in the far field.
bool far_field_check(double distance_m, double max_dimension_m,
                     double wavelength_m);

}  // namespace rfmesh::linkbudget
