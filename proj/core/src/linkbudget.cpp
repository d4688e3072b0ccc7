#include "rfmesh/linkbudget.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rfmesh::linkbudget {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfWaveDipolePeak = 1.643;
constexpr double kUnitNormTolerance = 1e-9;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::domain_error(message);
}

void validate_direction(const Direction& d) {
  require(std::isfinite(d.theta_rad) && d.theta_rad >= 0.0 && d.theta_rad <= kPi,
          "direction: theta must lie in [0, pi]");
  require(std::isfinite(d.phi_rad) && d.phi_rad >= 0.0 && d.phi_rad < 2.0 * kPi,
          "direction: phi must lie in [0, 2*pi)");
}

double norm_squared(const JonesVector& v) {
  return std::norm(v[0]) + std::norm(v[1]);
}

}  // namespace

JonesVector polarization_horizontal() { return {{{1.0, 0.0}, {0.0, 0.0}}}; }
JonesVector polarization_vertical() { return {{{0.0, 0.0}, {1.0, 0.0}}}; }

JonesVector polarization_rhcp() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {{{s, 0.0}, {0.0, -s}}};
}

JonesVector polarization_lhcp() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {{{s, 0.0}, {0.0, s}}};
}

JonesVector polarization_slant45() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {{{s, 0.0}, {s, 0.0}}};
}

Pattern Pattern::isotropic() { return Pattern{PatternKind::kIsotropic, 1.0, 0.0}; }

Pattern Pattern::half_wave_dipole() {
  return Pattern{PatternKind::kHalfWaveDipole, kHalfWaveDipolePeak, 0.0};
}

Pattern Pattern::gaussian_beam(double boresight_directivity,
                               double half_power_beamwidth_deg) {
  return Pattern{PatternKind::kGaussianBeam, boresight_directivity,
                 half_power_beamwidth_deg};
}

double directivity(const Pattern& pattern, double theta_rad) {
  switch (pattern.kind) {
    case PatternKind::kIsotropic:
      return 1.0;
    case PatternKind::kHalfWaveDipole: {
      const double s = std::sin(theta_rad);
      if (s <= 1e-12) return 0.0;  // endpoint limit at theta = 0, pi
      const double c = std::cos(kPi / 2.0 * std::cos(theta_rad));
      return kHalfWaveDipolePeak * (c / s) * (c / s);
    }
    case PatternKind::kGaussianBeam: {
      const double hpbw_rad = pattern.half_power_beamwidth_deg * kPi / 180.0;
      const double u = theta_rad / hpbw_rad;
      return pattern.boresight_directivity *
             std::exp(-4.0 * std::numbers::ln2 * u * u);
    }
  }
  throw std::domain_error("directivity: unknown pattern kind");
}

Direction peak_direction(const Pattern& pattern) {
  if (pattern.kind == PatternKind::kHalfWaveDipole) return {kPi / 2.0, 0.0};
  return {0.0, 0.0};
}

void AntennaSpec::validate() const {
  require(std::isfinite(radiation_efficiency) && radiation_efficiency > 0.0 &&
              radiation_efficiency <= 1.0,
          "antenna: radiation_efficiency must lie in (0, 1]");
  require(std::isfinite(feedline_efficiency) && feedline_efficiency > 0.0 &&
              feedline_efficiency <= 1.0,
          "antenna: feedline_efficiency must lie in (0, 1]");
  require(std::abs(std::sqrt(norm_squared(polarization)) - 1.0) <=
              kUnitNormTolerance,
          "antenna: polarization must be a unit vector");
  require(std::isfinite(max_dimension_m) && max_dimension_m >= 0.0,
          "antenna: max_dimension_m must be >= 0");
  if (pattern.kind == PatternKind::kGaussianBeam) {
    require(std::isfinite(pattern.boresight_directivity) &&
                pattern.boresight_directivity >= 0.0,
            "antenna: gaussian beam directivity must be >= 0");
    require(std::isfinite(pattern.half_power_beamwidth_deg) &&
                pattern.half_power_beamwidth_deg > 0.0,
            "antenna: gaussian beam HPBW must be > 0");
  }
}

void LinkGeometry::validate() const {
  require(std::isfinite(frequency_hz) && frequency_hz > 0.0,
          "geometry: frequency must be > 0");
  require(std::isfinite(distance_m) && distance_m > 0.0,
          "geometry: distance must be > 0");
  validate_direction(tx_direction);
  validate_direction(rx_direction);
}

double wavelength(double frequency_hz) {
  require(std::isfinite(frequency_hz) && frequency_hz > 0.0,
          "wavelength: frequency must be > 0");
  return kSpeedOfLight / frequency_hz;
}

double gain(const AntennaSpec& antenna, const Direction& direction) {
  antenna.validate();
  validate_direction(direction);
  return antenna.radiation_efficiency *
         directivity(antenna.pattern, direction.theta_rad);
}

double power_density(double tx_power_w, double tx_gain, double distance_m) {
  require(std::isfinite(tx_power_w) && tx_power_w >= 0.0,
          "power_density: transmit power must be >= 0");
  require(std::isfinite(tx_gain) && tx_gain >= 0.0,
          "power_density: gain must be >= 0");
  require(std::isfinite(distance_m) && distance_m > 0.0,
          "power_density: distance must be > 0");
  return tx_power_w * tx_gain / (4.0 * kPi * distance_m * distance_m);
}

double effective_aperture(double rx_gain, double wavelength_m) {
  require(std::isfinite(rx_gain) && rx_gain >= 0.0,
          "effective_aperture: gain must be >= 0");
  require(std::isfinite(wavelength_m) && wavelength_m > 0.0,
          "effective_aperture: wavelength must be > 0");
  return wavelength_m * wavelength_m * rx_gain / (4.0 * kPi);
}

double polarization_loss_factor(const JonesVector& rho_t,
                                const JonesVector& rho_r) {
  require(std::abs(std::sqrt(norm_squared(rho_t)) - 1.0) <= kUnitNormTolerance,
          "polarization_loss_factor: tx vector must be unit-norm");
  require(std::abs(std::sqrt(norm_squared(rho_r)) - 1.0) <= kUnitNormTolerance,
          "polarization_loss_factor: rx vector must be unit-norm");
  const std::complex<double> inner =
      std::conj(rho_t[0]) * rho_r[0] + std::conj(rho_t[1]) * rho_r[1];
  return std::min(std::norm(inner), 1.0);
}

double friis_ratio(const LinkGeometry& geometry, const AntennaSpec& tx,
                   const AntennaSpec& rx, bool matched) {
  geometry.validate();
  const double lambda = wavelength(geometry.frequency_hz);
  const double spreading = lambda / (4.0 * kPi * geometry.distance_m);
  double ratio = spreading * spreading * gain(tx, geometry.tx_direction) *
                 gain(rx, geometry.rx_direction);
  if (!matched) {
    ratio *= polarization_loss_factor(tx.polarization, rx.polarization);
    ratio *= tx.feedline_efficiency;
  }
  return ratio;
}

double path_loss_db(double frequency_hz, double distance_m) {
  require(std::isfinite(distance_m) && distance_m > 0.0,
          "path_loss_db: distance must be > 0");
  const double lambda = wavelength(frequency_hz);
  return 20.0 * std::log10(4.0 * kPi * distance_m / lambda);
}

LinkBudgetResult received_power(double tx_power_w, const LinkGeometry& geometry,
                                const AntennaSpec& tx, const AntennaSpec& rx) {
  require(std::isfinite(tx_power_w) && tx_power_w >= 0.0,
          "received_power: transmit power must be >= 0");
  geometry.validate();
  rx.validate();

  const double lambda = wavelength(geometry.frequency_hz);
  const double density = power_density(
      tx_power_w, gain(tx, geometry.tx_direction), geometry.distance_m);
  // Receive chain applies efficiency exactly once: aperture from directivity,
  // e_r multiplied explicitly.
  const double aperture = effective_aperture(
      directivity(rx.pattern, geometry.rx_direction.theta_rad), lambda);
  const double plf = polarization_loss_factor(tx.polarization, rx.polarization);

  LinkBudgetResult result;
  result.power_density_w_m2 = density;
  result.received_power_w = rx.radiation_efficiency * plf * aperture * density *
                            tx.feedline_efficiency;
  result.path_loss_db = path_loss_db(geometry.frequency_hz, geometry.distance_m);
  result.plf = plf;
  result.far_field_ok =
      far_field_check(geometry.distance_m,
                      std::max(tx.max_dimension_m, rx.max_dimension_m), lambda);
  return result;
}

double eirp(double tx_power_w, double tx_gain, double feedline_efficiency) {
  require(std::isfinite(tx_power_w) && tx_power_w >= 0.0,
          "eirp: transmit power must be >= 0");
  require(std::isfinite(tx_gain) && tx_gain >= 0.0, "eirp: gain must be >= 0");
  require(std::isfinite(feedline_efficiency) && feedline_efficiency >= 0.0 &&
              feedline_efficiency <= 1.0,
          "eirp: feed-line efficiency must lie in [0, 1]");
  return tx_power_w * tx_gain * feedline_efficiency;
}

double total_radiated_power(double peak_intensity_w_sr) {
  require(std::isfinite(peak_intensity_w_sr) && peak_intensity_w_sr >= 0.0,
          "total_radiated_power: intensity must be >= 0");
  return 4.0 * kPi * peak_intensity_w_sr;
}

bool far_field_check(double distance_m, double max_dimension_m,
                     double wavelength_m) {
  require(std::isfinite(wavelength_m) && wavelength_m > 0.0,
          "far_field_check: wavelength must be > 0");
  require(std::isfinite(max_dimension_m) && max_dimension_m >= 0.0,
          "far_field_check: max dimension must be >= 0");
  require(std::isfinite(distance_m) && distance_m > 0.0,
          "far_field_check: distance must be > 0");
  return distance_m >= 2.0 * max_dimension_m * max_dimension_m / wavelength_m;
}

}  // namespace rfmesh::linkbudget
