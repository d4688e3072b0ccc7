#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "rfmesh/linkbudget.hpp"

namespace rfmesh::cli {

inline std::string fmt_g(double value, int significant_digits = 9) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
  return buf;
}

inline double watts_to_dbm(double watts) {
  if (watts <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(watts * 1000.0);
}

inline linkbudget::JonesVector polarization_by_name(const std::string& name) {
  if (name == "h" || name == "horizontal")
    return linkbudget::polarization_horizontal();
  if (name == "v" || name == "vertical")
    return linkbudget::polarization_vertical();
  if (name == "rhcp") return linkbudget::polarization_rhcp();
  if (name == "lhcp") return linkbudget::polarization_lhcp();
  if (name == "slant45") return linkbudget::polarization_slant45();
  throw std::domain_error("unknown polarization '" + name +
                          "' (use h, v, rhcp, lhcp or slant45)");
}

}  // namespace rfmesh::cli
