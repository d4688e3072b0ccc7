#pragma once

#include <string>

namespace rfmesh {

/// Shortest decimal string that parses back to exactly the same double.
/// Infinities and NaN come back as "inf", "-inf", "nan".
std::string shortest_double(double value);

}  // namespace rfmesh
