#pragma once

#include <string>
#include <utility>
#include <vector>

#include "szabolab/connection.hpp"

namespace szabolab {
namespace catalog {

/// f1 = 0, f2 = -x3, f3 = x2 (single-row family). Cyclic parallel and nilpotent.
Connection family1_rotational();

/// f1 = x1, f2 = 2*x3, f3 = -2*x2 (single-row family). Cyclic parallel and nilpotent.
Connection family1_dilating();

/// f1 = x1^2, f2 = x1+x2, f3 = x2+x3^2 (cyclic-shift family). Cyclic parallel
/// but the operator is not nilpotent.
Connection family2_quadratic();

/// f1 = 0, f2 = x2, f3 = x2+x3^2 (cyclic-shift family). Nilpotent.
Connection family2_cascade();

/// f1 = x1^2, f2 = x1+x2, f3 = 0 (cyclic-shift family). Nilpotent.
Connection family2_planar();

/// The named 3-dimensional connections above plus the flat one.
std::vector<std::pair<std::string, Connection>> corpus();

}  // namespace catalog
}  // namespace szabolab
