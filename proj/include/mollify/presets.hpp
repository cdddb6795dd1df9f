#pragma once

#include <string>
#include <vector>

#include "mollify/terms.hpp"

namespace mollify {

/// A published parameter set together with the kappa it is expected to give.
struct Preset {
  std::string name;
  std::string description;
  MollifierSpec spec;
  double target_kappa;
  double tolerance;
};

/// ramanujan, kim-sarnak, zeta-farmer, conrey-one-piece.
std::vector<std::string> preset_names();

/// Throws std::invalid_argument for an unknown name.
Preset preset(const std::string& name);

/// Smoothing polynomial of the zeta-farmer preset exactly as printed. Its Q(0)
/// is 0.9689; the preset itself uses a corrected top coefficient.
SmoothingPolynomial zeta_farmer_printed_q();

}  // namespace mollify
