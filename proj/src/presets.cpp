#include "mollify/presets.hpp"

#include <stdexcept>

namespace mollify {

namespace {

MollifierPolynomial piece(int ell, std::vector<double> coeffs, bool strict) {
  return MollifierPolynomial(ell, Polynomial(std::move(coeffs)), strict);
}

Preset ramanujan() {
  MollifierSpec s;
  s.theta = 0.0;
  s.nu = {0.25, 0.25};
  s.R = 2.82505;
  s.q = SmoothingPolynomial(.498939, {1.53685, -2.7925, 2.77524, -1.01853});
  s.pieces = {piece(1, {0, .921756, .150879, -.371912, .488862, -.189585}, true),
              piece(2, {0, 0, 0, -.0000537029, .0000752763, -.000142568}, true)};
  s.convention = Convention::section5;
  return {"ramanujan", "two pieces under the Ramanujan bound (theta = 0)", s, .0693872, 1e-3};
}

Preset kim_sarnak() {
  MollifierSpec s;
  s.theta = 7.0 / 64.0;
  s.nu = {5.0 / 27.0, 25.0 / 149.0};
  s.R = 3.21;
  s.q = SmoothingPolynomial(.499386, {1.58992, -2.99061, 3.01825, -1.11694});
  s.pieces = {piece(1, {0, .93271, .147723, -.35572, .444208, -.168921}, true),
              piece(2, {0, 0, 0, -.0000665503, -.00016405, .0000736009}, true)};
  s.convention = Convention::section5;
  return {"kim-sarnak", "two pieces under the Kim-Sarnak bound (theta = 7/64)", s, .0297607,
          1e-3};
}

constexpr double kFarmerA0 = .521417;
constexpr double kFarmerOdd[] = {.488276, -.0155446, .00683032};
constexpr double kFarmerPrintedTop = -.0320679;

Preset zeta_farmer() {
  MollifierSpec s;
  s.theta = 0.0;
  s.nu = {1.0, 1.0};
  s.R = 0.75;
  std::vector<double> odd(std::begin(kFarmerOdd), std::end(kFarmerOdd));
  double top = 1.0 - kFarmerA0;
  for (double c : odd) top -= c;
  odd.push_back(top);
  s.q = SmoothingPolynomial(kFarmerA0, odd);
  s.pieces = {piece(1, {0, .702374, .00612233, .281569, .296314, -.286379}, false),
              piece(2, {0, 0, 0, .0690439, -.0187972, .0319485}, false)};
  s.strict = false;
  s.convention = Convention::one_piece;
  return {"zeta-farmer",
          "zeta function with nu_1 = nu_2 = 1 (Farmer's conjecture), R = 0.75; the top "
          "coefficient of Q is solved from Q(0) = 1",
          s, .60563, 2e-3};
}

Preset conrey_one_piece() {
  MollifierSpec s;
  s.theta = 0.0;
  s.nu = {0.5};
  s.R = 1.3;
  s.q = SmoothingPolynomial(0.5, {0.5});
  s.pieces = {piece(1, {0, 1}, true)};
  s.strict = false;
  s.convention = Convention::one_piece;
  const double target = kappa_one_piece(c11_closed_form(1.3, 0.5), 1.3);
  return {"conrey-one-piece", "one piece, P(x) = x, Q(x) = 1 - x, R = 1.3, nu = 1/2", s, target,
          1e-8};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"ramanujan", "kim-sarnak", "zeta-farmer", "conrey-one-piece"};
}

Preset preset(const std::string& name) {
  if (name == "ramanujan") return ramanujan();
  if (name == "kim-sarnak") return kim_sarnak();
  if (name == "zeta-farmer") return zeta_farmer();
  if (name == "conrey-one-piece") return conrey_one_piece();
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
}

SmoothingPolynomial zeta_farmer_printed_q() {
  std::vector<double> odd(std::begin(kFarmerOdd), std::end(kFarmerOdd));
  odd.push_back(kFarmerPrintedTop);
  return SmoothingPolynomial(kFarmerA0, odd, false);
}

}  // namespace mollify
