#include "mollify/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "mollify/error.hpp"

namespace mollify {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

Polynomial Polynomial::monomial(int power, double coefficient) {
  if (power < 0) throw std::invalid_argument("monomial power must be nonnegative");
  std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
  c.back() = coefficient;
  return Polynomial(std::move(c));
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative(int m) const {
  if (m < 0) throw std::invalid_argument("derivative order must be nonnegative");
  const auto n = static_cast<int>(coeffs_.size());
  if (m >= n) return Polynomial();
  std::vector<double> out(static_cast<std::size_t>(n - m));
  for (int i = m; i < n; ++i) {
    double falling = 1.0;
    for (int k = 0; k < m; ++k) falling *= static_cast<double>(i - k);
    out[static_cast<std::size_t>(i - m)] = falling * coeffs_[static_cast<std::size_t>(i)];
  }
  return Polynomial(std::move(out));
}

int Polynomial::degree() const {
  for (auto i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
    if (coeffs_[static_cast<std::size_t>(i)] != 0.0) return i;
  }
  return kZeroDegree;
}

double Polynomial::coeff(int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(power)];
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial();
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

bool Polynomial::operator==(const Polynomial& other) const {
  const std::size_t n = std::max(coeffs_.size(), other.coeffs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (coeff(static_cast<int>(i)) != other.coeff(static_cast<int>(i))) return false;
  }
  return true;
}

Polynomial binomial_power(double c0, double c1, int n) {
  Polynomial out({1.0});
  const Polynomial factor({c0, c1});
  for (int k = 0; k < n; ++k) out = out * factor;
  return out;
}

// MollifierPolynomial

int MollifierPolynomial::first_free_power(int piece) {
  return piece == 1 ? 2 : piece * (piece - 1) + 1;
}

std::string MollifierPolynomial::constraint_violation(int piece, const Polynomial& p) {
  std::ostringstream msg;
  if (piece < 1) {
    msg << "piece index must be >= 1, got " << piece;
    return msg.str();
  }
  if (piece == 1) {
    if (p.coeff(0) != 0.0) {
      msg << "P_1(0) = " << p.coeff(0) << " violates P_1(0) = 0";
    } else if (std::abs(p(1.0) - 1.0) > kUnitValueTolerance) {
      msg << "P_1(1) = " << p(1.0) << " violates P_1(1) = 1";
    }
    return msg.str();
  }
  const int last = piece * (piece - 1);
  for (int i = 0; i <= last; ++i) {
    if (p.coeff(i) != 0.0) {
      msg << "P_" << piece << " has nonzero x^" << i << " coefficient; P_" << piece
          << "^(m)(0) = 0 is required for m <= " << last;
      return msg.str();
    }
  }
  return {};
}

MollifierPolynomial::MollifierPolynomial(int piece, Polynomial p, bool strict)
    : piece_(piece), poly_(std::move(p)) {
  if (piece < 1) throw SpecError("piece index must be >= 1");
  if (strict) {
    if (auto why = constraint_violation(piece, poly_); !why.empty()) throw SpecError(why);
  }
}

MollifierPolynomial MollifierPolynomial::from_free(int piece, std::span<const double> free) {
  if (piece < 1) throw SpecError("piece index must be >= 1");
  const int first = first_free_power(piece);
  std::vector<double> c(static_cast<std::size_t>(first) + free.size(), 0.0);
  for (std::size_t i = 0; i < free.size(); ++i) c[static_cast<std::size_t>(first) + i] = free[i];
  if (piece == 1) {
    double rest = 0.0;
    for (double f : free) rest += f;
    c[1] = 1.0 - rest;
  }
  return MollifierPolynomial(piece, Polynomial(std::move(c)), false);
}

std::vector<double> MollifierPolynomial::free_coefficients() const {
  const int first = first_free_power(piece_);
  std::vector<double> out;
  for (int i = first; i < static_cast<int>(poly_.size()); ++i) out.push_back(poly_.coeff(i));
  return out;
}

// SmoothingPolynomial

namespace {

Polynomial assemble_smoothing(double a0, std::span<const double> odd) {
  Polynomial q({a0});
  for (std::size_t i = 0; i < odd.size(); ++i) {
    q += binomial_power(1.0, -2.0, static_cast<int>(2 * i + 1)) * odd[i];
  }
  return q;
}

}  // namespace

SmoothingPolynomial SmoothingPolynomial::from_odd(std::vector<double> odd) {
  double sum = 0.0;
  for (double c : odd) sum += c;
  return SmoothingPolynomial(1.0 - sum, std::move(odd), true);
}

SmoothingPolynomial::SmoothingPolynomial(double a0, std::vector<double> odd, bool strict)
    : a0_(a0), odd_(std::move(odd)), monomial_(assemble_smoothing(a0_, odd_)) {
  if (strict && std::abs(monomial_(0.0) - 1.0) > kUnitValueTolerance) {
    std::ostringstream msg;
    msg << "Q(0) = " << monomial_(0.0) << " violates Q(0) = 1";
    throw SpecError(msg.str());
  }
}

}  // namespace mollify
