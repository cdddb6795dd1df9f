#include "mollify/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mollify {

namespace {

constexpr int kPascalSize = 64;

struct Pascal {
  std::array<std::array<double, kPascalSize>, kPascalSize> c{};
  constexpr Pascal() {
    for (int n = 0; n < kPascalSize; ++n) {
      c[n][0] = 1.0;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0.0);
    }
  }
};

constexpr Pascal kPascal{};

constexpr std::array<double, 2 * Jet2::kMaxOrder + 1> kInvFactorial = [] {
  std::array<double, 2 * Jet2::kMaxOrder + 1> out{};
  double f = 1.0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (k > 0) f *= static_cast<double>(k);
    out[k] = 1.0 / f;
  }
  return out;
}();

void check_order(int order) {
  if (order < 0 || order > Jet2::kMaxOrder) {
    throw std::invalid_argument("jet order " + std::to_string(order) + " outside [0, " +
                                std::to_string(Jet2::kMaxOrder) + "]");
  }
}

}  // namespace

Jet2::Jet2(int order_x, int order_y) : mx_(order_x), my_(order_y) {
  check_order(order_x);
  check_order(order_y);
}

Jet2 Jet2::constant(double value, int order_x, int order_y) {
  Jet2 j(order_x, order_y);
  j.c_[0] = value;
  return j;
}

Jet2 Jet2::affine(double x_coeff, double y_coeff, double constant, int order_x, int order_y) {
  Jet2 j(order_x, order_y);
  j.c_[0] = constant;
  if (order_x > 0) j(1, 0) = x_coeff;
  if (order_y > 0) j(0, 1) = y_coeff;
  return j;
}

double Jet2::mixed_derivative(int i, int j) const {
  if (i < 0 || j < 0 || i > mx_ || j > my_) {
    throw std::out_of_range("mixed derivative (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") exceeds jet orders (" + std::to_string(mx_) + ", " +
                            std::to_string(my_) + ")");
  }
  return (*this)(i, j) / (kInvFactorial[static_cast<std::size_t>(i)] *
                          kInvFactorial[static_cast<std::size_t>(j)]);
}

bool Jet2::all_finite() const {
  for (int i = 0; i <= mx_; ++i)
    for (int j = 0; j <= my_; ++j)
      if (!std::isfinite((*this)(i, j))) return false;
  return true;
}

double Jet2::max_abs() const {
  double m = 0.0;
  for (int i = 0; i <= mx_; ++i)
    for (int j = 0; j <= my_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

void Jet2::require_same_orders(const Jet2& other) const {
  if (mx_ != other.mx_ || my_ != other.my_) {
    throw std::invalid_argument("jet order mismatch: (" + std::to_string(mx_) + ", " +
                                std::to_string(my_) + ") vs (" + std::to_string(other.mx_) +
                                ", " + std::to_string(other.my_) + ")");
  }
}

Jet2& Jet2::operator+=(const Jet2& other) {
  require_same_orders(other);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += other.c_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& other) {
  require_same_orders(other);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= other.c_[k];
  return *this;
}

Jet2& Jet2::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  a.require_same_orders(b);
  Jet2 out(a.mx_, a.my_);
  for (int i = 0; i <= a.mx_; ++i) {
    for (int j = 0; j <= a.my_; ++j) {
      double acc = 0.0;
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= j; ++l) acc += a(k, l) * b(i - k, j - l);
      out(i, j) = acc;
    }
  }
  return out;
}

Jet2 exp(const Jet2& a) {
  const int mx = a.order_x();
  const int my = a.order_y();
  Jet2 d = a;
  d(0, 0) = 0.0;
  Jet2 sum = Jet2::constant(1.0, mx, my);
  Jet2 term = sum;
  // d is nilpotent of index mx + my + 1 under truncation.
  for (int k = 1; k <= mx + my; ++k) {
    term = term * d;
    term *= 1.0 / static_cast<double>(k);
    sum += term;
  }
  return sum * std::exp(a.constant_term());
}

Jet2 compose(const Polynomial& p, const Jet2& a) {
  Jet2 acc(a.order_x(), a.order_y());
  const auto c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * a;
    acc += *it;
  }
  return acc;
}

Jet2 exp_affine(double x_coeff, double y_coeff, double constant, int order_x, int order_y) {
  Jet2 out(order_x, order_y);
  const double base = std::exp(constant);
  double xp = base;
  for (int i = 0; i <= order_x; ++i) {
    double term = xp * kInvFactorial[static_cast<std::size_t>(i)];
    for (int j = 0; j <= order_y; ++j) {
      out(i, j) = term * kInvFactorial[static_cast<std::size_t>(j)];
      term *= y_coeff;
    }
    xp *= x_coeff;
  }
  return out;
}

Jet2 compose_affine(const Polynomial& p, double x_coeff, double y_coeff, double constant,
                    int order_x, int order_y) {
  Jet2 out(order_x, order_y);
  const auto c = p.coeffs();
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg >= kPascalSize) throw std::invalid_argument("polynomial degree too large for jet composition");
  const int kmax = std::min(order_x + order_y, deg);
  // taylor[k] = p^{(k)}(constant) / k!
  std::array<double, 2 * Jet2::kMaxOrder + 1> taylor{};
  for (int k = 0; k <= kmax; ++k) {
    double acc = 0.0;
    for (int i = deg; i >= k; --i) acc = acc * constant + kPascal.c[i][k] * c[static_cast<std::size_t>(i)];
    taylor[static_cast<std::size_t>(k)] = acc;
  }
  double xp = 1.0;
  for (int i = 0; i <= order_x; ++i) {
    double yp = 1.0;
    for (int j = 0; j <= order_y && i + j <= kmax; ++j) {
      out(i, j) = taylor[static_cast<std::size_t>(i + j)] * kPascal.c[i + j][i] * xp * yp;
      yp *= y_coeff;
    }
    xp *= x_coeff;
  }
  return out;
}

}  // namespace mollify
