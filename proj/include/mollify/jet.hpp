#pragma once

#include <array>
#include <span>

#include "mollify/polynomial.hpp"

namespace mollify {

/// Bivariate Taylor expansion at the origin truncated to x^i y^j with
/// i <= order_x and j <= order_y. Entry (i, j) is the coefficient of x^i y^j.
class Jet2 {
 public:
  static constexpr int kMaxOrder = 4;

  Jet2() : Jet2(0, 0) {}
  /// Zero jet. Throws std::invalid_argument for orders outside [0, kMaxOrder].
  Jet2(int order_x, int order_y);

  static Jet2 constant(double value, int order_x, int order_y);
  /// c + a x + b y.
  static Jet2 affine(double x_coeff, double y_coeff, double constant, int order_x, int order_y);

  int order_x() const { return mx_; }
  int order_y() const { return my_; }

  double operator()(int i, int j) const { return c_[index(i, j)]; }
  double& operator()(int i, int j) { return c_[index(i, j)]; }
  double constant_term() const { return c_[0]; }

  /// d^{i+j}/dx^i dy^j at the origin, i.e. i! j! (i, j). Throws
  /// std::out_of_range when (i, j) exceeds the stored orders.
  double mixed_derivative(int i, int j) const;

  bool all_finite() const;
  /// Largest |coefficient|.
  double max_abs() const;

  Jet2& operator+=(const Jet2& other);
  Jet2& operator-=(const Jet2& other);
  Jet2& operator+=(double s) { c_[0] += s; return *this; }
  Jet2& operator*=(double s);
  Jet2& operator*=(const Jet2& other) { return *this = *this * other; }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator+(Jet2 a, double s) { return a += s; }
  friend Jet2 operator+(double s, Jet2 a) { return a += s; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  /// Truncated Cauchy product.
  friend Jet2 operator*(const Jet2& a, const Jet2& b);

 private:
  static constexpr int kStride = kMaxOrder + 1;
  static constexpr std::size_t index(int i, int j) {
    return static_cast<std::size_t>(i * kStride + j);
  }
  void require_same_orders(const Jet2& other) const;

  int mx_;
  int my_;
  std::array<double, kStride * kStride> c_{};
};

/// Truncated exp(a) via exp(a0) * sum_k (a - a0)^k / k!.
Jet2 exp(const Jet2& a);

/// p(a) by Horner's scheme in jet arithmetic.
Jet2 compose(const Polynomial& p, const Jet2& a);

/// exp(c + a x + b y) built directly from exp(c) a^i b^j / (i! j!).
Jet2 exp_affine(double x_coeff, double y_coeff, double constant, int order_x, int order_y);

/// p(c + a x + b y) built from the Taylor coefficients p^{(k)}(c) / k!.
Jet2 compose_affine(const Polynomial& p, double x_coeff, double y_coeff, double constant,
                    int order_x, int order_y);

}  // namespace mollify
