#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "mollify/error.hpp"
#include "mollify/jet.hpp"

namespace mollify {

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to one.
struct QuadratureRule {
  int points_per_axis = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  static QuadratureRule gauss_legendre(int n);
};

/// Cached rules; returned references stay valid for the process lifetime.
const QuadratureRule& gauss_legendre_rule(int n);

using Point = std::array<double, 4>;

/// Values the engine can accumulate: double or Jet2.
template <class V>
concept Integrable = requires(V a, const V& b, double s) {
  { a += b };
  { a * s } -> std::convertible_to<V>;
};

inline bool is_finite_value(double v) { return std::isfinite(v); }
inline bool is_finite_value(const Jet2& v) { return v.all_finite(); }
inline double value_norm(double v) { return std::abs(v); }
inline double value_norm(const Jet2& v) { return v.max_abs(); }
inline void print_value(std::ostream& os, double v) { os << v; }
inline void print_value(std::ostream& os, const Jet2& v) {
  os << "jet(const " << v.constant_term() << ", max " << v.max_abs() << ")";
}

namespace detail {

[[noreturn]] inline void report_non_finite(const Point& x, int dim) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "non-finite integrand at node (";
  for (int k = 0; k < dim; ++k) msg << (k ? ", " : "") << x[static_cast<std::size_t>(k)];
  msg << ")";
  throw QuadratureError(msg.str());
}

template <class V, class F>
void accumulate_axis(F& f, const QuadratureRule& rule, int dim, int axis, Point& x, double w,
                     std::optional<V>& acc) {
  const auto n = static_cast<std::size_t>(rule.points_per_axis);
  for (std::size_t i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(axis)] = rule.nodes[i];
    const double wi = w * rule.weights[i];
    if (axis + 1 < dim) {
      accumulate_axis<V>(f, rule, dim, axis + 1, x, wi, acc);
      continue;
    }
    V v = f(x);
    if (!is_finite_value(v)) report_non_finite(x, dim);
    if (acc) {
      *acc += v * wi;
    } else {
      acc = v * wi;
    }
  }
}

}  // namespace detail

/// Tensor-product rule on [0,1]^dim. f receives a Point whose first dim
/// entries are set. Jet-valued integrands are integrated coefficient-wise.
template <class F>
auto integrate_cube(F&& f, int dim, const QuadratureRule& rule) {
  using V = std::decay_t<std::invoke_result_t<F&, const Point&>>;
  static_assert(Integrable<V>);
  if (dim < 1 || dim > 4) throw std::invalid_argument("integrate_cube: dimension must be in 1..4");
  if (rule.points_per_axis < 1) throw std::invalid_argument("integrate_cube: empty rule");
  Point x{};
  std::optional<V> acc;
  detail::accumulate_axis<V>(f, rule, dim, 0, x, 1.0, acc);
  return *acc;
}

/// Integral over {a, b >= 0, a + b <= 1} via b = (1 - a) t, Jacobian (1 - a).
template <class F>
auto integrate_simplex2(F&& f, const QuadratureRule& rule) {
  return integrate_cube(
      [&f](const Point& p) {
        const double a = p[0];
        const double b = (1.0 - a) * p[1];
        return f(a, b) * (1.0 - a);
      },
      2, rule);
}

/// Result of an order-doubling run.
template <class V>
struct Converged {
  V value;
  double error_estimate;  ///< |last - previous| in value_norm.
  int order;              ///< points per axis of the accepted value.
};

struct ConvergenceOptions {
  double tol = 1e-10;  ///< relative difference between successive orders
  int start_order = 12;
  int max_order = 48;
  /// When positive, evaluate once at this order; the error estimate is NaN.
  int fixed_order = 0;
};

/// Evaluates eval(order) at start_order, 2*start_order, ... until successive
/// values differ by at most tol relative to the newer value. Throws
/// QuadratureError naming both values if max_order is reached first.
template <class Eval>
auto converge(Eval&& eval, const ConvergenceOptions& opts) {
  using V = std::decay_t<std::invoke_result_t<Eval&, int>>;
  if (opts.fixed_order > 0) {
    return Converged<V>{eval(opts.fixed_order), std::nan(""), opts.fixed_order};
  }
  if (!(opts.tol > 0.0)) throw std::invalid_argument("converge: tolerance must be positive");
  if (opts.start_order < 1 || opts.max_order < 2 * opts.start_order) {
    throw std::invalid_argument("converge: need max_order >= 2 * start_order >= 2");
  }
  int order = opts.start_order;
  V previous = eval(order);
  while (2 * order <= opts.max_order) {
    order *= 2;
    V current = eval(order);
    V diff = current;
    diff += previous * -1.0;
    const double delta = value_norm(diff);
    const double scale = value_norm(current);
    if (delta <= opts.tol * scale || delta == 0.0) {
      return Converged<V>{current, delta, order};
    }
    if (2 * order > opts.max_order) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "quadrature did not converge by order " << order << ": order " << order / 2
          << " gave ";
      print_value(msg, previous);
      msg << ", order " << order << " gave ";
      print_value(msg, current);
      msg << " (|difference| " << delta << ", tol " << opts.tol << ")";
      throw QuadratureError(msg.str());
    }
    previous = current;
  }
  throw QuadratureError("converge: unreachable");
}

template <class F>
auto converge_cube(F&& f, int dim, const ConvergenceOptions& opts) {
  return converge([&](int n) { return integrate_cube(f, dim, gauss_legendre_rule(n)); }, opts);
}

template <class F>
auto converge_simplex2(F&& f, const ConvergenceOptions& opts) {
  return converge([&](int n) { return integrate_simplex2(f, gauss_legendre_rule(n)); }, opts);
}

}  // namespace mollify
