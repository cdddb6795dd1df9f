#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "mollify/quadrature.hpp"

using namespace mollify;

TEST_CASE("rule normalization and nodes") {
  for (int n : {1, 2, 5, 12, 24, 48}) {
    const auto& r = gauss_legendre_rule(n);
    double s = 0;
    for (std::size_t i = 0; i < r.weights.size(); ++i) {
      s += r.weights[i];
      CHECK(r.weights[i] > 0.0);
      CHECK(r.nodes[i] > 0.0);
      CHECK(r.nodes[i] < 1.0);
    }
    CHECK(std::abs(s - 1.0) <= 1e-14);
  }
  CHECK(&gauss_legendre_rule(12) == &gauss_legendre_rule(12));
}

TEST_CASE("monomial exactness up to degree 2n - 1") {
  for (int n : {1, 3, 8, 24}) {
    const auto& r = gauss_legendre_rule(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double got = integrate_cube([k](const Point& p) { return std::pow(p[0], k); }, 1, r);
      CHECK(std::abs(got - 1.0 / (k + 1)) <= 2e-15);
    }
  }
}

TEST_CASE("cube examples") {
  const auto& r24 = gauss_legendre_rule(24);
  CHECK(std::abs(integrate_cube([](const Point& p) { return p[0] * p[0]; }, 1,
                                gauss_legendre_rule(2)) -
                 1.0 / 3.0) <= 1e-15);
  const double e = integrate_cube([](const Point& p) { return std::exp(p[0] + p[1]); }, 2, r24);
  CHECK(std::abs(e - (M_E - 1) * (M_E - 1)) <= 1e-12);
  const double v4 = integrate_cube([](const Point& p) { return p[0] * p[1] * p[2] * p[3]; }, 4,
                                   gauss_legendre_rule(2));
  CHECK(std::abs(v4 - 1.0 / 16.0) <= 1e-15);
  CHECK_THROWS_AS(integrate_cube([](const Point&) { return 1.0; }, 5, r24), std::invalid_argument);
  CHECK_THROWS_AS(integrate_cube([](const Point&) { return 1.0; }, 0, r24), std::invalid_argument);
}

TEST_CASE("non-finite integrand names the node") {
  const auto& r = gauss_legendre_rule(4);
  try {
    integrate_cube([](const Point& p) { return 1.0 / (p[1] - gauss_legendre_rule(4).nodes[2]); }, 2,
                   r);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::string(e.what()).find("non-finite integrand at node (") != std::string::npos);
  }
}

TEST_CASE("simplex examples") {
  const auto& r = gauss_legendre_rule(12);
  CHECK(std::abs(integrate_simplex2([](double, double) { return 1.0; }, r) - 0.5) <= 1e-13);
  CHECK(std::abs(integrate_simplex2([](double a, double b) { return a * b; }, r) - 1.0 / 24) <=
        1e-12);
  const int ell = 2;
  CHECK(std::abs(integrate_simplex2(
                     [ell](double a, double b) { return std::pow(a * b, ell - 1); }, r) -
                 1.0 / 24) <= 1e-12);
}

TEST_CASE("simplex symmetry on random polynomials") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(-1, 1);
  const auto& r = gauss_legendre_rule(12);
  for (int trial = 0; trial < 10; ++trial) {
    double c[4][4];
    for (auto& row : c)
      for (auto& v : row) v = d(rng);
    auto f = [&c](double a, double b) {
      double s = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += c[i][j] * std::pow(a, i) * std::pow(b, j);
      return s;
    };
    const double ab = integrate_simplex2(f, r);
    const double ba = integrate_simplex2([&f](double a, double b) { return f(b, a); }, r);
    CHECK(std::abs(ab - ba) <= 1e-12);
  }
}

TEST_CASE("jet integration commutes with coefficient extraction") {
  const auto& r = gauss_legendre_rule(16);
  auto jet_f = [](const Point& p) {
    return exp(Jet2::affine(p[0], p[1] - 0.5, p[2], 2, 2)) *
           compose(Polynomial({1, -2, 0.5}), Jet2::affine(1.0, p[0], p[1], 2, 2));
  };
  const Jet2 whole = integrate_cube(jet_f, 3, r);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) {
      const double piece =
          integrate_cube([&](const Point& p) { return jet_f(p)(i, j); }, 3, r);
      CHECK(std::abs(whole(i, j) - piece) <= 1e-12 * std::max(1.0, std::abs(piece)));
    }
}

TEST_CASE("converge") {
  ConvergenceOptions opts;
  SUBCASE("smooth integrand converges by order 48") {
    const auto res = converge_cube([](const Point& p) { return std::exp(std::sin(3 * p[0]) * p[1]); }, 2, opts);
    CHECK(res.order <= 48);
    CHECK(res.error_estimate <= 1e-10 * std::abs(res.value));
  }
  SUBCASE("constant converges at the first doubling") {
    const auto res = converge_cube([](const Point&) { return 2.5; }, 3, opts);
    CHECK(res.order == 24);
    CHECK(res.error_estimate <= 1e-13);
    CHECK(res.value == doctest::Approx(2.5).epsilon(1e-13));
  }
  SUBCASE("non-positive tolerance is rejected") {
    opts.tol = 0.0;
    CHECK_THROWS_AS(converge_cube([](const Point&) { return 1.0; }, 1, opts), std::invalid_argument);
    opts.tol = -1.0;
    CHECK_THROWS_AS(converge_cube([](const Point&) { return 1.0; }, 1, opts), std::invalid_argument);
  }
  SUBCASE("non-convergence reports both values") {
    opts.max_order = 24;
    try {
      converge_cube([](const Point& p) { return std::sqrt(p[0]); }, 1, opts);
      FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("order 12 gave") != std::string::npos);
      CHECK(msg.find("order 24 gave") != std::string::npos);
    }
  }
  SUBCASE("fixed order evaluates once") {
    int calls = 0;
    opts.fixed_order = 20;
    const auto res = converge(
        [&](int n) {
          ++calls;
          return static_cast<double>(n);
        },
        opts);
    CHECK(calls == 1);
    CHECK(res.value == 20.0);
    CHECK(std::isnan(res.error_estimate));
  }
  SUBCASE("simplex convergence") {
    const auto res = converge_simplex2([](double a, double b) { return std::exp(a - b); }, opts);
    // int_0^1 int_0^{1-a} e^{a-b} db da = (e + e^{-1})/2 - 1
    CHECK(std::abs(res.value - ((M_E + 1 / M_E) / 2 - 1)) <= 1e-12);
  }
}
