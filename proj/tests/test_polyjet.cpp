#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "mollify/error.hpp"
#include "mollify/jet.hpp"
#include "mollify/presets.hpp"

using namespace mollify;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) v = d(rng);
  return Polynomial(c);
}

}  // namespace

TEST_CASE("polynomial evaluation") {
  CHECK(Polynomial({0.0, 1.0})(0.7) == 0.7);
  const auto r = preset("ramanujan").spec;
  CHECK(std::abs(r.pieces[0](1.0) - 1.0) <= 1e-5);
  CHECK(std::abs(r.q(0.0) - 1.0) <= 1e-5);
  CHECK(Polynomial({1.0, 2.0, 3.0})(2.0) == 17.0);
}

TEST_CASE("polynomial derivative") {
  CHECK(Polynomial::monomial(3).derivative(2) == Polynomial({0.0, 6.0}));
  const auto p2 = preset("ramanujan").spec.pieces[1].poly();
  CHECK(p2.derivative(2)(0.0) == 0.0);
  CHECK(Polynomial({1, 2, 3}).derivative(5).is_zero());
  CHECK(Polynomial().degree() == Polynomial::kZeroDegree);
  CHECK(Polynomial({1, 2, 0, 0}).degree() == 1);
  CHECK_THROWS_AS(Polynomial({1.0}).derivative(-1), std::invalid_argument);
}

TEST_CASE("polynomial algebra") {
  const Polynomial a({1, 1});
  const Polynomial b({-1, 1});
  CHECK(a * b == Polynomial({-1, 0, 1}));
  CHECK(a + b == Polynomial({0, 2}));
  CHECK(binomial_power(1.0, -2.0, 3) == Polynomial({1, -6, 12, -8}));
}

TEST_CASE("jet basics") {
  SUBCASE("exp of x") {
    const Jet2 e = exp(Jet2::affine(1, 0, 0, 1, 0));
    CHECK(e(0, 0) == doctest::Approx(1.0));
    CHECK(e(1, 0) == doctest::Approx(1.0));
  }
  SUBCASE("square of x + y") {
    const Jet2 s = compose(Polynomial::monomial(2), Jet2::affine(1, 1, 0, 1, 1));
    CHECK(s(1, 1) == doctest::Approx(2.0));
    CHECK(s(0, 0) == 0.0);
  }
  SUBCASE("mixed derivative of exp(x + y)") {
    CHECK(exp(Jet2::affine(1, 1, 0, 1, 1)).mixed_derivative(1, 1) == doctest::Approx(1.0));
  }
  SUBCASE("x^2 y^2") {
    const Jet2 x = Jet2::affine(1, 0, 0, 2, 2);
    const Jet2 y = Jet2::affine(0, 1, 0, 2, 2);
    CHECK((x * x * y * y).mixed_derivative(2, 2) == doctest::Approx(4.0));
  }
  SUBCASE("exp(x - y)") {
    CHECK(exp(Jet2::affine(1, -1, 0, 2, 2)).mixed_derivative(1, 1) == doctest::Approx(-1.0));
  }
  SUBCASE("out of range derivative") {
    CHECK_THROWS_AS(Jet2(1, 1).mixed_derivative(2, 0), std::out_of_range);
  }
  SUBCASE("order mismatch") {
    CHECK_THROWS_AS(Jet2(1, 1) + Jet2(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(Jet2(1, 1) * Jet2(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(Jet2(5, 0), std::invalid_argument);
  }
}

TEST_CASE("truncated product depends only on lower orders") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1, 1);
  Jet2 a(2, 2);
  Jet2 b(2, 2);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) {
      a(i, j) = d(rng);
      b(i, j) = d(rng);
    }
  const Jet2 ab = a * b;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) {
      double s = 0;
      for (int p = 0; p <= i; ++p)
        for (int q = 0; q <= j; ++q) s += a(p, q) * b(i - p, j - q);
      CHECK(ab(i, j) == doctest::Approx(s).epsilon(1e-14));
    }
  CHECK((a * b)(1, 2) == doctest::Approx((b * a)(1, 2)).epsilon(1e-15));
}

TEST_CASE("exp jet matches its Taylor series") {
  // exp(c + a x + b y): coefficient (i, j) is e^c a^i b^j / (i! j!)
  const double a = 0.3;
  const double b = -1.7;
  const double c = 0.4;
  const Jet2 e = exp(Jet2::affine(a, b, c, 3, 3));
  const Jet2 direct = exp_affine(a, b, c, 3, 3);
  const double f[] = {1, 1, 2, 6};
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      const double want = std::exp(c) * std::pow(a, i) * std::pow(b, j) / (f[i] * f[j]);
      CHECK(e(i, j) == doctest::Approx(want).epsilon(1e-13));
      CHECK(direct(i, j) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("polynomial composition with an affine jet is exact") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = random_poly(rng, 7);
    const double a = d(rng);
    const double b = d(rng);
    const double c = d(rng);
    const Jet2 horner = compose(p, Jet2::affine(a, b, c, 3, 3));
    const Jet2 taylor = compose_affine(p, a, b, c, 3, 3);
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j) {
        const double want = std::pow(a, i) * std::pow(b, j) * p.derivative(i + j)(c);
        CHECK(horner.mixed_derivative(i, j) == doctest::Approx(want).epsilon(1e-12));
        CHECK(taylor.mixed_derivative(i, j) == doctest::Approx(want).epsilon(1e-12));
      }
  }
}

TEST_CASE("jets agree with central finite differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-1, 1);
  const double h = 1e-4;
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial p = random_poly(rng, 5);
    const Polynomial q = random_poly(rng, 4);
    const double a1 = d(rng), b1 = d(rng), c1 = d(rng);
    const double a2 = d(rng), b2 = d(rng), c2 = d(rng);
    const double a3 = d(rng), b3 = d(rng), c3 = d(rng);
    auto f = [&](double x, double y) {
      return std::exp(a1 * x + b1 * y + c1) * p(a2 * x + b2 * y + c2) * q(a3 * x + b3 * y + c3);
    };
    const int order = 1 + trial % 3;
    const Jet2 jet = exp(Jet2::affine(a1, b1, c1, order, order)) *
                     compose(p, Jet2::affine(a2, b2, c2, order, order)) *
                     compose(q, Jet2::affine(a3, b3, c3, order, order));
    const double dx = (f(h, 0) - f(-h, 0)) / (2 * h);
    const double dy = (f(0, h) - f(0, -h)) / (2 * h);
    const double dxy = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
    const double scale = std::max({1.0, std::abs(jet(0, 0))});
    CHECK(std::abs(jet.mixed_derivative(1, 0) - dx) <= 1e-6 * std::max(scale, std::abs(dx)));
    CHECK(std::abs(jet.mixed_derivative(0, 1) - dy) <= 1e-6 * std::max(scale, std::abs(dy)));
    CHECK(std::abs(jet.mixed_derivative(1, 1) - dxy) <= 1e-6 * std::max(scale, std::abs(dxy)));
    if (order >= 2) {
      const double dxx = (f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / (h * h);
      CHECK(std::abs(jet.mixed_derivative(2, 0) - dxx) <= 1e-6 * std::max(scale, std::abs(dxx)));
    }
  }
}

TEST_CASE("smoothing polynomial symmetry") {
  const auto q = preset("ramanujan").spec.q;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(0, 1);
  for (int i = 0; i < 100; ++i) {
    const double x = d(rng);
    CHECK(std::abs(q(x) + q(1 - x) - 2 * q.constant_term()) <= 1e-13);
  }
  const auto implied = SmoothingPolynomial::from_odd({0.3, -0.1});
  CHECK(implied.constant_term() == doctest::Approx(0.8));
  CHECK(implied(0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(SmoothingPolynomial(0.5, {0.2}), SpecError);
  CHECK_NOTHROW(SmoothingPolynomial(0.5, {0.2}, false));
  const auto linear = SmoothingPolynomial(0.5, {0.5});
  CHECK(linear.monomial() == Polynomial({1.0, -1.0}));
}

TEST_CASE("mollifier polynomial constraints") {
  CHECK_NOTHROW(MollifierPolynomial(1, Polynomial({0, 1})));
  CHECK_THROWS_AS(MollifierPolynomial(1, Polynomial({0.1, 0.9})), SpecError);
  CHECK_THROWS_AS(MollifierPolynomial(1, Polynomial({0, 0.5})), SpecError);
  CHECK_NOTHROW(MollifierPolynomial(1, Polynomial({0, 0.5}), false));
  CHECK_NOTHROW(MollifierPolynomial(2, Polynomial({0, 0, 0, 1.0})));
  CHECK_THROWS_AS(MollifierPolynomial(2, Polynomial({0, 0, 1.0})), SpecError);
  CHECK_THROWS_AS(MollifierPolynomial(3, Polynomial({0, 0, 0, 0, 0, 0, 1.0})), SpecError);
  CHECK(MollifierPolynomial::constraint_violation(2, Polynomial({0, 1.0})).find("P_2") !=
        std::string::npos);
  CHECK(MollifierPolynomial::first_free_power(1) == 2);
  CHECK(MollifierPolynomial::first_free_power(2) == 3);
  CHECK(MollifierPolynomial::first_free_power(3) == 7);
}

TEST_CASE("free parametrization satisfies constraints by construction") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-3, 3);
  for (int ell = 1; ell <= 3; ++ell) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> free(4);
      for (auto& v : free) v = d(rng);
      const auto p = MollifierPolynomial::from_free(ell, free);
      CHECK(MollifierPolynomial::constraint_violation(ell, p.poly()).empty());
      const auto back = p.free_coefficients();
      REQUIRE(back.size() == free.size());
      for (std::size_t i = 0; i < free.size(); ++i) CHECK(back[i] == doctest::Approx(free[i]));
    }
  }
  CHECK(MollifierPolynomial::from_free(1, std::vector<double>{})(1.0) == 1.0);
}
