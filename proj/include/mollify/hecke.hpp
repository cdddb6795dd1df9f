#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace mollify {

using Int128 = __int128;

std::string to_string(Int128 v);

/// Integer-indexed arithmetic coefficients a(1) .. a(N).
class CoefficientSeries {
 public:
  CoefficientSeries() = default;
  /// values[0] is a(1).
  explicit CoefficientSeries(std::vector<double> values);

  /// delta(1) = 1, delta(n) = 0 otherwise.
  static CoefficientSeries unit(std::size_t cutoff);
  static CoefficientSeries constant(std::size_t cutoff, double value);

  std::size_t cutoff() const { return values_.size(); }
  double operator[](std::size_t n) const { return values_[n - 1]; }
  double& operator[](std::size_t n) { return values_[n - 1]; }
  const std::vector<double>& values() const { return values_; }

  /// Pointwise product a(n) g(n).
  template <class F>
  CoefficientSeries map(F&& g) const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = g(i + 1, values_[i]);
    return CoefficientSeries(std::move(out));
  }

 private:
  std::vector<double> values_;
};

/// Primitive form description. Only the discriminant form Delta (weight 12,
/// level 1, trivial character) is backed by an eigenvalue oracle.
struct FormSpec {
  int weight = 12;
  int level = 1;

  static FormSpec delta() { return {}; }
  bool is_delta() const { return weight == 12 && level == 1; }
};

/// tau(1) .. tau(N) from q prod_{n>=1} (1 - q^n)^24, entry [n - 1] = tau(n).
/// Exact; throws std::overflow_error if a coefficient leaves the Int128 range.
std::vector<Int128> delta_q_expansion(std::size_t N);

/// lambda(n) = tau(n) / n^{(k-1)/2}.
CoefficientSeries lambda_series(const FormSpec& form, std::size_t N);
/// Same, from precomputed tau values.
CoefficientSeries lambda_from_tau(const std::vector<Int128>& tau);

/// Number of divisors d(n) for n <= N (entry [n - 1]).
std::vector<int> divisor_counts(std::size_t N);
/// Moebius function for n <= N (entry [n - 1]).
std::vector<int> moebius(std::size_t N);

/// (a * b)(n) = sum_{d | n} a(d) b(n / d). Compensated summation; cutoff is
/// the smaller of the two.
CoefficientSeries dirichlet_convolve(const CoefficientSeries& a, const CoefficientSeries& b);
/// a^{*k}; k = 0 gives the unit series.
CoefficientSeries dirichlet_power(const CoefficientSeries& a, int k);
/// Series b with a * b = delta. Throws std::domain_error if a(1) = 0.
CoefficientSeries dirichlet_inverse(const CoefficientSeries& a);

/// mu_{f,l}: Dirichlet coefficients of 1 / L(f, s)^l, as the inverse of
/// lambda^{*l}.
CoefficientSeries mu_series(const CoefficientSeries& lambda, int ell);

/// One verified identity.
struct IdentityCheck {
  std::string name;
  double max_deviation = 0.0;
  std::size_t worst_index = 0;
  double tolerance = 0.0;
  bool passed() const { return max_deviation <= tolerance; }
};

struct VerificationReport {
  std::vector<IdentityCheck> checks;
  bool passed() const;
};

/// Both Hecke relations for all m, n with mn <= N, checked exactly on tau:
///   tau(m) tau(n) = sum_{d | (m,n)} d^{11} tau(mn / d^2)
///   tau(mn) = sum_{d | (m,n)} mu(d) d^{11} tau(m / d) tau(n / d)
/// plus the same relations on lambda in floating point.
VerificationReport verify_hecke(const FormSpec& form, std::size_t N);

/// |lambda(n)| <= d(n) for n <= N; max_deviation is the largest excess.
VerificationReport verify_deligne(const FormSpec& form, std::size_t N);

/// (mu_{f,l} * lambda^{*(l-1)} * lambda)(j) = delta(j) and, with
/// sigma_{0,0} = lambda^{*2}, (mu_{f,l+1} * lambda^{*(l-1)} * sigma_{0,0})(j) = delta(j).
VerificationReport verify_unit_identities(const CoefficientSeries& lambda, int ell,
                                          double tolerance);
VerificationReport verify_unit_identities(const FormSpec& form, int ell, std::size_t N,
                                          double tolerance);

/// sigma_{alpha,-beta}(l) = sum_{ab = l} a^{-alpha} b^{beta} lambda(a) lambda(b).
CoefficientSeries sigma_shift(const CoefficientSeries& lambda, double alpha, double beta);
CoefficientSeries sigma_shift(const FormSpec& form, double alpha, double beta, std::size_t N);

struct RankinEstimate {
  /// (X', sum_{n <= X'} a(n)^2 / X') at X' = X/4, X/2, X.
  std::vector<std::pair<std::size_t, double>> estimates;
  double value() const { return estimates.back().second; }
  /// max |e_i - e_j| / |e_last| over the three estimates.
  double spread() const;
};

/// Mean square of a series. Requires X >= 1000 and X <= cutoff.
RankinEstimate rankin_constant(const CoefficientSeries& a, std::size_t X);
/// Mean of the series itself (for f already equal to lambda^2 etc.).
RankinEstimate mean_value(const CoefficientSeries& f, std::size_t X);

/// Partial sums of f^{*k} against their predicted main terms.
struct GrowthReport {
  int k = 0;
  std::size_t M = 0;
  double c = 0.0;
  double sum = 0.0;           ///< sum_{m <= M} f^{*k}(m)
  double log_sum = 0.0;       ///< sum_{m <= M} f^{*k}(m) / m
  double main_term = 0.0;     ///< c^k M log^{k-1} M / k!
  double log_main_term = 0.0; ///< c^k log^k M / (k! k)
  double main_term_km1 = 0.0;     ///< c^k M log^{k-1} M / (k-1)!
  double log_main_term_km1 = 0.0; ///< c^k log^k M / k!
  double ratio() const { return sum / main_term; }
  double log_ratio() const { return log_sum / log_main_term; }
  double ratio_km1() const { return sum / main_term_km1; }
  double log_ratio_km1() const { return log_sum / log_main_term_km1; }
};

/// Growth check at every M in Ms (each <= f.cutoff()); f^{*k} is computed
/// once at the largest M.
std::vector<GrowthReport> lemma8_check(const CoefficientSeries& f, int k,
                                       const std::vector<std::size_t>& Ms, double c);

}  // namespace mollify
