#include "mollify/hecke.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace mollify {

namespace {

using Poly = std::vector<Int128>;

Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

int bit_length(Int128 v) {
  auto u = static_cast<unsigned __int128>(abs128(v));
  int bits = 0;
  while (u) {
    ++bits;
    u >>= 1;
  }
  return bits;
}

int max_bits(const Poly& p) {
  int b = 0;
  for (Int128 v : p) b = std::max(b, bit_length(v));
  return b;
}

// RAII wrapper for mpz_t.
class Mpz {
 public:
  Mpz() { mpz_init(v_); }
  ~Mpz() { mpz_clear(v_); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
  mpz_ptr get() { return v_; }
  mpz_srcptr get() const { return v_; }

 private:
  mpz_t v_;
};

// Packs |p_i| for coefficients with the requested sign into slots of
// slot_words 64-bit words.
void pack_signed_part(const Poly& p, std::size_t slot_words, bool negative, Mpz& out) {
  std::vector<std::uint64_t> words(p.size() * slot_words, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Int128 v = p[i];
    if ((v < 0) != negative || v == 0) continue;
    const auto u = static_cast<unsigned __int128>(abs128(v));
    words[i * slot_words] = static_cast<std::uint64_t>(u);
    if (slot_words > 1) words[i * slot_words + 1] = static_cast<std::uint64_t>(u >> 64);
  }
  mpz_import(out.get(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
}

// Evaluates p at 2^(64 slot_words) as a signed big integer.
void pack(const Poly& p, std::size_t slot_words, Mpz& out) {
  Mpz neg;
  pack_signed_part(p, slot_words, false, out);
  pack_signed_part(p, slot_words, true, neg);
  mpz_sub(out.get(), out.get(), neg.get());
}

// Recovers the first length balanced-digit coefficients of x.
Poly unpack(const Mpz& x, std::size_t slot_words, std::size_t length) {
  const bool negative = mpz_sgn(x.get()) < 0;
  Mpz mag;
  mpz_abs(mag.get(), x.get());
  const std::size_t nbits = mpz_sizeinbase(mag.get(), 2);
  std::vector<std::uint64_t> words(nbits / 64 + 1, 0);
  std::size_t count = 0;
  mpz_export(words.data(), &count, -1, sizeof(std::uint64_t), 0, 0, mag.get());
  words.resize(std::max(words.size(), length * slot_words), 0);

  Poly out(length, 0);
  std::uint64_t carry = 0;
  std::vector<std::uint64_t> slot(slot_words);
  for (std::size_t i = 0; i < length; ++i) {
    for (std::size_t w = 0; w < slot_words; ++w) slot[w] = words[i * slot_words + w];
    std::uint64_t c = carry;
    for (std::size_t w = 0; w < slot_words && c; ++w) {
      slot[w] += c;
      c = slot[w] == 0 ? 1 : 0;
    }
    const std::uint64_t overflow = c;
    const bool slot_negative = (slot[slot_words - 1] >> 63) != 0;
    // The balanced digit must fit in 128 bits: words above the second are
    // pure sign extension.
    const std::uint64_t ext = slot_negative ? ~std::uint64_t{0} : 0;
    for (std::size_t w = 2; w < slot_words; ++w) {
      if (slot[w] != ext) throw std::overflow_error("q-expansion coefficient exceeds 128 bits");
    }
    unsigned __int128 u = slot[0];
    if (slot_words > 1) {
      u |= static_cast<unsigned __int128>(slot[1]) << 64;
      if (slot_words > 2 && ((slot[1] >> 63) != 0) != slot_negative) {
        throw std::overflow_error("q-expansion coefficient exceeds 128 bits");
      }
    } else if (slot_negative) {
      u |= static_cast<unsigned __int128>(~std::uint64_t{0}) << 64;
    }
    const auto v = static_cast<Int128>(u);
    out[i] = negative ? -v : v;
    carry = overflow + (slot_negative ? 1 : 0);
  }
  return out;
}

// Truncated product a * b mod q^length by Kronecker substitution.
Poly multiply_truncated(const Poly& a, const Poly& b, std::size_t length) {
  const int bound_bits = max_bits(a) + max_bits(b) +
                         bit_length(static_cast<Int128>(std::min(a.size(), b.size()))) + 2;
  const auto slot_words = static_cast<std::size_t>((bound_bits + 63) / 64);
  Mpz pa;
  Mpz pb;
  Mpz prod;
  pack(a, slot_words, pa);
  if (&a == &b) {
    mpz_mul(prod.get(), pa.get(), pa.get());
  } else {
    pack(b, slot_words, pb);
    mpz_mul(prod.get(), pa.get(), pb.get());
  }
  return unpack(prod, slot_words, length);
}

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

Int128 checked_mul(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("tau product overflow");
  return r;
}

Int128 checked_add(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("tau sum overflow");
  return r;
}

Int128 pow11(std::size_t d) {
  Int128 r = 1;
  for (int k = 0; k < 11; ++k) r = checked_mul(r, static_cast<Int128>(d));
  return r;
}

void require_delta(const FormSpec& form) {
  if (!form.is_delta()) {
    throw std::invalid_argument("only the weight 12, level 1 form Delta has an eigenvalue oracle");
  }
}

void record(IdentityCheck& check, double deviation, std::size_t index) {
  if (deviation > check.max_deviation || !std::isfinite(deviation)) {
    check.max_deviation = std::isfinite(deviation) ? deviation : INFINITY;
    check.worst_index = index;
  }
}

}  // namespace

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  auto u = static_cast<unsigned __int128>(neg ? -v : v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

CoefficientSeries::CoefficientSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("coefficient series needs cutoff >= 1");
}

CoefficientSeries CoefficientSeries::unit(std::size_t cutoff) {
  std::vector<double> v(cutoff, 0.0);
  if (!v.empty()) v[0] = 1.0;
  return CoefficientSeries(std::move(v));
}

CoefficientSeries CoefficientSeries::constant(std::size_t cutoff, double value) {
  return CoefficientSeries(std::vector<double>(cutoff, value));
}

std::vector<Int128> delta_q_expansion(std::size_t N) {
  if (N == 0) throw std::invalid_argument("delta_q_expansion: N must be >= 1");
  // prod (1 - q^n) truncated at q^{N-1}, from the pentagonal number theorem.
  Poly euler(N, 0);
  euler[0] = 1;
  for (std::size_t k = 1;; ++k) {
    const std::size_t g1 = k * (3 * k - 1) / 2;
    const std::size_t g2 = k * (3 * k + 1) / 2;
    if (g1 >= N) break;
    const Int128 sign = (k % 2 == 0) ? 1 : -1;
    euler[g1] += sign;
    if (g2 < N) euler[g2] += sign;
  }
  // Power ladder 1 -> 2 -> 3 -> 6 -> 12 -> 24.
  const Poly e2 = multiply_truncated(euler, euler, N);
  const Poly e3 = multiply_truncated(e2, euler, N);
  const Poly e6 = multiply_truncated(e3, e3, N);
  const Poly e12 = multiply_truncated(e6, e6, N);
  return multiply_truncated(e12, e12, N);
}

CoefficientSeries lambda_from_tau(const std::vector<Int128>& tau) {
  std::vector<double> v(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const long double n = static_cast<long double>(i + 1);
    v[i] = static_cast<double>(static_cast<long double>(tau[i]) / std::pow(n, 5.5L));
  }
  return CoefficientSeries(std::move(v));
}

CoefficientSeries lambda_series(const FormSpec& form, std::size_t N) {
  require_delta(form);
  return lambda_from_tau(delta_q_expansion(N));
}

std::vector<int> divisor_counts(std::size_t N) {
  std::vector<int> d(N, 0);
  for (std::size_t a = 1; a <= N; ++a)
    for (std::size_t m = a; m <= N; m += a) ++d[m - 1];
  return d;
}

std::vector<int> moebius(std::size_t N) {
  std::vector<int> mu(N, 1);
  std::vector<bool> composite(N + 1, false);
  for (std::size_t p = 2; p <= N; ++p) {
    if (composite[p]) continue;
    for (std::size_t m = p; m <= N; m += p) {
      if (m > p) composite[m] = true;
      mu[m - 1] = -mu[m - 1];
    }
    if (p <= N / p) {
      for (std::size_t m = p * p; m <= N; m += p * p) mu[m - 1] = 0;
    }
  }
  return mu;
}

CoefficientSeries dirichlet_convolve(const CoefficientSeries& a, const CoefficientSeries& b) {
  const std::size_t N = std::min(a.cutoff(), b.cutoff());
  std::vector<Neumaier> acc(N);
  for (std::size_t d = 1; d <= N; ++d) {
    const double ad = a[d];
    if (ad == 0.0) continue;
    for (std::size_t m = 1; d * m <= N; ++m) acc[d * m - 1].add(ad * b[m]);
  }
  std::vector<double> out(N);
  for (std::size_t i = 0; i < N; ++i) out[i] = acc[i].value();
  return CoefficientSeries(std::move(out));
}

CoefficientSeries dirichlet_power(const CoefficientSeries& a, int k) {
  if (k < 0) throw std::invalid_argument("dirichlet_power: k must be >= 0");
  CoefficientSeries result = CoefficientSeries::unit(a.cutoff());
  CoefficientSeries base = a;
  bool first = true;
  while (k > 0) {
    if (k & 1) {
      result = first ? base : dirichlet_convolve(result, base);
      first = false;
    }
    k >>= 1;
    if (k > 0) base = dirichlet_convolve(base, base);
  }
  return result;
}

CoefficientSeries dirichlet_inverse(const CoefficientSeries& a) {
  if (a[1] == 0.0) throw std::domain_error("dirichlet_inverse: a(1) = 0 has no inverse");
  const std::size_t N = a.cutoff();
  std::vector<Neumaier> acc(N);
  std::vector<double> b(N, 0.0);
  const double inv1 = 1.0 / a[1];
  for (std::size_t n = 1; n <= N; ++n) {
    const double target = (n == 1 ? 1.0 : 0.0) - acc[n - 1].value();
    b[n - 1] = target * inv1;
    const double bn = b[n - 1];
    if (bn == 0.0) continue;
    for (std::size_t d = 2; d * n <= N; ++d) acc[d * n - 1].add(a[d] * bn);
  }
  return CoefficientSeries(std::move(b));
}

CoefficientSeries mu_series(const CoefficientSeries& lambda, int ell) {
  if (ell < 1) throw std::invalid_argument("mu_series: l must be >= 1");
  return dirichlet_inverse(dirichlet_power(lambda, ell));
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

VerificationReport verify_hecke(const FormSpec& form, std::size_t N) {
  require_delta(form);
  const auto tau = delta_q_expansion(N);
  const auto lambda = lambda_from_tau(tau);
  const auto mu = moebius(N);

  IdentityCheck prod_int{"tau(m)tau(n) = sum d^11 tau(mn/d^2)", 0.0, 0, 0.0};
  IdentityCheck mult_int{"tau(mn) = sum mu(d) d^11 tau(m/d) tau(n/d)", 0.0, 0, 0.0};
  IdentityCheck prod_real{"lambda(m)lambda(n) = sum lambda(mn/d^2)", 0.0, 0, 1e-10};
  IdentityCheck mult_real{"lambda(mn) = sum mu(d) lambda(m/d) lambda(n/d)", 0.0, 0, 1e-10};

  auto T = [&tau](std::size_t n) { return tau[n - 1]; };
  for (std::size_t m = 1; m <= N; ++m) {
    for (std::size_t n = 1; m * n <= N; ++n) {
      const std::size_t g = std::gcd(m, n);
      const std::size_t mn = m * n;
      Int128 rhs1 = 0;
      Int128 rhs2 = 0;
      double rrhs1 = 0.0;
      double rrhs2 = 0.0;
      for (std::size_t d = 1; d <= g; ++d) {
        if (g % d != 0) continue;
        const Int128 d11 = pow11(d);
        rhs1 = checked_add(rhs1, checked_mul(d11, T(mn / (d * d))));
        rrhs1 += lambda[mn / (d * d)];
        if (mu[d - 1] != 0) {
          const Int128 term = checked_mul(checked_mul(d11, T(m / d)), T(n / d));
          rhs2 = checked_add(rhs2, mu[d - 1] > 0 ? term : -term);
          rrhs2 += mu[d - 1] * lambda[m / d] * lambda[n / d];
        }
      }
      const Int128 lhs1 = checked_mul(T(m), T(n));
      record(prod_int, static_cast<double>(abs128(lhs1 - rhs1)), mn);
      record(mult_int, static_cast<double>(abs128(T(mn) - rhs2)), mn);
      record(prod_real, std::abs(lambda[m] * lambda[n] - rrhs1), mn);
      record(mult_real, std::abs(lambda[mn] - rrhs2), mn);
    }
  }
  return {{prod_int, mult_int, prod_real, mult_real}};
}

VerificationReport verify_deligne(const FormSpec& form, std::size_t N) {
  require_delta(form);
  const auto lambda = lambda_series(form, N);
  const auto d = divisor_counts(N);
  IdentityCheck check{"|lambda(n)| <= d(n)", 0.0, 0, 0.0};
  for (std::size_t n = 1; n <= N; ++n) {
    // Excess over the bound; zero when it holds.
    record(check, std::max(0.0, std::abs(lambda[n]) - d[n - 1]), n);
  }
  return {{check}};
}

VerificationReport verify_unit_identities(const CoefficientSeries& lambda, int ell,
                                          double tolerance) {
  if (ell < 1) throw std::invalid_argument("verify_unit_identities: l must be >= 1");
  const std::size_t N = lambda.cutoff();
  const auto lam_pow = dirichlet_power(lambda, ell - 1);
  const auto mu_l = mu_series(lambda, ell);
  const auto mu_next = mu_series(lambda, ell + 1);
  const auto sigma00 = dirichlet_power(lambda, 2);

  auto delta_deviation = [&](const CoefficientSeries& s, IdentityCheck& check) {
    for (std::size_t j = 1; j <= N; ++j) record(check, std::abs(s[j] - (j == 1 ? 1.0 : 0.0)), j);
  };
  const std::string l = std::to_string(ell);
  IdentityCheck a{"(mu_" + l + " * lambda^*" + std::to_string(ell - 1) + " * lambda) = delta", 0.0,
                  0, tolerance};
  delta_deviation(dirichlet_convolve(dirichlet_convolve(mu_l, lam_pow), lambda), a);
  IdentityCheck b{"(mu_" + std::to_string(ell + 1) + " * lambda^*" + std::to_string(ell - 1) +
                      " * sigma_00) = delta",
                  0.0, 0, tolerance};
  delta_deviation(dirichlet_convolve(dirichlet_convolve(mu_next, lam_pow), sigma00), b);
  IdentityCheck c{"mu_" + l + " = (mu_1)^*" + l, 0.0, 0, tolerance};
  const auto alt = dirichlet_power(mu_series(lambda, 1), ell);
  for (std::size_t j = 1; j <= N; ++j) record(c, std::abs(alt[j] - mu_l[j]), j);
  return {{a, b, c}};
}

VerificationReport verify_unit_identities(const FormSpec& form, int ell, std::size_t N,
                                          double tolerance) {
  return verify_unit_identities(lambda_series(form, N), ell, tolerance);
}

CoefficientSeries sigma_shift(const CoefficientSeries& lambda, double alpha, double beta) {
  const auto left = lambda.map([alpha](std::size_t n, double v) {
    return v * std::pow(static_cast<double>(n), -alpha);
  });
  const auto right = lambda.map([beta](std::size_t n, double v) {
    return v * std::pow(static_cast<double>(n), beta);
  });
  return dirichlet_convolve(left, right);
}

CoefficientSeries sigma_shift(const FormSpec& form, double alpha, double beta, std::size_t N) {
  return sigma_shift(lambda_series(form, N), alpha, beta);
}

double RankinEstimate::spread() const {
  double lo = estimates.front().second;
  double hi = lo;
  for (const auto& e : estimates) {
    lo = std::min(lo, e.second);
    hi = std::max(hi, e.second);
  }
  return (hi - lo) / std::abs(estimates.back().second);
}

RankinEstimate mean_value(const CoefficientSeries& f, std::size_t X) {
  if (X < 1000) throw std::invalid_argument("mean_value: X must be >= 1000");
  if (X > f.cutoff()) throw std::invalid_argument("mean_value: X exceeds series cutoff");
  RankinEstimate out;
  Neumaier acc;
  const std::size_t marks[] = {X / 4, X / 2, X};
  std::size_t next = 0;
  for (std::size_t n = 1; n <= X; ++n) {
    acc.add(f[n]);
    while (next < 3 && n == marks[next]) {
      out.estimates.emplace_back(n, acc.value() / static_cast<double>(n));
      ++next;
    }
  }
  return out;
}

RankinEstimate rankin_constant(const CoefficientSeries& a, std::size_t X) {
  return mean_value(a.map([](std::size_t, double v) { return v * v; }), X);
}

std::vector<GrowthReport> lemma8_check(const CoefficientSeries& f, int k,
                                       const std::vector<std::size_t>& Ms, double c) {
  if (k < 1) throw std::invalid_argument("lemma8_check: k must be >= 1");
  if (Ms.empty()) throw std::invalid_argument("lemma8_check: no cutoffs given");
  const std::size_t top = *std::max_element(Ms.begin(), Ms.end());
  if (top > f.cutoff()) throw std::invalid_argument("lemma8_check: M exceeds series cutoff");
  std::vector<double> head(f.values().begin(), f.values().begin() + static_cast<long>(top));
  const auto fk = dirichlet_power(CoefficientSeries(std::move(head)), k);

  double kfact = 1.0;
  for (int i = 2; i <= k; ++i) kfact *= i;
  const double km1fact = kfact / k;

  std::vector<GrowthReport> out;
  for (std::size_t M : Ms) {
    Neumaier s;
    Neumaier sl;
    for (std::size_t m = 1; m <= M; ++m) {
      s.add(fk[m]);
      sl.add(fk[m] / static_cast<double>(m));
    }
    GrowthReport r;
    r.k = k;
    r.M = M;
    r.c = c;
    r.sum = s.value();
    r.log_sum = sl.value();
    const double L = std::log(static_cast<double>(M));
    const double ck = std::pow(c, k);
    r.main_term = ck * static_cast<double>(M) * std::pow(L, k - 1) / kfact;
    r.log_main_term = ck * std::pow(L, k) / (kfact * k);
    r.main_term_km1 = ck * static_cast<double>(M) * std::pow(L, k - 1) / km1fact;
    r.log_main_term_km1 = ck * std::pow(L, k) / kfact;
    out.push_back(r);
  }
  return out;
}

}  // namespace mollify
