#include "mollify/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mollify/error.hpp"

namespace mollify {

namespace {

constexpr double kFailed = -std::numeric_limits<double>::infinity();

int max_power(const MollifierPolynomial& p) {
  return std::max(p.poly().degree(), MollifierPolynomial::first_free_power(p.piece()));
}

}  // namespace

SearchSpace SearchSpace::from_spec(const MollifierSpec& spec, double R_min, double R_max) {
  std::vector<int> degrees;
  for (const auto& p : spec.pieces) degrees.push_back(max_power(p));
  return SearchSpace(std::move(degrees), static_cast<int>(spec.q.odd_coeffs().size()), R_min,
                     R_max);
}

SearchSpace::SearchSpace(std::vector<int> degrees, int q_odd_terms, double R_min, double R_max)
    : degrees_(std::move(degrees)), q_odd_terms_(q_odd_terms), R_min_(R_min), R_max_(R_max) {
  if (!(R_min > 0.0 && R_max >= R_min)) throw std::invalid_argument("search space: need 0 < R_min <= R_max");
  if (q_odd_terms < 0) throw std::invalid_argument("search space: negative Q size");
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    const int ell = static_cast<int>(i) + 1;
    const int first = MollifierPolynomial::first_free_power(ell);
    if (degrees_[i] < first) {
      throw std::invalid_argument("search space: P" + std::to_string(ell) + " needs degree >= " +
                                  std::to_string(first));
    }
    for (int k = first; k <= degrees_[i]; ++k) {
      names_.push_back("P" + std::to_string(ell) + ".x" + std::to_string(k));
    }
  }
  for (int i = 0; i < q_odd_terms; ++i) names_.push_back("Q.c" + std::to_string(2 * i + 1));
  names_.emplace_back("R");
  frozen_.assign(names_.size(), false);
}

std::size_t SearchSpace::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("no coordinate named '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t SearchSpace::freeze(const std::string& prefix) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& s = names_[i];
    if (s == prefix || (s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0 &&
                        s[prefix.size()] == '.')) {
      frozen_[i] = true;
      ++n;
    }
  }
  if (n == 0) throw std::invalid_argument("freeze: no coordinate matches '" + prefix + "'");
  return n;
}

std::size_t SearchSpace::free_dimension() const {
  return static_cast<std::size_t>(std::count(frozen_.begin(), frozen_.end(), false));
}

std::vector<double> SearchSpace::encode(const MollifierSpec& spec) const {
  if (spec.pieces.size() != degrees_.size()) {
    throw std::invalid_argument("encode: spec has " + std::to_string(spec.pieces.size()) +
                                " pieces, search space " + std::to_string(degrees_.size()));
  }
  if (spec.q.odd_coeffs().size() > static_cast<std::size_t>(q_odd_terms_)) {
    throw std::invalid_argument("encode: Q has more odd terms than the search space");
  }
  std::vector<double> x;
  x.reserve(names_.size());
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    const auto& p = spec.pieces[i];
    if (p.poly().degree() > degrees_[i]) {
      throw std::invalid_argument("encode: P" + std::to_string(i + 1) + " exceeds degree " +
                                  std::to_string(degrees_[i]));
    }
    for (int k = MollifierPolynomial::first_free_power(p.piece()); k <= degrees_[i]; ++k) {
      x.push_back(p.poly().coeff(k));
    }
  }
  const auto odd = spec.q.odd_coeffs();
  for (int i = 0; i < q_odd_terms_; ++i) {
    x.push_back(static_cast<std::size_t>(i) < odd.size() ? odd[static_cast<std::size_t>(i)] : 0.0);
  }
  x.push_back(spec.R);
  return x;
}

MollifierSpec SearchSpace::decode(const MollifierSpec& base, std::span<const double> x) const {
  if (x.size() != names_.size()) throw std::invalid_argument("decode: wrong coordinate count");
  std::vector<double> y = encode(base);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!frozen_[i]) y[i] = x[i];
  }
  MollifierSpec out = base;
  std::size_t pos = 0;
  auto group_frozen = [&](std::size_t from, std::size_t count) {
    for (std::size_t i = from; i < from + count; ++i) {
      if (!frozen_[i]) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    const int ell = static_cast<int>(i) + 1;
    const auto count =
        static_cast<std::size_t>(degrees_[i] - MollifierPolynomial::first_free_power(ell) + 1);
    if (!group_frozen(pos, count)) {
      out.pieces[i] = MollifierPolynomial::from_free(ell, std::span(y).subspan(pos, count));
      if (ell == 1) {
        const auto fresh = out.pieces[i].poly().coeffs();
        std::vector<double> c(fresh.begin(), fresh.end());
        c[1] += base.pieces[i](1.0) - 1.0;
        out.pieces[i] = MollifierPolynomial(1, Polynomial(std::move(c)), false);
      }
    }
    pos += count;
  }
  const auto qn = static_cast<std::size_t>(q_odd_terms_);
  if (qn > 0 && !group_frozen(pos, qn)) {
    std::vector<double> odd(y.begin() + static_cast<long>(pos),
                            y.begin() + static_cast<long>(pos + qn));
    const double q0_offset = base.q(0.0) - 1.0;
    const double a0 = SmoothingPolynomial::from_odd(odd).constant_term() + q0_offset;
    out.q = SmoothingPolynomial(a0, std::move(odd), false);
  }
  pos += qn;
  out.R = y[pos];
  return out;
}

OptimizationResult optimize_kappa(const SearchSpace& space, const MollifierSpec& start,
                                  const OptimizationOptions& opts) {
  if (opts.budget < 1) throw std::invalid_argument("optimize_kappa: budget must be >= 1");
  if (opts.restarts < 0) throw std::invalid_argument("optimize_kappa: negative restart count");
  start.validate();

  ConvergenceOptions search_opts;
  search_opts.fixed_order = opts.objective_order;

  OptimizationResult result;
  const std::vector<double> x0 = space.encode(start);
  std::vector<double> best_x = x0;
  MollifierSpec best_spec = start;
  double best_f = combine(start, search_opts).kappa;
  result.evaluations = 1;
  result.trace.emplace_back(1, best_f);
  if (opts.progress) opts.progress(1, best_f);

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    if (!space.is_frozen(i)) idx.push_back(i);
  }
  const std::size_t n = idx.size();

  auto budget_left = [&] { return result.evaluations < opts.budget; };
  auto objective = [&](const std::vector<double>& z) {
    std::vector<double> x = x0;
    for (std::size_t k = 0; k < n; ++k) x[idx[k]] = z[k];
    ++result.evaluations;
    double f = kFailed;
    const double R = x.back();
    if (R >= space.R_min() && R <= space.R_max()) {
      try {
        MollifierSpec s = space.decode(start, x);
        f = combine(s, search_opts).kappa;
        if (!std::isfinite(f)) f = kFailed;
        if (f > best_f) {
          best_f = f;
          best_x = x;
          best_spec = std::move(s);
        }
      } catch (const std::exception&) {
        ++result.failed_evaluations;
      }
    }
    result.trace.emplace_back(result.evaluations, best_f);
    if (opts.progress) opts.progress(result.evaluations, best_f);
    return f;
  };

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> factor(0.5, 1.5);
  std::bernoulli_distribution flip(0.5);

  for (int run = 0; run <= opts.restarts && n > 0 && budget_left(); ++run) {
    std::vector<double> origin(n);
    for (std::size_t k = 0; k < n; ++k) origin[k] = best_x[idx[k]];
    std::vector<std::vector<double>> simplex(n + 1, origin);
    std::vector<double> values(n + 1, best_f);
    bool out_of_budget = false;
    for (std::size_t k = 0; k < n; ++k) {
      double step = std::max(opts.simplex_scale * std::abs(origin[k]), opts.min_step);
      if (run > 0) step *= factor(rng) * (flip(rng) ? -1.0 : 1.0);
      simplex[k + 1][k] += step;
      if (!budget_left()) {
        out_of_budget = true;
        break;
      }
      values[k + 1] = objective(simplex[k + 1]);
    }
    if (out_of_budget) break;

    std::vector<std::size_t> order(n + 1);
    while (budget_left()) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
      const std::size_t ib = order.front();
      const std::size_t iw = order.back();
      const std::size_t is = order[n - 1];
      const double fb = values[ib];
      const double fw = values[iw];
      if (std::isfinite(fw) && fb - fw <= opts.ftol * std::max(1.0, std::abs(fb))) break;

      std::vector<double> c(n, 0.0);
      for (std::size_t v = 0; v <= n; ++v) {
        if (v == iw) continue;
        for (std::size_t k = 0; k < n; ++k) c[k] += simplex[v][k] / static_cast<double>(n);
      }
      auto along = [&](double t) {
        std::vector<double> p(n);
        for (std::size_t k = 0; k < n; ++k) p[k] = c[k] + t * (simplex[iw][k] - c[k]);
        return p;
      };
      auto xr = along(-1.0);
      const double fr = objective(xr);
      if (fr > fb) {
        if (!budget_left()) {
          simplex[iw] = xr;
          values[iw] = fr;
          break;
        }
        auto xe = along(-2.0);
        const double fe = objective(xe);
        if (fe > fr) {
          simplex[iw] = std::move(xe);
          values[iw] = fe;
        } else {
          simplex[iw] = std::move(xr);
          values[iw] = fr;
        }
        continue;
      }
      if (fr > values[is]) {
        simplex[iw] = std::move(xr);
        values[iw] = fr;
        continue;
      }
      if (!budget_left()) break;
      const bool outside = fr > fw;
      auto xc = along(outside ? -0.5 : 0.5);
      const double fc = objective(xc);
      if (outside ? fc >= fr : fc > fw) {
        simplex[iw] = std::move(xc);
        values[iw] = fc;
        continue;
      }
      for (std::size_t v = 0; v <= n && budget_left(); ++v) {
        if (v == ib) continue;
        for (std::size_t k = 0; k < n; ++k) {
          simplex[v][k] = simplex[ib][k] + 0.5 * (simplex[v][k] - simplex[ib][k]);
        }
        values[v] = objective(simplex[v]);
      }
    }
  }

  const TermMatrix start_terms = combine(start, opts.final_opts);
  result.start_kappa = start_terms.kappa;
  result.best = start;
  result.terms = start_terms;
  result.kappa = start_terms.kappa;
  if (best_x != x0) {
    try {
      const TermMatrix best_terms = combine(best_spec, opts.final_opts);
      if (best_terms.kappa > start_terms.kappa) {
        result.best = best_spec;
        result.terms = best_terms;
        result.kappa = best_terms.kappa;
      }
    } catch (const QuadratureError&) {
      // keep the start
    }
  }
  return result;
}

double local_sensitivity(const SearchSpace& space, const MollifierSpec& spec,
                         std::size_t coordinate, double h, const ConvergenceOptions& opts,
                         Difference scheme) {
  if (!(h > 0.0)) throw std::invalid_argument("local_sensitivity: h must be positive");
  if (coordinate >= space.dimension()) throw std::out_of_range("local_sensitivity: bad coordinate");
  if (space.is_frozen(coordinate)) return 0.0;
  const std::vector<double> x = space.encode(spec);
  auto kappa_at = [&](double shift) {
    std::vector<double> y = x;
    y[coordinate] += shift;
    return combine(space.decode(spec, y), opts).kappa;
  };
  if (scheme == Difference::central) return (kappa_at(h) - kappa_at(-h)) / (2.0 * h);
  return (kappa_at(h) - kappa_at(0.0)) / h;
}

}  // namespace mollify
