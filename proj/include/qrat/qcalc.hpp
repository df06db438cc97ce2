#pragma once

#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "core.hpp"

namespace qrat {

// Deformed integer bracket. Convention: the bracket at k = 0 equals 1, and
// for k >= 1 it is the geometric sum 1 + q + ... + q^{k-1}, so the bracket at
// k = 1 also equals 1 and at q = 1 the bracket equals k.
inline double q_int(long k, double q) {
  QParam qp(q);
  if (k < 0) throw std::invalid_argument("q_int: negative index");
  if (k == 0) return 1.0;
  double s = 1.0;
  for (long i = 1; i < k; ++i) s = s * q + 1.0;
  return s;
}

// Brackets and their running products for indices 0..kmax. Entry j of the
// returned pair holds (bracket_j, bracket_0 * ... * bracket_j).
inline std::pair<std::vector<double>, std::vector<double>> q_bracket_tables(
    long kmax, double q) {
  QParam qp(q);
  if (kmax < 0) throw std::invalid_argument("q_bracket_tables: negative index");
  std::vector<double> br(static_cast<std::size_t>(kmax) + 1);
  std::vector<double> fact(static_cast<std::size_t>(kmax) + 1);
  double geo = 0.0;  // geometric sum with empty-sum seed
  br[0] = 1.0;
  fact[0] = 1.0;
  for (long j = 1; j <= kmax; ++j) {
    geo = 1.0 + q * geo;
    br[j] = geo;
    fact[j] = fact[j - 1] * geo;
    if (!std::isfinite(fact[j]))
      throw numeric_error("q_factorial overflow");
  }
  return {std::move(br), std::move(fact)};
}

inline double q_factorial(long k, double q) {
  return q_bracket_tables(k, q).second.back();
}

// Scalar power series sum_k coeffs[k] z^k. An empty coefficient list denotes
// the zero series.
struct ScalarSeries {
  std::vector<Cplx> coeffs;

  ScalarSeries() = default;
  ScalarSeries(std::initializer_list<Cplx> c) : coeffs(c) { validate(); }
  explicit ScalarSeries(std::vector<Cplx> c) : coeffs(std::move(c)) {
    validate();
  }

  long order() const { return static_cast<long>(coeffs.size()) - 1; }
  bool empty() const { return coeffs.empty(); }

  void validate() const {
    for (const Cplx& c : coeffs)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::invalid_argument("series coefficients must be finite");
  }
};

namespace detail {
inline void require_eq_domain(Cplx z, Cplx a, double q, const char* who) {
  QParam qp(q);
  qp.require_below_one(who);
  if ((1.0 - q) * std::abs(z * a) >= 1.0)
    throw numeric_error(std::string(who) +
                        ": argument outside the convergence disk");
}
}  // namespace detail

// Deformed exponential as the power series sum_k (z a)^k / fact_k, where
// fact_k is the bracket factorial above. Requires (1-q)|za| < 1.
inline Cplx eq_eval_series(Cplx z, Cplx a, double q, double tol = 1e-12) {
  detail::require_eq_domain(z, a, q, "eq_eval_series");
  const Cplx x = z * a;
  const std::size_t cap = series_term_cap();
  Cplx sum(1.0, 0.0);
  Cplx term(1.0, 0.0);
  double geo = 0.0;
  for (std::size_t k = 1; k <= cap; ++k) {
    geo = 1.0 + q * geo;  // bracket at k
    term *= x / geo;
    sum += term;
    // brackets are nondecreasing, so the tail is dominated by the geometric
    // series with ratio |x| / bracket_{k+1}
    const double r = std::abs(x) / (1.0 + q * geo);
    if (r < 1.0 && std::abs(term) * r / (1.0 - r) <= tol * (1.0 + std::abs(sum)))
      return sum;
  }
  throw numeric_error("eq_eval_series: term cap exceeded before convergence");
}

// Same function as an infinite product of reciprocal linear factors
// 1 / (1 - (1-q) z a q^j). Requires (1-q)|za| < 1.
inline Cplx eq_eval_product(Cplx z, Cplx a, double q, double tol = 1e-12) {
  detail::require_eq_domain(z, a, q, "eq_eval_product");
  const Cplx c = (1.0 - q) * z * a;
  const std::size_t cap = series_term_cap();
  Cplx acc(1.0, 0.0);
  double qj = 1.0;
  for (std::size_t j = 0; j < cap; ++j) {
    Cplx denom = 1.0 - c * qj;
    if (std::abs(denom) < 1e-300)
      throw numeric_error("eq_eval_product: singular factor");
    acc /= denom;
    qj *= q;
    // remaining factors perturb the log by at most ~|c| q^{j+1} / (1-q)
    if (std::abs(c) * qj <= 0.5 * tol * (1.0 - q)) return acc;
  }
  throw numeric_error("eq_eval_product: factor cap exceeded before convergence");
}

// Difference-quotient derivative acting on coefficients: output index k holds
// bracket_{k+1} * f_{k+1}. A constant input maps to the zero series.
inline ScalarSeries jackson_rq(const ScalarSeries& f, double q) {
  QParam qp(q);
  qp.require_below_one("jackson_rq");
  if (f.empty()) throw std::invalid_argument("jackson_rq: empty series");
  ScalarSeries g;
  g.coeffs.resize(f.coeffs.size() - 1);
  double geo = 0.0;
  for (std::size_t k = 0; k + 1 < f.coeffs.size(); ++k) {
    geo = 1.0 + q * geo;  // bracket at k+1
    g.coeffs[k] = geo * f.coeffs[k + 1];
  }
  return g;
}

// Coefficientwise rescaling by bracket factorials: divides by default (the
// summability-improving direction), multiplies when inverse is set. q = 1 is
// allowed here.
inline ScalarSeries borel_q(const ScalarSeries& f, double q,
                            bool inverse = false) {
  QParam qp(q);
  if (f.empty()) return f;
  auto tables = q_bracket_tables(f.order(), q);
  const std::vector<double>& fact = tables.second;
  ScalarSeries g;
  g.coeffs.resize(f.coeffs.size());
  for (std::size_t k = 0; k < f.coeffs.size(); ++k)
    g.coeffs[k] = inverse ? f.coeffs[k] * fact[k] : f.coeffs[k] / fact[k];
  return g;
}

// Multiplicative inverse of a power series with nonvanishing constant term,
// truncated at order n. Missing input coefficients are treated as zero.
inline ScalarSeries reciprocal_series(const ScalarSeries& f, long n) {
  if (f.empty()) throw std::invalid_argument("reciprocal_series: empty series");
  if (n < 0) throw std::invalid_argument("reciprocal_series: negative order");
  const Cplx a0 = f.coeffs[0];
  if (std::abs(a0) < 1e-300)
    throw numeric_error("reciprocal_series: vanishing constant term");
  ScalarSeries g;
  g.coeffs.assign(static_cast<std::size_t>(n) + 1, Cplx(0.0, 0.0));
  g.coeffs[0] = 1.0 / a0;
  for (long k = 1; k <= n; ++k) {
    Cplx acc(0.0, 0.0);
    const long imax = std::min<long>(k, f.order());
    for (long i = 1; i <= imax; ++i)
      acc += f.coeffs[static_cast<std::size_t>(i)] *
             g.coeffs[static_cast<std::size_t>(k - i)];
    g.coeffs[static_cast<std::size_t>(k)] = -acc / a0;
  }
  return g;
}

}  // namespace qrat
