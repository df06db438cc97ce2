#pragma once

#include <qrat/core.hpp>
#include <qrat/qcalc.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrat {
namespace cnp {

// Positive coefficient sequence of a diagonal kernel sum a_n z^n conj(w)^n.
// start_index records where the sum begins (kernels without constant term
// start at 1); a full certificate additionally needs a_0 = 1.
struct CoeffSeq {
  std::vector<double> values;
  int start_index = 0;
  std::string label;

  CoeffSeq(std::vector<double> v, int start, std::string lbl)
      : values(std::move(v)), start_index(start), label(std::move(lbl)) {
    if (start_index != 0 && start_index != 1)
      throw std::invalid_argument("CoeffSeq: start index must be 0 or 1");
    if (values.empty()) throw std::invalid_argument("CoeffSeq: empty");
    for (double a : values)
      if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("CoeffSeq: values must be positive");
  }
};

struct KaluzaVerdict {
  bool pass = false;
  long first_violation = -1;  // absolute index n of the violating middle term
  double ratio_gap = 0.0;     // a_n/a_{n-1} - a_{n+1}/a_n at the violation
};

// Log-convexity a_n^2 <= a_{n-1} a_{n+1} at every interior index, tested in
// cross-multiplied form with relative slack 1e-12 so that equality passes.
inline KaluzaVerdict kaluza_check(const CoeffSeq& seq) {
  const auto& a = seq.values;
  if (a.size() < 3)
    throw std::invalid_argument("kaluza_check: need at least 3 coefficients");
  KaluzaVerdict v;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    const double lhs = a[i] * a[i];
    const double rhs = a[i - 1] * a[i + 1];
    if (lhs > rhs + 1e-12 * std::max(lhs, rhs)) {
      v.pass = false;
      v.first_violation = static_cast<long>(i) + seq.start_index;
      v.ratio_gap = a[i] / a[i - 1] - a[i + 1] / a[i];
      return v;
    }
  }
  v.pass = true;
  return v;
}

struct ReciprocalVerdict {
  bool pass = false;
  long first_violation = -1;
  double min_coeff = 0.0;  // most negative b_n over the checked range
};

// Writes 1/f = 1 - sum_{n>=1} b_n z^n and checks b_n >= -tol up to order n.
// This is the independent confirmation for a passing log-convexity verdict.
inline ReciprocalVerdict reciprocal_nonneg_check(const CoeffSeq& seq,
                                                 std::size_t n, double tol) {
  if (seq.start_index != 0)
    throw std::invalid_argument(
        "reciprocal check: sequence must start at index 0");
  if (std::abs(seq.values[0] - 1.0) > 1e-12)
    throw std::invalid_argument("reciprocal check: a_0 must equal 1");
  if (seq.values.size() <= n)
    throw std::invalid_argument(
        "reciprocal check: not enough coefficients for the requested order");

  std::vector<Cplx> coeffs(seq.values.begin(),
                           seq.values.begin() + static_cast<long>(n) + 1);
  const ScalarSeries recip = reciprocal_series(ScalarSeries(coeffs), n);

  ReciprocalVerdict v;
  v.pass = true;
  v.min_coeff = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double b = -recip.coeffs[k].real();
    if (b < v.min_coeff) v.min_coeff = b;
    if (b < -tol && v.pass) {
      v.pass = false;
      v.first_violation = static_cast<long>(k);
    }
  }
  return v;
}

struct ContinuousVerdict {
  bool pass = false;
  double worst_gap = 0.0;  // max of (f')^2 - f'' f over the grid
  double worst_x = 0.0;
};

// Continuous form of the ratio condition: (f'(x))^2 <= f''(x) f(x) + tol.
template <typename F, typename F1, typename F2>
ContinuousVerdict kaluza_continuous(F&& f, F1&& f1, F2&& f2,
                                    const std::vector<double>& grid,
                                    double tol) {
  if (grid.empty())
    throw std::invalid_argument("kaluza_continuous: empty grid");
  ContinuousVerdict v;
  v.pass = true;
  v.worst_gap = -std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const double fx = f(x);
    if (!(fx > 0.0))
      throw std::invalid_argument("kaluza_continuous: f must be positive");
    const double d1 = f1(x);
    const double gap = d1 * d1 - f2(x) * fx;
    if (gap > v.worst_gap) {
      v.worst_gap = gap;
      v.worst_x = x;
    }
    if (gap > tol) v.pass = false;
  }
  return v;
}

// Derivative-free variant: central differences with step 1e-5. The second
// difference amplifies rounding by ~|f|/h^2, so the tolerance is widened
// accordingly; this fallback is qualitative.
template <typename F>
ContinuousVerdict kaluza_continuous(F&& f, const std::vector<double>& grid,
                                    double tol) {
  const double h = 1e-5;
  auto d1 = [&](double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  auto d2 = [&](double x) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
  };
  ContinuousVerdict v;
  v.pass = true;
  v.worst_gap = -std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const double fx = f(x);
    if (!(fx > 0.0))
      throw std::invalid_argument("kaluza_continuous: f must be positive");
    const double g1 = d1(x);
    const double gap = g1 * g1 - d2(x) * fx;
    const double slack = tol + 1e-3 * (1.0 + fx * fx);
    if (gap > v.worst_gap) {
      v.worst_gap = gap;
      v.worst_x = x;
    }
    if (gap > slack) v.pass = false;
  }
  return v;
}

// Infinite product (a; q)_inf = prod_{k>=0} (1 - a q^k), truncated once the
// running factor is 1 to machine precision.
inline double q_pochhammer_inf(double a, double q) {
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("q_pochhammer_inf: q must be in [0, 1)");
  double prod = 1.0;
  double aq = a;
  while (std::abs(aq) >= 1e-16) {
    prod *= (1.0 - aq);
    aq *= q;
  }
  return prod;
}

// Product-form Gamma function for the deformed factorials:
// (1-q)^{1-x} (q; q)_inf / (q^x; q)_inf.
inline double q_gamma(double x, double q) {
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("q_gamma: q must be in [0, 1)");
  return std::pow(1.0 - q, 1.0 - x) * q_pochhammer_inf(q, q) /
         q_pochhammer_inf(std::pow(q, x), q);
}

// ---- sequence constructors ----

inline CoeffSeq dirichlet(std::size_t nmax) {
  std::vector<double> a;
  for (std::size_t n = 0; n <= nmax; ++n)
    a.push_back(1.0 / (static_cast<double>(n) + 1.0));
  return CoeffSeq(std::move(a), 0, "dirichlet");
}

inline CoeffSeq hardy_sobolev_classical(double eps, std::size_t nmax) {
  if (!(eps > 0.0))
    throw std::invalid_argument("hardy_sobolev_classical: eps must be > 0");
  std::vector<double> a;
  for (std::size_t n = 0; n <= nmax; ++n) {
    const double nn = static_cast<double>(n);
    a.push_back(1.0 / (1.0 + nn * nn / eps));
  }
  return CoeffSeq(std::move(a), 0, "hardy-sobolev");
}

// Denominator 1 + k^2 + k^2 (k-1)^2 + ... + k^2 ... (k-order+1)^2.
inline CoeffSeq hardy_sobolev_full(std::size_t order, std::size_t nmax) {
  if (order == 0)
    throw std::invalid_argument("hardy_sobolev_full: order must be >= 1");
  std::vector<double> a;
  for (std::size_t k = 0; k <= nmax; ++k) {
    double den = 1.0;
    double term = 1.0;
    for (std::size_t t = 0; t < order; ++t) {
      const double fac = static_cast<double>(k) - static_cast<double>(t);
      term *= fac * fac;
      den += term;
    }
    a.push_back(1.0 / den);
  }
  return CoeffSeq(std::move(a), 0,
                  "hardy-sobolev order " + std::to_string(order));
}

// Sum starts at n = 1 (the n = 0 term would be singular), so only the
// ratio condition is certified, not the normalized reciprocal test.
inline CoeffSeq q_dirichlet(double q, std::size_t nmax) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("q_dirichlet: q must be in (0, 1)");
  if (nmax < 1) throw std::invalid_argument("q_dirichlet: nmax must be >= 1");
  std::vector<double> a;
  for (std::size_t n = 1; n <= nmax; ++n)
    a.push_back(1.0 / (1.0 - std::pow(q, static_cast<double>(n))));
  return CoeffSeq(std::move(a), 1, "q-dirichlet (ratio condition only)");
}

inline CoeffSeq q_gamma_kernel(double q, double r, std::size_t nmax) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("q_gamma_kernel: q must be in (0, 1)");
  if (!(r >= 0.0 && r <= 1.0) || r == 0.0)
    throw std::invalid_argument("q_gamma_kernel: r must be in (0, 1]");
  const double g_r = q_gamma(r, q);
  const auto facts = q_bracket_tables(static_cast<long>(nmax), q).second;
  std::vector<double> a;
  for (std::size_t n = 0; n <= nmax; ++n)
    a.push_back(q_gamma(static_cast<double>(n) + r, q) / (g_r * facts[n]));
  return CoeffSeq(std::move(a), 0, "q-gamma");
}

// Deformed first-order kernel; its denominators use the geometric bracket
// (1 - q^k)/(1 - q), which vanishes at k = 0, so a_0 = 1/(1-q) and only
// the ratio condition is certified.
inline CoeffSeq q_hardy_sobolev(double q, double eps, std::size_t nmax) {
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("q_hardy_sobolev: q must be in [0, 1)");
  if (!(eps > 0.0))
    throw std::invalid_argument("q_hardy_sobolev: eps must be > 0");
  std::vector<double> a;
  for (std::size_t k = 0; k <= nmax; ++k) {
    const double br =
        (1.0 - std::pow(q, static_cast<double>(k))) / (1.0 - q);
    a.push_back(1.0 / ((1.0 - q) + br * br / eps));
  }
  return CoeffSeq(std::move(a), 0,
                  "q-hardy-sobolev (ratio condition only)");
}

inline CoeffSeq partition_seq(const std::vector<double>& E,
                              std::size_t nmax) {
  if (E.empty()) throw std::invalid_argument("partition_seq: empty energies");
  for (double e : E)
    if (!(e >= 0.0))
      throw std::invalid_argument("partition_seq: energies must be >= 0");
  std::vector<double> a;
  for (std::size_t n = 0; n <= nmax; ++n) {
    double s = 0.0;
    for (double e : E) s += std::exp(static_cast<double>(n) * e);
    a.push_back(s);
  }
  return CoeffSeq(std::move(a), 0, "partition");
}

inline CoeffSeq eq_coeffs(double q, std::size_t nmax) {
  const auto facts = q_bracket_tables(static_cast<long>(nmax), q).second;
  std::vector<double> a;
  for (std::size_t n = 0; n <= nmax; ++n) a.push_back(1.0 / facts[n]);
  return CoeffSeq(std::move(a), 0, "deformed exponential");
}

inline CoeffSeq hadamard(const CoeffSeq& x, const CoeffSeq& y) {
  if (x.start_index != y.start_index)
    throw std::invalid_argument("hadamard: start indices differ");
  const std::size_t n = std::min(x.values.size(), y.values.size());
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = x.values[i] * y.values[i];
  return CoeffSeq(std::move(a), x.start_index,
                  x.label + " (x) " + y.label);
}

inline CoeffSeq power(const CoeffSeq& x, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("power: exponent must be > 0");
  std::vector<double> a(x.values.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::pow(x.values[i], c);
  return CoeffSeq(std::move(a), x.start_index, x.label + "^c");
}

// Empirical boundary in eps of the ratio condition for the deformed
// first-order kernel at fixed q (bisection; the condition holds for small
// eps and may break as eps grows).
inline double q_hardy_sobolev_eps_threshold(double q, std::size_t nmax,
                                            int iters = 60) {
  double lo = 1e-6, hi = 64.0;
  auto passes = [&](double eps) {
    return kaluza_check(q_hardy_sobolev(q, eps, nmax)).pass;
  };
  if (!passes(lo)) return 0.0;
  if (passes(hi)) return hi;
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace cnp
}  // namespace qrat
