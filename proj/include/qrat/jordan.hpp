#pragma once

#include <vector>

#include "core.hpp"
#include "qcalc.hpp"
#include "state_space.hpp"

namespace qrat {

inline CMat jordan_cell(Cplx lambda, long N) {
  if (N < 1) throw std::invalid_argument("jordan_cell: size must be positive");
  CMat J = lambda * CMat::Identity(N, N);
  for (long i = 0; i + 1 < N; ++i) J(i, i + 1) = 1.0;
  return J;
}

namespace detail {

// Coefficients through degree vmax of prod_j 1/(1 - t_j x): the complete
// homogeneous symmetric sums of the t_j.
inline std::vector<Cplx> homogeneous_sums(const std::vector<Cplx>& t,
                                          long vmax) {
  std::vector<Cplx> h(static_cast<std::size_t>(vmax) + 1, Cplx(0.0));
  h[0] = 1.0;
  for (const Cplx& tj : t)
    for (long v = 1; v <= vmax; ++v)
      h[static_cast<std::size_t>(v)] += tj * h[static_cast<std::size_t>(v - 1)];
  return h;
}

}  // namespace detail

// Evaluates F(z) = C prod_{j>=0} (I - (1-q) z q^j (lambda I + V))^{-1} with V
// the nilpotent shift, via the factorwise splitting
//   (I - (1-q) z q^j (lambda I + V))^{-1}
//     = (1 - (1-q) lambda z q^j)^{-1} (I - s_j V)^{-1},
//   s_j = (1-q) z q^j / (1 - (1-q) lambda z q^j),
// so F(z) = prefactor * C * sum_v h_v(s) V^v with h_v the complete
// homogeneous symmetric sums. C V^v shifts the columns of C right by v.
inline CMat jordan_chain_eval(Cplx lambda, long N, const CMat& C, Cplx z,
                              double q, double tol = 1e-12) {
  QParam qp(q);
  qp.require_below_one("jordan_chain_eval");
  if (N < 1) throw std::invalid_argument("jordan_chain_eval: N must be >= 1");
  if (C.cols() != N)
    throw std::invalid_argument("jordan_chain_eval: C must have N columns");
  if ((1.0 - q) * std::abs(z) * std::abs(lambda) >= 1.0)
    throw numeric_error("jordan_chain_eval: point outside convergence region");
  Cplx pref(1.0, 0.0);
  std::vector<Cplx> s;
  double qj = 1.0;
  const std::size_t cap = series_term_cap();
  for (std::size_t j = 0;; ++j) {
    if (j >= cap)
      throw numeric_error("jordan_chain_eval: factor cap exceeded");
    const Cplx base = (1.0 - q) * z * qj;
    const Cplx den = 1.0 - lambda * base;
    if (std::abs(den) < 1e-300)
      throw numeric_error("jordan_chain_eval: singular factor");
    pref /= den;
    s.push_back(base / den);
    qj *= q;
    if ((1.0 - q) * std::abs(z) * qj * (1.0 + std::abs(lambda)) < tol) break;
  }
  const std::vector<Cplx> h = detail::homogeneous_sums(s, N - 1);
  CMat F = CMat::Zero(C.rows(), N);
  for (long v = 0; v < N; ++v)
    for (long col = v; col < N; ++col)
      F.col(col) += (pref * h[static_cast<std::size_t>(v)]) * C.col(col - v);
  return F;
}

// Worst-case defect of the chain relations R_q(F e_j) = lambda F e_j + F e_{j-1}
// for F(z) = C prod_j (I - (1-q) z q^j A)^{-1}, measured through difference
// quotients at the given sample points. Works for arbitrary A so that
// non-chain matrices can be run through the same check.
inline double jordan_chain_residual(const CMat& C, const CMat& A, Cplx lambda,
                                    double q, const std::vector<Cplx>& zs,
                                    double tol = 1e-12) {
  if (C.cols() != A.rows() || A.rows() != A.cols())
    throw std::invalid_argument("jordan_chain_residual: dimension mismatch");
  const double rho = spectral_radius(A);
  double worst = 0.0;
  for (const Cplx& z : zs) {
    if (z == Cplx(0.0)) continue;  // quotient undefined at the origin
    if ((1.0 - q) * std::abs(z) * rho >= 1.0)
      throw numeric_error("jordan_chain_residual: sample outside domain");
    const CMat Fz = C * resolvent_product(A, z, q, tol);
    const CMat Fqz = C * resolvent_product(A, q * z, q, tol);
    const CMat R = (Fz - Fqz) / ((1.0 - q) * z);
    for (Eigen::Index col = 0; col < A.cols(); ++col) {
      CVec want = lambda * Fz.col(col);
      if (col > 0) want += Fz.col(col - 1);
      worst = std::max(worst, (R.col(col) - want).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

inline bool jordan_chain_verify(Cplx lambda, long N, const CMat& C, double q,
                                const std::vector<Cplx>& sample_zs,
                                double tol) {
  return jordan_chain_residual(C, jordan_cell(lambda, N), lambda, q,
                               sample_zs) < tol;
}

}  // namespace qrat
