#pragma once

#include <algorithm>
#include <vector>

#include "core.hpp"
#include "qcalc.hpp"
#include "state_space.hpp"

namespace qrat {

namespace detail {

// H[i,j] = F[i + j + shift] for i < brows, j < bcols.
inline CMat block_hankel(const std::vector<CMat>& F, long brows, long bcols,
                         long shift) {
  const Eigen::Index p = F.front().rows(), n = F.front().cols();
  CMat H(brows * p, bcols * n);
  for (long i = 0; i < brows; ++i)
    for (long j = 0; j < bcols; ++j)
      H.block(i * p, j * n, p, n) = F[static_cast<std::size_t>(i + j + shift)];
  return H;
}

inline std::vector<CMat> deweight(const TaylorSeq& ts, double q) {
  const std::vector<double> fact =
      q_bracket_tables(ts.order(), q).second;
  std::vector<CMat> F;
  F.reserve(ts.coeffs.size());
  for (std::size_t k = 0; k < ts.coeffs.size(); ++k)
    F.push_back(fact[k] * ts.coeffs[k]);
  return F;
}

}  // namespace detail

// Numeric rank of the block Hankel built from the de-weighted coefficients.
inline Eigen::Index hankel_rank(const TaylorSeq& ts, double q,
                                double tol = 1e-9) {
  ts.validate();
  const long L = static_cast<long>(ts.coeffs.size());
  if (L < 2) throw std::invalid_argument("hankel_rank: need 2+ coefficients");
  std::vector<CMat> F = detail::deweight(ts, q);
  const long r = (L + 1) / 2, c = L - r + 1;  // max index (r-1)+(c-1) = L-1
  CMat H = detail::block_hankel(F, r, c, 0);
  Eigen::JacobiSVD<CMat> svd(H);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > tol * sv(0)) ++rank;
  return rank;
}

struct RealizeInfo {
  Eigen::Index rank = 0;
  bool rank_unstable = false;  // no clear gap in the singular spectrum at tol
  std::vector<double> singular_values;
};

namespace detail {

// Balanced square-root identification from Markov parameters F_0..F_{L-1}:
// factor the Hankel, read C and B off the balanced factors, and recover A
// from the index-shifted Hankel.
inline StateSpace ho_kalman(const std::vector<CMat>& F, double tol,
                            RealizeInfo* info) {
  const long L = static_cast<long>(F.size());
  const Eigen::Index p = F.front().rows(), n = F.front().cols();
  // leave room for the shifted Hankel: (r-1)+(c-1) = L-2
  const long r = L / 2, c = L - 1 - r + 1;
  CMat H = detail::block_hankel(F, r, c, 0);
  CMat Hs = detail::block_hankel(F, r, c, 1);
  Eigen::JacobiSVD<CMat> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (smax > 0.0 && sv(k) > tol * smax) ++rank;
  if (info) {
    info->rank = rank;
    info->singular_values.assign(sv.data(), sv.data() + sv.size());
    info->rank_unstable =
        rank > 0 && rank < sv.size() && sv(rank) > 1e-3 * sv(rank - 1);
  }
  if (rank == 0)
    return StateSpace(CMat::Zero(p, 0), CMat::Zero(0, 0), CMat::Zero(0, n));
  CMat U = svd.matrixU().leftCols(rank);
  CMat V = svd.matrixV().leftCols(rank);
  Eigen::VectorXd shalf = sv.head(rank).cwiseSqrt();
  CMat Obs = U * shalf.asDiagonal();                     // (r p) x rank
  CMat Ctr = shalf.asDiagonal() * V.adjoint();           // rank x (c n)
  Eigen::VectorXd sinv = shalf.cwiseInverse();
  CMat A = sinv.asDiagonal() * U.adjoint() * Hs * V * sinv.asDiagonal();
  CMat C = Obs.topRows(p);
  CMat B = Ctr.leftCols(n);
  return StateSpace(std::move(C), std::move(A), std::move(B));
}

}  // namespace detail

// Recovers a realization whose coefficients reproduce (and extend) the given
// ones: de-weight, factor the block Hankel by SVD with a balanced split,
// extract the state matrix from shift invariance.
inline QRational realize_from_taylor(const TaylorSeq& ts, double q,
                                     double tol = 1e-9,
                                     RealizeInfo* info = nullptr) {
  ts.validate();
  QParam qp(q);
  qp.require_below_one("realize_from_taylor");
  if (ts.coeffs.size() < 2)
    throw std::invalid_argument(
        "realize_from_taylor: need at least 2 coefficients");
  std::vector<CMat> F = detail::deweight(ts, q);
  return QRational(detail::ho_kalman(F, tol, info), q);
}

// Minimal realization with the same Markov parameters C A^k B (D, when
// present, passes through untouched).
inline StateSpace kalman_reduce(const StateSpace& ss, double tol = 1e-9) {
  ss.validate();
  const Eigen::Index N = ss.state_dim();
  if (N == 0) return ss;
  std::vector<CMat> F;
  F.reserve(static_cast<std::size_t>(2 * N) + 2);
  CMat X = ss.B;
  for (Eigen::Index k = 0; k <= 2 * N + 1; ++k) {
    F.push_back(ss.C * X);
    if (k <= 2 * N) X = ss.A * X;
  }
  StateSpace reduced = detail::ho_kalman(F, tol, nullptr);
  reduced.D = ss.D;
  reduced.validate();
  return reduced;
}

}  // namespace qrat
