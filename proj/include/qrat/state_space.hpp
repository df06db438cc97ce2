#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"
#include "qcalc.hpp"

namespace qrat {

// Realization data. With D present the attached function is
// D + z C (I - zA)^{-1} B, without D it is C (I - zA)^{-1} B. A zero-state
// realization is legal and denotes the constant map (D, or the zero map).
struct StateSpace {
  CMat C, A, B;
  std::optional<CMat> D;

  StateSpace() = default;
  StateSpace(CMat C_, CMat A_, CMat B_, std::optional<CMat> D_ = std::nullopt)
      : C(std::move(C_)), A(std::move(A_)), B(std::move(B_)), D(std::move(D_)) {
    validate();
  }

  Eigen::Index state_dim() const { return A.rows(); }
  Eigen::Index out_dim() const { return C.rows(); }
  Eigen::Index in_dim() const { return B.cols(); }
  bool has_d() const { return D.has_value(); }

  void validate() const {
    if (A.rows() != A.cols())
      throw std::invalid_argument("state matrix must be square");
    if (C.cols() != A.rows())
      throw std::invalid_argument("C and A dimensions do not chain");
    if (B.rows() != A.rows())
      throw std::invalid_argument("A and B dimensions do not chain");
    if (D && (D->rows() != C.rows() || D->cols() != B.cols()))
      throw std::invalid_argument("D dimensions do not match C and B");
    if (!C.allFinite() || !A.allFinite() || !B.allFinite() ||
        (D && !D->allFinite()))
      throw std::invalid_argument("realization entries must be finite");
  }
};

// D-free realization paired with the deformation parameter; coefficient k of
// the attached function is C A^k B / fact_k.
struct QRational {
  StateSpace ss;
  double q = 0.0;

  QRational() = default;
  QRational(StateSpace s, double q_) : ss(std::move(s)), q(q_) {
    QParam qp(q);
    qp.require_below_one("QRational");
    if (ss.has_d())
      throw std::invalid_argument("QRational realization carries no D block");
  }
};

// Matrix coefficient list T_0..T_K of uniform shape.
struct TaylorSeq {
  std::vector<CMat> coeffs;

  TaylorSeq() = default;
  explicit TaylorSeq(std::vector<CMat> c) : coeffs(std::move(c)) { validate(); }

  long order() const { return static_cast<long>(coeffs.size()) - 1; }

  void validate() const {
    for (const CMat& T : coeffs) {
      if (T.rows() != coeffs.front().rows() || T.cols() != coeffs.front().cols())
        throw std::invalid_argument("coefficient shapes must be uniform");
      if (!T.allFinite())
        throw std::invalid_argument("coefficients must be finite");
    }
  }
};

inline CMat eval_classical(const StateSpace& ss, Cplx z) {
  CMat core = ss.C * resolvent_solve(ss.A, z, ss.B);
  if (ss.has_d()) return *ss.D + z * core;
  return core;
}

// prod_{j=0..J} (I - (1-q) z q^j A)^{-1} with J the smallest index making the
// factor-norm bound (1-q)|z| q^J ||A|| fall below tol. The factors commute,
// so accumulation order is free.
inline CMat resolvent_product(const CMat& A, Cplx z, double q,
                              double tol = 1e-12) {
  QParam qp(q);
  qp.require_below_one("resolvent_product");
  const Eigen::Index n = A.rows();
  CMat M = CMat::Identity(n, n);
  if (n == 0 || z == Cplx(0.0)) return M;
  const double scale = (1.0 - q) * std::abs(z) * operator_norm(A);
  const Cplx coeff = (1.0 - q) * z;
  const std::size_t cap = series_term_cap();
  double qj = 1.0;
  for (std::size_t j = 0; j < cap; ++j) {
    M = resolvent_solve(A, coeff * qj, M);
    if (scale * qj < tol) return M;
    qj *= q;
  }
  throw numeric_error("resolvent_product: factor cap exceeded");
}

inline CMat eval_q(const QRational& f, Cplx z, double tol = 1e-12) {
  const double rho = spectral_radius(f.ss.A);
  if ((1.0 - f.q) * std::abs(z) * rho >= 1.0)
    throw numeric_error("eval_q: point outside the convergence region");
  return f.ss.C * resolvent_product(f.ss.A, z, f.q, tol) * f.ss.B;
}

inline TaylorSeq taylor_q(const QRational& f, long K) {
  if (K < 0) throw std::invalid_argument("taylor_q: negative order");
  const std::vector<double> fact = q_bracket_tables(K, f.q).second;
  TaylorSeq ts;
  ts.coeffs.reserve(static_cast<std::size_t>(K) + 1);
  CMat X = f.ss.B;
  for (long k = 0; k <= K; ++k) {
    ts.coeffs.push_back(f.ss.C * X / fact[static_cast<std::size_t>(k)]);
    if (k < K) X = f.ss.A * X;
  }
  return ts;
}

// Difference-quotient derivative at the realization level: (C, A, AB).
inline QRational rq_apply(const QRational& f) {
  return QRational(StateSpace(f.ss.C, f.ss.A, f.ss.A * f.ss.B), f.q);
}

namespace detail {
inline void require_triple(const CMat& C, const CMat& A, const CMat& B) {
  if (A.rows() != A.cols() || C.cols() != A.rows() || B.rows() != A.rows())
    throw std::invalid_argument("triple dimensions do not chain");
}
}  // namespace detail

// Finite product prod_{j=0..J} C (I - (1-q) z q^j A)^{-1} B collapsed into a
// single (J+1)N-state quadruple. Block column j of the state matrix carries
// (1-q) q^j A on and above the diagonal; the through term is CB.
inline StateSpace truncated_realization_weiz(const CMat& C, const CMat& A,
                                             const CMat& B, double q, long J) {
  QParam qp(q);
  qp.require_below_one("truncated_realization_weiz");
  if (J < 0) throw std::invalid_argument("negative truncation index");
  detail::require_triple(C, A, B);
  const Eigen::Index N = A.rows(), m = C.rows(), n = B.cols();
  const Eigen::Index M = (J + 1) * N;
  CMat AJ = CMat::Zero(M, M), BJ(M, n), CJ(m, M);
  std::vector<double> qpow(static_cast<std::size_t>(J) + 1);
  double pj = 1.0;
  for (long j = 0; j <= J; ++j, pj *= q) qpow[static_cast<std::size_t>(j)] = pj;
  for (long i = 0; i <= J; ++i)
    for (long j = i; j <= J; ++j)
      AJ.block(i * N, j * N, N, N) = (1.0 - q) * qpow[static_cast<std::size_t>(j)] * A;
  for (long i = 0; i <= J; ++i) BJ.block(i * N, 0, N, n) = B;
  const CMat CA = C * A;
  for (long j = 0; j <= J; ++j)
    CJ.block(0, j * N, m, N) = (1.0 - q) * qpow[static_cast<std::size_t>(j)] * CA;
  return StateSpace(CJ, AJ, BJ, C * B);
}

// Same function in the D-free form: identity coupling blocks in the first
// block row, scaled copies of A elsewhere.
inline StateSpace truncated_realization_weiz2(const CMat& C, const CMat& A,
                                              const CMat& B, double q, long J) {
  QParam qp(q);
  qp.require_below_one("truncated_realization_weiz2");
  if (J < 0) throw std::invalid_argument("negative truncation index");
  detail::require_triple(C, A, B);
  const Eigen::Index N = A.rows(), m = C.rows(), n = B.cols();
  const Eigen::Index M = (J + 1) * N;
  CMat AJ = CMat::Zero(M, M), BJ(M, n), CJ = CMat::Zero(m, M);
  double qi = 1.0;
  for (long i = 0; i <= J; ++i, qi *= q) {
    const CMat Ai = (1.0 - q) * qi * A;
    AJ.block(i * N, i * N, N, N) = Ai;
    for (long j = i + 1; j <= J; ++j)
      AJ.block(i * N, j * N, N, N) = (i == 0) ? CMat(CMat::Identity(N, N)) : Ai;
    BJ.block(i * N, 0, N, n) = (i == 0) ? B : CMat(Ai * B);
  }
  CJ.block(0, 0, m, N) = C;
  return StateSpace(CJ, AJ, BJ);
}

inline StateSpace truncated_realization_weiz(const QRational& f, long J) {
  return truncated_realization_weiz(f.ss.C, f.ss.A, f.ss.B, f.q, J);
}
inline StateSpace truncated_realization_weiz2(const QRational& f, long J) {
  return truncated_realization_weiz2(f.ss.C, f.ss.A, f.ss.B, f.q, J);
}

}  // namespace qrat
