#pragma once

#include <qrat/core.hpp>
#include <qrat/qcalc.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qrat {

// Elementary disk automorphism vanishing at a.
inline Cplx blaschke(Cplx a, Cplx z) {
  if (std::abs(a) >= 1.0)
    throw std::invalid_argument("blaschke: |a| must be < 1");
  const Cplx den = 1.0 - z * std::conj(a);
  if (std::abs(den) < 1e-14)
    throw numeric_error("blaschke: pole at z = 1/conj(a)");
  return (z - a) / den;
}

// Deformed variant: the classical factor read at sqrt(1-q) z.
inline Cplx blaschke_q(Cplx a, double q, Cplx z) {
  QParam qp(q);
  qp.require_below_one("blaschke_q");
  return blaschke(a, std::sqrt(1.0 - q) * z);
}

// Defect of (1 - b_a(z) conj(b_a(w)))/(1 - z conj(w))
//         = (1 - |a|^2)/((1 - z conj(a))(1 - conj(w) a)).
inline double blaschke_identity_residual(Cplx a, Cplx z, Cplx w) {
  const Cplx lhs = (1.0 - blaschke(a, z) * std::conj(blaschke(a, w))) /
                   (1.0 - z * std::conj(w));
  const Cplx rhs = (1.0 - std::norm(a)) /
                   ((1.0 - z * std::conj(a)) * (1.0 - std::conj(w) * a));
  return std::abs(lhs - rhs);
}

// Deformed counterpart, with sqrt(1-q) absorbed into the arguments:
// (1 - b_a(sqrt(1-q)z) conj(b_a(sqrt(1-q)w)))/(1 - (1-q) z conj(w))
//   = (1 - |a|^2)/((1 - sqrt(1-q) z conj(a))(1 - sqrt(1-q) conj(w) a)).
inline double blaschke_q_identity_residual(Cplx a, double q, Cplx z, Cplx w) {
  const double s = std::sqrt(1.0 - q);
  const Cplx lhs = (1.0 - blaschke_q(a, q, z) * std::conj(blaschke_q(a, q, w))) /
                   (1.0 - (1.0 - q) * z * std::conj(w));
  const Cplx rhs = (1.0 - std::norm(a)) /
                   ((1.0 - s * z * std::conj(a)) * (1.0 - s * std::conj(w) * a));
  return std::abs(lhs - rhs);
}

// One factor of the normalized product kernel: with the common scale
// s = sqrt((1-q) q^j), both sides below are equal exactly:
//   (1 - s^2 |a|^2) / ((1 - s^2 z conj(a))(1 - s^2 conj(w) a))
//   (1 - b_{sa}(sz) conj(b_{sa}(sw))) / (1 - s^2 z conj(w)).
inline double per_factor_identity_residual(Cplx a, double q, std::size_t j,
                                           Cplx z, Cplx w) {
  const double s2 = (1.0 - q) * std::pow(q, static_cast<double>(j));
  const double s = std::sqrt(s2);
  if (std::abs(s * a) >= 1.0)
    throw std::invalid_argument("per-factor identity: scaled |a| must be < 1");
  const Cplx v = s * a;
  const Cplx lhs = (1.0 - s2 * std::norm(a)) /
                   ((1.0 - s2 * z * std::conj(a)) * (1.0 - s2 * std::conj(w) * a));
  const Cplx rhs = (1.0 - blaschke(v, s * z) * std::conj(blaschke(v, s * w))) /
                   (1.0 - s2 * z * std::conj(w));
  return std::abs(lhs - rhs);
}

// Finite positivity certificate: kernel values sampled on a point set.
// A failed check refutes positivity; a passed check is evidence only.
struct SampledGram {
  std::vector<Cplx> points;
  CMat gram;
  double min_eig = 0.0;
  double max_eig = 0.0;
  double tol = 0.0;
  bool pass = false;
};

namespace detail {

inline CMat to_block(const CMat& m) { return m; }
inline CMat to_block(Cplx v) {
  CMat m(1, 1);
  m(0, 0) = v;
  return m;
}

}  // namespace detail

// Assembles the block Gram matrix of a kernel on the given points,
// symmetrizes it, and reports the extreme eigenvalues. Pass criterion:
// min_eig >= -tol (1 + max_eig).
template <typename K>
SampledGram gram_check(K&& kernel, const std::vector<Cplx>& points,
                       double tol) {
  if (points.empty()) throw std::invalid_argument("gram_check: no points");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (std::abs(points[i] - points[j]) < 1e-14)
        throw std::invalid_argument("gram_check: coincident points");

  const std::size_t n = points.size();
  SampledGram out;
  out.points = points;
  out.tol = tol;

  Eigen::Index p = 0;
  CMat G;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      CMat block;
      try {
        block = detail::to_block(kernel(points[i], points[j]));
      } catch (const std::exception& e) {
        throw numeric_error("gram_check: kernel failed at point pair (" +
                            std::to_string(i) + ", " + std::to_string(j) +
                            "): " + e.what());
      }
      if (i == 0 && j == 0) {
        if (block.rows() != block.cols())
          throw std::invalid_argument("gram_check: kernel blocks not square");
        p = block.rows();
        G = CMat::Zero(p * n, p * n);
      }
      if (block.rows() != p || block.cols() != p)
        throw std::invalid_argument("gram_check: inconsistent block sizes");
      G.block(p * i, p * j, p, p) = block;
    }
  }

  G = hermitize(G);
  Eigen::SelfAdjointEigenSolver<CMat> es(G, Eigen::EigenvaluesOnly);
  out.gram = G;
  out.min_eig = es.eigenvalues().minCoeff();
  out.max_eig = es.eigenvalues().maxCoeff();
  out.pass = out.min_eig >= -tol * (1.0 + out.max_eig);
  return out;
}

// Quasi-uniform disk sample: sunflower layout on a golden-angle spiral.
inline std::vector<Cplx> disk_grid(std::size_t count, double radius) {
  if (count == 0 || radius <= 0.0)
    throw std::invalid_argument("disk_grid: positive count and radius");
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  std::vector<Cplx> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r =
        radius * std::sqrt((static_cast<double>(i) + 0.5) / count);
    const double th = golden * static_cast<double>(i);
    pts.push_back(Cplx(r * std::cos(th), r * std::sin(th)));
  }
  return pts;
}

// Solves P - A^* P A = C^* Jsig C as a dense linear system in the entries
// of P, then symmetrizes. Solvable iff no two eigenvalues of A satisfy
// lambda_i conj(lambda_j) = 1.
inline CMat stein_solve(const CMat& Jsig, const CMat& C, const CMat& A) {
  const Eigen::Index N = A.rows();
  if (A.cols() != N) throw std::invalid_argument("stein_solve: A not square");
  if (C.cols() != N || Jsig.rows() != C.rows() || Jsig.cols() != C.rows())
    throw std::invalid_argument("stein_solve: dimension mismatch");
  const CMat W = C.adjoint() * Jsig * C;
  if (N == 0) return CMat::Zero(0, 0);

  // Column-stacked unknowns: coefficient of P(k,l) in (A^* P A)(i,j) is
  // conj(A(k,i)) A(l,j).
  CMat M = CMat::Identity(N * N, N * N);
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index l = 0; l < N; ++l)
        for (Eigen::Index k = 0; k < N; ++k)
          M(j * N + i, l * N + k) -= std::conj(A(k, i)) * A(l, j);

  CVec w(N * N);
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index i = 0; i < N; ++i) w(j * N + i) = W(i, j);

  Eigen::FullPivLU<CMat> lu(M);
  if (!lu.isInvertible())
    throw numeric_error(
        "stein_solve: singular Stein operator (eigenvalue pair with "
        "lambda_i conj(lambda_j) = 1)");
  const CVec x = lu.solve(w);
  CMat P(N, N);
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index i = 0; i < N; ++i) P(i, j) = x(j * N + i);
  return hermitize(P);
}

// J-inner function data: signature matrix, observable pair, a unimodular
// normalization point, and the stored Stein solution.
struct ThetaData {
  CMat Jsig;
  CMat C;
  CMat A;
  Cplx z0;
  CMat P;
  CMat R;  // cached P^{-1} (I - z0 A)^{-*} C^*
};

inline ThetaData make_theta(const CMat& Jsig, const CMat& C, const CMat& A,
                            Cplx z0) {
  const Eigen::Index p = C.rows(), N = A.rows();
  if (A.cols() != N || C.cols() != N)
    throw std::invalid_argument("make_theta: dimension mismatch");
  if (Jsig.rows() != p || Jsig.cols() != p)
    throw std::invalid_argument("make_theta: signature size mismatch");
  const double jn = Jsig.norm();
  if ((Jsig - Jsig.adjoint()).norm() > 1e-12 * (1.0 + jn) ||
      (Jsig * Jsig - CMat::Identity(p, p)).norm() > 1e-12 * (1.0 + jn * jn))
    throw std::invalid_argument(
        "make_theta: signature matrix must satisfy J = J* = J^{-1}");
  if (std::abs(std::abs(z0) - 1.0) > 1e-12)
    throw std::invalid_argument("make_theta: |z0| must equal 1");

  // Observability: the stacked maps C A^k must have full column rank.
  CMat obs(p * N, N);
  CMat X = C;
  for (Eigen::Index k = 0; k < N; ++k) {
    obs.middleRows(p * k, p) = X;
    X = X * A;
  }
  Eigen::JacobiSVD<CMat> osvd(obs);
  const auto& osv = osvd.singularValues();
  if (N > 0 && (osv.size() < N || osv(N - 1) <= 1e-10 * osv(0)))
    throw std::invalid_argument("make_theta: (C, A) pair is not observable");

  ThetaData td;
  td.Jsig = Jsig;
  td.C = C;
  td.A = A;
  td.z0 = z0;
  td.P = stein_solve(Jsig, C, A);

  Eigen::JacobiSVD<CMat> psvd(td.P);
  const auto& psv = psvd.singularValues();
  if (N > 0) {
    const double cond =
        (psv(N - 1) > 0.0) ? psv(0) / psv(N - 1)
                           : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e12)) {
      std::ostringstream msg;
      msg << "make_theta: Stein solution not invertible (condition number "
          << cond << ")";
      throw numeric_error(msg.str());
    }
  }

  const CMat M0 = CMat::Identity(N, N) - z0 * A;
  Eigen::FullPivLU<CMat> lu0(M0.adjoint());
  if (!lu0.isInvertible())
    throw numeric_error("make_theta: z0 is not in the resolvent set of A");
  const CMat Y = lu0.solve(C.adjoint());
  td.R = Eigen::FullPivLU<CMat>(td.P).solve(Y);
  return td;
}

inline CMat theta_eval(const ThetaData& td, Cplx z) {
  return td.Jsig -
         (1.0 - z * std::conj(td.z0)) * (td.C * resolvent_solve(td.A, z, td.R));
}

// Defect of the displayed kernel identity
// (J - Theta(z) J Theta(w)^*)/(1 - z conj(w))
//   = C (I - zA)^{-1} P^{-1} (I - wA)^{-*} C^*.
inline double theta_kernel_residual(const ThetaData& td, Cplx z, Cplx w) {
  const Eigen::Index N = td.A.rows();
  const CMat lhs = (td.Jsig - theta_eval(td, z) * td.Jsig *
                                  theta_eval(td, w).adjoint()) /
                   (1.0 - z * std::conj(w));
  const CMat Mw = CMat::Identity(N, N) - w * td.A;
  const CMat Yw = Eigen::FullPivLU<CMat>(Mw.adjoint()).solve(td.C.adjoint());
  const CMat Rw = Eigen::FullPivLU<CMat>(td.P).solve(Yw);
  const CMat rhs = td.C * resolvent_solve(td.A, z, Rw);
  return (lhs - rhs).norm();
}

inline double theta_junitarity_defect(const ThetaData& td, Cplx z) {
  const CMat T = theta_eval(td, z);
  return (T * td.Jsig * T.adjoint() - td.Jsig).norm();
}

// Positivity of (J - Theta(sqrt(1-q) z) J Theta(sqrt(1-q) w)^*) E_q(z conj(w))
// sampled inside the disk of radius 1/sqrt(1-q).
inline SampledGram theta_q_kernel_check(const ThetaData& td, double q,
                                        const std::vector<Cplx>& points,
                                        double tol) {
  QParam qp(q);
  qp.require_below_one("theta_q_kernel_check");
  const double s = std::sqrt(1.0 - q);
  auto kernel = [&](Cplx z, Cplx w) -> CMat {
    const CMat T = td.Jsig - theta_eval(td, s * z) * td.Jsig *
                                 theta_eval(td, s * w).adjoint();
    return T * eq_eval_series(z * std::conj(w), Cplx(1.0), q);
  };
  return gram_check(kernel, points, tol);
}

// Schur-multiplier test for the deformed Hardy space: s qualifies iff
// s(z) = sigma(sqrt(1-q) z) for a classical Schur function sigma, so the
// test unscales s and runs the classical kernel on the unit-disk grid.
template <typename F>
SampledGram schur_multiplier_check_q(F&& s, double q,
                                     const std::vector<Cplx>& grid,
                                     double tol) {
  QParam qp(q);
  qp.require_below_one("schur_multiplier_check_q");
  const double scale = 1.0 / std::sqrt(1.0 - q);
  auto kernel = [&](Cplx z, Cplx w) -> Cplx {
    const Cplx sz = s(z * scale);
    const Cplx sw = s(w * scale);
    return (1.0 - sz * std::conj(sw)) / (1.0 - z * std::conj(w));
  };
  return gram_check(kernel, grid, tol);
}

// A contractive S stays a multiplier after the shift z -> sqrt(1-q) q^{k/2} z;
// tested through the kernel (1 - S_k(z) conj(S_k(w))) E_q(z conj(w)).
template <typename F>
SampledGram shifted_schur_check(F&& S, double q, std::size_t k,
                                const std::vector<Cplx>& grid, double tol) {
  QParam qp(q);
  qp.require_below_one("shifted_schur_check");
  const double shift =
      std::sqrt(1.0 - q) * std::pow(q, static_cast<double>(k) / 2.0);
  auto kernel = [&](Cplx z, Cplx w) -> Cplx {
    const Cplx sz = S(shift * z);
    const Cplx sw = S(shift * w);
    return (1.0 - sz * std::conj(sw)) *
           eq_eval_series(z * std::conj(w), Cplx(1.0), q);
  };
  return gram_check(kernel, grid, tol);
}

// Finite product of shifted copies, k = kmin .. kmax.
template <typename F>
SampledGram shifted_schur_product_check(F&& S, double q, std::size_t kmin,
                                        std::size_t kmax,
                                        const std::vector<Cplx>& grid,
                                        double tol) {
  QParam qp(q);
  qp.require_below_one("shifted_schur_product_check");
  if (kmax < kmin)
    throw std::invalid_argument("shifted_schur_product_check: empty range");
  auto prod = [&, q](Cplx z) {
    Cplx v(1.0);
    for (std::size_t k = kmin; k <= kmax; ++k)
      v *= S(std::sqrt(1.0 - q) * std::pow(q, static_cast<double>(k) / 2.0) *
             z);
    return v;
  };
  auto kernel = [&](Cplx z, Cplx w) -> Cplx {
    return (1.0 - prod(z) * std::conj(prod(w))) *
           eq_eval_series(z * std::conj(w), Cplx(1.0), q);
  };
  return gram_check(kernel, grid, tol);
}

}  // namespace qrat
