#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <qrat/core.hpp>
#include <qrat/kernels.hpp>

// Tangential Nevanlinna-Pick interpolation over the unit ball of C^N with
// kernel 1/(1 - <z,w>).  Solvability is the sign of the Pick matrix; when it
// is strictly positive definite a J-inner coefficient matrix Theta is built
// and solutions are linear fractional transforms of Schur-class parameters.
// Two Theta constructions coexist:
//   - scalar disk problems (N = 1, 1x1 targets) use the classical Schur
//     recursion, which is the default because it is well conditioned;
//   - everything else uses a resolvent-form assembly whose defining kernel
//     identity is sampled at build time and reported, never assumed.
// Downstream guarantees rest on verify_solution, not on either formula.
namespace qrat::interp {

// Interpolation data.  Exactly one target mode is populated:
//   tangential: S(w_j)^* xi_j = eta_j with xi_j in C^p, eta_j in C^q;
//   full value: S(w_j) = values[j], a p x q matrix.
struct PickProblem {
  std::size_t ball_dim = 1;
  std::vector<CVec> nodes;
  std::vector<CVec> xi;
  std::vector<CVec> eta;
  std::vector<CMat> values;

  bool tangential() const { return !xi.empty() || !eta.empty(); }
};

inline PickProblem scalar_pick(const std::vector<Cplx>& nodes,
                               const std::vector<Cplx>& targets) {
  PickProblem pb;
  pb.ball_dim = 1;
  for (Cplx w : nodes) {
    CVec v(1);
    v(0) = w;
    pb.nodes.push_back(v);
  }
  for (Cplx s : targets) {
    CMat m(1, 1);
    m(0, 0) = s;
    pb.values.push_back(m);
  }
  return pb;
}

inline Cplx ball_inner(const CVec& z, const CVec& w) {
  return (z.array() * w.conjugate().array()).sum();
}

inline Cplx ball_kernel(const CVec& z, const CVec& w) {
  const Cplx den = 1.0 - ball_inner(z, w);
  if (std::abs(den) < 1e-14)
    throw numeric_error("ball_kernel: pole, <z,w> = 1");
  return 1.0 / den;
}

namespace detail {

struct ProblemShape {
  std::size_t m = 0;   // node count
  Eigen::Index p = 0;  // row dimension of S
  Eigen::Index q = 0;  // column dimension of S
};

inline ProblemShape validate(const PickProblem& pb) {
  if (pb.ball_dim == 0)
    throw std::invalid_argument("pick: ball dimension must be >= 1");
  const std::size_t m = pb.nodes.size();
  if (m == 0) throw std::invalid_argument("pick: at least one node required");
  for (const CVec& w : pb.nodes) {
    if (static_cast<std::size_t>(w.size()) != pb.ball_dim)
      throw std::invalid_argument("pick: node dimension mismatch");
    if (!w.allFinite() || w.norm() >= 1.0)
      throw std::invalid_argument(
          "pick: nodes must lie strictly inside the unit ball");
  }
  const bool tang = pb.tangential();
  const bool full = !pb.values.empty();
  if (tang == full)
    throw std::invalid_argument(
        "pick: exactly one target mode (tangential pairs or full values)");
  ProblemShape sh;
  sh.m = m;
  if (tang) {
    if (pb.xi.size() != m || pb.eta.size() != m)
      throw std::invalid_argument("pick: one (xi, eta) pair per node");
    sh.p = pb.xi[0].size();
    sh.q = pb.eta[0].size();
    if (sh.p == 0 || sh.q == 0)
      throw std::invalid_argument("pick: empty tangential vectors");
    for (std::size_t j = 0; j < m; ++j) {
      if (pb.xi[j].size() != sh.p || pb.eta[j].size() != sh.q)
        throw std::invalid_argument(
            "pick: tangential vector dimensions must be uniform");
      if (!pb.xi[j].allFinite() || !pb.eta[j].allFinite())
        throw std::invalid_argument("pick: tangential data must be finite");
    }
  } else {
    if (pb.values.size() != m)
      throw std::invalid_argument("pick: one target value per node");
    sh.p = pb.values[0].rows();
    sh.q = pb.values[0].cols();
    if (sh.p == 0 || sh.q == 0)
      throw std::invalid_argument("pick: empty target matrices");
    for (const CMat& s : pb.values) {
      if (s.rows() != sh.p || s.cols() != sh.q)
        throw std::invalid_argument(
            "pick: target dimensions must be uniform");
      if (!s.allFinite())
        throw std::invalid_argument("pick: target values must be finite");
    }
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = j + 1; l < m; ++l)
      if ((pb.nodes[j] - pb.nodes[l]).norm() <= 1e-14)
        throw std::invalid_argument("pick: coincident interpolation nodes");
  return sh;
}

}  // namespace detail

// Pick matrix.  Full-value mode: blocks (I_p - S_j S_l^*) k(w_j, w_l).
// Tangential mode: scalar entries (xi_j^* xi_l - eta_j^* eta_l) k(w_j, w_l).
inline CMat pick_matrix(const PickProblem& pb) {
  const auto sh = detail::validate(pb);
  const auto m = static_cast<Eigen::Index>(sh.m);
  if (pb.tangential()) {
    CMat G(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index l = 0; l < m; ++l)
        G(j, l) = (pb.xi[j].dot(pb.xi[l]) - pb.eta[j].dot(pb.eta[l])) *
                  ball_kernel(pb.nodes[j], pb.nodes[l]);
    return hermitize(G);
  }
  const Eigen::Index p = sh.p;
  CMat G(m * p, m * p);
  const CMat ip = CMat::Identity(p, p);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index l = 0; l < m; ++l)
      G.block(j * p, l * p, p, p) =
          (ip - pb.values[j] * pb.values[l].adjoint()) *
          ball_kernel(pb.nodes[j], pb.nodes[l]);
  return hermitize(G);
}

struct PickAssessment {
  CMat G;
  double min_eig = 0.0;
  double max_eig = 0.0;
  double tol = 0.0;
  bool solvable = false;    // min_eig >= -tol (1 + max_eig)
  bool degenerate = false;  // solvable but min_eig within the tolerance band
};

inline PickAssessment assess(const PickProblem& pb, double tol = 1e-9) {
  PickAssessment a;
  a.G = pick_matrix(pb);
  a.tol = tol;
  Eigen::SelfAdjointEigenSolver<CMat> es(a.G, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("pick: eigenvalue computation failed");
  a.min_eig = es.eigenvalues().minCoeff();
  a.max_eig = es.eigenvalues().maxCoeff();
  const double thr = tol * (1.0 + a.max_eig);
  a.solvable = a.min_eig >= -thr;
  a.degenerate = a.solvable && a.min_eig <= thr;
  return a;
}

inline bool solvable(const PickProblem& pb, double tol = 1e-9) {
  return assess(pb, tol).solvable;
}

// Evaluable coefficient matrix.  The classical flag selects the scalar-disk
// Schur-recursion product; otherwise the resolvent-form data below is used.
// In both cases C, A, G describe the tangential condition set: C stacks the
// (xi; eta) columns, A[c] is the diagonal of conjugated c-th node
// coordinates, and G - sum_c A_c^* G A_c = C^* Jsig C holds by construction.
struct PickTheta {
  std::size_t ball_dim = 1;
  Eigen::Index p = 1;
  Eigen::Index q = 1;
  Eigen::Index cond = 0;  // tangential condition count
  bool classical = false;

  // classical scalar path
  std::vector<Cplx> disk_nodes;
  std::vector<Cplx> gammas;

  // resolvent-form data (always populated)
  CMat C;               // (p+q) x cond
  std::vector<CMat> A;  // ball_dim diagonal cond x cond coefficient matrices
  CMat G, Ginv, Gsqrt;
  CMat Jsig;  // diag(I_p, -I_q)

  double identity_residual = 0.0;  // sampled at build time
  bool identity_ok = false;
};

namespace detail {

inline Cplx unit_disk_blaschke(Cplx w, Cplx z) {
  const Cplx den = 1.0 - z * std::conj(w);
  if (std::abs(den) < 1e-14)
    throw numeric_error("pick: Blaschke factor pole");
  return (z - w) / den;
}

// (I - Z(lambda))^{-1} with Z(lambda) = sum_c lambda_c A_c; diagonal by
// construction, entries 1 - <lambda, w_k>.
inline CMat condition_resolvent(const PickTheta& th, const CVec& lambda) {
  CVec d = CVec::Ones(th.cond);
  for (std::size_t c = 0; c < th.ball_dim; ++c)
    d -= lambda(static_cast<Eigen::Index>(c)) *
         th.A[c].diagonal();
  for (Eigen::Index k = 0; k < th.cond; ++k) {
    if (std::abs(d(k)) < 1e-14)
      throw numeric_error("pick: resolvent pole at a condition node");
    d(k) = 1.0 / d(k);
  }
  return d.asDiagonal();
}

}  // namespace detail

// Theta value.  Classical path: the 2x2 product of elementary J-unitary
// factors H_gamma diag(b_w, 1).  Resolvent path: the (p+q) x (cond N + p + q)
// row [0 I] + C (I - Z)^{-1} G^{-1} [(lambda_1 I - A_1^*) G^{1/2}, ...,
// -C^* Jsig], whose defining identity against diag(I_{cond N}, Jsig) is
// sampled in theta_build.
inline CMat theta_eval(const PickTheta& th, const CVec& lambda) {
  if (static_cast<std::size_t>(lambda.size()) != th.ball_dim)
    throw std::invalid_argument("theta_eval: lambda dimension mismatch");
  if (th.classical) {
    const Cplx z = lambda(0);
    CMat T = CMat::Identity(2, 2);
    for (std::size_t k = 0; k < th.gammas.size(); ++k) {
      const Cplx g = th.gammas[k];
      const double c = 1.0 / std::sqrt(1.0 - std::norm(g));
      CMat H(2, 2);
      H << c, c * g, c * std::conj(g), c;
      CMat B = CMat::Identity(2, 2);
      B(0, 0) = detail::unit_disk_blaschke(th.disk_nodes[k], z);
      T = T * H * B;
    }
    return T;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(th.ball_dim);
  const Eigen::Index pq = th.p + th.q;
  const Eigen::Index width = th.cond * n + pq;
  CMat theta = CMat::Zero(pq, width);
  theta.rightCols(pq).setIdentity();
  const CMat R = detail::condition_resolvent(th, lambda);
  const CMat FG = th.C * R * th.Ginv;
  CMat K(th.cond, width);
  for (Eigen::Index c = 0; c < n; ++c) {
    const CMat W = lambda(c) * CMat::Identity(th.cond, th.cond) -
                   th.A[static_cast<std::size_t>(c)].adjoint();
    K.middleCols(c * th.cond, th.cond) = W * th.Gsqrt;
  }
  K.rightCols(pq) = -th.C.adjoint() * th.Jsig;
  theta += FG * K;
  return theta;
}

// Solutions are S = (L1 sigma + R1)(L2 sigma + R2)^{-1} where [L|R] splits
// theta's columns with R the last q, and rows split p|q.  The classical 2x2
// theta takes a scalar-block sigma (p x q); the resolvent form takes the
// taller (cond N + p) x q parameter.  sigma = 0 gives the central solution.
inline CMat lft_apply(const PickTheta& th, const CMat& sigma,
                      const CVec& lambda) {
  const CMat theta = theta_eval(th, lambda);
  const Eigen::Index lcols = theta.cols() - th.q;
  if (sigma.rows() != lcols || sigma.cols() != th.q)
    throw std::invalid_argument("lft_apply: parameter shape mismatch");
  const CMat L1 = theta.topLeftCorner(th.p, lcols);
  const CMat L2 = theta.bottomLeftCorner(th.q, lcols);
  const CMat R1 = theta.topRightCorner(th.p, th.q);
  const CMat R2 = theta.bottomRightCorner(th.q, th.q);
  const CMat num = L1 * sigma + R1;
  const CMat den = L2 * sigma + R2;
  Eigen::FullPivLU<CMat> lu(den);
  if (!lu.isInvertible())
    throw numeric_error("lft_apply: singular denominator");
  return num * lu.inverse();
}

// Central solution (sigma = 0).  The classical path uses the backward Schur
// recursion directly, which avoids forming theta.
inline CMat central_eval(const PickTheta& th, const CVec& lambda) {
  if (static_cast<std::size_t>(lambda.size()) != th.ball_dim)
    throw std::invalid_argument("central_eval: lambda dimension mismatch");
  if (th.classical) {
    const Cplx z = lambda(0);
    Cplx u = 0.0;
    for (std::size_t k = th.gammas.size(); k-- > 0;) {
      const Cplx b = detail::unit_disk_blaschke(th.disk_nodes[k], z);
      const Cplx g = th.gammas[k];
      const Cplx den = 1.0 + std::conj(g) * b * u;
      if (std::abs(den) < 1e-14)
        throw numeric_error("central_eval: recursion denominator vanished");
      u = (g + b * u) / den;
    }
    CMat s(1, 1);
    s(0, 0) = u;
    return s;
  }
  const CMat theta = theta_eval(th, lambda);
  const CMat R1 = theta.topRightCorner(th.p, th.q);
  const CMat R2 = theta.bottomRightCorner(th.q, th.q);
  Eigen::FullPivLU<CMat> lu(R2);
  if (!lu.isInvertible())
    throw numeric_error("central_eval: singular denominator");
  return R1 * lu.inverse();
}

// Deterministic sample of the open ball: golden-angle sunflower on the disk
// for N = 1, seeded radius-corrected Gaussian directions otherwise.
inline std::vector<CVec> ball_grid(std::size_t ball_dim, std::size_t count,
                                   double radius,
                                   std::uint64_t seed = 20240811u) {
  if (ball_dim == 0 || count == 0)
    throw std::invalid_argument("ball_grid: empty request");
  if (!(radius > 0.0) || radius >= 1.0)
    throw std::invalid_argument("ball_grid: radius must lie in (0, 1)");
  std::vector<CVec> out;
  out.reserve(count);
  if (ball_dim == 1) {
    for (Cplx z : disk_grid(count, radius)) {
      CVec v(1);
      v(0) = z;
      out.push_back(v);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Eigen::Index n = static_cast<Eigen::Index>(ball_dim);
  while (out.size() < count) {
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Cplx(gauss(rng), gauss(rng));
    const double nrm = v.norm();
    if (nrm < 1e-9) continue;
    const double r =
        radius * std::pow(unif(rng), 1.0 / (2.0 * static_cast<double>(n)));
    out.push_back((r / nrm) * v);
  }
  return out;
}

// Builds the evaluable coefficient matrix.  Requires a strictly positive
// definite Pick matrix: boundary cases are refused as degenerate (solution
// unique or empty; the open parametrization needs G > 0).
inline PickTheta theta_build(const PickProblem& pb, double tol = 1e-9) {
  const auto sh = detail::validate(pb);
  const auto a = assess(pb, tol);
  const double thr = tol * (1.0 + a.max_eig);
  if (a.min_eig < -thr)
    throw numeric_error(
        "theta_build: Pick matrix not positive semidefinite, unsolvable");
  if (a.min_eig <= thr)
    throw numeric_error(
        "theta_build: degenerate Pick matrix (boundary case, unique or no "
        "solution); strict positivity required");

  PickTheta th;
  th.ball_dim = pb.ball_dim;
  th.p = sh.p;
  th.q = sh.q;

  // Tangential condition list: full-value targets expand into p conditions
  // per node, S(w_j)^* e_i = S_j^* e_i, ordered to match the block layout of
  // the full-value Pick matrix.
  std::vector<CVec> ws, xs, es;
  if (pb.tangential()) {
    ws = pb.nodes;
    xs = pb.xi;
    es = pb.eta;
  } else {
    for (std::size_t j = 0; j < sh.m; ++j)
      for (Eigen::Index i = 0; i < sh.p; ++i) {
        ws.push_back(pb.nodes[j]);
        xs.push_back(CVec::Unit(sh.p, i));
        es.push_back(pb.values[j].adjoint() * CVec::Unit(sh.p, i));
      }
  }
  th.cond = static_cast<Eigen::Index>(ws.size());

  th.C = CMat::Zero(th.p + th.q, th.cond);
  for (Eigen::Index k = 0; k < th.cond; ++k) {
    th.C.block(0, k, th.p, 1) = xs[static_cast<std::size_t>(k)];
    th.C.block(th.p, k, th.q, 1) = es[static_cast<std::size_t>(k)];
  }
  th.A.resize(pb.ball_dim);
  for (std::size_t c = 0; c < pb.ball_dim; ++c) {
    CVec d(th.cond);
    for (Eigen::Index k = 0; k < th.cond; ++k)
      d(k) = std::conj(ws[static_cast<std::size_t>(k)](
          static_cast<Eigen::Index>(c)));
    th.A[c] = CMat(d.asDiagonal());
  }
  th.G = a.G;
  {
    Eigen::SelfAdjointEigenSolver<CMat> es2(th.G);
    if (es2.info() != Eigen::Success)
      throw numeric_error("theta_build: eigendecomposition failed");
    const Eigen::VectorXd ev = es2.eigenvalues();
    const CMat V = es2.eigenvectors();
    th.Ginv = V * ev.cwiseInverse().cast<Cplx>().asDiagonal() * V.adjoint();
    th.Gsqrt = V * ev.cwiseSqrt().cast<Cplx>().asDiagonal() * V.adjoint();
  }
  th.Jsig = CMat::Zero(th.p + th.q, th.p + th.q);
  th.Jsig.topLeftCorner(th.p, th.p).setIdentity();
  th.Jsig.bottomRightCorner(th.q, th.q) =
      -CMat::Identity(th.q, th.q);

  // Scalar disk problems switch to the classical Schur recursion.  The
  // strict positivity established above guarantees every Schur parameter
  // stays inside the disk; the guards only trap numerical collapse.
  if (pb.ball_dim == 1 && sh.p == 1 && sh.q == 1) {
    bool convertible = true;
    std::vector<Cplx> nodes1, targets;
    for (std::size_t j = 0; j < sh.m; ++j) {
      nodes1.push_back(pb.nodes[j](0));
      if (pb.tangential()) {
        if (std::abs(pb.xi[j](0)) < 1e-14) {
          convertible = false;
          break;
        }
        targets.push_back(std::conj(pb.eta[j](0) / pb.xi[j](0)));
      } else {
        targets.push_back(pb.values[j](0, 0));
      }
    }
    if (convertible) {
      std::vector<Cplx> ss = targets;
      for (std::size_t k = 0; k < ss.size(); ++k) {
        const Cplx g = ss[k];
        if (std::abs(g) >= 1.0 - 1e-12)
          throw numeric_error(
              "theta_build: Schur parameter reached the boundary");
        for (std::size_t j = k + 1; j < ss.size(); ++j) {
          const Cplx b = detail::unit_disk_blaschke(nodes1[k], nodes1[j]);
          const Cplx den = 1.0 - std::conj(g) * ss[j];
          if (std::abs(den) < 1e-14 || std::abs(b) < 1e-14)
            throw numeric_error("theta_build: Schur recursion collapsed");
          ss[j] = ((ss[j] - g) / den) / b;
        }
        th.gammas.push_back(g);
      }
      th.disk_nodes = nodes1;
      th.classical = true;
    }
  }

  // Sampled defining identity: J - Theta(l) bigJ Theta(mu)^* should equal
  // (1 - <l,mu>) F(l) G^{-1} F(mu)^* with F = C (I - Z)^{-1}.  Reported,
  // not enforced; callers gate on verify_solution.
  {
    const auto pts = ball_grid(pb.ball_dim, 4, 0.7, 947u);
    const Eigen::Index pq = th.p + th.q;
    CMat bigJ;
    if (th.classical) {
      bigJ = th.Jsig;
    } else {
      const Eigen::Index w =
          th.cond * static_cast<Eigen::Index>(th.ball_dim) + pq;
      bigJ = CMat::Identity(w, w);
      bigJ.bottomRightCorner(pq, pq) = th.Jsig;
    }
    double worst = 0.0;
    for (const CVec& l : pts)
      for (const CVec& mu : pts) {
        const CMat tl = theta_eval(th, l);
        const CMat tm = theta_eval(th, mu);
        const CMat Fl = th.C * detail::condition_resolvent(th, l);
        const CMat Fm = th.C * detail::condition_resolvent(th, mu);
        const CMat lhs = th.Jsig - tl * bigJ * tm.adjoint();
        const CMat rhs =
            (1.0 - ball_inner(l, mu)) * (Fl * th.Ginv * Fm.adjoint());
        worst = std::max(worst, (lhs - rhs).norm());
      }
    th.identity_residual = worst;
    th.identity_ok = worst <= 1e-8;
  }
  return th;
}

// A posteriori certificate for a candidate solution: per-node interpolation
// residuals plus a sampled contractivity Gram check of (I - S S^*) k.
struct SolutionReport {
  std::vector<double> node_residuals;
  double max_node_residual = 0.0;
  double gram_min_eig = 0.0;
  double gram_max_eig = 0.0;
  double tol = 0.0;
  bool interpolation_pass = false;
  bool contractive_pass = false;
  bool pass = false;
};

template <typename F>
SolutionReport verify_solution(F&& S, const PickProblem& pb,
                               const std::vector<CVec>& grid, double tol) {
  const auto sh = detail::validate(pb);
  if (grid.empty()) throw std::invalid_argument("verify_solution: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (static_cast<std::size_t>(grid[i].size()) != pb.ball_dim)
      throw std::invalid_argument("verify_solution: grid dimension mismatch");
    for (std::size_t j = i + 1; j < grid.size(); ++j)
      if ((grid[i] - grid[j]).norm() <= 1e-14)
        throw std::invalid_argument("verify_solution: coincident grid points");
  }

  SolutionReport rep;
  rep.tol = tol;
  for (std::size_t j = 0; j < sh.m; ++j) {
    const CMat sv = S(pb.nodes[j]);
    if (sv.rows() != sh.p || sv.cols() != sh.q)
      throw std::invalid_argument("verify_solution: candidate shape mismatch");
    double r = 0.0;
    if (pb.tangential())
      r = (sv.adjoint() * pb.xi[j] - pb.eta[j]).norm();
    else
      r = (sv - pb.values[j]).norm();
    rep.node_residuals.push_back(r);
    rep.max_node_residual = std::max(rep.max_node_residual, r);
  }
  rep.interpolation_pass = rep.max_node_residual <= tol;

  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  std::vector<CMat> samples;
  samples.reserve(grid.size());
  for (const CVec& z : grid) samples.push_back(S(z));
  CMat G(n * sh.p, n * sh.p);
  const CMat ip = CMat::Identity(sh.p, sh.p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      G.block(i * sh.p, j * sh.p, sh.p, sh.p) =
          (ip - samples[static_cast<std::size_t>(i)] *
                    samples[static_cast<std::size_t>(j)].adjoint()) *
          ball_kernel(grid[static_cast<std::size_t>(i)],
                      grid[static_cast<std::size_t>(j)]);
  G = hermitize(G);
  Eigen::SelfAdjointEigenSolver<CMat> es(G, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("verify_solution: Gram eigensolve failed");
  rep.gram_min_eig = es.eigenvalues().minCoeff();
  rep.gram_max_eig = es.eigenvalues().maxCoeff();
  rep.contractive_pass =
      rep.gram_min_eig >= -tol * (1.0 + rep.gram_max_eig);
  rep.pass = rep.interpolation_pass && rep.contractive_pass;
  return rep;
}

// End-to-end pipeline: assess, build theta when strictly solvable, verify
// the central solution on a deterministic grid.
struct PickResult {
  PickAssessment assessment;
  std::optional<PickTheta> theta;
  SolutionReport report;
  bool solved = false;
};

inline PickResult pick_solve(const PickProblem& pb, double tol = 1e-9,
                             double verify_tol = 1e-6,
                             std::size_t grid_size = 40,
                             std::uint64_t seed = 20240811u) {
  PickResult r;
  r.assessment = assess(pb, tol);
  if (!r.assessment.solvable || r.assessment.degenerate) return r;
  PickTheta th = theta_build(pb, tol);
  const auto grid = ball_grid(pb.ball_dim, grid_size, 0.95, seed);
  r.report = verify_solution(
      [&th](const CVec& z) { return central_eval(th, z); }, pb, grid,
      verify_tol);
  r.theta = std::move(th);
  r.solved = true;
  return r;
}

}  // namespace qrat::interp
