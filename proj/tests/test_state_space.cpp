#include <qrat/qcalc.hpp>
#include <qrat/state_space.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "test_util.hpp"

using namespace qrat;
using testutil::qfact_direct;
using testutil::qint_direct;
using testutil::random_cmat;
using testutil::random_with_opnorm;
using testutil::random_with_radius;

namespace {

CMat scalar1(Cplx v) {
  CMat m(1, 1);
  m(0, 0) = v;
  return m;
}

// Factor-by-factor product evaluation using explicit dense inverses only.
CMat direct_product_eval(const CMat& C, const CMat& A, const CMat& B, double q,
                         std::size_t J, Cplx z) {
  const Eigen::Index n = A.rows();
  CMat P = CMat::Identity(n, n);
  double qj = 1.0;
  for (std::size_t j = 0; j <= J; ++j) {
    const CMat factor = CMat::Identity(n, n) - (1.0 - q) * z * qj * A;
    P = P * factor.inverse();
    qj *= q;
  }
  return C * P * B;
}

}  // namespace

TEST_CASE("realization shape validation", "[statespace]") {
  std::mt19937_64 rng(401);
  const CMat C = random_cmat(rng, 2, 3);
  const CMat A = random_cmat(rng, 3, 3);
  const CMat B = random_cmat(rng, 3, 2);

  const StateSpace ok(C, A, B);
  CHECK(ok.state_dim() == 3);
  CHECK(ok.out_dim() == 2);
  CHECK(ok.in_dim() == 2);
  CHECK_FALSE(ok.has_d());

  CHECK_THROWS_AS(StateSpace(C, random_cmat(rng, 3, 2), B),
                  std::invalid_argument);
  CHECK_THROWS_AS(StateSpace(random_cmat(rng, 2, 4), A, B),
                  std::invalid_argument);
  CHECK_THROWS_AS(StateSpace(C, A, random_cmat(rng, 4, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(StateSpace(C, A, B, random_cmat(rng, 3, 2)),
                  std::invalid_argument);

  CMat bad = A;
  bad(1, 1) = Cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(StateSpace(C, bad, B), std::invalid_argument);

  CHECK_THROWS_AS(QRational(StateSpace(C, A, B, random_cmat(rng, 2, 2)), 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(QRational(ok, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(QRational(ok, -0.1), std::invalid_argument);

  std::vector<CMat> coeffs{random_cmat(rng, 2, 2), random_cmat(rng, 2, 3)};
  CHECK_THROWS_AS(TaylorSeq(coeffs), std::invalid_argument);
}

TEST_CASE("single-resolvent evaluation", "[statespace]") {
  std::mt19937_64 rng(402);

  // Value at the origin is C*B (plus D when present).
  const CMat C = random_cmat(rng, 2, 3);
  const CMat A = random_with_radius(rng, 3, 0.8);
  const CMat B = random_cmat(rng, 3, 2);
  CHECK((eval_classical(StateSpace(C, A, B), Cplx(0.0)) - C * B).norm() <
        1e-14);

  const CMat D = random_cmat(rng, 2, 2);
  CHECK((eval_classical(StateSpace(C, A, B, D), Cplx(0.0)) - D).norm() < 1e-14);

  // Scalar geometric series: C=B=1, A=a gives 1/(1-z*a).
  const StateSpace geo(scalar1(1.0), scalar1(0.5), scalar1(1.0));
  CHECK(std::abs(eval_classical(geo, Cplx(0.5))(0, 0) - Cplx(4.0 / 3.0)) <
        1e-14);

  // Affine function: D=2, C=B=1, A=0 gives 2 + z.
  const StateSpace affine(scalar1(1.0), scalar1(0.0), scalar1(1.0),
                          scalar1(2.0));
  CHECK(std::abs(eval_classical(affine, Cplx(0.7, -0.2))(0, 0) -
                 Cplx(2.7, -0.2)) < 1e-14);

  // Partial-sum oracle: F(z) = D + sum_{k>=0} z^{k+1} C A^k B.
  const CMat An = random_with_opnorm(rng, 3, 0.5);
  const StateSpace ss(C, An, B, D);
  const Cplx z(0.6, 0.5);  // |z| * ||A|| < 0.4, fast geometric decay
  CMat acc = D;
  CMat X = B;
  Cplx zp = z;
  for (int k = 0; k < 120; ++k) {
    acc += zp * (C * X);
    X = An * X;
    zp *= z;
  }
  CHECK((eval_classical(ss, z) - acc).norm() < 1e-12);

  // Pole hit: 1/z equal to an eigenvalue of A must be rejected.
  const StateSpace pole(scalar1(1.0), scalar1(1.0), scalar1(1.0));
  CHECK_THROWS_AS(eval_classical(pole, Cplx(1.0)), numeric_error);
}

TEST_CASE("deformed evaluation", "[statespace]") {
  std::mt19937_64 rng(403);

  // Value at the origin is C*B.
  {
    const CMat C = random_cmat(rng, 2, 3);
    const CMat A = random_with_radius(rng, 3, 0.7);
    const CMat B = random_cmat(rng, 3, 2);
    const QRational f(StateSpace(C, A, B), 0.5);
    CHECK((eval_q(f, Cplx(0.0)) - C * B).norm() < 1e-14);
  }

  // q = 0 collapses the product to the single classical resolvent.
  for (int trial = 0; trial < 5; ++trial) {
    const CMat C = random_cmat(rng, 2, 2);
    const CMat A = random_with_radius(rng, 2, 0.8);
    const CMat B = random_cmat(rng, 2, 2);
    const QRational f(StateSpace(C, A, B), 0.0);
    const Cplx z(0.45, -0.3);
    CHECK((eval_q(f, z) - eval_classical(f.ss, z)).norm() < 1e-12);
  }

  // Scalar case reproduces the product form of the deformed exponential.
  {
    const double q = 0.6;
    const Cplx a(0.8, 0.3);
    const QRational f(StateSpace(scalar1(1.0), scalar1(a), scalar1(1.0)), q);
    const Cplx z(1.1, -0.4);  // (1-q)|za| ~ 0.53 < 1
    const Cplx want = eq_eval_product(z, a, q, 1e-14);
    CHECK(std::abs(eval_q(f, z)(0, 0) - want) < 1e-11 * (1.0 + std::abs(want)));
  }

  // Taylor-sum oracle: F(z) = sum_k z^k C A^k B / [k]_q!.
  for (double q : {0.3, 0.7}) {
    const CMat C = random_cmat(rng, 2, 2);
    const CMat A = random_with_opnorm(rng, 2, 0.5);
    const CMat B = random_cmat(rng, 2, 2);
    const QRational f(StateSpace(C, A, B), q);
    const Cplx z(0.8, 0.4);
    CMat acc = CMat::Zero(2, 2);
    CMat X = B;
    Cplx zp = 1.0;
    for (int k = 0; k < 200; ++k) {
      acc += (zp / qfact_direct(k, q)) * (C * X);
      X = A * X;
      zp *= z;
    }
    CHECK((eval_q(f, z) - acc).norm() < 1e-9 * (1.0 + acc.norm()));
  }

  // Domain boundary: (1-q)|z| rho(A) >= 1 is rejected.
  {
    const QRational f(StateSpace(scalar1(1.0), scalar1(1.0), scalar1(1.0)),
                      0.5);
    CHECK_THROWS_AS(eval_q(f, Cplx(2.0)), numeric_error);
    CHECK_NOTHROW(eval_q(f, Cplx(1.9)));
  }
}

TEST_CASE("coefficient extraction", "[statespace]") {
  std::mt19937_64 rng(404);
  const CMat C = random_cmat(rng, 2, 3);
  const CMat A = random_cmat(rng, 3, 3);
  const CMat B = random_cmat(rng, 3, 2);

  for (double q : {0.0, 0.4}) {
    const QRational f(StateSpace(C, A, B), q);
    const TaylorSeq ts = taylor_q(f, 6);
    REQUIRE(ts.coeffs.size() == 7);
    CMat X = B;
    for (int k = 0; k <= 6; ++k) {
      const CMat want = (C * X) / qfact_direct(k, q);
      CHECK((ts.coeffs[k] - want).norm() < 1e-13 * (1.0 + want.norm()));
      X = A * X;
    }
  }
}

TEST_CASE("difference-quotient operator", "[statespace]") {
  std::mt19937_64 rng(405);

  // Rational functions are mapped inside the class: (C, A, B) -> (C, A, A*B),
  // and the result matches the two-point quotient of the evaluated function.
  for (double q : {0.0, 0.5}) {
    const CMat C = random_cmat(rng, 2, 2);
    const CMat A = random_with_radius(rng, 2, 0.6);
    const CMat B = random_cmat(rng, 2, 2);
    const QRational f(StateSpace(C, A, B), q);
    const QRational g = rq_apply(f);
    CHECK((g.ss.B - A * B).norm() == 0.0);

    for (Cplx z : {Cplx(0.5, 0.2), Cplx(-0.3, 0.6), Cplx(0.9, 0.0)}) {
      const CMat quot = (eval_q(f, z) - eval_q(f, q * z)) / ((1.0 - q) * z);
      CHECK((eval_q(g, z) - quot).norm() < 1e-9 * (1.0 + quot.norm()));
    }
  }

  // q = 0 frozen example: f = 1/(1-az) maps to a/(1-az).
  {
    const QRational f(StateSpace(scalar1(1.0), scalar1(0.5), scalar1(1.0)),
                      0.0);
    const Cplx got = eval_q(rq_apply(f), Cplx(0.3))(0, 0);
    CHECK(std::abs(got - Cplx(0.5 / 0.85)) < 1e-13);
  }

  // Eigenfunction: the scalar deformed exponential with C=B=1, A=a satisfies
  // (R f)(z) = a f(z).
  {
    const double q = 0.5;
    const Cplx a(0.7, 0.1);
    const QRational f(StateSpace(scalar1(1.0), scalar1(a), scalar1(1.0)), q);
    const Cplx z(0.9, -0.3);
    const Cplx lhs = eval_q(rq_apply(f), z)(0, 0);
    const Cplx rhs = a * eval_q(f, z)(0, 0);
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
  }

  // Coefficient-level oracle: shifting Taylor data, g_k = [k+1]_q f_{k+1}.
  {
    const double q = 0.35;
    const CMat C = random_cmat(rng, 2, 3);
    const CMat A = random_cmat(rng, 3, 3);
    const CMat B = random_cmat(rng, 3, 2);
    const QRational f(StateSpace(C, A, B), q);
    const TaylorSeq tf = taylor_q(f, 7);
    const TaylorSeq tg = taylor_q(rq_apply(f), 6);
    for (int k = 0; k <= 6; ++k) {
      const CMat want = qint_direct(k + 1, q) * tf.coeffs[k + 1];
      CHECK((tg.coeffs[k] - want).norm() < 1e-12 * (1.0 + want.norm()));
    }
  }
}

TEST_CASE("collapsed finite products", "[statespace]") {
  std::mt19937_64 rng(406);
  const double q = 0.5;
  const CMat C = random_cmat(rng, 2, 2);
  const CMat A = random_with_radius(rng, 2, 0.8);
  const CMat B = random_cmat(rng, 2, 2);

  // J = 0, first form: one factor with an explicit constant term C*B.
  {
    const StateSpace t = truncated_realization_weiz(C, A, B, q, 0);
    REQUIRE(t.has_d());
    CHECK((*t.D - C * B).norm() < 1e-14);
    const Cplx z(0.9, 0.3);
    CHECK((eval_classical(t, z) - direct_product_eval(C, A, B, q, 0, z)).norm() <
          1e-12);
  }

  // General J, both forms, against the factor-by-factor oracle.
  for (std::size_t J : {1u, 3u, 4u}) {
    const StateSpace t1 = truncated_realization_weiz(C, A, B, q, J);
    const StateSpace t2 = truncated_realization_weiz2(C, A, B, q, J);
    CHECK(t1.state_dim() == static_cast<Eigen::Index>((J + 1) * 2));
    CHECK(t2.state_dim() == static_cast<Eigen::Index>((J + 1) * 2));
    for (Cplx z : {Cplx(0.4, 0.0), Cplx(-0.5, 0.7), Cplx(1.0, -0.6)}) {
      const CMat want = direct_product_eval(C, A, B, q, J, z);
      CHECK((eval_classical(t1, z) - want).norm() < 1e-10 * (1.0 + want.norm()));
      CHECK((eval_classical(t2, z) - want).norm() < 1e-10 * (1.0 + want.norm()));
    }
  }

  // q = 0: every factor beyond j = 0 is the identity, so any J gives the
  // single classical resolvent.
  {
    const StateSpace t2 = truncated_realization_weiz2(C, A, B, 0.0, 5);
    const Cplx z(0.6, 0.2);
    CHECK((eval_classical(t2, z) - eval_classical(StateSpace(C, A, B), z))
              .norm() < 1e-12);
  }

  // Truncations converge to the full deformed evaluation as J grows.
  {
    const QRational f(StateSpace(C, A, B), q);
    const Cplx z(0.8, -0.5);
    const CMat full = eval_q(f, z);
    double prev = 1e300;
    for (std::size_t J : {2u, 8u, 40u}) {
      const double err =
          (eval_classical(truncated_realization_weiz(C, A, B, q, J), z) - full)
              .norm();
      CHECK(err < prev + 1e-12);
      prev = err;
    }
    CHECK(prev < 1e-8);
  }
}
