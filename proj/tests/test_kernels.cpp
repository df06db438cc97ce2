#include <qrat/kernels.hpp>
#include <qrat/qcalc.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "test_util.hpp"

using namespace qrat;
using testutil::random_cmat;
using testutil::random_with_radius;

namespace {

Cplx random_disk_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double th = 2.0 * M_PI * u(rng);
  return Cplx(r * std::cos(th), r * std::sin(th));
}

}  // namespace

TEST_CASE("disk automorphisms", "[kernels]") {
  std::mt19937_64 rng(801);

  const Cplx a(0.4, -0.3);
  CHECK(std::abs(blaschke(a, a)) < 1e-15);
  for (double th : {0.0, 1.1, 2.9, 4.4}) {
    const Cplx z = std::polar(1.0, th);
    CHECK(std::abs(std::abs(blaschke(a, z)) - 1.0) < 1e-14);
  }
  CHECK_THROWS_AS(blaschke(Cplx(1.0), Cplx(0.2)), std::invalid_argument);
  CHECK_THROWS_AS(blaschke(a, 1.0 / std::conj(a)), numeric_error);

  // Deformed factor is the classical one at the rescaled argument.
  const double q = 0.6;
  const Cplx z(0.9, 0.4);
  CHECK(std::abs(blaschke_q(a, q, z) - blaschke(a, std::sqrt(1.0 - q) * z)) <
        1e-15);

  // Kernel identities, classical and rescaled, at random samples.
  for (int t = 0; t < 50; ++t) {
    const Cplx aa = random_disk_point(rng, 0.9);
    const Cplx zz = random_disk_point(rng, 0.95);
    const Cplx ww = random_disk_point(rng, 0.95);
    CHECK(blaschke_identity_residual(aa, zz, ww) < 1e-12);
    const Cplx zd = random_disk_point(rng, 0.95 / std::sqrt(1.0 - q));
    const Cplx wd = random_disk_point(rng, 0.95 / std::sqrt(1.0 - q));
    CHECK(blaschke_q_identity_residual(aa, q, zd, wd) < 1e-12);
  }
}

TEST_CASE("factorwise kernel identity", "[kernels]") {
  std::mt19937_64 rng(802);

  // Exact at the origin.
  CHECK(per_factor_identity_residual(Cplx(0.5, 0.2), 0.4, 1, Cplx(0.0),
                                     Cplx(0.0)) < 1e-15);

  // Random admissible samples across factor indices.
  for (double q : {0.3, 0.6}) {
    for (std::size_t j : {0u, 1u, 2u, 4u}) {
      for (int t = 0; t < 10; ++t) {
        const Cplx a = random_disk_point(rng, 0.9);
        const Cplx z = random_disk_point(rng, 0.95 / std::sqrt(1.0 - q));
        const Cplx w = random_disk_point(rng, 0.95 / std::sqrt(1.0 - q));
        CHECK(per_factor_identity_residual(a, q, j, z, w) < 1e-12);
      }
    }
  }

  // q = 0, j = 0 is the classical identity verbatim.
  for (int t = 0; t < 10; ++t) {
    const Cplx a = random_disk_point(rng, 0.9);
    const Cplx z = random_disk_point(rng, 0.95);
    const Cplx w = random_disk_point(rng, 0.95);
    CHECK(per_factor_identity_residual(a, 0.0, 0, z, w) < 1e-12);
  }
}

TEST_CASE("sampled positivity certificates", "[kernels]") {
  std::mt19937_64 rng(803);
  const double q = 0.4;
  const double rq = 0.95 / std::sqrt(1.0 - q);

  // The reproducing kernel itself passes.
  {
    const auto pts = disk_grid(30, rq);
    const auto g = gram_check(
        [&](Cplx z, Cplx w) {
          return eq_eval_series(z * std::conj(w), Cplx(1.0), q);
        },
        pts, 1e-9);
    CHECK(g.pass);
    CHECK(g.min_eig > 0.0);
    CHECK(g.gram.rows() == 30);
  }

  // One subtracted deformed Blaschke factor keeps positivity.
  {
    const Cplx a(0.35, 0.2);
    const auto pts = disk_grid(30, rq);
    const auto g = gram_check(
        [&](Cplx z, Cplx w) {
          return (1.0 - blaschke_q(a, q, z) * std::conj(blaschke_q(a, q, w))) *
                 eq_eval_series(z * std::conj(w), Cplx(1.0), q);
        },
        pts, 1e-9);
    CHECK(g.pass);
  }

  // A non-contractive symbol is refuted.
  {
    const auto pts = disk_grid(30, 0.95);
    const auto g = gram_check(
        [&](Cplx z, Cplx w) {
          return (1.0 - 4.0 * z * std::conj(w)) / (1.0 - z * std::conj(w));
        },
        pts, 1e-9);
    CHECK_FALSE(g.pass);
    CHECK(g.min_eig < -1e-3);
  }

  // Diagonal power-series kernels with nonnegative weights pass on any
  // distinct point set.
  {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::vector<double> c(12);
    for (double& v : c) v = u(rng);
    std::vector<Cplx> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(random_disk_point(rng, 0.9));
    const auto g = gram_check(
        [&](Cplx z, Cplx w) {
          Cplx acc(0.0), t(1.0);
          for (double v : c) {
            acc += v * t;
            t *= z * std::conj(w);
          }
          return acc;
        },
        pts, 1e-9);
    CHECK(g.pass);
  }

  // Matrix-valued blocks are assembled blockwise.
  {
    const auto pts = disk_grid(10, 0.9);
    const auto g = gram_check(
        [&](Cplx z, Cplx w) {
          CMat m = CMat::Zero(2, 2);
          m(0, 0) = 1.0 / (1.0 - z * std::conj(w));
          m(1, 1) = eq_eval_series(z * std::conj(w), Cplx(1.0), 0.5);
          return m;
        },
        pts, 1e-9);
    CHECK(g.pass);
    CHECK(g.gram.rows() == 20);
  }

  {
    std::vector<Cplx> twice{Cplx(0.1), Cplx(0.1)};
    auto one = [](Cplx, Cplx) { return Cplx(1.0); };
    CHECK_THROWS_AS(gram_check(one, twice, 1e-9), std::invalid_argument);

    std::vector<Cplx> pts{Cplx(0.1), Cplx(0.2)};
    auto bad = [](Cplx, Cplx) -> Cplx {
      throw std::runtime_error("boom");
    };
    CHECK_THROWS_AS(gram_check(bad, pts, 1e-9), numeric_error);
  }

  // Grid construction: requested size, inside the radius, distinct.
  {
    const auto pts = disk_grid(40, 0.95);
    REQUIRE(pts.size() == 40);
    for (const Cplx& p : pts) CHECK(std::abs(p) <= 0.95 + 1e-12);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        CHECK(std::abs(pts[i] - pts[j]) > 1e-6);
  }
}

TEST_CASE("stein equation", "[kernels]") {
  std::mt19937_64 rng(804);

  // Scalar case has the closed form 1/(1 - |a|^2).
  {
    const Cplx a(0.6, 0.2);
    const CMat P = stein_solve(CMat::Identity(1, 1), CMat::Identity(1, 1),
                               std::conj(a) * CMat::Identity(1, 1));
    CHECK(std::abs(P(0, 0) - Cplx(1.0 / (1.0 - std::norm(a)))) < 1e-13);
  }

  // Zero C gives the zero solution.
  {
    const CMat A = random_with_radius(rng, 3, 0.7);
    const CMat P = stein_solve(CMat::Identity(2, 2), CMat::Zero(2, 3), A);
    CHECK(P.norm() == 0.0);
  }

  // Residual oracle on random stable data, both definite and indefinite
  // signatures.
  for (int t = 0; t < 5; ++t) {
    const CMat A = random_with_radius(rng, 4, 0.8);
    const CMat C = random_cmat(rng, 2, 4);
    CMat J = CMat::Identity(2, 2);
    if (t % 2 == 1) J(1, 1) = -1.0;
    const CMat P = stein_solve(J, C, A);
    const CMat W = C.adjoint() * J * C;
    CHECK((P - A.adjoint() * P * A - W).norm() < 1e-10 * (1.0 + W.norm()));
    CHECK((P - P.adjoint()).norm() < 1e-12 * (1.0 + P.norm()));
  }

  // Eigenvalue pair with product one makes the operator singular.
  {
    CMat A = CMat::Zero(2, 2);
    A(0, 0) = 2.0;
    A(1, 1) = 0.5;
    CHECK_THROWS_AS(stein_solve(CMat::Identity(2, 2), CMat::Identity(2, 2), A),
                    numeric_error);
  }
}

TEST_CASE("J-inner function construction", "[kernels]") {
  std::mt19937_64 rng(805);

  // Scalar data reduce to the normalized Blaschke factor b_a(z)/b_a(z0).
  {
    const Cplx a(0.5, -0.2);
    const Cplx z0(1.0);
    const ThetaData td =
        make_theta(CMat::Identity(1, 1), CMat::Identity(1, 1),
                   std::conj(a) * CMat::Identity(1, 1), z0);
    CHECK(std::abs(td.P(0, 0) - Cplx(1.0 / (1.0 - std::norm(a)))) < 1e-13);
    for (int t = 0; t < 10; ++t) {
      const Cplx z = random_disk_point(rng, 0.95);
      const Cplx want = blaschke(a, z) / blaschke(a, z0);
      CHECK(std::abs(theta_eval(td, z)(0, 0) - want) < 1e-12);
    }
    // At the normalization point the prefactor vanishes.
    CHECK((theta_eval(td, z0) - td.Jsig).norm() < 1e-14);
  }

  // Random data: kernel identity residual and circle J-unitarity.
  for (int t = 0; t < 3; ++t) {
    const CMat A = random_with_radius(rng, 3, 0.75);
    const CMat C = random_cmat(rng, 2, 3);
    CMat J = CMat::Identity(2, 2);
    if (t == 1) J(1, 1) = -1.0;
    const Cplx z0 = std::polar(1.0, 0.3 + t);
    const ThetaData td = make_theta(J, C, A, z0);

    for (int s = 0; s < 20; ++s) {
      const Cplx z = random_disk_point(rng, 0.9);
      const Cplx w = random_disk_point(rng, 0.9);
      if (std::abs(1.0 - z * std::conj(w)) < 0.05) continue;
      CHECK(theta_kernel_residual(td, z, w) < 1e-10);
    }
    for (int s = 0; s < 32; ++s) {
      const Cplx z = std::polar(1.0, 2.0 * M_PI * s / 32.0);
      CHECK(theta_junitarity_defect(td, z) < 1e-9);
    }
  }

  // Structural rejections.
  {
    const CMat A = random_with_radius(rng, 2, 0.5);
    CMat J = CMat::Identity(2, 2);
    // Unobservable pair: output map sees only the first state.
    CMat C = CMat::Zero(2, 2);
    C(0, 0) = 1.0;
    C(1, 0) = 0.5;
    CMat Adiag = CMat::Zero(2, 2);
    Adiag(0, 0) = 0.4;
    Adiag(1, 1) = 0.6;
    CHECK_THROWS_AS(make_theta(J, C, Adiag, Cplx(1.0)), std::invalid_argument);

    // Not a signature matrix.
    CHECK_THROWS_AS(make_theta(2.0 * CMat::Identity(2, 2),
                               random_cmat(rng, 2, 2), A, Cplx(1.0)),
                    std::invalid_argument);

    // z0 must sit on the circle.
    CHECK_THROWS_AS(make_theta(J, random_cmat(rng, 2, 2), A, Cplx(0.5)),
                    std::invalid_argument);

    // C = 0 produces P = 0: flagged as non-invertible. (The zero map is
    // also unobservable, so build a barely-observable C instead.)
    CMat Ceps = CMat::Zero(1, 1);
    CHECK_THROWS_AS(
        make_theta(CMat::Identity(1, 1), Ceps, 0.5 * CMat::Identity(1, 1),
                   Cplx(1.0)),
        std::invalid_argument);
  }
}

TEST_CASE("deformed kernel positivity for J-inner data", "[kernels]") {
  const double tol = 1e-9;

  const Cplx a(0.45, 0.15);
  const ThetaData td =
      make_theta(CMat::Identity(1, 1), CMat::Identity(1, 1),
                 std::conj(a) * CMat::Identity(1, 1), Cplx(1.0));

  for (double q : {0.0, 0.4}) {
    const auto pts = disk_grid(30, 0.95 / std::sqrt(1.0 - q));
    const auto g = theta_q_kernel_check(td, q, pts, tol);
    CHECK(g.pass);
  }
}

TEST_CASE("multiplier certificates", "[kernels]") {
  const double tol = 1e-9;
  const auto unit_grid = disk_grid(40, 0.95);

  // Constants of modulus at most one pass.
  {
    const auto g = schur_multiplier_check_q([](Cplx) { return Cplx(0.8, 0.3); },
                                            0.5, unit_grid, tol);
    CHECK(g.pass);
  }

  // Deformed Blaschke factors are multipliers.
  for (Cplx a : {Cplx(0.2, 0.0), Cplx(0.0, 0.6)}) {
    for (double q : {0.3, 0.5}) {
      const auto g = schur_multiplier_check_q(
          [&](Cplx z) { return blaschke_q(a, q, z); }, q, unit_grid, tol);
      CHECK(g.pass);
    }
  }

  // The identity map is not a multiplier for q = 0.5: unscaling it gives
  // sup-norm 1/sqrt(0.5) > 1.
  {
    const auto g = schur_multiplier_check_q([](Cplx z) { return z; }, 0.5,
                                            unit_grid, tol);
    CHECK_FALSE(g.pass);
  }

  // q = 0 agrees with the classical Schur test.
  {
    const auto pass0 = schur_multiplier_check_q(
        [](Cplx z) { return blaschke(Cplx(0.3), z); }, 0.0, unit_grid, tol);
    CHECK(pass0.pass);
    const auto fail0 = schur_multiplier_check_q(
        [](Cplx) { return Cplx(1.2); }, 0.0, unit_grid, tol);
    CHECK_FALSE(fail0.pass);
  }
}

TEST_CASE("shifted multiplier certificates", "[kernels]") {
  const double tol = 1e-9;
  const double q = 0.4;
  const auto grid = disk_grid(30, 0.95 / std::sqrt(1.0 - q));

  {
    const auto g = shifted_schur_check([](Cplx) { return Cplx(0.9); }, q, 0,
                                       grid, tol);
    CHECK(g.pass);
  }
  {
    const auto g = shifted_schur_check(
        [](Cplx z) { return blaschke(Cplx(0.3), z); }, q, 2, grid, tol);
    CHECK(g.pass);
  }
  {
    const auto g = shifted_schur_product_check(
        [](Cplx z) { return blaschke(Cplx(0.3), z); }, q, 1, 4, grid, tol);
    CHECK(g.pass);
  }
  CHECK_THROWS_AS(shifted_schur_product_check([](Cplx) { return Cplx(0.0); },
                                              q, 3, 1, grid, tol),
                  std::invalid_argument);
}
