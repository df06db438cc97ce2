#include <catch2/catch_amalgamated.hpp>

#include <qrat/qcalc.hpp>

#include <cstdlib>
#include <random>
#include <vector>

using namespace qrat;
using Catch::Approx;

namespace {

// Oracle: literal geometric sum, no recurrences shared with the library.
double qint_direct(long k, double q) {
  if (k == 0) return 1.0;
  double s = 0.0, p = 1.0;
  for (long i = 0; i < k; ++i) {
    s += p;
    p *= q;
  }
  return s;
}

double qfact_direct(long k, double q) {
  double f = 1.0;
  for (long j = 0; j <= k; ++j) f *= qint_direct(j, q);
  return f;
}

std::vector<Cplx> conv(const std::vector<Cplx>& a, const std::vector<Cplx>& b,
                       std::size_t n) {
  std::vector<Cplx> c(n + 1, Cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (i + j <= n) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

TEST_CASE("bracket values and conventions", "[qcalc]") {
  CHECK(q_int(0, 0.7) == 1.0);
  CHECK(q_int(1, 0.7) == 1.0);
  CHECK(q_int(3, 0.5) == Approx(1.75).epsilon(1e-14));
  CHECK(q_int(3, 0.0) == 1.0);
  CHECK(q_int(4, 1.0) == 4.0);

  for (double q : {0.0, 0.1, 0.5, 0.9, 1.0})
    for (long k = 0; k <= 60; ++k)
      CHECK(q_int(k, q) == Approx(qint_direct(k, q)).epsilon(1e-13));

  // strictly increasing in k once k >= 1 and q > 0
  for (long k = 1; k < 20; ++k) CHECK(q_int(k + 1, 0.3) > q_int(k, 0.3));

  CHECK_THROWS_AS(q_int(-1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(q_int(2, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(q_int(2, 1.5), std::invalid_argument);
}

TEST_CASE("bracket factorial", "[qcalc]") {
  CHECK(q_factorial(3, 0.5) == Approx(2.625).epsilon(1e-14));
  CHECK(q_factorial(0, 0.3) == 1.0);

  double f = 1.0;
  for (long k = 0; k <= 12; ++k) {
    if (k >= 1) f *= static_cast<double>(k);
    CHECK(q_factorial(k, 1.0) == Approx(f).epsilon(1e-13));
    CHECK(q_factorial(k, 0.0) == 1.0);
  }
  for (double q : {0.2, 0.8})
    for (long k = 0; k <= 40; ++k)
      CHECK(q_factorial(k, q) == Approx(qfact_direct(k, q)).epsilon(1e-12));

  CHECK_THROWS_AS(q_factorial(200, 1.0), numeric_error);  // beyond double range
  CHECK_THROWS_AS(q_factorial(-2, 0.5), std::invalid_argument);
}

TEST_CASE("series type validation", "[qcalc]") {
  CHECK_NOTHROW(ScalarSeries{Cplx(1.0), Cplx(2.0)});
  std::vector<Cplx> bad{Cplx(1.0), Cplx(std::nan(""), 0.0)};
  CHECK_THROWS_AS(ScalarSeries(bad), std::invalid_argument);
  CHECK(ScalarSeries{}.order() == -1);
}

TEST_CASE("deformed exponential at q = 0 is the geometric sum", "[qcalc]") {
  // all bracket factorials equal 1, so the series telescopes to 1/(1-za)
  CHECK(std::abs(eq_eval_series(0.5, 1.0, 0.0) - 2.0) < 1e-11);
  CHECK(std::abs(eq_eval_product(0.5, 1.0, 0.0) - 2.0) < 1e-14);
  Cplx z(0.3, 0.4), a(0.5, -0.2);
  Cplx expect = 1.0 / (1.0 - z * a);
  CHECK(std::abs(eq_eval_series(z, a, 0.0) - expect) < 1e-11);
  CHECK(std::abs(eq_eval_product(z, a, 0.0) - expect) < 1e-14);
}

TEST_CASE("deformed exponential matches finite-sum oracle", "[qcalc]") {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double q : {0.2, 0.6}) {
    for (int trial = 0; trial < 8; ++trial) {
      Cplx z(0.4 * u(rng), 0.4 * u(rng));
      Cplx a(u(rng), u(rng));
      Cplx direct(0.0);
      for (long k = 0; k <= 200; ++k)
        direct += std::pow(z * a, static_cast<double>(k)) / qfact_direct(k, q);
      CHECK(std::abs(eq_eval_series(z, a, q) - direct) < 1e-11);
    }
  }
}

TEST_CASE("series and product forms agree", "[qcalc]") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double q : {0.1, 0.5, 0.9}) {
    const double rad = 0.9 / (1.0 - q);
    for (int trial = 0; trial < 25; ++trial) {
      Cplx z(u(rng), u(rng));
      Cplx a(u(rng), u(rng));
      double s = std::abs(z * a);
      if (s == 0.0) continue;
      // rescale z so |za| is spread over (0, rad)
      z *= (rad * 0.999 * std::abs(u(rng))) / s;
      Cplx vs = eq_eval_series(z, a, q);
      Cplx vp = eq_eval_product(z, a, q);
      CHECK(std::abs(vs - vp) <= 1e-9 * (1.0 + std::abs(vs)));
    }
  }
}

TEST_CASE("deformed exponential rejects divergent input", "[qcalc]") {
  CHECK_THROWS_AS(eq_eval_series(2.0, 1.0, 0.5), numeric_error);
  CHECK_THROWS_AS(eq_eval_product(2.0, 1.0, 0.5), numeric_error);
  CHECK_THROWS_AS(eq_eval_series(0.5, 1.0, 1.0), std::invalid_argument);
  CHECK(eq_eval_series(0.0, 5.0, 0.5) == Cplx(1.0));
}

TEST_CASE("term cap is honored", "[qcalc]") {
  setenv("QRAT_MAX_TERMS", "4", 1);
  CHECK_THROWS_AS(eq_eval_series(0.9, 1.0, 0.9), numeric_error);
  unsetenv("QRAT_MAX_TERMS");
  CHECK_NOTHROW(eq_eval_series(0.9, 1.0, 0.9));
}

TEST_CASE("difference-quotient derivative on coefficients", "[qcalc]") {
  ScalarSeries f{Cplx(1.0), Cplx(1.0), Cplx(1.0)};
  ScalarSeries g = jackson_rq(f, 0.5);
  REQUIRE(g.order() == 1);
  CHECK(std::abs(g.coeffs[0] - Cplx(1.0)) < 1e-14);
  CHECK(g.coeffs[1].real() == Approx(1.5));

  // constant maps to the zero series
  CHECK(jackson_rq(ScalarSeries{Cplx(7.0)}, 0.3).empty());

  CHECK_THROWS_AS(jackson_rq(ScalarSeries{}, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(jackson_rq(f, 1.0), std::invalid_argument);
}

TEST_CASE("exponential coefficients are an eigenvector of the quotient",
          "[qcalc]") {
  const double q = 0.35;
  const Cplx a(0.8, 0.3);
  ScalarSeries f;
  for (long k = 0; k <= 14; ++k)
    f.coeffs.push_back(std::pow(a, static_cast<double>(k)) /
                       qfact_direct(k, q));
  ScalarSeries g = jackson_rq(f, q);
  for (long k = 0; k <= g.order(); ++k)
    CHECK(std::abs(g.coeffs[k] - a * f.coeffs[k]) < 1e-12);
}

TEST_CASE("summability rescaling", "[qcalc]") {
  ScalarSeries f{Cplx(1.0), Cplx(1.0), Cplx(1.0)};
  ScalarSeries b = borel_q(f, 0.5);
  REQUIRE(b.order() == 2);
  CHECK(b.coeffs[2].real() == Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(borel_q(f, 1.0).coeffs[2].real() == Approx(0.5));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarSeries r;
  for (int k = 0; k < 9; ++k) r.coeffs.emplace_back(u(rng), u(rng));
  ScalarSeries back = borel_q(borel_q(r, 0.7), 0.7, /*inverse=*/true);
  for (std::size_t k = 0; k < r.coeffs.size(); ++k)
    CHECK(std::abs(back.coeffs[k] - r.coeffs[k]) < 1e-13);
}

TEST_CASE("reciprocal series", "[qcalc]") {
  ScalarSeries ones{Cplx(1.0), Cplx(1.0), Cplx(1.0), Cplx(1.0)};
  ScalarSeries r = reciprocal_series(ones, 3);
  REQUIRE(r.order() == 3);
  CHECK(r.coeffs[0] == Cplx(1.0));
  CHECK(r.coeffs[1] == Cplx(-1.0));
  CHECK(std::abs(r.coeffs[2]) < 1e-15);
  CHECK(std::abs(r.coeffs[3]) < 1e-15);

  // convolution oracle: f * (1/f) = 1 through order n
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    ScalarSeries f;
    f.coeffs.emplace_back(1.0 + 0.5 * u(rng), 0.2 * u(rng));
    for (int k = 0; k < 7; ++k) f.coeffs.emplace_back(u(rng), u(rng));
    ScalarSeries g = reciprocal_series(f, 12);
    auto c = conv(f.coeffs, g.coeffs, 12);
    CHECK(std::abs(c[0] - Cplx(1.0)) < 1e-12);
    for (std::size_t k = 1; k <= 12; ++k) CHECK(std::abs(c[k]) < 1e-11);
  }

  ScalarSeries tiny{Cplx(0.0), Cplx(1.0)};
  CHECK_THROWS_AS(reciprocal_series(tiny, 3), numeric_error);
  CHECK_THROWS_AS(reciprocal_series(ScalarSeries{}, 3), std::invalid_argument);
}
