#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <random>
#include <vector>

#include "abshift/error.hpp"
#include "abshift/numerics.hpp"

using namespace abshift;

namespace {

const PrecisionContext ctx;

bool close(const Real& a, const Real& b, long bits) { return abs(a - b) <= Real::pow2(-bits, 256); }

}  // namespace

TEST_CASE("context rejects too little precision and too small tolerance") {
  CHECK_THROWS_AS(PrecisionContext(32, Real::pow2(-10, 64)), Error);
  CHECK_THROWS_AS(PrecisionContext(128, Real::pow2(-200, 256)), Error);
  CHECK_NOTHROW(PrecisionContext(128, Real::pow2(-127, 128)));
  const PrecisionContext c = PrecisionContext::with_bits(512);
  CHECK(c.abs_tol == Real::pow2(-400, 512));
}

TEST_CASE("real parsing and formatting") {
  CHECK(Real::parse("2.5", 128) == Real::ratio(5, 2, 128));
  CHECK_THROWS_AS(Real::parse("2.5x", 128), Error);
  CHECK_THROWS_AS(Real::parse("", 128), Error);
  CHECK(Real::ratio(1, 3, 64).to_decimal(5).substr(0, 6) == "3.3333");
  const Real x = Real::ratio(7, 3, 200);
  const Real y = Real::parse(x.to_hex(), 200);
  CHECK(x == y);
}

TEST_CASE("series over periodic coefficients") {
  SUBCASE("ones in base 2 sum to 1") {
    const DigitSeq ones = DigitSeq::periodic({1});
    CHECK(periodic_series(ones, ctx.num(2), ctx).value == 1);
    const SeriesValue s = eval_power_series(ones, ctx.num(2), ctx.zero(), 40, ctx);
    CHECK(abs(s.value - 1) <= s.tail.tail_bound);
  }
  SUBCASE("zeros sum to 0 for any base") {
    const DigitSeq zeros = DigitSeq::periodic({0});
    for (long b : {2L, 3L, 7L}) {
      CHECK(periodic_series(zeros, ctx.num(b), ctx).value.is_zero());
      CHECK(eval_power_series(zeros, ctx.num(b), ctx.zero(), 10, ctx).value.is_zero());
    }
  }
  SUBCASE("(01) in base 2 is 1/3") {
    const DigitSeq s = DigitSeq::periodic({0, 1});
    CHECK(close(periodic_series(s, ctx.num(2), ctx).value, ctx.ratio(1, 3), 250));
  }
}

TEST_CASE("closed form agrees with an exact rational sum") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> digit(0, 4), len(1, 4), pre(0, 3), base(2, 9);
  for (int trial = 0; trial < 50; ++trial) {
    Word p(pre(rng)), q(len(rng));
    for (int& d : p) d = digit(rng);
    for (int& d : q) d = digit(rng);
    const long b = base(rng);
    // sum = A + x^|p| B / (1 - x^|q|) with x = 1/b, evaluated in Q.
    mpq_class x(1, b), a = 0, bb = 0, xi = 1;
    for (int d : p) {
      xi *= x;
      a += d * xi;
    }
    mpq_class xp = xi;
    xi = 1;
    for (int d : q) {
      xi *= x;
      bb += d * xi;
    }
    mpq_class exact = a + xp * bb / (1 - xi);
    exact.canonicalize();
    const Real want = Real::ratio(exact.get_num().get_si(), exact.get_den().get_si(), 256);
    const DigitSeq s = DigitSeq::eventually_periodic(p, q, 5);
    CHECK(close(periodic_series(s, ctx.num(b), ctx).value, want, 240));
  }
}

TEST_CASE("partial sums differ by at most the reported tail") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> digit(0, 5);
  for (int trial = 0; trial < 40; ++trial) {
    Word w(60);
    for (int& d : w) d = digit(rng);
    const DigitSeq s = DigitSeq::finite(w, 6);
    const Real base = ctx.ratio(25 + trial, 10);
    const Real offset = ctx.ratio(trial % 7, 10);
    const SeriesValue a = eval_power_series(s, base, offset, 20, ctx);
    const SeriesValue b = eval_power_series(s, base, offset, 60, ctx);
    CHECK(abs(a.value - b.value) <= a.tail.tail_bound);
    CHECK(b.tail.tail_bound < a.tail.tail_bound);
  }
}

TEST_CASE("series errors") {
  const DigitSeq s = DigitSeq::periodic({1});
  CHECK_THROWS_AS(eval_power_series(s, ctx.num(1), ctx.zero(), 5, ctx), Error);
  CHECK_THROWS_AS(eval_power_series(s, ctx.num(2), ctx.zero(), 0, ctx), Error);
  Real inf(256);
  inf = ctx.num(1) / ctx.zero();
  CHECK_THROWS_AS(eval_power_series(s, inf, ctx.zero(), 5, ctx), Error);
}

TEST_CASE("bracketed root finding") {
  SUBCASE("quadratic") {
    auto f = [](const Real& x) { return x * x - 5 * x + 3; };
    const Real r = find_root_bracketed(f, ctx.num(3), ctx.num(5), ctx);
    const Real want = (5 + sqrt(ctx.num(13))) / 2;
    CHECK(abs(r - want) <= Real::pow2(-195, 256));
  }
  SUBCASE("linear") {
    auto f = [](const Real& x) { return x - 1; };
    CHECK(abs(find_root_bracketed(f, ctx.num(0), ctx.num(2), ctx) - 1) <= ctx.abs_tol);
  }
  SUBCASE("sqrt 2 against mpfr sqrt") {
    auto f = [](const Real& x) { return x * x - 2; };
    const Real r = find_root_bracketed(f, ctx.num(1), ctx.num(2), ctx);
    CHECK(abs(r - sqrt(ctx.num(2))) <= ctx.abs_tol);
  }
  SUBCASE("no sign change") {
    auto f = [](const Real& x) { return x * x + 1; };
    try {
      find_root_bracketed(f, ctx.num(0), ctx.num(1), ctx);
      FAIL("expected a bracket error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Bracket);
    }
  }
}

TEST_CASE("random monotone polynomials: root inside bracket with small residual") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(1, 9), root(-20, 20);
  for (int trial = 0; trial < 60; ++trial) {
    // f(x) = a (x - r) + b (x - r)^3, increasing for a, b > 0.
    const long a = coef(rng), b = coef(rng);
    const Real r = ctx.ratio(root(rng), 7);
    auto f = [&](const Real& x) {
      const Real d = x - r;
      return a * d + b * d * d * d;
    };
    const Real lo = r - ctx.ratio(coef(rng), 3);
    const Real hi = r + ctx.ratio(coef(rng), 5);
    const Real x = find_root_bracketed(f, lo, hi, ctx);
    CHECK(x >= lo);
    CHECK(x <= hi);
    CHECK(abs(f(x)) <= ctx.abs_tol);
  }
}

TEST_CASE("least squares slope") {
  {
    const std::vector<std::pair<double, double>> pts{{0, 0}, {1, 2}, {2, 4}};
    const LinearFit f = fit_slope(pts);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.stderr_slope == doctest::Approx(0.0));
  }
  {
    const std::vector<std::pair<double, double>> pts{{0, 1}, {1, 1}};
    CHECK(fit_slope(pts).slope == doctest::Approx(0.0));
  }
  {
    const std::vector<std::pair<double, double>> pts{{0, 0}, {1, 1}, {2, 2.1}};
    CHECK(fit_slope(pts).slope == doctest::Approx(1.05));
  }
  {
    const std::vector<std::pair<double, double>> pts{{1, 0}, {1, 3}};
    CHECK_THROWS_AS(fit_slope(pts), Error);
    CHECK_THROWS_AS(fit_slope(std::span<const std::pair<double, double>>{}), Error);
  }
}

TEST_CASE("affine data fits exactly") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const double m = u(rng), c = u(rng);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 8; ++i) pts.emplace_back(i * 0.5, m * i * 0.5 + c);
    const LinearFit f = fit_slope(pts);
    CHECK(f.slope == doctest::Approx(m).epsilon(1e-12));
    CHECK(f.stderr_slope < 1e-12);
  }
}
