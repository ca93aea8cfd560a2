#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hardy/log_monomial.hpp"
#include "oracle/quadrature.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace hardy;
using testutil::C;
using testutil::sum_dist;
using M = LogMonomialSum<double>;
using Q = LogMonomialSum<Rational>;

namespace {
const auto ctx = Context<double>::defaults();
const auto qctx = Context<Rational>::defaults();

M mono(double s, int logpow = 0, double c = 1) { return M::monomial(C(s), logpow, C(c)); }
}  // namespace

TEST_CASE("inner product examples") {
  CHECK(inner_product(M::constant(C(1)), M::constant(C(1)), ctx).re == doctest::Approx(1.0));
  CHECK(inner_product(mono(1), mono(1), ctx).re == doctest::Approx(1.0 / 3));
  CHECK(inner_product(mono(0, 1), mono(0, 1), ctx).re == doctest::Approx(2.0));

  // exact mode
  auto x = Q::monomial(Complex<Rational>(Rational(1)));
  CHECK(inner_product(x, x, qctx).re == Rational(1, 3));
  auto lg = Q::monomial(Complex<Rational>(Rational(0)), 1);
  CHECK(inner_product(lg, lg, qctx).re == Rational(2));
}

TEST_CASE("inner product is conjugate linear in the second slot") {
  const auto f = mono(0.5);
  const auto g = M::monomial(C(0.3, 1.0), 0, C(0, 1));
  const auto fg = inner_product(f, g, ctx);
  const auto gf = inner_product(g, f, ctx);
  CHECK(fg.re == doctest::Approx(gf.re));
  CHECK(fg.im == doctest::Approx(-gf.im));
  // <x^0.5, i x^s> = -i <x^0.5, x^s>
  const auto plain = inner_product(f, M::monomial(C(0.3, 1.0)), ctx);
  CHECK(fg.re == doctest::Approx(plain.im));
  CHECK(fg.im == doctest::Approx(-plain.re));
}

TEST_CASE("exponent outside the half plane is a domain error") {
  const auto bad = mono(-0.6);
  try {
    (void)inner_product(bad, bad, ctx);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
  CHECK_THROWS_AS(require_half_plane(C(-0.5), ctx), Error);
  CHECK(in_half_plane(C(-0.49), ctx));
}

TEST_CASE("Hardy operator examples") {
  CHECK(sum_dist(apply_hardy(mono(1), ctx), mono(1, 0, 0.5), ctx) < 1e-15);
  CHECK(sum_dist(apply_hardy(M::constant(C(1)), ctx), M::constant(C(1)), ctx) < 1e-15);
  const auto expect = subtract(mono(0, 1), M::constant(C(1)), ctx);
  CHECK(sum_dist(apply_hardy(mono(0, 1), ctx), expect, ctx) < 1e-14);
}

TEST_CASE("adjoint Hardy operator examples") {
  CHECK(sum_dist(apply_hardy_adjoint(M::constant(C(1)), ctx), mono(0, 1, -1), ctx) < 1e-15);
  CHECK(sum_dist(apply_hardy_adjoint(mono(1), ctx), subtract(M::constant(C(1)), mono(1), ctx), ctx) < 1e-15);
  const double s = 0.7;
  const auto expect = subtract(M::constant(C(1 / s)), mono(s, 0, 1 / s), ctx);
  CHECK(sum_dist(apply_hardy_adjoint(mono(s), ctx), expect, ctx) < 1e-14);
}

TEST_CASE("H and H* are adjoint") {
  for (int t = 0; t < 20; ++t) {
    const auto f = testutil::random_sum(ctx);
    const auto g = testutil::random_sum(ctx);
    const auto a = inner_product(apply_hardy(f, ctx), g, ctx);
    const auto b = inner_product(f, apply_hardy_adjoint(g, ctx), ctx);
    const double scale = 1 + std::abs(testutil::to_std(a));
    CHECK(std::abs(testutil::to_std(a - b)) < 1e-10 * scale);
  }
}

TEST_CASE("closed forms agree with quadrature") {
  for (int t = 0; t < 5; ++t) {
    const auto f = testutil::random_sum(ctx, 3, -0.3, 2.0, 1.0, 2);
    const auto hf = apply_hardy(f, ctx);
    for (double x : {0.1, 0.5, 0.9}) {
      // (Hf)(x) = int_0^1 f(x u) du
      oracle::Integrand in{[&](double u) { return testutil::to_std(evaluate(f, x * u)); }, -0.3, 2};
      const auto q = oracle::integrate(in);
      const auto v = testutil::to_std(evaluate(hf, x));
      CHECK(std::abs(q.value - v) < 1e-8 * (1 + std::abs(v)));
    }
  }
}

TEST_CASE("1 - H* is an isometry and the co-isometry identity holds") {
  for (int t = 0; t < 20; ++t) {
    const auto f = testutil::random_sum(ctx);
    const double n2 = norm_squared(f, ctx);
    CHECK(norm_squared(apply_shift(f, ctx), ctx) == doctest::Approx(n2).epsilon(1e-10));
    const auto g = subtract(f, apply_hardy(f, ctx), ctx);
    const double mean2 = std::norm(testutil::to_std(inner_product(f, M::constant(C(1)), ctx)));
    CHECK(norm_squared(g, ctx) + mean2 == doctest::Approx(n2).epsilon(1e-10));
  }
}

TEST_CASE("evaluate examples") {
  CHECK(std::abs(evaluate(add(M::constant(C(1)), mono(0, 1), ctx), std::exp(-1.0)).re) < 1e-15);
  CHECK(evaluate(mono(1), 0.25).re == doctest::Approx(0.25));
  CHECK(evaluate(subtract(M::constant(C(2)), mono(1, 0, 3), ctx), 0.5).re == doctest::Approx(0.5));
  CHECK_THROWS_AS(evaluate(mono(1), 0.0), Error);
  CHECK_THROWS_AS(evaluate(mono(1), 1.5), Error);
}

TEST_CASE("truncated inner product examples") {
  const auto one = M::constant(C(1));
  CHECK(truncated_inner_product(one, one, 0.5, ctx).re == doctest::Approx(0.5));
  CHECK(truncated_inner_product(one, one, 0.25, ctx).re == doctest::Approx(0.75));
  CHECK(truncated_inner_product(mono(1), one, 0.5, ctx).re == doctest::Approx(3.0 / 8));
  // a -> 0 recovers the full inner product
  const auto f = testutil::random_sum(ctx, 3, 0.0, 2.0, 1.0, 2);
  const auto g = testutil::random_sum(ctx, 3, 0.0, 2.0, 1.0, 2);
  const auto full = testutil::to_std(inner_product(f, g, ctx));
  const auto trunc = testutil::to_std(truncated_inner_product(f, g, 1e-12, ctx));
  CHECK(std::abs(full - trunc) < 1e-8);
  CHECK_THROWS_AS(truncated_inner_product(one, one, 1.5, ctx), Error);
}

TEST_CASE("construction merges equal exponents and drops zeros") {
  std::vector<Term<double>> t{{C(1), C(1), 0}, {C(2), C(1), 0}, {C(3), C(0), 1}, {C(-3), C(0), 1}};
  const M f(t, ctx);
  REQUIRE(f.size() == 1);
  CHECK(f.terms()[0].coeff.re == 3);
}
