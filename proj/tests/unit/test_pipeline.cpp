#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hardy/pipeline.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace hardy;
using testutil::C;
using testutil::sum_dist;
using M = LogMonomialSum<double>;

namespace {
const auto ctx = Context<double>::defaults();
M mono(double s, int logpow = 0, double c = 1) { return M::monomial(C(s), logpow, C(c)); }

SubspaceSpec<double> monomial_spec(std::vector<ExponentEntry<double>> e) {
  SubspaceSpec<double> s;
  s.variant = SpecVariant::Monomial;
  s.exponents = ExponentMultiset<double>(std::move(e), ctx);
  return s;
}

SubspaceSpec<double> truncation_spec(double a) {
  SubspaceSpec<double> s;
  s.variant = SpecVariant::Truncation;
  s.a = a;
  return s;
}
}  // namespace

TEST_CASE("wandering vector examples") {
  auto w1 = wandering_vector(monomial_spec({{C(1), 1}}), ctx);
  CHECK(w1.k0 == 0);
  CHECK(w1.materialized);
  CHECK(sum_dist(w1.u, subtract(M::constant(C(2)), mono(1, 0, 3), ctx), ctx) < 1e-12);
  CHECK(norm_squared(w1.u, ctx) == doctest::Approx(1).epsilon(1e-14));

  auto w0 = wandering_vector(monomial_spec({{C(0), 1}}), ctx);
  CHECK(w0.k0 == 1);
  CHECK(sum_dist(w0.u, add(M::constant(C(1)), mono(0, 1), ctx), ctx) < 1e-12);

  auto wt = wandering_vector(truncation_spec(0.25), ctx);
  CHECK_FALSE(wt.materialized);
  auto m = spec_moments(truncation_spec(0.25), wt, 4, ctx);
  for (int i = 0; i <= 4; ++i) CHECK(m.m[i].re == doctest::Approx(std::pow(0.25, i + 1) * 2 / (i + 1)));
}

TEST_CASE("wandering vector is orthogonal to the space") {
  auto spec = monomial_spec({{C(0.5), 1}, {C(2), 2}});
  auto w = wandering_vector(spec, ctx);
  for (const auto& b : spec.exponents.basis()) CHECK(std::abs(testutil::to_std(inner_product(b, w.u, ctx))) < 1e-10);
}

TEST_CASE("moments of a monomial spec come from the wandering vector") {
  auto spec = monomial_spec({{C(1), 1}});
  auto w = wandering_vector(spec, ctx);
  auto m = spec_moments(spec, w, 2, ctx);
  CHECK(m.m[0].re == doctest::Approx(0.5));
  CHECK(std::abs(m.m[1].re) < 1e-14);
  CHECK(m.m[2].re == doctest::Approx(2.0 / 3 - 0.75));
}

TEST_CASE("dense space and invalid specs") {
  auto dense_ctx = ctx;
  dense_ctx.k_max = 0;
  try {
    wandering_vector(monomial_spec({{C(0), 1}}), dense_ctx);
    FAIL("expected dense");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Dense);
  }
  SubspaceSpec<double> w;
  w.variant = SpecVariant::Wandering;
  w.u = mono(1);  // norm 1/sqrt(3)
  CHECK_THROWS_AS(wandering_vector(w, ctx), Error);
  CHECK_THROWS_AS(wandering_vector(truncation_spec(1.5), ctx), Error);
  CHECK_THROWS_AS(wandering_vector(monomial_spec({}), ctx), Error);
}

TEST_CASE("validate_wandering examples") {
  auto a = validate_wandering(subtract(M::constant(C(2)), mono(1, 0, 3), ctx), 4, ctx);
  CHECK(a.max_violation < 1e-12);
  CHECK_FALSE(a.warning);
  auto b = validate_wandering(add(M::constant(C(1)), mono(0, 1), ctx), 4, ctx);
  CHECK(b.max_violation < 1e-12);
  // sqrt(3) x is a unit vector with <(1-H*) u, u> = 1/2
  auto c = validate_wandering(mono(1, 0, std::sqrt(3.0)), 3, ctx);
  CHECK(c.warning);
  CHECK(c.violations[1] == doctest::Approx(0.5));
  CHECK(c.violations.size() == 4);
}

TEST_CASE("pipeline thread for Mult({1})") {
  auto spec = monomial_spec({{C(1), 1}});
  auto w = wandering_vector(spec, ctx);
  auto rec = approximate_one(spec, w, 1, {}, ctx);
  CHECK(rec.scaling.c == doctest::Approx(1).epsilon(1e-9));
  CHECK(std::abs(testutil::to_std(eval(rec.alpha, C(0.7)) - (C(1) - C(0.7)) / C(2.7))) < 1e-9);
  CHECK(rec.exponents.full.dimension() == 2);
  REQUIRE(rec.exponents.reduced.entries().size() == 1);
  CHECK(rec.exponents.reduced.entries()[0].s.re == doctest::Approx(1).epsilon(1e-8));
  CHECK(sum_dist(rec.u_n, w.u, ctx) < 1e-8);
  CHECK(rec.interpolation_residual < 1e-10);
  CHECK(rec.max_abs_alpha <= 1 + 1e-8);
  CHECK(rec.warnings.empty());
}

TEST_CASE("pipeline thread for Mult({0})") {
  auto spec = monomial_spec({{C(0), 1}});
  auto w = wandering_vector(spec, ctx);
  auto rec = approximate_one(spec, w, 1, {}, ctx);
  CHECK(rec.scaling.c == doctest::Approx(1).epsilon(1e-9));
  CHECK(std::abs(testutil::to_std(eval(rec.alpha, C(2)) - C(2.0 / 3))) < 1e-9);
  REQUIRE(rec.pf.poles.size() == 1);
  CHECK(rec.pf.poles[0].mult == 2);
  REQUIRE(rec.exponents.reduced.entries().size() == 1);
  CHECK(std::abs(rec.exponents.reduced.entries()[0].s.re) < 1e-8);
  CHECK(sum_dist(rec.u_n, add(M::constant(C(1)), mono(0, 1), ctx), ctx) < 1e-8);
}

TEST_CASE("approximate collects stage-tagged failures") {
  SubspaceSpec<double> m;
  m.variant = SpecVariant::Moments;
  m.moments = {C(0), C(0), C(0)};
  auto rep = approximate(m, {1, 2}, {}, ctx);
  CHECK(rep.records.empty());
  REQUIRE(rep.failures.size() == 2);
  CHECK(rep.failures[0].kind == ErrorKind::Unbounded);
  CHECK(rep.failures[0].stage == "scaling");
  // requesting more moments than given is a domain error in the moments stage
  auto rep2 = approximate(m, {5}, {}, ctx);
  REQUIRE(rep2.failures.size() == 1);
  CHECK(rep2.failures[0].stage == "moments");
}

TEST_CASE("u = 1 is degenerate downstream") {
  SubspaceSpec<double> s;
  s.variant = SpecVariant::Wandering;
  s.u = M::constant(C(1));
  auto rep = approximate(s, {1}, {}, ctx);
  REQUIRE(rep.failures.size() == 1);
  CHECK(rep.failures[0].kind == ErrorKind::Degenerate);
}

TEST_CASE("convergence diagnostics") {
  auto spec = monomial_spec({{C(1), 1}});
  std::vector<TestFunction<double>> tests{{mono(1), 0, "x"}, {mono(1, 0, -2.5), 0, "scaled"}};
  auto rep = approximate(spec, {1, 2}, tests, ctx);
  REQUIRE(rep.records.size() == 2);
  auto table = convergence_diagnostics(rep, tests, ctx);
  for (const auto& row : table)
    for (double d : row) CHECK(d < 1e-6);
}

TEST_CASE("truncation sweep at 128 bits") {
  using F = Float128;
  const auto c = Context<F>::defaults();
  SubspaceSpec<F> s;
  s.variant = SpecVariant::Truncation;
  s.a = F(1) / F(4);
  std::vector<TestFunction<F>> tests{{LogMonomialSum<F>::constant(Complex<F>(F(1))), F(1) / F(4), "chi"}};
  auto rep = approximate(s, {2, 3, 4, 5, 6}, tests, c);
  REQUIRE(rep.failures.empty());
  for (std::size_t k = 1; k < rep.records.size(); ++k)
    CHECK(rep.records[k].scaling.c <= rep.records[k - 1].scaling.c * (1 + 1e-20));
  for (const auto& r : rep.records) {
    CHECK(r.scaling.c >= F(1) - F(1e-20));
    CHECK(num::to_double(r.interpolation_residual) < 1e-15);
    CHECK(num::to_double(r.max_abs_alpha) <= 1 + 1e-8);
    CHECK(num::to_double(abs(r.alpha_at_minus1)) > 0);
    for (const auto& e : r.exponents.reduced.entries()) CHECK(num::to_double(e.s.re) > -0.5);
  }
  CHECK(num::to_double(rep.records.back().distances[0]) < num::to_double(rep.records.front().distances[0]));
}

TEST_CASE("default precision ladder") {
  CHECK(default_bits_for(8) == 53);
  CHECK(default_bits_for(12) == 128);
  CHECK(default_bits_for(16) == 256);
  CHECK(default_bits_for(17) == 512);
}
