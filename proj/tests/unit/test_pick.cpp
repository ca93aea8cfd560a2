#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hardy/pick.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace hardy;
using testutil::C;

namespace {
const auto ctx = Context<double>::defaults();

CMatrix<double> real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  CMatrix<double> a(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double v : r) a(i, j++) = C(v);
    ++i;
  }
  return a;
}

Complex<double> alpha_known(const Complex<double>& s) { return (C(1) - s) / (s + C(2)); }
}  // namespace

TEST_CASE("Pick matrix examples") {
  PickSystem<double> flat{{C(0), C(1), C(2)}, {C(1), C(1), C(1)}, 1};
  auto z = pick_matrix(flat, ctx);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(testutil::to_std(z(i, j))) < 1e-15);

  PickSystem<double> known{{C(0), C(1)}, {alpha_known(C(0)), alpha_known(C(1))}, 1};
  auto k = pick_matrix(known, ctx);
  CHECK(k(0, 0).re == doctest::Approx(0.75));
  CHECK(k(0, 1).re == doctest::Approx(0.5));
  CHECK(k(1, 1).re == doctest::Approx(1.0 / 3));
  CHECK(std::abs(determinant(k).re) < 1e-15);
  CHECK(is_psd(k, default_psd_tol(k, ctx)).psd);

  PickSystem<double> two{{C(0)}, {C(2)}, 1};
  auto t = pick_matrix(two, ctx);
  CHECK(t(0, 0).re == doctest::Approx(-3));
  CHECK_FALSE(is_psd(t, default_psd_tol(t, ctx)).psd);
}

TEST_CASE("Pick matrix domain checks") {
  CHECK_THROWS_AS(pick_matrix(PickSystem<double>{{C(-0.7)}, {C(0)}, 1}, ctx), Error);
  CHECK_THROWS_AS(pick_matrix(PickSystem<double>{{C(0), C(0)}, {C(0), C(0)}, 1}, ctx), Error);
  CHECK_THROWS_AS(pick_matrix(PickSystem<double>{{C(0)}, {C(0)}, -1}, ctx), Error);
}

TEST_CASE("PSD verdict examples") {
  auto id = CMatrix<double>::identity(4);
  CHECK(is_psd(id, default_psd_tol(id, ctx)).psd);
  auto bad = real_matrix({{1, 2}, {2, 1}});
  auto r = is_psd(bad, default_psd_tol(bad, ctx));
  CHECK_FALSE(r.psd);
  CHECK(r.min_eigenvalue == doctest::Approx(-1));

  CMatrix<double> h(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) h(i, j) = C(1.0 / (1 + i + j));
  auto hr = is_psd(h, default_psd_tol(h, ctx));
  CHECK(hr.psd);
  CHECK(hr.min_eigenvalue > 0);
  CHECK(hr.min_eigenvalue < 1e-6);
  // Hilbert 6x6 smallest eigenvalue ~1.08e-7
  CHECK(hr.min_eigenvalue == doctest::Approx(1.0827994845e-7).epsilon(1e-4));
}

TEST_CASE("PSD verdict in exact mode") {
  CMatrix<Rational> a(2, 2);
  a(0, 0) = Complex<Rational>(Rational(3, 4));
  a(0, 1) = a(1, 0) = Complex<Rational>(Rational(1, 2));
  a(1, 1) = Complex<Rational>(Rational(1, 3));
  auto r = is_psd(a, Rational(0));
  CHECK(r.psd);
  a(1, 1) = Complex<Rational>(Rational(1, 3) - Rational(1, 1000000));
  CHECK_FALSE(is_psd(a, Rational(0)).psd);
}

TEST_CASE("scaling constant examples") {
  // u = 2 - 3x
  auto a = max_scaling_constant(MomentSequence<double>{{C(0.5), C(0)}}, ctx);
  CHECK(a.c == doctest::Approx(1).epsilon(1e-9));
  REQUIRE(a.gamma.size() == 2);
  CHECK(a.gamma[1].re / a.gamma[0].re == doctest::Approx(-1.5).epsilon(1e-6));
  CHECK_FALSE(a.degenerate);

  // u = 1 + log x
  auto b = max_scaling_constant(MomentSequence<double>{{C(0), C(0.25)}}, ctx);
  CHECK(b.c == doctest::Approx(1).epsilon(1e-9));
  CHECK(b.gamma[1].re / b.gamma[0].re == doctest::Approx(-2).epsilon(1e-6));

  // u = 1: B = K, kernel is everything
  auto c = max_scaling_constant(MomentSequence<double>{{C(1), C(0.5)}}, ctx);
  CHECK(c.c == doctest::Approx(1).epsilon(1e-9));
  CHECK(c.degenerate);
  CHECK(c.kernel_dim == 2);
}

TEST_CASE("scaling constant is maximal") {
  MomentSequence<double> m{{C(0.3), C(0.1), C(-0.05)}};
  auto r = max_scaling_constant(m, ctx);
  auto below = scaled_moment_pick(m, r.c * r.c * (1 - 1e-6));
  auto above = scaled_moment_pick(m, r.c * r.c * (1 + 1e-6));
  CHECK(is_psd(below, default_psd_tol(below, ctx)).psd);
  CHECK_FALSE(is_psd(above, default_psd_tol(above, ctx)).psd);
  CHECK(std::abs(r.min_eig_at_c) < 1e-9);
  CHECK_FALSE(r.min_eig_trace.empty());
}

TEST_CASE("scaling errors") {
  try {
    max_scaling_constant(MomentSequence<double>{{C(0), C(0), C(0)}}, ctx);
    FAIL("expected unbounded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unbounded);
  }
  MomentSequence<double> big;
  for (int i = 0; i <= 14; ++i) big.m.push_back(C(std::pow(0.25, i + 1) * 2 / (i + 1)));
  try {
    max_scaling_constant(big, ctx);
    FAIL("expected ill-conditioned");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllConditioned);
    CHECK(e.required_bits() > 53);
  }
  CHECK(scaling_bits_needed(4) == 53);
  CHECK(scaling_bits_needed(14) > 53);
}
