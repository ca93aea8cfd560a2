#include "hardy/laguerre.hpp"

#include "instantiate.hpp"

#include <algorithm>

namespace hardy {

template <class R>
LogMonomialSum<R> laguerre_fn(int n, const Context<R>& ctx) {
  if (n < 0) throw domain_error("Laguerre index must be nonnegative");
  std::vector<Term<R>> terms;
  for (int j = 0; j <= n; ++j) {
    terms.push_back(Term<R>{Complex<R>(binomial<R>(n, j) / factorial<R>(j)), Complex<R>(), j});
  }
  return LogMonomialSum<R>(std::move(terms), ctx);
}

namespace {

// m! * [eps^m] of (s+eps)^n (1+s+eps)^{-(n+1)}, i.e. d^m/ds^m <x^s, e_n>.
template <class R>
Complex<R> laguerre_moment_derivative(const Complex<R>& s, int n, int m) {
  const Complex<R> one(R(1));
  const Complex<R> sp1 = s + one;
  std::vector<Complex<R>> a(m + 1), b(m + 1);
  for (int i = 0; i <= m; ++i) {
    a[i] = i <= n ? Complex<R>(binomial<R>(n, i)) * pow_int(s, static_cast<unsigned>(n - i)) : Complex<R>();
    // C(-(n+1), i) = (-1)^i C(n+i, i)
    R c = binomial<R>(n + i, i);
    if (i % 2) c = -c;
    b[i] = Complex<R>(c) / pow_int(sp1, static_cast<unsigned>(n + 1 + i));
  }
  Complex<R> coeff;
  for (int i = 0; i <= m; ++i) coeff += a[i] * b[m - i];
  return coeff * factorial<R>(m);
}

}  // namespace

template <class R>
ShiftCoefficients<R> laguerre_coeffs(const LogMonomialSum<R>& f, int nmax, const Context<R>& ctx) {
  if (nmax < 0) throw domain_error("nmax must be nonnegative");
  for (const auto& t : f.terms()) require_half_plane(t.s, ctx);
  ShiftCoefficients<R> out(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    for (const auto& t : f.terms()) {
      out[n] += t.coeff * laguerre_moment_derivative(t.s, n, t.logpow);
    }
  }
  return out;
}

template <class R>
BlaschkeResult<R> blaschke_shift_apply(const Complex<R>& z, const ShiftCoefficients<R>& v, int trunc,
                                       const R& tol) {
  const Complex<R> one(R(1));
  const Complex<R> a = one - z;
  const R a2 = norm2(a);
  if (!(a2 < R(1))) throw domain_error("z must lie in the disk |z - 1| < 1");
  const int len = static_cast<int>(v.size());
  if (len == 0) return {{}, R(0), 0};

  // w = (1 - conj(a) S)^{-1} v on the support of v; beyond it w decays geometrically.
  std::vector<Complex<R>> w(len);
  w[0] = v[0];
  for (int n = 1; n < len; ++n) w[n] = v[n] + conj(a) * w[n - 1];
  const R wlast = norm2(w[len - 1]);

  // Tail past T >= len: sum_{n>=T} |out_n|^2 = (1-|a|^2) |w_{len-1}|^2 |a|^{2(T-len)}.
  auto tail_sq = [&](int t) { return (R(1) - a2) * wlast * num::pow_int(a2, static_cast<unsigned>(t - len)); };
  constexpr int kMaxTrunc = 1 << 22;
  int t = std::max(trunc > 0 ? trunc : 256, len + 1);
  while (tail_sq(t) > tol * tol && t < kMaxTrunc) t = std::min(2 * t, kMaxTrunc);

  BlaschkeResult<R> res;
  res.trunc = t;
  res.coeffs.resize(t);
  Complex<R> prev;  // w_{n-1}
  Complex<R> cur = w[0];
  for (int n = 0; n < t; ++n) {
    cur = n < len ? w[n] : conj(a) * prev;
    res.coeffs[n] = prev - a * cur;
    prev = cur;
  }
  res.tail_norm = num::sqrt(tail_sq(t));
  return res;
}

#define HARDY_INST_ALL(R)                                                    \
  template LogMonomialSum<R> laguerre_fn(int, const Context<R>&);            \
  template ShiftCoefficients<R> laguerre_coeffs(const LogMonomialSum<R>&, int, const Context<R>&);

#define HARDY_INST_FLOAT(R)                                                                      \
  template BlaschkeResult<R> blaschke_shift_apply(const Complex<R>&, const ShiftCoefficients<R>&, int, \
                                                  const R&);

HARDY_FOR_ALL(HARDY_INST_ALL)
HARDY_FOR_FLOATS(HARDY_INST_FLOAT)

}  // namespace hardy
