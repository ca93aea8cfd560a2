#pragma once

// Finite sums  sum_k c_k (log x)^{m_k} x^{s_k}  on (0,1). The class is closed
// under H, H* and has exact L^2 inner products, so everything downstream
// (Gram matrices, moments, wandering vectors) stays in closed form.

#include "hardy/context.hpp"
#include "hardy/errors.hpp"
#include "hardy/scalar.hpp"

#include <vector>

namespace hardy {

template <class R>
struct Term {
  Complex<R> coeff;
  Complex<R> s;  // exponent
  int logpow = 0;
};

template <class R>
class LogMonomialSum {
 public:
  LogMonomialSum() = default;

  /// Merges terms whose exponents agree within ctx.exponent_merge_tol and
  /// share a log power, drops exact zeros, and sorts by (Re s, Im s, logpow).
  LogMonomialSum(std::vector<Term<R>> terms, const Context<R>& ctx);

  /// c (log x)^logpow x^s
  static LogMonomialSum monomial(const Complex<R>& s, int logpow = 0,
                                 const Complex<R>& c = Complex<R>(R(1)));
  static LogMonomialSum constant(const Complex<R>& c) { return monomial(Complex<R>(R(0)), 0, c); }

  const std::vector<Term<R>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int max_logpow() const;

 private:
  std::vector<Term<R>> terms_;
};

template <class R>
LogMonomialSum<R> add(const LogMonomialSum<R>& f, const LogMonomialSum<R>& g, const Context<R>& ctx);
template <class R>
LogMonomialSum<R> subtract(const LogMonomialSum<R>& f, const LogMonomialSum<R>& g, const Context<R>& ctx);
template <class R>
LogMonomialSum<R> scale(const LogMonomialSum<R>& f, const Complex<R>& c, const Context<R>& ctx);

/// Throws a domain error unless Re s > -1/2 + margin.
template <class R>
void require_half_plane(const Complex<R>& s, const Context<R>& ctx);
template <class R>
bool in_half_plane(const Complex<R>& s, const Context<R>& ctx);

/// <f, g> = int_0^1 f conj(g) dx, using
/// <(log x)^a x^t, (log x)^b x^s> = (-1)^{a+b} (a+b)! / (1 + t + conj s)^{a+b+1}.
template <class R>
Complex<R> inner_product(const LogMonomialSum<R>& f, const LogMonomialSum<R>& g, const Context<R>& ctx);

/// ||f||^2
template <class R>
R norm_squared(const LogMonomialSum<R>& f, const Context<R>& ctx);

/// (Hf)(x) = (1/x) int_0^x f.
template <class R>
LogMonomialSum<R> apply_hardy(const LogMonomialSum<R>& f, const Context<R>& ctx);

/// (H* f)(x) = int_x^1 f(t)/t dt. Exponent-s terms with s != 0 pick up an
/// exponent-0 constant from the t = 1 endpoint.
template <class R>
LogMonomialSum<R> apply_hardy_adjoint(const LogMonomialSum<R>& f, const Context<R>& ctx);

/// (1 - H*) f, the shift in the Laguerre picture.
template <class R>
LogMonomialSum<R> apply_shift(const LogMonomialSum<R>& f, const Context<R>& ctx);

/// Pointwise value at 0 < x < 1.
template <class R>
Complex<R> evaluate(const LogMonomialSum<R>& f, const R& x);

/// int_a^1 f conj(g) dx for 0 < a < 1.
template <class R>
Complex<R> truncated_inner_product(const LogMonomialSum<R>& f, const LogMonomialSum<R>& g, const R& a,
                                   const Context<R>& ctx);

/// n! as R.
template <class R>
R factorial(int n) {
  R r(1);
  for (int k = 2; k <= n; ++k) r *= R(k);
  return r;
}

/// C(n, k) as R.
template <class R>
R binomial(int n, int k) {
  if (k < 0 || k > n) return R(0);
  R r(1);
  for (int j = 1; j <= k; ++j) {
    r *= R(n - k + j);
    r /= R(j);
  }
  return r;
}

}  // namespace hardy
