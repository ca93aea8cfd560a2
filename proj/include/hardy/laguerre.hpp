#pragma once

// Laguerre basis e_n = (1 - H*)^n 1 of L^2[0,1] and the shift picture of
// 1 - H* in that basis.

#include "hardy/log_monomial.hpp"

#include <vector>

namespace hardy {

/// Coordinates in the orthonormal basis e_0, e_1, ...
template <class R>
using ShiftCoefficients = std::vector<Complex<R>>;

/// e_n = sum_{j<=n} C(n,j) (log x)^j / j!
template <class R>
LogMonomialSum<R> laguerre_fn(int n, const Context<R>& ctx);

/// <f, e_n> for n = 0..nmax, from <x^s, e_n> = s^n / (1+s)^{n+1} and its
/// s-derivatives for the log-power terms.
template <class R>
ShiftCoefficients<R> laguerre_coeffs(const LogMonomialSum<R>& f, int nmax, const Context<R>& ctx);

template <class R>
struct BlaschkeResult {
  ShiftCoefficients<R> coeffs;
  R tail_norm;  // exact norm of the discarded coefficients past `trunc`
  int trunc = 0;
};

/// Applies (H* - z)[(conj z - 1) H* - conj z]^{-1}, which in the e_n picture
/// is (S - a)(1 - conj(a) S)^{-1} with a = 1 - z and S the unilateral shift.
/// The output is cut at `trunc` coefficients (at least len(v)+1), doubling
/// the cut until the tail norm falls below `tol`.
template <class R>
BlaschkeResult<R> blaschke_shift_apply(const Complex<R>& z, const ShiftCoefficients<R>& v, int trunc,
                                       const R& tol);

}  // namespace hardy
