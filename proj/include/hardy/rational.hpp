#pragma once

// The rational symbol alpha_N = R/L recovered from a Pick kernel vector, its
// partial fractions over (s+1), the inverse Laplace transform u_N and the
// exponent multiset of the approximating monomial space.

#include "hardy/monomial_geometry.hpp"
#include "hardy/polynomial.hpp"

#include <vector>

namespace hardy {

/// num / den, den monic, no common roots within the cluster tolerance.
template <class R>
struct RationalFn {
  Poly<R> num;
  Poly<R> den;
  int degree() const { return std::max(hardy::degree(num), hardy::degree(den)); }
};

template <class R>
Complex<R> eval(const RationalFn<R>& a, const Complex<R>& s);

/// Indices i with |gamma_i| above eps^{2/3} * max |gamma|.
template <class R>
std::vector<std::size_t> gamma_support(const std::vector<Complex<R>>& gamma);

/// alpha = sum_i gamma_i / (1+i+s)  /  sum_i conj(v_i) gamma_i / (1+i+s),
/// reduced. Throws Degenerate when the denominator vanishes identically.
template <class R>
RationalFn<R> build_alpha(const std::vector<Complex<R>>& gamma, const std::vector<Complex<R>>& values,
                          const Context<R>& ctx);

template <class R>
struct PoleTerm {
  Complex<R> lambda;
  int mult = 1;
  std::vector<Complex<R>> coeffs;  // c^1 .. c^mult
};

/// alpha(s)/(s+1) = sum_j sum_r (r-1)! c_j^r / (s - lambda_j)^r.
template <class R>
struct PartialFractionForm {
  std::vector<PoleTerm<R>> poles;
  R residual{0};  // max relative mismatch at the sample points
};

template <class R>
Complex<R> eval(const PartialFractionForm<R>& pf, const Complex<R>& s);

/// The pole at -1 comes from the explicit factor 1/(s+1); denominator roots
/// within the cluster tolerance of -1 are merged into it. alpha(-1) == 0 is an
/// Anomaly error unless allow_case_ii, in which case the factor cancels.
template <class R>
PartialFractionForm<R> partial_fractions_over_splus1(const RationalFn<R>& alpha, const Context<R>& ctx,
                                                      bool allow_case_ii = false);

/// u_N = sum conj(c_j^r) (-log x)^{r-1} x^{-conj(lambda_j) - 1}.
template <class R>
LogMonomialSum<R> inverse_laplace_uN(const PartialFractionForm<R>& pf, const Context<R>& ctx);

template <class R>
struct PoleExponents {
  ExponentMultiset<R> full;     // -conj(lambda_j) - 1 with multiplicity m_j
  ExponentMultiset<R> reduced;  // full with one copy of 0 removed
};

template <class R>
PoleExponents<R> exponent_multiset_from_poles(const PartialFractionForm<R>& pf, const Context<R>& ctx);

}  // namespace hardy
