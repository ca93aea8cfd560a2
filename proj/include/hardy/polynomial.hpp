#pragma once

// Complex polynomials (coefficients low to high degree) and a simultaneous
// Aberth-Ehrlich root finder with multiplicity clustering.

#include "hardy/context.hpp"
#include "hardy/linalg.hpp"

#include <vector>

namespace hardy {

template <class R>
using Poly = std::vector<Complex<R>>;

template <class R>
int degree(const Poly<R>& p);

/// Drops leading coefficients with |c| <= rel_tol * max|c| (exact zeros when rel_tol == 0).
template <class R>
Poly<R> trim(Poly<R> p, const R& rel_tol);

template <class R>
Complex<R> poly_eval(const Poly<R>& p, const Complex<R>& z);

template <class R>
Poly<R> poly_mul(const Poly<R>& a, const Poly<R>& b);

template <class R>
Poly<R> poly_add(const Poly<R>& a, const Poly<R>& b);

/// prod_k (s - roots_k)^{mult_k}
template <class R>
Poly<R> poly_from_roots(const std::vector<Complex<R>>& roots, const std::vector<int>& mult);

/// Quotient of p by (s - r); the remainder p(r) is returned through `remainder`.
template <class R>
Poly<R> deflate(const Poly<R>& p, const Complex<R>& r, Complex<R>* remainder = nullptr);

/// First `count` Taylor coefficients p^{(n)}(at) / n!.
template <class R>
std::vector<Complex<R>> taylor_coeffs(const Poly<R>& p, const Complex<R>& at, int count);

template <class R>
struct RootCluster {
  Complex<R> z;      // cluster mean
  int mult = 1;
  R residual;        // |p(z)|
};

/// Roots of p (degree >= 1). Individual roots are iterated until |p(z)| is at
/// the rounding level of Horner evaluation; roots within
/// ctx.root_cluster_tol * max(1,|z|) are merged into one multiple root.
/// Throws ErrorKind::Convergence when the iteration stalls.
template <class R>
std::vector<RootCluster<R>> find_roots(const Poly<R>& p, const Context<R>& ctx);

}  // namespace hardy
