#pragma once

// Generalized finite monomial spaces Mult(S): Gram matrices, projections,
// distances, Cauchy determinants, Muntz-Szasz partial sums and the
// roots-of-unity spaces that approximate a multiple exponent.

#include "hardy/linalg.hpp"
#include "hardy/log_monomial.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hardy {

template <class R>
struct ExponentEntry {
  Complex<R> s;
  int mult = 1;
};

/// Exponents with multiplicities; entry (s, m) contributes the basis
/// functions x^s, (log x) x^s, ..., (log x)^{m-1} x^s.
template <class R>
class ExponentMultiset {
 public:
  ExponentMultiset() = default;
  /// Merges exponents within ctx.exponent_merge_tol (adding multiplicities)
  /// and sorts by (Re s, Im s).
  ExponentMultiset(std::vector<ExponentEntry<R>> entries, const Context<R>& ctx);

  const std::vector<ExponentEntry<R>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  int dimension() const;
  /// Basis in canonical order: entries in order, then logpow 0..mult-1.
  std::vector<LogMonomialSum<R>> basis() const;
  std::vector<std::pair<Complex<R>, int>> labels() const;

 private:
  std::vector<ExponentEntry<R>> entries_;
};

template <class R>
struct GramMatrix {
  CMatrix<R> matrix;                               // G(i,j) = <b_j, b_i>
  std::vector<std::pair<Complex<R>, int>> labels;  // (exponent, logpow) of b_i
};

template <class R>
GramMatrix<R> gram(const ExponentMultiset<R>& s, const Context<R>& ctx);

/// G(i,j) = <b_j, b_i> for an arbitrary family.
template <class R>
CMatrix<R> gram_of(const std::vector<LogMonomialSum<R>>& basis, const Context<R>& ctx);

/// Orthogonal projection onto Mult(S) via the normal equations.
template <class R>
LogMonomialSum<R> project(const LogMonomialSum<R>& f, const ExponentMultiset<R>& s, const Context<R>& ctx);

/// dist(f, Mult(S)) as the norm of f - Pf.
template <class R>
R dist_to_space(const LogMonomialSum<R>& f, const ExponentMultiset<R>& s, const Context<R>& ctx);

/// dist(f, Mult(S))^2 = det Gram(f, S) / det Gram(S); independent cross-check.
template <class R>
R dist_by_determinants(const LogMonomialSum<R>& f, const ExponentMultiset<R>& s, const Context<R>& ctx);

/// g restricted to [cutoff, 1] (cutoff == 0 means the whole interval).
template <class R>
struct TestFunction {
  LogMonomialSum<R> g;
  R cutoff{0};
  std::string label;
};

template <class R>
R dist_to_space(const TestFunction<R>& f, const ExponentMultiset<R>& s, const Context<R>& ctx);

/// det(1 / (1 + s_j + conj s_i)) = prod_{j<i} |s_i - s_j|^2 / prod_{i,j} (1 + s_i + conj s_j).
/// Requires simple, distinct exponents.
template <class R>
R cauchy_det(const ExponentMultiset<R>& s, const Context<R>& ctx);

/// Partial sums of sum_k (2 Re s_k + 1) / |s_k + 1|^2 over the first K exponents.
template <class R>
std::vector<R> muntz_partial_sums(const std::vector<Complex<R>>& exponents, std::size_t k, const Context<R>& ctx);

/// { s + w^j h : 0 <= j < m }, w = exp(2 pi i / m). Needs Re s - h > -1/2.
template <class R>
ExponentMultiset<R> roots_of_unity_space(const Complex<R>& s, int m, const R& h, const Context<R>& ctx);

/// sup over unit f in Mult(from) of dist(f, Mult(to)). Computed as
/// sqrt(1 - lambda_min), so the floor is about sqrt(eps).
template <class R>
R subspace_gap(const ExponentMultiset<R>& from, const ExponentMultiset<R>& to, const Context<R>& ctx);

}  // namespace hardy
