#include "hardy/monomial_geometry.hpp"

#include "instantiate.hpp"

#include <algorithm>

namespace hardy {

template <class R>
ExponentMultiset<R>::ExponentMultiset(std::vector<ExponentEntry<R>> entries, const Context<R>& ctx) {
  for (const auto& e : entries) {
    if (e.mult <= 0) throw domain_error("multiplicity must be positive");
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const ExponentEntry<R>& x) {
      return abs_max(x.s - e.s) <= ctx.exponent_merge_tol;
    });
    if (it == entries_.end()) {
      entries_.push_back(e);
    } else {
      it->mult += e.mult;
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const ExponentEntry<R>& a, const ExponentEntry<R>& b) {
    if (a.s.re != b.s.re) return a.s.re < b.s.re;
    return a.s.im < b.s.im;
  });
}

template <class R>
int ExponentMultiset<R>::dimension() const {
  int d = 0;
  for (const auto& e : entries_) d += e.mult;
  return d;
}

template <class R>
std::vector<LogMonomialSum<R>> ExponentMultiset<R>::basis() const {
  std::vector<LogMonomialSum<R>> out;
  for (const auto& e : entries_)
    for (int r = 0; r < e.mult; ++r) out.push_back(LogMonomialSum<R>::monomial(e.s, r));
  return out;
}

template <class R>
std::vector<std::pair<Complex<R>, int>> ExponentMultiset<R>::labels() const {
  std::vector<std::pair<Complex<R>, int>> out;
  for (const auto& e : entries_)
    for (int r = 0; r < e.mult; ++r) out.emplace_back(e.s, r);
  return out;
}

template <class R>
CMatrix<R> gram_of(const std::vector<LogMonomialSum<R>>& basis, const Context<R>& ctx) {
  const std::size_t d = basis.size();
  CMatrix<R> g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      g(i, j) = inner_product(basis[j], basis[i], ctx);
      g(j, i) = conj(g(i, j));
    }
  }
  return g;
}

template <class R>
GramMatrix<R> gram(const ExponentMultiset<R>& s, const Context<R>& ctx) {
  for (const auto& e : s.entries()) require_half_plane(e.s, ctx);
  return {gram_of(s.basis(), ctx), s.labels()};
}

namespace {

template <class R>
CVector<R> solve_gram(const CMatrix<R>& g, const CVector<R>& rhs, const Context<R>& ctx) {
  if constexpr (is_exact_v<R>) {
    auto lu = lu_decompose(g);
    if (lu.singular) throw domain_error("Gram matrix is singular");
    return lu_solve(lu, rhs);
  } else {
    auto l = cholesky(g, ctx.psd_tol(g.rows(), max_abs_entry(g)));
    return cholesky_solve(l, rhs);
  }
}

// Forward substitution L y = b.
template <class R>
CVector<R> forward_solve(const CMatrix<R>& l, const CVector<R>& b) {
  CVector<R> y(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    Complex<R> acc = b[i];
    for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * y[k];
    y[i] = acc / l(i, i);
  }
  return y;
}

}  // namespace

template <class R>
LogMonomialSum<R> project(const LogMonomialSum<R>& f, const ExponentMultiset<R>& s, const Context<R>& ctx) {
  if (s.empty()) return {};
  auto basis = s.basis();
  auto g = gram(s, ctx).matrix;
  CVector<R> rhs(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) rhs[i] = inner_product(f, basis[i], ctx);
  auto c = solve_gram(g, rhs, ctx);
  std::vector<Term<R>> terms;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& t = basis[j].terms().front();
    terms.push_back(Term<R>{c[j], t.s, t.logpow});
  }
  return LogMonomialSum<R>(std::move(terms), ctx);
}

template <class R>
R dist_to_space(const LogMonomialSum<R>& f, const ExponentMultiset<R>& s, const Context<R>& ctx) {
  auto r = subtract(f, project(f, s, ctx), ctx);
  R n2 = norm_squared(r, ctx);
  return n2 > 0 ? num::sqrt(n2) : R(0);
}

template <class R>
R dist_by_determinants(const LogMonomialSum<R>& f, const ExponentMultiset<R>& s, const Context<R>& ctx) {
  auto basis = s.basis();
  auto g = gram_of(basis, ctx);
  basis.insert(basis.begin(), f);
  auto ga = gram_of(basis, ctx);
  R ratio = determinant(ga).re / determinant(g).re;
  return ratio > 0 ? num::sqrt(ratio) : R(0);
}

template <class R>
R dist_to_space(const TestFunction<R>& f, const ExponentMultiset<R>& s, const Context<R>& ctx) {
  if (f.cutoff == 0) return dist_to_space(f.g, s, ctx);
  const R fnorm2 = truncated_inner_product(f.g, f.g, f.cutoff, ctx).re;
  if (s.empty()) return num::sqrt(fnorm2);
  auto basis = s.basis();
  auto g = gram(s, ctx).matrix;
  CVector<R> rhs(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) rhs[i] = truncated_inner_product(f.g, basis[i], f.cutoff, ctx);
  auto c = solve_gram(g, rhs, ctx);
  // ||Pf||^2 = <Pf, f> = sum_j c_j conj(<f, b_j>)
  Complex<R> pf2;
  for (std::size_t j = 0; j < c.size(); ++j) pf2 += c[j] * conj(rhs[j]);
  R d2 = fnorm2 - pf2.re;
  return d2 > 0 ? num::sqrt(d2) : R(0);
}

template <class R>
R cauchy_det(const ExponentMultiset<R>& s, const Context<R>& ctx) {
  const auto& e = s.entries();
  for (const auto& x : e) {
    require_half_plane(x.s, ctx);
    if (x.mult != 1) throw domain_error("Cauchy determinant needs distinct simple exponents");
  }
  Complex<R> numer(R(1)), denom(R(1));
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) numer *= Complex<R>(norm2(e[i].s - e[j].s));
    for (std::size_t j = 0; j < e.size(); ++j) denom *= Complex<R>(R(1)) + e[i].s + conj(e[j].s);
  }
  // The full product over (i,j) pairs each term with its conjugate, so it is real.
  return (numer / denom).re;
}

template <class R>
std::vector<R> muntz_partial_sums(const std::vector<Complex<R>>& exponents, std::size_t k, const Context<R>& ctx) {
  std::vector<R> out;
  R acc(0);
  const std::size_t n = std::min(k, exponents.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    require_half_plane(exponents[i], ctx);
    acc += (R(2) * exponents[i].re + R(1)) / norm2(exponents[i] + Complex<R>(R(1)));
    out.push_back(acc);
  }
  return out;
}

template <class R>
ExponentMultiset<R> roots_of_unity_space(const Complex<R>& s, int m, const R& h, const Context<R>& ctx) {
  if (m < 2) throw domain_error("roots-of-unity space needs m >= 2");
  if (!(h > 0)) throw domain_error("h must be positive");
  if (!(s.re - h > R(-1) / R(2))) throw domain_error("h too large: need Re s - h > -1/2");
  std::vector<ExponentEntry<R>> e;
  for (int j = 0; j < m; ++j) e.push_back({s + unit_root<R>(j, m) * h, 1});
  return ExponentMultiset<R>(std::move(e), ctx);
}

template <class R>
R subspace_gap(const ExponentMultiset<R>& from, const ExponentMultiset<R>& to, const Context<R>& ctx) {
  auto b2 = from.basis();
  auto b1 = to.basis();
  if (b2.empty()) return R(0);
  if (b1.empty()) return R(1);
  auto g2 = gram_of(b2, ctx);
  auto g1 = gram_of(b1, ctx);
  auto l1 = cholesky(g1, ctx.psd_tol(g1.rows(), max_abs_entry(g1)));
  auto l2 = cholesky(g2, ctx.psd_tol(g2.rows(), max_abs_entry(g2)));
  const std::size_t d1 = b1.size(), d2 = b2.size();
  // X(i,j) = <b2_j, b1_i>; Y = G1^{-1} X; M = X^* Y.
  std::vector<CVector<R>> ycols(d2);
  CMatrix<R> x(d1, d2);
  for (std::size_t j = 0; j < d2; ++j) {
    CVector<R> col(d1);
    for (std::size_t i = 0; i < d1; ++i) col[i] = x(i, j) = inner_product(b2[j], b1[i], ctx);
    ycols[j] = cholesky_solve(l1, col);
  }
  CMatrix<R> m(d2, d2);
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t k = 0; k < d1; ++k) m(i, j) += conj(x(k, i)) * ycols[j][k];
  // A = L2^{-1} M L2^{-*}
  CMatrix<R> w(d2, d2);
  for (std::size_t j = 0; j < d2; ++j) {
    CVector<R> col(d2);
    for (std::size_t i = 0; i < d2; ++i) col[i] = m(i, j);
    auto y = forward_solve(l2, col);
    for (std::size_t i = 0; i < d2; ++i) w(i, j) = y[i];
  }
  CMatrix<R> a(d2, d2);
  for (std::size_t j = 0; j < d2; ++j) {
    CVector<R> col(d2);
    for (std::size_t i = 0; i < d2; ++i) col[i] = conj(w(j, i));
    auto y = forward_solve(l2, col);
    for (std::size_t i = 0; i < d2; ++i) a(i, j) = y[i];
  }
  auto eig = hermitian_eigen(a);
  R gap2 = R(1) - eig.values.front();
  return gap2 > 0 ? num::sqrt(gap2) : R(0);
}

#define HARDY_INST_ALL(R)                                                                             \
  template class ExponentMultiset<R>;                                                                 \
  template CMatrix<R> gram_of(const std::vector<LogMonomialSum<R>>&, const Context<R>&);             \
  template GramMatrix<R> gram(const ExponentMultiset<R>&, const Context<R>&);                         \
  template LogMonomialSum<R> project(const LogMonomialSum<R>&, const ExponentMultiset<R>&, const Context<R>&); \
  template R cauchy_det(const ExponentMultiset<R>&, const Context<R>&);                               \
  template std::vector<R> muntz_partial_sums(const std::vector<Complex<R>>&, std::size_t, const Context<R>&);

#define HARDY_INST_FLOAT(R)                                                                            \
  template R dist_to_space(const LogMonomialSum<R>&, const ExponentMultiset<R>&, const Context<R>&);  \
  template R dist_by_determinants(const LogMonomialSum<R>&, const ExponentMultiset<R>&, const Context<R>&); \
  template R dist_to_space(const TestFunction<R>&, const ExponentMultiset<R>&, const Context<R>&);    \
  template ExponentMultiset<R> roots_of_unity_space(const Complex<R>&, int, const R&, const Context<R>&); \
  template R subspace_gap(const ExponentMultiset<R>&, const ExponentMultiset<R>&, const Context<R>&);

HARDY_FOR_ALL(HARDY_INST_ALL)
HARDY_FOR_FLOATS(HARDY_INST_FLOAT)

}  // namespace hardy
