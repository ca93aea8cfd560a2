#include "hardy/rational.hpp"

#include "hardy/errors.hpp"
#include "instantiate.hpp"

#include <algorithm>

namespace hardy {

template <class R>
Complex<R> eval(const RationalFn<R>& a, const Complex<R>& s) {
  return poly_eval(a.num, s) / poly_eval(a.den, s);
}

template <class R>
std::vector<std::size_t> gamma_support(const std::vector<Complex<R>>& gamma) {
  R mx(0);
  for (const auto& g : gamma) mx = std::max(mx, abs(g));
  const R eps = num::epsilon<R>();
  const R thresh = mx * num::exp(num::log(eps) * R(2) / R(3));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (abs(gamma[i]) > thresh) out.push_back(i);
  return out;
}

namespace {

template <class R>
R abs_eval(const Poly<R>& p, const R& r) {
  R acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * r + abs(*it);
  return acc;
}

template <class R>
R max_coeff(const Poly<R>& p) {
  R mx(0);
  for (const auto& c : p) mx = std::max(mx, abs(c));
  return mx;
}

// Drops leading coefficients at or below thresh.
template <class R>
Poly<R> trim_abs(Poly<R> p, const R& thresh) {
  while (!p.empty() && abs(p.back()) <= thresh) p.pop_back();
  return p;
}

}  // namespace

template <class R>
RationalFn<R> build_alpha(const std::vector<Complex<R>>& gamma, const std::vector<Complex<R>>& values,
                          const Context<R>& ctx) {
  if (values.size() < gamma.size()) throw domain_error("build_alpha: fewer values than kernel entries");
  const auto supp = gamma_support(gamma);
  if (supp.empty()) throw Error(ErrorKind::Degenerate, "build_alpha: kernel vector is zero");

  // Multiply through by prod_{i in supp} (1+i+s).
  Poly<R> rnum, lnum;
  for (std::size_t a = 0; a < supp.size(); ++a) {
    Poly<R> others{Complex<R>(R(1))};
    for (std::size_t b = 0; b < supp.size(); ++b) {
      if (b == a) continue;
      others = poly_mul(others, Poly<R>{Complex<R>(R(static_cast<long>(1 + supp[b]))), Complex<R>(R(1))});
    }
    const Complex<R> g = gamma[supp[a]];
    Poly<R> rterm = others, lterm = others;
    for (auto& c : rterm) c = c * g;
    for (auto& c : lterm) c = c * (conj(values[supp[a]]) * g);
    rnum = poly_add(rnum, rterm);
    lnum = poly_add(lnum, lterm);
  }
  const R scale = std::max(max_coeff(rnum), max_coeff(lnum));
  const R tiny = ctx.root_cluster_tol * ctx.root_cluster_tol * scale;
  rnum = trim_abs(std::move(rnum), tiny);
  lnum = trim_abs(std::move(lnum), tiny);
  if (lnum.empty()) throw Error(ErrorKind::Degenerate, "build_alpha: denominator L vanishes identically");

  // Cancel roots of L at which R also vanishes.
  if (degree(lnum) >= 1 && degree(rnum) >= 1) {
    for (const auto& cl : find_roots(lnum, ctx)) {
      for (int r = 0; r < cl.mult && degree(rnum) >= 1 && degree(lnum) >= 1; ++r) {
        const R bound = ctx.root_cluster_tol * abs_eval(rnum, abs(cl.z));
        if (abs(poly_eval(rnum, cl.z)) > bound) break;
        rnum = deflate(rnum, cl.z);
        lnum = deflate(lnum, cl.z);
      }
    }
  }
  const Complex<R> lead = lnum.back();
  for (auto& c : rnum) c = c / lead;
  for (auto& c : lnum) c = c / lead;
  lnum.back() = Complex<R>(R(1));
  if (rnum.empty()) rnum.push_back(Complex<R>());
  return {rnum, lnum};
}

template <class R>
Complex<R> eval(const PartialFractionForm<R>& pf, const Complex<R>& s) {
  Complex<R> acc;
  for (const auto& p : pf.poles) {
    const Complex<R> inv = Complex<R>(R(1)) / (s - p.lambda);
    Complex<R> pw = inv;
    for (int r = 1; r <= p.mult; ++r) {
      acc += p.coeffs[r - 1] * factorial<R>(r - 1) * pw;
      pw *= inv;
    }
  }
  return acc;
}

template <class R>
PartialFractionForm<R> partial_fractions_over_splus1(const RationalFn<R>& alpha, const Context<R>& ctx,
                                                      bool allow_case_ii) {
  Poly<R> p = trim(alpha.num, R(0));
  Poly<R> d = trim(alpha.den, R(0));
  if (d.empty()) throw domain_error("rational function has zero denominator");
  if (degree(p) > degree(d)) throw domain_error("alpha is unbounded at infinity (deg num > deg den)");
  {
    const Complex<R> lead = d.back();
    for (auto& c : p) c = c / lead;
    for (auto& c : d) c = c / lead;
  }
  const Complex<R> minus_one(R(-1));
  int m_minus1 = 1;  // the explicit 1/(s+1)
  const R p_at = abs(poly_eval(p, minus_one));
  const bool case_ii = p.empty() || p_at <= ctx.root_cluster_tol * abs_eval(p, R(1));
  if (case_ii && abs(poly_eval(d, minus_one)) > ctx.root_cluster_tol * abs_eval(d, R(1))) {
    if (!allow_case_ii) {
      throw Error(ErrorKind::Anomaly, "alpha(-1) = 0 (case (ii)); rerun with the case-(ii) flag to expand anyway");
    }
    if (degree(p) < 1) throw Error(ErrorKind::Degenerate, "alpha vanishes identically");
    p = deflate(p, minus_one);
    m_minus1 = 0;
  }

  PartialFractionForm<R> pf;
  std::vector<PoleTerm<R>> others;
  if (degree(d) >= 1) {
    for (const auto& cl : find_roots(d, ctx)) {
      if (abs(cl.z - minus_one) <= ctx.root_cluster_tol) {
        m_minus1 += cl.mult;
      } else {
        others.push_back({cl.z, cl.mult, {}});
      }
    }
  }
  if (m_minus1 > 0) pf.poles.push_back({minus_one, m_minus1, {}});
  for (auto& o : others) pf.poles.push_back(o);

  for (std::size_t j = 0; j < pf.poles.size(); ++j) {
    auto& pole = pf.poles[j];
    const int m = pole.mult;
    std::vector<Complex<R>> roots;
    std::vector<int> mults;
    for (std::size_t k = 0; k < pf.poles.size(); ++k) {
      if (k == j) continue;
      roots.push_back(pf.poles[k].lambda);
      mults.push_back(pf.poles[k].mult);
    }
    const auto pt = taylor_coeffs(p, pole.lambda, m);
    const auto dt = taylor_coeffs(poly_from_roots(roots, mults), pole.lambda, m);
    // g = P / D_j as a power series in (s - lambda_j).
    std::vector<Complex<R>> g(m);
    for (int n = 0; n < m; ++n) {
      Complex<R> acc = pt[n];
      for (int k = 1; k <= n; ++k) acc -= dt[k] * g[n - k];
      g[n] = acc / dt[0];
    }
    pole.coeffs.resize(m);
    for (int r = 1; r <= m; ++r) pole.coeffs[r - 1] = g[m - r] / factorial<R>(r - 1);
  }

  // Residual against alpha(s)/(s+1) at fixed sample points.
  R worst(0);
  for (int k = 0; k < 12; ++k) {
    const Complex<R> s(R(3 * k - 4) / R(10), R(7 * k - 30) / R(10));
    Complex<R> target = poly_eval(alpha.num, s) / poly_eval(alpha.den, s) / (s + Complex<R>(R(1)));
    const R err = abs(eval(pf, s) - target) / std::max(R(1), abs(target));
    worst = std::max(worst, err);
  }
  pf.residual = worst;
  return pf;
}

template <class R>
LogMonomialSum<R> inverse_laplace_uN(const PartialFractionForm<R>& pf, const Context<R>& ctx) {
  std::vector<Term<R>> terms;
  for (const auto& p : pf.poles) {
    const Complex<R> s = -conj(p.lambda) - Complex<R>(R(1));
    if (!in_half_plane(s, ctx)) {
      throw domain_error("reconstructed exponent " + format(s) + " lies outside the half plane Re s > -1/2");
    }
    for (int r = 1; r <= p.mult; ++r) {
      Complex<R> c = conj(p.coeffs[r - 1]);
      if ((r - 1) % 2 == 1) c = -c;
      terms.push_back({c, s, r - 1});
    }
  }
  return LogMonomialSum<R>(std::move(terms), ctx);
}

template <class R>
PoleExponents<R> exponent_multiset_from_poles(const PartialFractionForm<R>& pf, const Context<R>& ctx) {
  std::vector<ExponentEntry<R>> full;
  bool has_minus1 = false;
  for (const auto& p : pf.poles) {
    if (p.lambda == Complex<R>(R(-1))) has_minus1 = true;
    full.push_back({-conj(p.lambda) - Complex<R>(R(1)), p.mult});
  }
  if (!has_minus1) throw Error(ErrorKind::Anomaly, "no pole at -1 (case (ii)); the exponent 0 cannot be removed");
  PoleExponents<R> out;
  out.full = ExponentMultiset<R>(full, ctx);
  std::vector<ExponentEntry<R>> reduced;
  for (auto e : out.full.entries()) {
    if (e.s.is_zero()) --e.mult;
    if (e.mult > 0) reduced.push_back(e);
  }
  if (reduced.empty()) throw Error(ErrorKind::Degenerate, "the approximating monomial space is {0}: Mult_N is empty");
  out.reduced = ExponentMultiset<R>(reduced, ctx);
  return out;
}

#define HARDY_INST_FLOAT(R)                                                                                   \
  template Complex<R> eval(const RationalFn<R>&, const Complex<R>&);                                          \
  template std::vector<std::size_t> gamma_support(const std::vector<Complex<R>>&);                            \
  template RationalFn<R> build_alpha(const std::vector<Complex<R>>&, const std::vector<Complex<R>>&,          \
                                     const Context<R>&);                                                      \
  template Complex<R> eval(const PartialFractionForm<R>&, const Complex<R>&);                                 \
  template PartialFractionForm<R> partial_fractions_over_splus1(const RationalFn<R>&, const Context<R>&, bool); \
  template LogMonomialSum<R> inverse_laplace_uN(const PartialFractionForm<R>&, const Context<R>&);            \
  template PoleExponents<R> exponent_multiset_from_poles(const PartialFractionForm<R>&, const Context<R>&);

HARDY_FOR_FLOATS(HARDY_INST_FLOAT)

}  // namespace hardy
