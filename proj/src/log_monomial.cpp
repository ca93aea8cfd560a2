#include "hardy/log_monomial.hpp"

#include "instantiate.hpp"

#include <algorithm>

namespace hardy {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::IllConditioned: return "ill-conditioned";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Anomaly: return "anomaly";
    case ErrorKind::Dense: return "dense";
    case ErrorKind::Unbounded: return "unbounded";
  }
  return "unknown";
}

int ladder_bits(int bits) {
  for (int b : {53, 128, 256, 512}) {
    if (bits <= b) return b;
  }
  return 512;
}

namespace {

template <class R>
bool same_exponent(const Complex<R>& a, const Complex<R>& b, const R& tol) {
  return abs_max(a - b) <= tol;
}

template <class R>
bool is_zero_exponent(const Complex<R>& s, const Context<R>& ctx) {
  return abs_max(s) <= ctx.exponent_merge_tol;
}

}  // namespace

template <class R>
LogMonomialSum<R>::LogMonomialSum(std::vector<Term<R>> terms, const Context<R>& ctx) {
  // Exponent representatives: the first exponent seen within tolerance wins.
  std::vector<Complex<R>> reps;
  for (auto& t : terms) {
    if (t.logpow < 0) throw domain_error("negative log power");
    auto it = std::find_if(reps.begin(), reps.end(),
                           [&](const Complex<R>& r) { return same_exponent(r, t.s, ctx.exponent_merge_tol); });
    if (it == reps.end()) {
      reps.push_back(t.s);
    } else {
      t.s = *it;
    }
  }
  for (const auto& t : terms) {
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const Term<R>& u) { return u.logpow == t.logpow && u.s == t.s; });
    if (it == terms_.end()) {
      terms_.push_back(t);
    } else {
      it->coeff += t.coeff;
    }
  }
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term<R>& t) { return t.coeff.is_zero(); }),
               terms_.end());
  std::sort(terms_.begin(), terms_.end(), [](const Term<R>& a, const Term<R>& b) {
    if (a.s.re != b.s.re) return a.s.re < b.s.re;
    if (a.s.im != b.s.im) return a.s.im < b.s.im;
    return a.logpow < b.logpow;
  });
}

template <class R>
LogMonomialSum<R> LogMonomialSum<R>::monomial(const Complex<R>& s, int logpow, const Complex<R>& c) {
  if (logpow < 0) throw domain_error("negative log power");
  LogMonomialSum f;
  if (!c.is_zero()) f.terms_.push_back(Term<R>{c, s, logpow});
  return f;
}

template <class R>
int LogMonomialSum<R>::max_logpow() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.logpow);
  return m;
}

template <class R>
LogMonomialSum<R> add(const LogMonomialSum<R>& f, const LogMonomialSum<R>& g, const Context<R>& ctx) {
  std::vector<Term<R>> terms = f.terms();
  terms.insert(terms.end(), g.terms().begin(), g.terms().end());
  return LogMonomialSum<R>(std::move(terms), ctx);
}

template <class R>
LogMonomialSum<R> scale(const LogMonomialSum<R>& f, const Complex<R>& c, const Context<R>& ctx) {
  std::vector<Term<R>> terms = f.terms();
  for (auto& t : terms) t.coeff *= c;
  return LogMonomialSum<R>(std::move(terms), ctx);
}

template <class R>
LogMonomialSum<R> subtract(const LogMonomialSum<R>& f, const LogMonomialSum<R>& g, const Context<R>& ctx) {
  std::vector<Term<R>> terms = f.terms();
  for (auto t : g.terms()) {
    t.coeff = -t.coeff;
    terms.push_back(t);
  }
  return LogMonomialSum<R>(std::move(terms), ctx);
}

template <class R>
bool in_half_plane(const Complex<R>& s, const Context<R>& ctx) {
  return s.re > R(-1) / R(2) + ctx.half_plane_margin;
}

template <class R>
void require_half_plane(const Complex<R>& s, const Context<R>& ctx) {
  if (!in_half_plane(s, ctx)) {
    throw domain_error("exponent " + format(s) + " is outside the half plane Re s > -1/2");
  }
}

namespace {

template <class A, class R>
Complex<A> widen(const Complex<R>& z) {
  return {A(z.re), A(z.im)};
}

// sum_{a,b} c_a conj(c_b) (-1)^k k! / (1 + s_a + conj s_b)^{k+1}, k = logpow_a + logpow_b,
// evaluated in the accumulator type A.
template <class A, class R>
Complex<A> accumulate_inner(const LogMonomialSum<R>& f, const LogMonomialSum<R>& g) {
  Complex<A> total;
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      const int k = a.logpow + b.logpow;
      const Complex<A> base = Complex<A>(A(1)) + widen<A>(a.s) + conj(widen<A>(b.s));
      A numer = factorial<A>(k);
      if (k % 2) numer = -numer;
      total += widen<A>(a.coeff) * conj(widen<A>(b.coeff)) * numer / pow_int(base, static_cast<unsigned>(k + 1));
    }
  }
  return total;
}

}  // namespace

template <class R>
Complex<R> inner_product(const LogMonomialSum<R>& f, const LogMonomialSum<R>& g, const Context<R>& ctx) {
  for (const auto& t : f.terms()) require_half_plane(t.s, ctx);
  for (const auto& t : g.terms()) require_half_plane(t.s, ctx);
  if constexpr (std::is_same_v<R, double>) {
    // With log powers the closed form cancels heavily (<e_15, e_15> sums terms
    // near 1e8 to get 1), so double inputs are accumulated in 128 bits.
    const auto t = accumulate_inner<Float128>(f, g);
    return {static_cast<double>(t.re), static_cast<double>(t.im)};
  } else {
    return accumulate_inner<R>(f, g);
  }
}

template <class R>
R norm_squared(const LogMonomialSum<R>& f, const Context<R>& ctx) {
  return inner_product(f, f, ctx).re;
}

template <class R>
LogMonomialSum<R> apply_hardy(const LogMonomialSum<R>& f, const Context<R>& ctx) {
  // H((log x)^m x^s) = sum_{k<=m} C(m,k) (-1)^{m-k} (m-k)! / (s+1)^{m-k+1} (log x)^k x^s
  std::vector<Term<R>> out;
  for (const auto& t : f.terms()) {
    Complex<R> sp1 = t.s + Complex<R>(R(1));
    const int m = t.logpow;
    for (int k = 0; k <= m; ++k) {
      R w = binomial<R>(m, k) * factorial<R>(m - k);
      if ((m - k) % 2) w = -w;
      out.push_back(Term<R>{t.coeff * w / pow_int(sp1, static_cast<unsigned>(m - k + 1)), t.s, k});
    }
  }
  return LogMonomialSum<R>(std::move(out), ctx);
}

template <class R>
LogMonomialSum<R> apply_hardy_adjoint(const LogMonomialSum<R>& f, const Context<R>& ctx) {
  std::vector<Term<R>> out;
  const Complex<R> zero;
  for (const auto& t : f.terms()) {
    const int m = t.logpow;
    if (is_zero_exponent(t.s, ctx)) {
      // int_x^1 (log t)^m / t dt = -(log x)^{m+1} / (m+1)
      out.push_back(Term<R>{-t.coeff / R(m + 1), zero, m + 1});
      continue;
    }
    // Antiderivative of (log t)^m t^{s-1}:
    //   A(t) = t^s sum_{k<=m} (-1)^{m-k} m! / (k! s^{m-k+1}) (log t)^k,
    // so int_x^1 = A(1) - A(x) with A(1) = (-1)^m m! / s^{m+1}.
    R mfact = factorial<R>(m);
    R a1 = (m % 2) ? -mfact : mfact;
    out.push_back(Term<R>{t.coeff * a1 / pow_int(t.s, static_cast<unsigned>(m + 1)), zero, 0});
    for (int k = 0; k <= m; ++k) {
      R w = mfact / factorial<R>(k);
      if ((m - k) % 2) w = -w;
      out.push_back(Term<R>{-t.coeff * w / pow_int(t.s, static_cast<unsigned>(m - k + 1)), t.s, k});
    }
  }
  return LogMonomialSum<R>(std::move(out), ctx);
}

template <class R>
LogMonomialSum<R> apply_shift(const LogMonomialSum<R>& f, const Context<R>& ctx) {
  return subtract(f, apply_hardy_adjoint(f, ctx), ctx);
}

template <class R>
Complex<R> evaluate(const LogMonomialSum<R>& f, const R& x) {
  if (!(x > 0 && x < 1)) throw domain_error("evaluation point must lie in (0,1)");
  const R lx = num::log(x);
  Complex<R> total;
  for (const auto& t : f.terms()) {
    Complex<R> v = exp(t.s * lx) * num::pow_int(lx, static_cast<unsigned>(t.logpow));
    total += t.coeff * v;
  }
  return total;
}

namespace {

// int_a^1 x^p (log x)^k dx
template <class R>
Complex<R> truncated_moment(const Complex<R>& p, int k, const R& log_a, const Context<R>& ctx) {
  Complex<R> q = p + Complex<R>(R(1));
  if (abs_max(q) <= ctx.exponent_merge_tol) {
    return Complex<R>(-num::pow_int(log_a, static_cast<unsigned>(k + 1)) / R(k + 1));
  }
  R kfact = factorial<R>(k);
  Complex<R> at_one = Complex<R>((k % 2) ? -kfact : kfact) / pow_int(q, static_cast<unsigned>(k + 1));
  Complex<R> sum;
  for (int j = 0; j <= k; ++j) {
    R w = kfact / factorial<R>(j);
    if ((k - j) % 2) w = -w;
    sum += Complex<R>(w * num::pow_int(log_a, static_cast<unsigned>(j))) / pow_int(q, static_cast<unsigned>(k - j + 1));
  }
  return at_one - exp(q * log_a) * sum;
}

}  // namespace

template <class R>
Complex<R> truncated_inner_product(const LogMonomialSum<R>& f, const LogMonomialSum<R>& g, const R& a,
                                   const Context<R>& ctx) {
  if (!(a > 0 && a < 1)) throw domain_error("truncation point must lie in (0,1)");
  const R log_a = num::log(a);
  Complex<R> total;
  for (const auto& u : f.terms()) {
    for (const auto& v : g.terms()) {
      total += u.coeff * conj(v.coeff) * truncated_moment(u.s + conj(v.s), u.logpow + v.logpow, log_a, ctx);
    }
  }
  return total;
}

#define HARDY_INST_ALL(R)                                                                                \
  template class LogMonomialSum<R>;                                                                      \
  template LogMonomialSum<R> add(const LogMonomialSum<R>&, const LogMonomialSum<R>&, const Context<R>&); \
  template LogMonomialSum<R> subtract(const LogMonomialSum<R>&, const LogMonomialSum<R>&,                \
                                      const Context<R>&);                                                \
  template LogMonomialSum<R> scale(const LogMonomialSum<R>&, const Complex<R>&, const Context<R>&);      \
  template bool in_half_plane(const Complex<R>&, const Context<R>&);                                     \
  template void require_half_plane(const Complex<R>&, const Context<R>&);                                \
  template Complex<R> inner_product(const LogMonomialSum<R>&, const LogMonomialSum<R>&, const Context<R>&); \
  template R norm_squared(const LogMonomialSum<R>&, const Context<R>&);                                  \
  template LogMonomialSum<R> apply_hardy(const LogMonomialSum<R>&, const Context<R>&);                   \
  template LogMonomialSum<R> apply_hardy_adjoint(const LogMonomialSum<R>&, const Context<R>&);           \
  template LogMonomialSum<R> apply_shift(const LogMonomialSum<R>&, const Context<R>&);

#define HARDY_INST_FLOAT(R)                                            \
  template Complex<R> evaluate(const LogMonomialSum<R>&, const R&);    \
  template Complex<R> truncated_inner_product(const LogMonomialSum<R>&, const LogMonomialSum<R>&, const R&, \
                                              const Context<R>&);

HARDY_FOR_ALL(HARDY_INST_ALL)
HARDY_FOR_FLOATS(HARDY_INST_FLOAT)

}  // namespace hardy
