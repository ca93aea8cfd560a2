#include "hardy/polynomial.hpp"

#include "hardy/errors.hpp"
#include "hardy/log_monomial.hpp"
#include "instantiate.hpp"

#include <algorithm>

namespace hardy {

template <class R>
int degree(const Poly<R>& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!p[i].is_zero()) return i;
  return -1;
}

template <class R>
Poly<R> trim(Poly<R> p, const R& rel_tol) {
  R mx(0);
  for (const auto& c : p) mx = std::max(mx, abs_max(c));
  while (!p.empty() && (p.back().is_zero() || abs_max(p.back()) <= rel_tol * mx)) p.pop_back();
  return p;
}

template <class R>
Complex<R> poly_eval(const Poly<R>& p, const Complex<R>& z) {
  Complex<R> acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

template <class R>
Poly<R> poly_mul(const Poly<R>& a, const Poly<R>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<R> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <class R>
Poly<R> poly_add(const Poly<R>& a, const Poly<R>& b) {
  Poly<R> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

template <class R>
Poly<R> poly_from_roots(const std::vector<Complex<R>>& roots, const std::vector<int>& mult) {
  Poly<R> p{Complex<R>(R(1))};
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const int m = k < mult.size() ? mult[k] : 1;
    for (int r = 0; r < m; ++r) p = poly_mul(p, Poly<R>{-roots[k], Complex<R>(R(1))});
  }
  return p;
}

template <class R>
Poly<R> deflate(const Poly<R>& p, const Complex<R>& r, Complex<R>* remainder) {
  if (p.empty()) {
    if (remainder) *remainder = Complex<R>();
    return {};
  }
  // Synthetic division from the top.
  const std::size_t n = p.size();
  Poly<R> q(n > 1 ? n - 1 : 0);
  Complex<R> acc = p[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    q[i] = acc;
    acc = p[i] + acc * r;
  }
  if (remainder) *remainder = acc;
  return q;
}

template <class R>
std::vector<Complex<R>> taylor_coeffs(const Poly<R>& p, const Complex<R>& at, int count) {
  // Repeated synthetic division by (s - at); remainders are the Taylor coefficients.
  std::vector<Complex<R>> out;
  Poly<R> cur = p;
  for (int k = 0; k < count; ++k) {
    Complex<R> rem;
    cur = deflate(cur, at, &rem);
    out.push_back(rem);
  }
  return out;
}

namespace {

// |p|(|z|): bound on the Horner rounding error scale at z.
template <class R>
R abs_eval(const Poly<R>& p, const R& r) {
  R acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * r + abs(*it);
  return acc;
}

template <class R>
Poly<R> derivative(const Poly<R>& p) {
  Poly<R> d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * R(static_cast<long>(i)));
  return d;
}

}  // namespace

template <class R>
std::vector<RootCluster<R>> find_roots(const Poly<R>& praw, const Context<R>& ctx) {
  Poly<R> p = trim(praw, R(0));
  const int n = degree(p);
  if (n < 1) throw domain_error("find_roots needs a polynomial of degree >= 1");
  const Complex<R> lead = p[n];
  for (auto& c : p) c = c / lead;
  const Poly<R> dp = derivative(p);
  const R eps = num::epsilon<R>();

  // Initial guesses on a circle of radius max |a_i|^{1/(n-i)} (Fujiwara-type),
  // with an irrational angular offset to avoid symmetric stalls.
  R rad(0);
  for (int i = 0; i < n; ++i) {
    const R a = abs(p[i]);
    if (a > 0) rad = std::max(rad, num::exp(num::log(a) / R(n - i)));
  }
  if (rad == 0) rad = R(1);
  std::vector<Complex<R>> z(n);
  const R two_pi = R(2) * num::pi<R>();
  for (int k = 0; k < n; ++k) {
    const R th = two_pi * R(k) / R(n) + R(4) / R(10);
    z[k] = Complex<R>(rad * num::cos(th), rad * num::sin(th));
  }

  std::vector<bool> done(n, false);
  auto converged = [&](const Complex<R>& zk, const Complex<R>& pz) {
    return abs(pz) <= R(8 * n) * eps * abs_eval(p, abs(zk));
  };
  const int max_it = 100 + 4 * precision_bits<R>();
  int it = 0;
  for (; it < max_it; ++it) {
    bool all = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      const Complex<R> pz = poly_eval(p, z[k]);
      if (pz.is_zero() || converged(z[k], pz)) {
        done[k] = true;
        continue;
      }
      all = false;
      const Complex<R> ratio = pz / poly_eval(dp, z[k]);
      Complex<R> sum;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += Complex<R>(R(1)) / (z[k] - z[j]);
      const Complex<R> denom = Complex<R>(R(1)) - ratio * sum;
      z[k] -= denom.is_zero() ? ratio : ratio / denom;
    }
    if (all) break;
  }
  if (it == max_it) {
    throw Error(ErrorKind::Convergence, "polynomial root finder did not converge", ladder_bits(precision_bits<R>() + 1));
  }

  // Single-linkage clustering.
  std::vector<int> label(n, -1);
  int nc = 0;
  for (int k = 0; k < n; ++k) {
    if (label[k] >= 0) continue;
    label[k] = nc;
    std::vector<int> stack{k};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < n; ++b) {
        if (label[b] >= 0) continue;
        const R scale = std::max(R(1), abs(z[a]));
        if (abs(z[a] - z[b]) <= ctx.root_cluster_tol * scale) {
          label[b] = nc;
          stack.push_back(b);
        }
      }
    }
    ++nc;
  }
  std::vector<RootCluster<R>> out(nc);
  for (int c = 0; c < nc; ++c) {
    Complex<R> sum;
    int m = 0;
    for (int k = 0; k < n; ++k)
      if (label[k] == c) {
        sum += z[k];
        ++m;
      }
    Complex<R> zc = sum / R(m);
    if (m > 1) {
      // A root of multiplicity m is a simple root of p^{(m-1)}; polish there.
      Poly<R> q = p;
      for (int r = 1; r < m; ++r) q = derivative(q);
      const Poly<R> dq = derivative(q);
      for (int step = 0; step < 8; ++step) {
        const Complex<R> d = poly_eval(dq, zc);
        if (d.is_zero()) break;
        const Complex<R> delta = poly_eval(q, zc) / d;
        if (abs(delta) > ctx.root_cluster_tol * std::max(R(1), abs(zc))) break;
        zc -= delta;
      }
    }
    out[c].z = zc;
    out[c].mult = m;
    out[c].residual = abs(poly_eval(praw, zc));
  }
  std::sort(out.begin(), out.end(), [](const RootCluster<R>& a, const RootCluster<R>& b) {
    if (a.z.re != b.z.re) return a.z.re < b.z.re;
    return a.z.im < b.z.im;
  });
  return out;
}

#define HARDY_INST_ALL(R)                                                                         \
  template int degree(const Poly<R>&);                                                            \
  template Poly<R> trim(Poly<R>, const R&);                                                       \
  template Complex<R> poly_eval(const Poly<R>&, const Complex<R>&);                               \
  template Poly<R> poly_mul(const Poly<R>&, const Poly<R>&);                                      \
  template Poly<R> poly_add(const Poly<R>&, const Poly<R>&);                                      \
  template Poly<R> poly_from_roots(const std::vector<Complex<R>>&, const std::vector<int>&);      \
  template Poly<R> deflate(const Poly<R>&, const Complex<R>&, Complex<R>*);                       \
  template std::vector<Complex<R>> taylor_coeffs(const Poly<R>&, const Complex<R>&, int);

#define HARDY_INST_FLOAT(R) \
  template std::vector<RootCluster<R>> find_roots(const Poly<R>&, const Context<R>&);

HARDY_FOR_ALL(HARDY_INST_ALL)
HARDY_FOR_FLOATS(HARDY_INST_FLOAT)

}  // namespace hardy
