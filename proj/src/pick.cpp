#include "hardy/pick.hpp"

#include "hardy/errors.hpp"
#include "hardy/log_monomial.hpp"
#include "instantiate.hpp"

#include <cmath>

namespace hardy {

int scaling_bits_needed(int n) {
  // cond(Hilbert_{n+1}) ~ e^{3.5 (n+1)}; keep 20 bits of headroom.
  if (n <= 10) return 53;
  return ladder_bits(static_cast<int>(std::ceil(3.5 * (n + 1) / std::log(2.0))) + 20);
}

template <class R>
CMatrix<R> pick_matrix(const PickSystem<R>& sys, const Context<R>& ctx) {
  const std::size_t n = sys.points.size();
  if (sys.values.size() != n) throw domain_error("Pick system: points and values differ in length");
  if (!(sys.bound > 0)) throw domain_error("Pick system: bound must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    require_half_plane(sys.points[i], ctx);
    for (std::size_t j = 0; j < i; ++j) {
      if (abs_max(sys.points[i] - sys.points[j]) <= ctx.exponent_merge_tol) {
        throw domain_error("Pick system: points must be distinct");
      }
    }
  }
  const Complex<R> m2(sys.bound * sys.bound);
  CMatrix<R> p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      p(i, j) = (m2 - conj(sys.values[i]) * sys.values[j]) /
                (Complex<R>(R(1)) + conj(sys.points[i]) + sys.points[j]);
    }
  }
  return p;
}

template <class R>
R default_psd_tol(const CMatrix<R>& a, const Context<R>& ctx) {
  return ctx.psd_tol(a.rows(), max_abs_entry(a));
}

template <class R>
PsdReport<R> is_psd(const CMatrix<R>& a, const R& tol) {
  PsdReport<R> rep;
  rep.tol = tol;
  auto v = pivoted_ldl_psd(a, tol);
  rep.psd = v.psd;
  rep.min_pivot = v.min_pivot;
  if constexpr (is_exact_v<R>) {
    rep.min_eigenvalue = v.min_pivot;
  } else {
    rep.min_eigenvalue = a.rows() ? hermitian_eigen(a).values.front() : R(0);
  }
  return rep;
}

template <class R>
CMatrix<R> scaled_moment_pick(const MomentSequence<R>& m, const R& c2) {
  const std::size_t n = m.m.size();
  CMatrix<R> a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex<R> bi = m.m[i] * R(static_cast<long>(i + 1));
    for (std::size_t j = 0; j < n; ++j) {
      const Complex<R> bj = m.m[j] * R(static_cast<long>(j + 1));
      a(i, j) = (Complex<R>(R(1)) - conj(bi) * bj * c2) / R(static_cast<long>(1 + i + j));
    }
  }
  return a;
}

namespace {

template <class R>
void normalize_kernel_vector(CVector<R>& g) {
  R n2(0), mx(0);
  for (const auto& x : g) {
    n2 += norm2(x);
    if (abs(x) > mx) mx = abs(x);
  }
  const R nrm = num::sqrt(n2);
  const R thresh = mx * num::sqrt(num::epsilon<R>());
  for (const auto& x : g) {
    if (abs(x) > thresh) {
      // Rotate so this entry is real positive.
      const Complex<R> phase = conj(x) / abs(x);
      for (auto& y : g) y = y * phase / nrm;
      return;
    }
  }
}

// Eigenvector of the smallest eigenvalue; among near-kernel eigenvectors
// take the one whose first significant entry has the smallest index.
template <class R>
CVector<R> kernel_vector(const CMatrix<R>& a, const R& kernel_tol, R& min_eig, int& kernel_dim) {
  auto eig = hermitian_eigen(a);
  const std::size_t n = a.rows();
  min_eig = eig.values.front();
  kernel_dim = 0;
  std::size_t best = 0;
  std::size_t best_index = n + 1;
  const R sig = num::sqrt(num::epsilon<R>());
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] > eig.values.front() + kernel_tol) break;
    ++kernel_dim;
    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (abs(eig.vectors(i, k)) > sig) {
        first = i;
        break;
      }
    }
    if (first < best_index) {
      best_index = first;
      best = k;
    }
  }
  if (kernel_dim == 0) kernel_dim = 1;
  CVector<R> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = eig.vectors(i, best);
  normalize_kernel_vector(g);
  return g;
}

}  // namespace

template <class R>
ScalingResult<R> max_scaling_constant(const MomentSequence<R>& m, const Context<R>& ctx) {
  const int n = m.n();
  if (n < 0) throw domain_error("empty moment sequence");
  const int need = scaling_bits_needed(n);
  if (need > precision_bits<R>()) {
    throw ill_conditioned("scaling constant for N = " + std::to_string(n) + " needs about " + std::to_string(need) +
                              " bits; running at " + std::to_string(precision_bits<R>()),
                          need);
  }
  R beta_max(0);
  for (int i = 0; i <= n; ++i) {
    R b = norm2(m.m[i]) * R((i + 1) * (i + 1));
    if (b > beta_max) beta_max = b;
  }
  if (beta_max == 0) {
    throw Error(ErrorKind::Unbounded, "all moments vanish; the scaling constant is unbounded");
  }

  ScalingResult<R> res;
  auto psd_at = [&](const R& t, R* pivot) {
    auto a = scaled_moment_pick(m, t);
    auto v = pivoted_ldl_psd(a, default_psd_tol(a, ctx));
    if (pivot) *pivot = v.min_pivot;
    return v.psd;
  };

  // Some diagonal entry K_ii (1 - t |beta_i|^2) is negative at t = 2 / max |beta_i|^2.
  R lo(0), hi = R(2) / beta_max;
  while (psd_at(hi, nullptr)) hi *= R(2);
  const R tol = ctx.bisection_tol;
  for (int it = 0; it < 4 * precision_bits<R>() && hi - lo > tol * hi; ++it) {
    R mid = (lo + hi) / R(2);
    R pivot;
    if (psd_at(mid, &pivot)) {
      lo = mid;
    } else {
      hi = mid;
    }
    res.min_eig_trace.push_back(pivot);
  }

  // K, B and the Rayleigh quotient gamma^* K gamma / gamma^* B gamma, which
  // is >= t* with error quadratic in the kernel-vector error.
  auto k = scaled_moment_pick(m, R(0));
  auto kb = scaled_moment_pick(m, R(1));
  auto rayleigh = [&](const CVector<R>& g) {
    const R gk = quadratic_form(k, g, g).re;
    const R gb = gk - quadratic_form(kb, g, g).re;
    return gb > 0 ? gk / gb : R(-1);
  };
  R t = (lo + hi) / R(2);
  auto a = scaled_moment_pick(m, t);
  R kernel_tol = R(1000) * default_psd_tol(a, ctx);
  R min_eig;
  int kdim = 1;
  auto g = kernel_vector(a, kernel_tol, min_eig, kdim);
  R tr = rayleigh(g);
  const R slack = (hi - lo) + tol * hi;
  if (tr >= lo - slack && tr <= hi + slack) {
    t = tr;
    a = scaled_moment_pick(m, t);
    g = kernel_vector(a, kernel_tol, min_eig, kdim);
  }
  res.c = num::sqrt(t);
  res.gamma = g;
  res.min_eig_at_c = min_eig;
  res.kernel_dim = kdim;
  res.degenerate = kdim > 1;
  return res;
}

#define HARDY_INST_ALL(R)                                                          \
  template CMatrix<R> pick_matrix(const PickSystem<R>&, const Context<R>&);        \
  template CMatrix<R> scaled_moment_pick(const MomentSequence<R>&, const R&);      \
  template R default_psd_tol(const CMatrix<R>&, const Context<R>&);                \
  template PsdReport<R> is_psd(const CMatrix<R>&, const R&);

#define HARDY_INST_FLOAT(R) \
  template ScalingResult<R> max_scaling_constant(const MomentSequence<R>&, const Context<R>&);

HARDY_FOR_ALL(HARDY_INST_ALL)
HARDY_FOR_FLOATS(HARDY_INST_FLOAT)

}  // namespace hardy
