#include "hardy/linalg.hpp"

#include "hardy/errors.hpp"
#include "instantiate.hpp"

#include <algorithm>
#include <numeric>

namespace hardy {

template <class R>
R max_abs_entry(const CMatrix<R>& a) {
  R m(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      R v = abs_max(a(i, j));
      if (v > m) m = v;
    }
  }
  return m;
}

template <class R>
PsdVerdict<R> pivoted_ldl_psd(const CMatrix<R>& a, const R& tol) {
  const std::size_t n = a.rows();
  CMatrix<R> s = a;
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  PsdVerdict<R> v;
  bool have_pivot = false;

  while (!active.empty()) {
    auto cmp = [&](std::size_t i, std::size_t j) { return s(i, i).re < s(j, j).re; };
    std::size_t lo = *std::min_element(active.begin(), active.end(), cmp);
    std::size_t hi = *std::max_element(active.begin(), active.end(), cmp);
    if (s(lo, lo).re < -tol) {
      v.psd = false;
      v.min_pivot = s(lo, lo).re;
      return v;
    }
    if (s(hi, hi).re <= tol) {
      for (std::size_t i : active) {
        for (std::size_t j : active) {
          if (i != j && abs_max(s(i, j)) > tol) {
            v.psd = false;
            v.min_pivot = -abs_max(s(i, j));
            return v;
          }
        }
      }
      R rem = s(lo, lo).re;
      if (!have_pivot || rem < v.min_pivot) v.min_pivot = rem;
      v.psd = true;
      return v;
    }
    const Complex<R> d = s(hi, hi);
    active.erase(std::find(active.begin(), active.end(), hi));
    for (std::size_t i : active) {
      const Complex<R> f = s(i, hi) / d;
      for (std::size_t j : active) s(i, j) -= f * s(hi, j);
    }
    if (!have_pivot || d.re < v.min_pivot) v.min_pivot = d.re;
    have_pivot = true;
    ++v.rank;
  }
  v.psd = true;
  return v;
}

template <class R>
CMatrix<R> cholesky(const CMatrix<R>& a, const R& tol) {
  const std::size_t n = a.rows();
  CMatrix<R> l(n, n);
  R max_pivot(0);
  for (std::size_t j = 0; j < n; ++j) {
    R d = a(j, j).re;
    for (std::size_t k = 0; k < j; ++k) d -= norm2(l(j, k));
    if (d > max_pivot) max_pivot = d;
    if (!(d > tol)) {
      throw ill_conditioned("Gram matrix is numerically singular at " + std::to_string(precision_bits<R>()) +
                                " bits (pivot " + std::to_string(num::to_double(d)) + ")",
                            ladder_bits(precision_bits<R>() + 1));
    }
    R root = num::sqrt(d);
    l(j, j) = Complex<R>(root);
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex<R> acc = a(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * conj(l(j, k));
      l(i, j) = acc / root;
    }
  }
  return l;
}

template <class R>
CVector<R> cholesky_solve(const CMatrix<R>& l, const CVector<R>& b) {
  const std::size_t n = l.rows();
  CVector<R> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex<R> acc = b[i];
    for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * y[k];
    y[i] = acc / l(i, i);
  }
  CVector<R> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex<R> acc = y[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= conj(l(k, i)) * x[k];
    x[i] = acc / conj(l(i, i));
  }
  return x;
}

template <class R>
LuDecomposition<R> lu_decompose(const CMatrix<R>& a) {
  const std::size_t n = a.rows();
  LuDecomposition<R> d;
  d.lu = a;
  d.perm.resize(n);
  std::iota(d.perm.begin(), d.perm.end(), std::size_t{0});
  auto& m = d.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    R best = abs_max(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      R v = abs_max(m(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0) {
      d.singular = true;
      continue;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(d.perm[k], d.perm[p]);
      d.sign = -d.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      m(i, k) /= m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= m(i, k) * m(k, j);
    }
  }
  return d;
}

template <class R>
CVector<R> lu_solve(const LuDecomposition<R>& d, const CVector<R>& b) {
  if (d.singular) throw domain_error("singular matrix");
  const std::size_t n = d.lu.rows();
  CVector<R> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex<R> acc = b[d.perm[i]];
    for (std::size_t k = 0; k < i; ++k) acc -= d.lu(i, k) * x[k];
    x[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex<R> acc = x[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= d.lu(i, k) * x[k];
    x[i] = acc / d.lu(i, i);
  }
  return x;
}

template <class R>
Complex<R> determinant(const CMatrix<R>& a) {
  auto d = lu_decompose(a);
  if (d.singular) return Complex<R>();
  Complex<R> det(R(d.sign));
  for (std::size_t i = 0; i < a.rows(); ++i) det *= d.lu(i, i);
  return det;
}

namespace {

// Cyclic Jacobi for a real symmetric matrix; returns (values, vectors) unsorted.
template <class R>
void jacobi_symmetric(Matrix<R>& a, Matrix<R>& v) {
  const std::size_t n = a.rows();
  v = Matrix<R>::identity(n);
  const R eps = num::epsilon<R>();
  R scale(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale += a(i, j) * a(i, j);
  if (scale == 0) return;
  const R stop = eps * eps * scale;
  for (int sweep = 0; sweep < 100; ++sweep) {
    R off(0);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= stop) return;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const R apq = a(p, q);
        if (apq == 0) continue;
        const R theta = (a(q, q) - a(p, p)) / (R(2) * apq);
        R t;
        if (num::abs(theta) > R(1) / eps) {
          t = R(1) / (R(2) * theta);
        } else {
          t = R(1) / (num::abs(theta) + num::sqrt(theta * theta + R(1)));
          if (theta < 0) t = -t;
        }
        const R c = R(1) / num::sqrt(t * t + R(1));
        const R s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const R akp = a(k, p), akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = R(0);
        for (std::size_t k = 0; k < n; ++k) {
          const R vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
}

}  // namespace

template <class R>
HermitianEigen<R> hermitian_eigen(const CMatrix<R>& a) {
  const std::size_t n = a.rows();
  bool real = true;
  for (std::size_t i = 0; i < n && real; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j).im != 0) {
        real = false;
        break;
      }

  const std::size_t m = real ? n : 2 * n;
  Matrix<R> s(m, m), v;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize so round-off in the input cannot break the solver.
      const R re = (a(i, j).re + a(j, i).re) / R(2);
      s(i, j) = re;
      if (!real) {
        const R im = (a(i, j).im - a(j, i).im) / R(2);
        s(i + n, j + n) = re;
        s(i, j + n) = -im;
        s(i + n, j) = im;
      }
    }
  }
  jacobi_symmetric(s, v);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return s(x, x) < s(y, y); });

  HermitianEigen<R> out;
  out.vectors = CMatrix<R>(n, n);
  std::size_t kept = 0;
  for (std::size_t idx : order) {
    if (kept == n) break;
    CVector<R> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = real ? Complex<R>(v(i, idx)) : Complex<R>(v(i, idx), v(i + n, idx));
    // The embedding duplicates every eigenvalue; Gram-Schmidt drops the copy.
    for (std::size_t c = 0; c < kept; ++c) {
      Complex<R> proj;
      for (std::size_t i = 0; i < n; ++i) proj += conj(out.vectors(i, c)) * x[i];
      for (std::size_t i = 0; i < n; ++i) x[i] -= proj * out.vectors(i, c);
    }
    R nrm(0);
    for (const auto& xi : x) nrm += norm2(xi);
    nrm = num::sqrt(nrm);
    if (nrm < R(1) / R(2)) continue;
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, kept) = x[i] / nrm;
    out.values.push_back(s(idx, idx));
    ++kept;
  }
  return out;
}

template <class R>
CVector<R> mat_vec(const CMatrix<R>& a, const CVector<R>& x) {
  CVector<R> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

template <class R>
Complex<R> quadratic_form(const CMatrix<R>& a, const CVector<R>& x, const CVector<R>& y) {
  CVector<R> ay = mat_vec(a, y);
  Complex<R> acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc += conj(x[i]) * ay[i];
  return acc;
}

#define HARDY_INST_ALL(R)                                                         \
  template R max_abs_entry(const CMatrix<R>&);                                    \
  template PsdVerdict<R> pivoted_ldl_psd(const CMatrix<R>&, const R&);            \
  template LuDecomposition<R> lu_decompose(const CMatrix<R>&);                    \
  template CVector<R> lu_solve(const LuDecomposition<R>&, const CVector<R>&);     \
  template Complex<R> determinant(const CMatrix<R>&);                             \
  template CVector<R> mat_vec(const CMatrix<R>&, const CVector<R>&);              \
  template Complex<R> quadratic_form(const CMatrix<R>&, const CVector<R>&, const CVector<R>&);

#define HARDY_INST_FLOAT(R)                                          \
  template CMatrix<R> cholesky(const CMatrix<R>&, const R&);         \
  template CVector<R> cholesky_solve(const CMatrix<R>&, const CVector<R>&); \
  template HermitianEigen<R> hermitian_eigen(const CMatrix<R>&);

HARDY_FOR_ALL(HARDY_INST_ALL)
HARDY_FOR_FLOATS(HARDY_INST_FLOAT)

}  // namespace hardy
