#pragma once

// Small dense complex linear algebra over the scalar backends. Sizes in this
// project stay below ~40, so everything is O(n^3) textbook code.

#include "hardy/scalar.hpp"

#include <cstddef>
#include <vector>

namespace hardy {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class R>
using CMatrix = Matrix<Complex<R>>;
template <class R>
using CVector = std::vector<Complex<R>>;

/// Largest |re| or |im| over all entries.
template <class R>
R max_abs_entry(const CMatrix<R>& a);

template <class R>
struct PsdVerdict {
  bool psd = false;
  std::size_t rank = 0;  // pivots taken before the remainder fell below tol
  R min_pivot;           // most negative (or smallest) pivot seen; sign decides
};

/// Diagonally pivoted LDL^* elimination. PSD iff no Schur-complement diagonal
/// drops below -tol and, once all remaining diagonals are <= tol, no remaining
/// off-diagonal exceeds tol.
template <class R>
PsdVerdict<R> pivoted_ldl_psd(const CMatrix<R>& a, const R& tol);

/// Lower-triangular L with A = L L^*. Throws ill-conditioned when a pivot is
/// <= tol.
template <class R>
CMatrix<R> cholesky(const CMatrix<R>& a, const R& tol);

/// Solves L L^* x = b.
template <class R>
CVector<R> cholesky_solve(const CMatrix<R>& l, const CVector<R>& b);

template <class R>
struct LuDecomposition {
  CMatrix<R> lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

template <class R>
LuDecomposition<R> lu_decompose(const CMatrix<R>& a);
template <class R>
CVector<R> lu_solve(const LuDecomposition<R>& lu, const CVector<R>& b);
template <class R>
Complex<R> determinant(const CMatrix<R>& a);

template <class R>
struct HermitianEigen {
  std::vector<R> values;  // ascending
  CMatrix<R> vectors;     // column k belongs to values[k]; orthonormal
};

/// Cyclic Jacobi on the matrix (or its real 2n x 2n embedding when complex).
template <class R>
HermitianEigen<R> hermitian_eigen(const CMatrix<R>& a);

template <class R>
CVector<R> mat_vec(const CMatrix<R>& a, const CVector<R>& x);

/// x^* A y
template <class R>
Complex<R> quadratic_form(const CMatrix<R>& a, const CVector<R>& x, const CVector<R>& y);

}  // namespace hardy
