#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "dsp6/scalar.hpp"

namespace dsp6 {

/// Row-major dense matrix over an exact or floating scalar.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), T(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
  const T& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * cols_ + c)]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> a_;
};

template <class T>
struct Rref {
  DenseMatrix<T> reduced;
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

/// Reduced row echelon form. Exact for rationals; for doubles uses partial
/// pivoting and treats |pivot| <= rel_tol * max|entry| as zero.
template <class T>
Rref<T> rref(DenseMatrix<T> m, double rel_tol = 1e-12) {
  Rref<T> out;
  double scale = 0.0;
  if constexpr (std::is_same_v<T, double>) {
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) scale = std::max(scale, std::abs(m(r, c)));
  }
  const double threshold = rel_tol * scale;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    if constexpr (std::is_same_v<T, double>) {
      double best = threshold;
      for (int r = row; r < m.rows(); ++r) {
        if (std::abs(m(r, col)) > best) {
          best = std::abs(m(r, col));
          piv = r;
        }
      }
    } else {
      for (int r = row; r < m.rows(); ++r)
        if (!ScalarTraits<T>::is_zero(m(r, col))) {
          piv = r;
          break;
        }
    }
    if (piv < 0) {
      if constexpr (std::is_same_v<T, double>) {
        for (int r = row; r < m.rows(); ++r) m(r, col) = 0.0;
      }
      continue;
    }
    if (piv != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    const T inv = T(1) / m(row, col);
    for (int c = 0; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || ScalarTraits<T>::is_zero(m(r, col))) continue;
      const T factor = m(r, col);
      for (int c = 0; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

/// Basis of {x : A x = 0}, one vector per free column, in RREF order.
template <class T>
std::vector<std::vector<T>> nullspace(const DenseMatrix<T>& a, double rel_tol = 1e-12) {
  const Rref<T> rr = rref(a, rel_tol);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (int c : rr.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<T>> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<T> v(static_cast<std::size_t>(a.cols()), T(0));
    v[static_cast<std::size_t>(free)] = T(1);
    for (int i = 0; i < rr.rank(); ++i) {
      v[static_cast<std::size_t>(rr.pivot_cols[static_cast<std::size_t>(i)])] =
          -rr.reduced(i, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
struct AffineSolution {
  bool consistent = false;
  int rank = 0;
  std::vector<T> particular;
  std::vector<std::vector<T>> directions;
};

/// General solution of A x = b as particular + span(directions).
template <class T>
AffineSolution<T> solve_affine(const DenseMatrix<T>& a, const std::vector<T>& b,
                               double rel_tol = 1e-12) {
  DenseMatrix<T> aug(a.rows(), a.cols() + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[static_cast<std::size_t>(r)];
  }
  AffineSolution<T> out;
  const Rref<T> ra = rref(a, rel_tol);
  const Rref<T> rr = rref(aug, rel_tol);
  out.rank = ra.rank();
  out.consistent = rr.rank() == ra.rank();
  if (!out.consistent) return out;
  out.particular.assign(static_cast<std::size_t>(a.cols()), T(0));
  for (int i = 0; i < rr.rank(); ++i) {
    out.particular[static_cast<std::size_t>(rr.pivot_cols[static_cast<std::size_t>(i)])] =
        rr.reduced(i, a.cols());
  }
  out.directions = nullspace(a, rel_tol);
  return out;
}

}  // namespace dsp6
