#pragma once

#include <array>
#include <cstddef>

#include "dsp6/scalar.hpp"

namespace dsp6 {

/// Dense 8x8 matrix; the finite part of a loop-algebra cell.
template <class T>
struct Mat8 {
  static constexpr int kN = 8;
  std::array<T, 64> a{};

  T& operator()(int r, int c) { return a[static_cast<std::size_t>(r * kN + c)]; }
  const T& operator()(int r, int c) const { return a[static_cast<std::size_t>(r * kN + c)]; }

  static Mat8 unit(int r, int c) {
    Mat8 m;
    m(r, c) = T(1);
    return m;
  }

  bool is_zero() const {
    for (const auto& v : a) {
      if (!ScalarTraits<T>::is_zero(v)) return false;
    }
    return true;
  }

  Mat8 transpose() const {
    Mat8 m;
    for (int r = 0; r < kN; ++r)
      for (int c = 0; c < kN; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  Mat8& operator+=(const Mat8& o) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
    return *this;
  }
  Mat8& operator-=(const Mat8& o) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat8& operator*=(const T& s) {
    for (auto& v : a) v *= s;
    return *this;
  }

  friend Mat8 operator+(Mat8 x, const Mat8& y) { return x += y; }
  friend Mat8 operator-(Mat8 x, const Mat8& y) { return x -= y; }
  friend Mat8 operator*(Mat8 x, const T& s) { return x *= s; }
  friend Mat8 operator*(const T& s, Mat8 x) { return x *= s; }
  friend bool operator==(const Mat8& x, const Mat8& y) { return x.a == y.a; }

  template <class U>
  Mat8<U> cast() const {
    Mat8<U> m;
    for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = scalar_cast<U>(a[i]);
    return m;
  }
};

template <class T>
Mat8<T> matmul(const Mat8<T>& x, const Mat8<T>& y) {
  Mat8<T> m;
  T prod;
  for (int r = 0; r < 8; ++r) {
    for (int k = 0; k < 8; ++k) {
      const T& xv = x(r, k);
      if (ScalarTraits<T>::is_zero(xv)) continue;
      for (int c = 0; c < 8; ++c) {
        if (ScalarTraits<T>::is_zero(y(k, c))) continue;
        prod = xv * y(k, c);
        m(r, c) += prod;
      }
    }
  }
  return m;
}

template <class T>
Mat8<T> commutator(const Mat8<T>& x, const Mat8<T>& y) {
  return matmul(x, y) - matmul(y, x);
}

/// trace(x * y) without forming the product.
template <class T>
T trace_product(const Mat8<T>& x, const Mat8<T>& y) {
  T s(0);
  for (int r = 0; r < 8; ++r)
    for (int k = 0; k < 8; ++k) {
      if (ScalarTraits<T>::is_zero(x(r, k)) || ScalarTraits<T>::is_zero(y(k, r))) continue;
      s += x(r, k) * y(k, r);
    }
  return s;
}

/// Membership in so(8) for the anti-diagonal form S: X^T S + S X = 0, i.e.
/// X(r, c) = -X(7 - c, 7 - r).
template <class T>
bool is_so8(const Mat8<T>& x) {
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      T s = x(r, c) + x(7 - c, 7 - r);
      if (!ScalarTraits<T>::is_zero(s)) return false;
    }
  return true;
}

}  // namespace dsp6
