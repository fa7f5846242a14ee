#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "dsp6/error.hpp"
#include "dsp6/mat8.hpp"
#include "dsp6/scalar.hpp"

namespace dsp6 {

/// Largest |z-degree| an element may carry before operations refuse.
inline constexpr int kDefaultDegreeCap = 8;

/// Normalized trace form on so(8): <X|Y>_0 = kTraceNormalization * tr(XY).
/// The Chevalley construction re-derives this value from (e_1|f_1) = 1.
template <class T>
T trace_normalization() {
  return T(1) / T(2);
}

/// Element of the centrally extended loop algebra so(8)[z, 1/z] + CK + Cd.
///
/// The loop part maps a z-degree to an so(8) matrix; zero matrices are
/// pruned so that equality is structural.
template <class T>
class LoopElement {
 public:
  using Matrix = Mat8<T>;
  using Laurent = std::map<int, Matrix>;

  LoopElement() = default;

  static LoopElement loop(int degree, const Matrix& m) {
    LoopElement x;
    if (!m.is_zero()) x.laurent_.emplace(degree, m);
    return x;
  }
  static LoopElement central(const T& k) {
    LoopElement x;
    x.k_ = k;
    return x;
  }
  static LoopElement derivation(const T& d) {
    LoopElement x;
    x.d_ = d;
    return x;
  }

  const Laurent& laurent() const { return laurent_; }
  const T& k() const { return k_; }
  const T& d() const { return d_; }

  /// Matrix at the given z-degree, zero if absent.
  Matrix cell(int degree) const {
    auto it = laurent_.find(degree);
    return it == laurent_.end() ? Matrix{} : it->second;
  }

  int max_abs_degree() const {
    int m = 0;
    for (const auto& [deg, _] : laurent_) m = std::max(m, deg < 0 ? -deg : deg);
    return m;
  }

  bool is_zero() const {
    return laurent_.empty() && ScalarTraits<T>::is_zero(k_) && ScalarTraits<T>::is_zero(d_);
  }

  void add_loop(int degree, const Matrix& m) {
    auto [it, inserted] = laurent_.try_emplace(degree, m);
    if (!inserted) {
      it->second += m;
      if (it->second.is_zero()) laurent_.erase(it);
    } else if (m.is_zero()) {
      laurent_.erase(it);
    }
  }
  void add_k(const T& v) { k_ += v; }
  void add_d(const T& v) { d_ += v; }

  LoopElement& operator+=(const LoopElement& o) {
    for (const auto& [deg, m] : o.laurent_) add_loop(deg, m);
    k_ += o.k_;
    d_ += o.d_;
    return *this;
  }
  LoopElement& operator-=(const LoopElement& o) {
    for (const auto& [deg, m] : o.laurent_) add_loop(deg, m * T(-1));
    k_ -= o.k_;
    d_ -= o.d_;
    return *this;
  }
  LoopElement& operator*=(const T& s) {
    if (ScalarTraits<T>::is_zero(s)) return *this = LoopElement{};
    for (auto& [deg, m] : laurent_) m *= s;
    k_ *= s;
    d_ *= s;
    return *this;
  }

  friend LoopElement operator+(LoopElement x, const LoopElement& y) { return x += y; }
  friend LoopElement operator-(LoopElement x, const LoopElement& y) { return x -= y; }
  friend LoopElement operator-(LoopElement x) { return x *= T(-1); }
  friend LoopElement operator*(LoopElement x, const T& s) { return x *= s; }
  friend LoopElement operator*(const T& s, LoopElement x) { return x *= s; }
  friend bool operator==(const LoopElement& x, const LoopElement& y) {
    return x.laurent_ == y.laurent_ && x.k_ == y.k_ && x.d_ == y.d_;
  }

  template <class U>
  LoopElement<U> cast() const {
    LoopElement<U> x = LoopElement<U>::central(scalar_cast<U>(k_)) +
                       LoopElement<U>::derivation(scalar_cast<U>(d_));
    for (const auto& [deg, m] : laurent_) x.add_loop(deg, m.template cast<U>());
    return x;
  }

  /// Every loop cell lies in so(8). Exact for rationals; absolute `tol` for doubles.
  bool in_so8(double tol = 0.0) const {
    for (const auto& [deg, m] : laurent_) {
      for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
          T s = m(r, c) + m(7 - c, 7 - r);
          if (ScalarTraits<T>::magnitude(s) > tol) return false;
        }
    }
    return true;
  }

  /// Largest absolute coefficient over loop cells (K and d excluded).
  double loop_max_abs() const {
    double mx = 0.0;
    for (const auto& [deg, m] : laurent_)
      for (const auto& v : m.a) mx = std::max(mx, ScalarTraits<T>::magnitude(v));
    return mx;
  }

 private:
  Laurent laurent_;
  T k_{0};
  T d_{0};
};

using AlgebraElement = LoopElement<Rational>;
using NumericElement = LoopElement<double>;

/// [Xz^m + aK + bd, Yz^n + a'K + b'd]
///   = [X,Y]z^{m+n} + m delta_{m+n,0} <X|Y>_0 K + b n Y z^n - b' m X z^m.
template <class T>
LoopElement<T> bracket(const LoopElement<T>& x, const LoopElement<T>& y,
                       int degree_cap = kDefaultDegreeCap) {
  LoopElement<T> out;
  const T c = trace_normalization<T>();
  for (const auto& [m, xm] : x.laurent()) {
    for (const auto& [n, yn] : y.laurent()) {
      if (m + n > degree_cap || m + n < -degree_cap) {
        throw Error(ErrorCode::kDegreeCap,
                    "bracket produces z-degree " + std::to_string(m + n));
      }
      out.add_loop(m + n, commutator(xm, yn));
      if (m + n == 0 && m != 0) out.add_k(T(m) * c * trace_product(xm, yn));
    }
  }
  if (!ScalarTraits<T>::is_zero(x.d())) {
    for (const auto& [n, yn] : y.laurent())
      if (n != 0) out.add_loop(n, yn * (x.d() * T(n)));
  }
  if (!ScalarTraits<T>::is_zero(y.d())) {
    for (const auto& [m, xm] : x.laurent())
      if (m != 0) out.add_loop(m, xm * (-(y.d() * T(m))));
  }
  return out;
}

/// (Xz^m + aK + bd | Yz^n + a'K + b'd) = delta_{m+n,0} <X|Y>_0 + a b' + a' b.
template <class T>
T invariant_form(const LoopElement<T>& x, const LoopElement<T>& y) {
  T s = x.k() * y.d() + y.k() * x.d();
  const T c = trace_normalization<T>();
  for (const auto& [m, xm] : x.laurent()) {
    auto it = y.laurent().find(-m);
    if (it != y.laurent().end()) s += c * trace_product(xm, it->second);
  }
  return s;
}

/// exp(s ad x)(a) = sum_k s^k / k! ad(x)^k (a), for ad(x) nilpotent on a.
template <class T>
LoopElement<T> ad_exp_conjugate(const LoopElement<T>& x, const T& s, const LoopElement<T>& a,
                                int max_terms = 16) {
  LoopElement<T> out = a;
  LoopElement<T> term = a;
  for (int k = 1; k <= max_terms; ++k) {
    term = bracket(x, term);
    if (term.is_zero()) return out;
    term *= s / T(k);
    out += term;
  }
  throw Error(ErrorCode::kNonNilpotent,
              "adjoint series did not terminate within " + std::to_string(max_terms) + " terms");
}

/// Debug dump: "z <deg> <row> <col> <value>" per nonzero entry, then K and d lines.
template <class T>
std::string debug_dump(const LoopElement<T>& x) {
  std::ostringstream os;
  auto put = [&os](const T& v) {
    if constexpr (std::is_same_v<T, Rational>) {
      os << to_string(v);
    } else {
      os.precision(17);
      os << v;
    }
  };
  for (const auto& [deg, m] : x.laurent())
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) {
        if (ScalarTraits<T>::is_zero(m(r, c))) continue;
        os << "z " << deg << ' ' << r << ' ' << c << ' ';
        put(m(r, c));
        os << '\n';
      }
  os << "K ";
  put(x.k());
  os << "\nd ";
  put(x.d());
  os << '\n';
  return os.str();
}

}  // namespace dsp6
