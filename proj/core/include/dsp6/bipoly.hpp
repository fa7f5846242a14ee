#pragma once

#include <map>
#include <utility>

namespace dsp6 {

/// Sparse polynomial in two variables with coefficients in T.
template <class T>
class BiPoly {
 public:
  using Exponent = std::pair<int, int>;

  BiPoly() = default;
  static BiPoly constant(const T& c) {
    BiPoly p;
    p.add_term(0, 0, c);
    return p;
  }
  static BiPoly x() {
    BiPoly p;
    p.add_term(1, 0, T(1));
    return p;
  }
  static BiPoly y() {
    BiPoly p;
    p.add_term(0, 1, T(1));
    return p;
  }

  void add_term(int i, int j, const T& c) { terms_[{i, j}] += c; }
  const std::map<Exponent, T>& terms() const { return terms_; }

  T coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? T(0) : it->second;
  }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] -= c;
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly p;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) p.terms_[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    return p;
  }
  friend BiPoly operator*(const T& s, const BiPoly& a) {
    BiPoly p;
    for (const auto& [e, c] : a.terms_) p.terms_[e] = s * c;
    return p;
  }

  BiPoly dx() const {
    BiPoly p;
    for (const auto& [e, c] : terms_)
      if (e.first > 0) p.terms_[{e.first - 1, e.second}] += T(e.first) * c;
    return p;
  }
  BiPoly dy() const {
    BiPoly p;
    for (const auto& [e, c] : terms_)
      if (e.second > 0) p.terms_[{e.first, e.second - 1}] += T(e.second) * c;
    return p;
  }

  T eval(const T& xv, const T& yv) const {
    T s(0);
    for (const auto& [e, c] : terms_) {
      T term = c;
      for (int k = 0; k < e.first; ++k) term = term * xv;
      for (int k = 0; k < e.second; ++k) term = term * yv;
      s = s + term;
    }
    return s;
  }

 private:
  std::map<Exponent, T> terms_;
};

}  // namespace dsp6
