#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace dsp6 {

/// Exact rational scalar used for every algebraic identity check.
using Rational = mpq_class;

/// Parse "p", "p/q" or "-p/q" into a canonical rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& value);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static double to_double(const Rational& v) { return v.get_d(); }
  static double magnitude(const Rational& v) { return std::abs(v.get_d()); }
};

template <>
struct ScalarTraits<double> {
  static bool is_zero(double v) { return v == 0.0; }
  static double to_double(double v) { return v; }
  static double magnitude(double v) { return std::abs(v); }
};

template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, double>) {
    return ScalarTraits<From>::to_double(v);
  } else {
    return To(v);
  }
}

}  // namespace dsp6
