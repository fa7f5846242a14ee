#pragma once

#include <array>
#include <cmath>
#include <random>

#include "dsp6/chevalley.hpp"
#include "dsp6/painleve.hpp"

namespace dsp6::test {

inline Rational small_rational(std::mt19937_64& rng, int range = 9, int max_den = 5) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Random combination of the Chevalley generators (and optionally d).
inline AlgebraElement random_generator_combo(std::mt19937_64& rng, bool with_d = true) {
  const ChevalleyBasis& cb = chevalley();
  AlgebraElement x;
  for (std::size_t i = 0; i < 5; ++i) {
    x += cb.e[i] * small_rational(rng);
    x += cb.f[i] * small_rational(rng);
    x += cb.coroot[i] * small_rational(rng);
  }
  if (with_d) x += cb.d * small_rational(rng);
  return x;
}

/// A time away from {0, +-1, +-1 +- sqrt2}.
inline double regular_time(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(1.6, 5.0);
  std::uniform_real_distribution<double> small(0.1, 0.3);
  switch (rng() % 3) {
    case 0: return mag(rng);
    case 1: return -mag(rng);
    default: return (rng() & 1 ? 1.0 : -1.0) * (0.5 + small(rng));
  }
}

inline PviParams random_params(std::mt19937_64& rng, Normalization n = Normalization::kIntro4) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return PviParams::from_outer(u(rng), u(rng), u(rng), u(rng), n);
}

inline PviState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {regular_time(rng), u(rng), u(rng)};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

}  // namespace dsp6::test
