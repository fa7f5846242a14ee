#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace dsp6 {

/// One Dormand-Prince 5(4) step with the 4th-order continuous extension.
/// FSAL: k[6] is f(t + h, y_new) and can seed the next step's k[0].
template <std::size_t N>
struct Dopri5Step {
  using State = std::array<double, N>;

  State y_new{};
  double error_norm = 0.0;
  std::array<State, 7> k{};
  std::array<State, 5> dense{};  // rcont1..rcont5

  /// Evaluate the dense interpolant at theta in [0, 1].
  static State interpolate(const std::array<State, 5>& r, double theta) {
    const double theta1 = 1.0 - theta;
    State y{};
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = r[0][i] + theta * (r[1][i] + theta1 * (r[2][i] + theta * (r[3][i] + theta1 * r[4][i])));
    }
    return y;
  }
};

namespace dopri5 {
inline constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
inline constexpr double a21 = 0.2, a31 = 3.0 / 40.0, a32 = 9.0 / 40.0, a41 = 44.0 / 45.0,
                        a42 = -56.0 / 15.0, a43 = 32.0 / 9.0, a51 = 19372.0 / 6561.0,
                        a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0,
                        a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0, a71 = 35.0 / 384.0,
                        a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                        a76 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dopri5

/// Performs a trial step from (t, y) with derivative k1 = f(t, y).
template <std::size_t N, class F>
Dopri5Step<N> dopri5_step(F&& f, double t, const std::array<double, N>& y,
                          const std::array<double, N>& k1, double h, double rtol, double atol) {
  using namespace dopri5;
  using State = std::array<double, N>;
  Dopri5Step<N> s;
  s.k[0] = k1;
  auto comb = [&](std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [c, kk] : terms)
      for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*kk)[i];
    return out;
  };
  s.k[1] = f(t + c2 * h, comb({{a21, &s.k[0]}}));
  s.k[2] = f(t + c3 * h, comb({{a31, &s.k[0]}, {a32, &s.k[1]}}));
  s.k[3] = f(t + c4 * h, comb({{a41, &s.k[0]}, {a42, &s.k[1]}, {a43, &s.k[2]}}));
  s.k[4] = f(t + c5 * h, comb({{a51, &s.k[0]}, {a52, &s.k[1]}, {a53, &s.k[2]}, {a54, &s.k[3]}}));
  s.k[5] = f(t + h, comb({{a61, &s.k[0]}, {a62, &s.k[1]}, {a63, &s.k[2]}, {a64, &s.k[3]},
                          {a65, &s.k[4]}}));
  s.y_new = comb({{a71, &s.k[0]}, {a73, &s.k[2]}, {a74, &s.k[3]}, {a75, &s.k[4]}, {a76, &s.k[5]}});
  s.k[6] = f(t + h, s.y_new);

  double err = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double e = h * (e1 * s.k[0][i] + e3 * s.k[2][i] + e4 * s.k[3][i] + e5 * s.k[4][i] +
                          e6 * s.k[5][i] + e7 * s.k[6][i]);
    const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(s.y_new[i]));
    err += (e / sc) * (e / sc);
  }
  s.error_norm = std::sqrt(err / static_cast<double>(N));

  for (std::size_t i = 0; i < N; ++i) {
    const double ydiff = s.y_new[i] - y[i];
    const double bspl = h * s.k[0][i] - ydiff;
    s.dense[0][i] = y[i];
    s.dense[1][i] = ydiff;
    s.dense[2][i] = bspl;
    s.dense[3][i] = ydiff - h * s.k[6][i] - bspl;
    s.dense[4][i] = h * (d1 * s.k[0][i] + d3 * s.k[2][i] + d4 * s.k[3][i] + d5 * s.k[4][i] +
                         d6 * s.k[5][i] + d7 * s.k[6][i]);
  }
  return s;
}

}  // namespace dsp6
