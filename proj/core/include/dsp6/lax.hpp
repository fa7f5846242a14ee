#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dsp6/dual.hpp"
#include "dsp6/integrator.hpp"
#include "dsp6/painleve.hpp"
#include "dsp6/reduction.hpp"

namespace dsp6 {

/// Coefficients of an element of b_+ spanned by K, the outer coroots, e_0..e_4 and e_{2j}.
template <class T>
struct BorelCoefficients {
  T K{0};
  std::array<T, 5> coroot{};  // index 2 unused
  std::array<T, 5> e{};
  std::array<T, 5> e2{};      // e_{2j}; index 2 unused
};

/// Which form of the e_2-coefficient of B~ to use.
///  kPlusSum:  Theta0 x~ = F0F2(F0-F1-F3-F4) + sum_j (a_j + a_2 - 1) F_j.
///  kMinusSum: Theta0 x~ = F0F2(F0-F1-F3-F4) - sum_j (a_j + a_2 - 1) F_j, which equals the
///             x_1 returned by solve_coefficients.
enum class XTildeForm { kPlusSum, kMinusSum };

std::string to_string(XTildeForm f);

struct LaxOptions {
  XTildeForm x_form = XTildeForm::kMinusSum;
  double u2_tilde = 0.0;  // K-coefficient of B~, not determined by the construction
};

template <class T>
BorelCoefficients<T> m_tilde_coefficients(const T& t, const T& lambda, const T& mu,
                                          const std::array<T, 5>& a) {
  const auto fc = f_coords(t, lambda, mu);
  const auto& F = fc.F;
  BorelCoefficients<T> c;
  c.K = (a[0] * a[0] + a[1] * a[1] + a[3] * a[3] + a[4] * a[4] - T(4)) / T(16);
  for (int j : kOuterNodes) c.coroot[static_cast<std::size_t>(j)] = -(a[static_cast<std::size_t>(j)] - T(1)) / T(2);
  c.e[2] = F[2];
  c.e[0] = -F[0];
  c.e[1] = (t - T(1)) * F[1];
  c.e[3] = -(t + T(1)) * F[3];
  c.e[4] = -t * F[4];
  c.e2[0] = T(1);
  c.e2[1] = -(t - T(1));
  c.e2[3] = t + T(1);
  c.e2[4] = t;
  return c;
}

template <class T>
BorelCoefficients<T> b_tilde_coefficients(const T& t, const T& lambda, const T& mu,
                                          const std::array<T, 5>& a, const LaxOptions& opts = {}) {
  const auto fc = f_coords(t, lambda, mu);
  const auto& F = fc.F;
  const T Th0 = fc.Theta[0];
  if (value_is_zero(Th0)) throw Error(ErrorCode::kSingularTime, "Theta_0 = 0");
  const T half(0.5);
  const T spread = F[0] - F[1] - F[3] - F[4];
  // Products of the outer F's with selected factors left out (no division by F_j).
  auto outer_product_without = [&](int skip1, int skip2) {
    T p(1);
    for (int i : kOuterNodes)
      if (i != skip1 && i != skip2) p = p * F[static_cast<std::size_t>(i)];
    return p;
  };
  BorelCoefficients<T> c;
  c.K = T(opts.u2_tilde);
  for (int j : kOuterNodes) {
    const auto jj = static_cast<std::size_t>(j);
    T num = outer_product_without(j, -1) * F[2];
    for (int i : kOuterNodes) {
      if (i == j) continue;
      num = num - half * (a[static_cast<std::size_t>(i)] + a[jj] - T(2)) * outer_product_without(i, j);
    }
    num = num - half * (a[jj] - T(1)) * F[0] * spread;
    c.coroot[jj] = num / Th0;
  }
  T brace = (a[0] + a[2] - T(1)) * F[0] + (a[1] + a[2] - T(1)) * F[1] +
            (a[3] + a[2] - T(1)) * F[3] + (a[4] + a[2] - T(1)) * F[4];
  if (opts.x_form == XTildeForm::kMinusSum) brace = -brace;
  c.e[2] = (F[0] * F[2] * spread + brace) / Th0;
  c.e[0] = T(-1);
  c.e[1] = lambda + T(1);
  c.e[3] = -(lambda - T(1));
  c.e[4] = -lambda;
  c.e2[1] = T(-1);
  c.e2[3] = T(1);
  c.e2[4] = T(1);
  return c;
}

/// Assembles the element from its coefficients.
template <class T>
LoopElement<T> assemble(const BorelCoefficients<T>& c);

NumericElement build_m_tilde(const PviState& st, const PviParams& pr);
NumericElement build_b_tilde(const PviState& st, const PviParams& pr, const LaxOptions& opts = {});

/// M = t1 L_{1,1} + t2 L_{1,2} + sum kappa_j a_j^v + eta a_2^v + phi e_2 + psi f_2.
template <class T>
LoopElement<T> build_m_raw(const MCoefficients<T>& m);

/// f_2-coefficient of an element (degree-zero cell (2,1)).
double f2_component(const NumericElement& x);

/// No component of negative d_s-degree and no f_2 component (absolute tolerance).
bool in_borel(const NumericElement& x, double tol = 0.0);
bool in_borel(const AlgebraElement& x);

struct GaugeReport {
  double f2_component = 0.0;  // of exp(-lambda ad f2) M
  double quadratic = 0.0;     // phi l^2 + (2 eta - sum kappa) l - psi
  double quadratic_mismatch = 0.0;  // |f2_component + quadratic|
  double tilde_loop_diff = 0.0;     // max |conjugated M - M~| over loop entries
  double tilde_k_diff = 0.0;        // K-coefficient difference (reported, not required)
  bool borel = false;               // conjugated M lies in b_+
};

/// Conjugates M by exp(lambda f2) and compares with the explicit M~ at
/// t = t1 / t2, mu = phi (requires t2 = 1 for the comparison).
GaugeReport gauge_check(const MCoefficients<double>& m, double lambda, const PviParams& pr);

enum class DerivativeMode { kAnalytic, kFiniteDifference };

struct CompatibilityOptions {
  LaxOptions lax{};
  DerivativeMode mode = DerivativeMode::kAnalytic;
  double fd_step = 1e-6;
  std::optional<Velocity> velocity{};  // overrides rhs_symmetric for (dlambda/dt, dmu/dt)
};

struct CompatibilityReport {
  double loop_residual = 0.0;  // max |R| over loop entries
  double k_residual = 0.0;     // K-coefficient of R
  double d_residual = 0.0;     // d-coefficient of R
  bool m_borel = false;
  bool b_borel = false;
};

/// R = dM~/dt - [d_s, B~] + [M~, B~].
CompatibilityReport compatibility_residual(const PviState& st, const PviParams& pr,
                                           const CompatibilityOptions& opts = {});

/// dM~/dt as an element (analytic chain rule or central difference).
NumericElement m_tilde_time_derivative(const PviState& st, const PviParams& pr,
                                       const Velocity& v, DerivativeMode mode = DerivativeMode::kAnalytic,
                                       double fd_step = 1e-6);

/// Fills Sample::lax_residual for every sample and returns the maximum.
double lax_scan(Trajectory& traj, const CompatibilityOptions& opts = {});

}  // namespace dsp6
