#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "dsp6/heisenberg.hpp"

namespace dsp6 {

/// Hierarchy coordinates of U_i = sum_j u_{j,i} a_j^v + x_i e_2 + y_i f_2, i = 1, 2.
/// Slot index 0 holds i = 1 and slot 1 holds i = 2.
template <class T>
struct ReductionCoefficients {
  std::array<std::array<T, 2>, 5> u{};  // u[j][i-1]
  std::array<T, 2> x{};
  std::array<T, 2> y{};
};

/// Data of M = sum_i t_{1,i} Lambda_{1,i} + sum_j kappa_j a_j^v + eta a_2^v + phi e_2 + psi f_2.
template <class T>
struct MCoefficients {
  std::array<T, 4> kappa{};  // nodes 0, 1, 3, 4
  T eta{0};
  T phi{0};
  T psi{0};
  T t1{0};
  T t2{0};

  T kappa_sum() const { return kappa[0] + kappa[1] + kappa[2] + kappa[3]; }
};

/// Index into MCoefficients::kappa for an outer node.
constexpr std::size_t outer_slot(int node) {
  return node == 0 ? 0 : node == 1 ? 1 : node == 3 ? 2 : 3;
}

/// Which sign of the normalization constraint (d_s|d U_j) +- (U_i|U_j)/2 = 0 to use.
enum class NormSign { kPlus, kMinus };

/// The six linear constraints equivalent to [L_{1,1},U_2] - [L_{1,2},U_1] = 0.
template <class T>
std::array<T, 6> residual_linear(const ReductionCoefficients<T>& rc);

/// [Lambda_{1,1}, U_2] - [Lambda_{1,2}, U_1].
template <class T>
LoopElement<T> residual_bracket(const ReductionCoefficients<T>& rc);

/// Builds U_1 (i = 0) or U_2 (i = 1).
template <class T>
LoopElement<T> build_u(const ReductionCoefficients<T>& rc, int i);

/// The similarity-reduced normalization 2(d_s|U_i) - sum_l t_l (U_i|U_l) = 0, scaled by 2.
template <class T>
std::array<T, 2> residual_norm(const ReductionCoefficients<T>& rc, const T& t1, const T& t2,
                               NormSign sign = NormSign::kPlus);

template <class T>
MCoefficients<T> m_from_rc(const ReductionCoefficients<T>& rc, const T& t1, const T& t2);

struct SolveOptions {
  bool strict = false;  // reject inputs off the eta-quadratic surface up front
  double tol = 1e-10;
  NormSign sign = NormSign::kPlus;
};

/// Recovers the hierarchy coordinates from (kappa, eta, phi, psi) at times (t1, t2).
template <class T>
ReductionCoefficients<T> solve_coefficients(const MCoefficients<T>& m,
                                            const SolveOptions& opts = {});

/// eta^2 - (k0+k1+k3+k4)(eta+1) + k0^2+k1^2+k3^2+k4^2 + phi psi.
template <class T>
T eta_quadratic_residual(const MCoefficients<T>& m);

/// Parameters alpha_j at the outer nodes 0, 1, 3, 4.
template <class T>
using OuterAlpha = std::array<T, 4>;

/// kappa_j = -(8 a_j - a0^2 - a1^2 - a3^2 - a4^2 - 4) / 16.
template <class T>
std::array<T, 4> kappa_from_alpha(const OuterAlpha<T>& alpha);

/// All real preimages of kappa_from_alpha (zero, one or two).
std::vector<OuterAlpha<double>> alpha_candidates_from_kappa(const std::array<double, 4>& kappa);

/// The preimage closest to `near`; throws kNonconvergence if none is real.
OuterAlpha<double> alpha_from_kappa(const std::array<double, 4>& kappa,
                                    const OuterAlpha<double>& near);

template <class T>
T alpha_square_sum(const OuterAlpha<T>& alpha) {
  T s(0);
  for (const auto& a : alpha) s += a * a;
  return s;
}

/// lambda = -(8 eta - sum a^2 + 4) / (8 phi), mu = phi.
template <class T>
std::pair<T, T> lambda_mu_from_m(const MCoefficients<T>& m, const OuterAlpha<T>& alpha);

/// Inverse: eta = -lambda mu + (sum a^2 - 4)/8, phi = mu, kappa from alpha and psi
/// chosen to put the point on the eta-quadratic surface (requires mu != 0).
template <class T>
MCoefficients<T> m_from_lambda_mu(const T& lambda, const T& mu, const OuterAlpha<T>& alpha,
                                  const T& t1, const T& t2);

/// Residuals of the gauge condition defining lambda:
///  [0] phi l^2 + (2 eta - sum kappa) l - psi,
///  [1] d_{1,1} l + x_1 l^2 - (u01+u11-2u21+u31+u41) l - y_1,
///  [2] same for i = 2 when d_{1,2} lambda is supplied.
template <class T>
std::array<std::optional<T>, 3> lambda_def_residual(const ReductionCoefficients<T>& rc,
                                                    const MCoefficients<T>& m, const T& lambda,
                                                    const T& dlambda1,
                                                    const std::optional<T>& dlambda2 = {});

}  // namespace dsp6
