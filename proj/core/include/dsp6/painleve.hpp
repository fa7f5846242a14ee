#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "dsp6/bipoly.hpp"
#include "dsp6/dual.hpp"
#include "dsp6/error.hpp"
#include "dsp6/reduction.hpp"
#include "dsp6/scalar.hpp"

namespace dsp6 {

/// Which constraint fixes alpha_2 from the outer parameters.
///  kIntro4: a0 + a1 + 2 a2 + a3 + a4 = 4.
///  kSec4:   a2 = -(a0 + a1 + a3 + a4 - 1) / 2, i.e. the same sum equals 1.
enum class Normalization { kIntro4, kSec4 };

std::string to_string(Normalization n);
Normalization parse_normalization(const std::string& tag);

inline double null_sum_target(Normalization n) { return n == Normalization::kIntro4 ? 4.0 : 1.0; }

template <class T>
T null_sum(const std::array<T, 5>& a) {
  return a[0] + a[1] + T(2) * a[2] + a[3] + a[4];
}

/// Parameters (a0, ..., a4) with a2 tied to the others by the normalization.
class PviParams {
 public:
  static PviParams from_outer(double a0, double a1, double a3, double a4,
                              Normalization n = Normalization::kIntro4);
  /// Accepts all five values; rejects a2 off the normalization surface.
  static PviParams from_all(const std::array<double, 5>& alpha,
                            Normalization n = Normalization::kIntro4);

  const std::array<double, 5>& alpha() const { return alpha_; }
  double operator[](int i) const { return alpha_[static_cast<std::size_t>(i)]; }
  Normalization normalization() const { return norm_; }
  OuterAlpha<double> outer() const { return {alpha_[0], alpha_[1], alpha_[3], alpha_[4]}; }

 private:
  std::array<double, 5> alpha_{};
  Normalization norm_ = Normalization::kIntro4;
};

/// Point of the reduced system at t = t_{1,1} with t_{1,2} = 1.
struct PviState {
  double t = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
};

template <class T>
struct FCoordsT {
  std::array<T, 5> F{};
  std::array<T, 5> Theta{};  // Theta[2] unused
};
using FCoords = FCoordsT<double>;

struct StandardState {
  double s = 0.0;
  double q = 0.0;
  double p = 0.0;
};

struct Velocity {
  double dlambda = 0.0;
  double dmu = 0.0;
};

template <class T>
bool value_is_zero(const T& x) {
  return ScalarTraits<T>::to_double(x) == 0.0;
}

/// Pole positions with F_j = lambda - pole_j: (-t, -(t+1)/(t-1), mu-slot, (t-1)/(t+1), 1/t).
template <class T>
std::array<T, 5> poles(const T& t) {
  if (value_is_zero(t) || value_is_zero(T(t - T(1))) || value_is_zero(T(t + T(1)))) {
    throw Error(ErrorCode::kSingularTime, "t in {0, 1, -1}");
  }
  return {-t, -(t + T(1)) / (t - T(1)), T(0), (t - T(1)) / (t + T(1)), T(1) / t};
}

template <class T>
FCoordsT<T> f_coords(const T& t, const T& lambda, const T& mu) {
  const auto pl = poles(t);
  FCoordsT<T> fc;
  for (int j : kOuterNodes) fc.F[static_cast<std::size_t>(j)] = lambda - pl[static_cast<std::size_t>(j)];
  fc.F[2] = mu;
  for (int j : kOuterNodes) {
    T prod(1);
    for (int i : kOuterNodes)
      if (i != j) prod = prod * (fc.F[static_cast<std::size_t>(j)] - fc.F[static_cast<std::size_t>(i)]);
    fc.Theta[static_cast<std::size_t>(j)] = prod;
  }
  return fc;
}

FCoords f_coords(const PviState& st);

/// 2F0F1F2F3F4 - (a0-1)F1F3F4 - (a1-1)F0F3F4 - (a3-1)F0F1F4 - (a4-1)F0F1F3,
/// i.e. theta(F_j) minus Theta_j.
template <class T>
T symmetric_common(const FCoordsT<T>& fc, const std::array<T, 5>& a) {
  const auto& F = fc.F;
  return T(2) * F[0] * F[1] * F[2] * F[3] * F[4] - (a[0] - T(1)) * F[1] * F[3] * F[4] -
         (a[1] - T(1)) * F[0] * F[3] * F[4] - (a[3] - T(1)) * F[0] * F[1] * F[4] -
         (a[4] - T(1)) * F[0] * F[1] * F[3];
}

/// Right-hand side of theta(F_2).
template <class T>
T symmetric_mu_numerator(const FCoordsT<T>& fc, const std::array<T, 5>& a) {
  const auto& F = fc.F;
  const T one(1), two(2);
  const T quad = -F[2] * F[2] *
                 (F[0] * F[1] * F[3] + F[0] * F[1] * F[4] + F[0] * F[3] * F[4] + F[1] * F[3] * F[4]);
  const T lin = F[2] * ((a[3] + a[4] - two) * F[0] * F[1] + (a[1] + a[4] - two) * F[0] * F[3] +
                        (a[1] + a[3] - two) * F[0] * F[4] + (a[0] + a[4] - two) * F[1] * F[3] +
                        (a[0] + a[3] - two) * F[1] * F[4] + (a[0] + a[1] - two) * F[3] * F[4]);
  const T con = -a[2] * ((a[0] + a[2] - one) * F[0] + (a[1] + a[2] - one) * F[1] +
                         (a[3] + a[2] - one) * F[3] + (a[4] + a[2] - one) * F[4]);
  return quad + lin + con;
}

/// (dlambda/dt, dmu/dt) from the symmetric form, generic in the scalar.
template <class T>
std::pair<T, T> symmetric_velocity(const T& t, const T& lambda, const T& mu,
                                   const std::array<T, 5>& a) {
  const auto fc = f_coords(t, lambda, mu);
  if (value_is_zero(fc.Theta[0])) throw Error(ErrorCode::kSingularTime, "Theta_0 = 0");
  const T common = symmetric_common(fc, a);
  return {common / fc.Theta[0], symmetric_mu_numerator(fc, a) / fc.Theta[0]};
}

struct SymmetricOptions {
  bool cross_check = true;
  double tol = 1e-9;
};

/// dlambda/dt from j = 0 (theta(F_0)/Theta_0 - 1); j = 1, 3, 4 recomputed as cross-checks.
Velocity rhs_symmetric(const PviState& st, const PviParams& pr, const SymmetricOptions& opts = {});

/// Max over j in {1,3,4} of |dlambda/dt(j) - dlambda/dt(0)|.
double symmetric_cross_check(const PviState& st, const PviParams& pr);

/// Theta_0 H' as a polynomial in (lambda, mu) at fixed t.
BiPoly<double> hamiltonian_numerator(double t, const PviParams& pr);

double hamiltonian_Hprime(const PviState& st, const PviParams& pr);

/// dlambda/dt = dH'/dmu, dmu/dt = -dH'/dlambda via term-wise differentiation.
Velocity rhs_hamiltonian(const PviState& st, const PviParams& pr);

/// s(t) = -((t + a)(b + c)) / ((t - b)(a - c)) with a = (t-1)/(t+1), b = (t+1)/(t-1), c = 1/t.
template <class T>
T standard_time(const T& t) {
  const T t1 = (t + T(1)) / (t - T(1));
  const T t3 = (t - T(1)) / (t + T(1));
  const T t4 = T(1) / t;
  const T den = (t - t1) * (t3 - t4);
  if (value_is_zero(den)) throw Error(ErrorCode::kSingularMap, "s(t) denominator vanishes");
  return -((t + t3) * (t1 + t4)) / den;
}

/// (lambda, mu, t) -> (q, p, s).
StandardState canonical_map(const PviState& st, const PviParams& pr);

/// ds/dt by forward-mode differentiation of standard_time.
double standard_time_derivative(double t);

/// s(s-1)H as a polynomial in (q, p). `alpha1_coeff` overrides the coefficient (a1 - 4).
BiPoly<double> standard_hamiltonian_numerator(double s, const PviParams& pr,
                                              std::optional<double> alpha1_coeff = {});

struct StandardVelocity {
  double dq = 0.0;
  double dp = 0.0;
};

StandardVelocity rhs_standard(const StandardState& ss, const PviParams& pr,
                              std::optional<double> alpha1_coeff = {});

}  // namespace dsp6
