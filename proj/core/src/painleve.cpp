#include "dsp6/painleve.hpp"

#include <algorithm>
#include <cmath>

namespace dsp6 {

std::string to_string(Normalization n) { return n == Normalization::kIntro4 ? "intro4" : "sec4"; }

Normalization parse_normalization(const std::string& tag) {
  if (tag == "intro4") return Normalization::kIntro4;
  if (tag == "sec4") return Normalization::kSec4;
  throw Error(ErrorCode::kInvalidArgument, "normalization must be intro4 or sec4, got '" + tag + "'");
}

PviParams PviParams::from_outer(double a0, double a1, double a3, double a4, Normalization n) {
  PviParams p;
  p.norm_ = n;
  p.alpha_ = {a0, a1, (null_sum_target(n) - a0 - a1 - a3 - a4) / 2.0, a3, a4};
  return p;
}

PviParams PviParams::from_all(const std::array<double, 5>& alpha, Normalization n) {
  double mag = 0.0;
  for (double a : alpha) mag += std::abs(a);
  if (std::abs(null_sum(alpha) - null_sum_target(n)) > 1e-12 * (1.0 + mag)) {
    throw Error(ErrorCode::kInvalidArgument,
                "a0 + a1 + 2a2 + a3 + a4 must equal " + std::to_string(null_sum_target(n)));
  }
  PviParams p;
  p.norm_ = n;
  p.alpha_ = alpha;
  return p;
}

FCoords f_coords(const PviState& st) { return f_coords(st.t, st.lambda, st.mu); }

Velocity rhs_symmetric(const PviState& st, const PviParams& pr, const SymmetricOptions& opts) {
  const FCoords fc = f_coords(st);
  const double th0 = fc.Theta[0];
  if (th0 == 0.0) throw Error(ErrorCode::kSingularTime, "Theta_0 = 0");
  const double common = symmetric_common(fc, pr.alpha());
  Velocity v;
  // theta(F_0) = common + Theta_0 and dF_0/dt = dlambda/dt + 1.
  v.dlambda = (common + th0) / th0 - 1.0;
  v.dmu = symmetric_mu_numerator(fc, pr.alpha()) / th0;
  if (opts.cross_check) {
    const double dev = symmetric_cross_check(st, pr);
    if (dev > opts.tol * (1.0 + std::abs(v.dlambda))) {
      throw Error(ErrorCode::kConsistencyFailure,
                  "theta(F_j) disagree by " + std::to_string(dev) + " at t = " + std::to_string(st.t));
    }
  }
  return v;
}

double symmetric_cross_check(const PviState& st, const PviParams& pr) {
  // F_j = lambda - pole_j, so dlambda/dt = theta(F_j)/Theta_0 + dpole_j/dt.
  const Dual t(st.t, 1.0);
  const auto pl = poles(t);
  const FCoords fc = f_coords(st);
  const double th0 = fc.Theta[0];
  const double common = symmetric_common(fc, pr.alpha());
  const double ref = (common + fc.Theta[0]) / th0 + pl[0].d;
  double dev = 0.0;
  for (int j : {1, 3, 4}) {
    const auto sj = static_cast<std::size_t>(j);
    const double dl = (common + fc.Theta[sj]) / th0 + pl[sj].d;
    dev = std::max(dev, std::abs(dl - ref));
  }
  return dev;
}

BiPoly<double> hamiltonian_numerator(double t, const PviParams& pr) {
  using P = BiPoly<double>;
  const auto pl = poles(t);
  std::array<P, 5> F;
  for (int j : kOuterNodes) {
    F[static_cast<std::size_t>(j)] = P::x() - P::constant(pl[static_cast<std::size_t>(j)]);
  }
  F[2] = P::y();
  const auto& a = pr.alpha();
  return F[0] * F[1] * F[2] * F[2] * F[3] * F[4] - (a[0] - 1.0) * (F[1] * F[2] * F[3] * F[4]) -
         (a[1] - 1.0) * (F[0] * F[2] * F[3] * F[4]) - (a[3] - 1.0) * (F[0] * F[1] * F[2] * F[4]) -
         (a[4] - 1.0) * (F[0] * F[1] * F[2] * F[3]) +
         a[2] * (F[0] * ((a[0] - 1.0) * F[0] + (a[1] + a[2] - 1.0) * F[1] +
                         (a[3] + a[2] - 1.0) * F[3] + (a[4] + a[2] - 1.0) * F[4]));
}

double hamiltonian_Hprime(const PviState& st, const PviParams& pr) {
  const FCoords fc = f_coords(st);
  if (fc.Theta[0] == 0.0) throw Error(ErrorCode::kSingularTime, "Theta_0 = 0");
  return hamiltonian_numerator(st.t, pr).eval(st.lambda, st.mu) / fc.Theta[0];
}

Velocity rhs_hamiltonian(const PviState& st, const PviParams& pr) {
  const FCoords fc = f_coords(st);
  if (fc.Theta[0] == 0.0) throw Error(ErrorCode::kSingularTime, "Theta_0 = 0");
  const BiPoly<double> h = hamiltonian_numerator(st.t, pr);
  return {h.dy().eval(st.lambda, st.mu) / fc.Theta[0], -h.dx().eval(st.lambda, st.mu) / fc.Theta[0]};
}

StandardState canonical_map(const PviState& st, const PviParams& pr) {
  const double t = st.t;
  const FCoords fc = f_coords(st);
  const double a = (t - 1.0) / (t + 1.0);
  const double c = 1.0 / t;
  const double qden = (a - c) * fc.F[0];
  const double pden = 4.0 * (t + a) * (t + c);
  if (qden == 0.0 || pden == 0.0) throw Error(ErrorCode::kSingularMap, "canonical map denominator");
  StandardState ss;
  ss.q = (t + a) * fc.F[4] / qden;
  ss.p = (a - c) * fc.F[0] * (fc.F[0] * fc.F[2] + pr[2]) / pden;
  ss.s = standard_time(t);
  return ss;
}

double standard_time_derivative(double t) { return standard_time(Dual(t, 1.0)).d; }

BiPoly<double> standard_hamiltonian_numerator(double s, const PviParams& pr,
                                              std::optional<double> alpha1_coeff) {
  using P = BiPoly<double>;
  const P q = P::x();
  const P p = P::y();
  const P one = P::constant(1.0);
  const P sc = P::constant(s);
  const auto& a = pr.alpha();
  const double c1 = alpha1_coeff.value_or(a[1] - 4.0);
  const P bracket_term = c1 * (q * (q - one)) + a[3] * (q * (q - sc)) + a[4] * ((q - one) * (q - sc));
  return q * (q - one) * (q - sc) * p * p - 0.25 * (bracket_term * p) +
         (a[2] * (a[0] + a[2]) / 16.0) * q;
}

StandardVelocity rhs_standard(const StandardState& ss, const PviParams& pr,
                              std::optional<double> alpha1_coeff) {
  const double den = ss.s * (ss.s - 1.0);
  if (den == 0.0) throw Error(ErrorCode::kSingularTime, "s in {0, 1}");
  const BiPoly<double> h = standard_hamiltonian_numerator(ss.s, pr, alpha1_coeff);
  return {h.dy().eval(ss.q, ss.p) / den, -h.dx().eval(ss.q, ss.p) / den};
}

}  // namespace dsp6
