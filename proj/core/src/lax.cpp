#include "dsp6/lax.hpp"

#include <algorithm>
#include <cmath>

#include "dsp6/heisenberg.hpp"

namespace dsp6 {

std::string to_string(XTildeForm f) {
  return f == XTildeForm::kPlusSum ? "plus-sum" : "minus-sum";
}

template <class T>
LoopElement<T> assemble(const BorelCoefficients<T>& c) {
  const auto& tb = tables<T>();
  LoopElement<T> x = tb.K * c.K;
  for (std::size_t j = 0; j < 5; ++j) {
    if (!ScalarTraits<T>::is_zero(c.e[j])) x += tb.e[j] * c.e[j];
    if (j == 2) continue;
    if (!ScalarTraits<T>::is_zero(c.coroot[j])) x += tb.coroot[j] * c.coroot[j];
    if (!ScalarTraits<T>::is_zero(c.e2[j])) x += tb.e2[j] * c.e2[j];
  }
  return x;
}

template NumericElement assemble(const BorelCoefficients<double>&);
template AlgebraElement assemble(const BorelCoefficients<Rational>&);

NumericElement build_m_tilde(const PviState& st, const PviParams& pr) {
  return assemble(m_tilde_coefficients(st.t, st.lambda, st.mu, pr.alpha()));
}

NumericElement build_b_tilde(const PviState& st, const PviParams& pr, const LaxOptions& opts) {
  return assemble(b_tilde_coefficients(st.t, st.lambda, st.mu, pr.alpha(), opts));
}

template <class T>
LoopElement<T> build_m_raw(const MCoefficients<T>& m) {
  const auto& tb = tables<T>();
  LoopElement<T> x = tb.lambda_plus[0] * m.t1 + tb.lambda_plus[1] * m.t2;
  for (int j : kOuterNodes) {
    x += tb.coroot[static_cast<std::size_t>(j)] * m.kappa[outer_slot(j)];
  }
  x += tb.coroot[2] * m.eta + tb.e[2] * m.phi + tb.f[2] * m.psi;
  return x;
}

template LoopElement<Rational> build_m_raw(const MCoefficients<Rational>&);
template LoopElement<double> build_m_raw(const MCoefficients<double>&);

double f2_component(const NumericElement& x) { return x.cell(0)(2, 1); }

namespace {

template <class T>
bool borel_impl(const LoopElement<T>& x, double tol) {
  for (const auto& [deg, part] : degree_s(gradation(), x)) {
    if (deg < 0 && part.loop_max_abs() > tol) return false;
  }
  return ScalarTraits<T>::magnitude(x.cell(0)(2, 1)) <= tol;
}

}  // namespace

bool in_borel(const NumericElement& x, double tol) { return borel_impl(x, tol); }
bool in_borel(const AlgebraElement& x) { return borel_impl(x, 0.0); }

GaugeReport gauge_check(const MCoefficients<double>& m, double lambda, const PviParams& pr) {
  GaugeReport rep;
  const NumericElement conj = ad_exp_conjugate(tables<double>().f[2], -lambda, build_m_raw(m));
  rep.f2_component = f2_component(conj);
  rep.quadratic = m.phi * lambda * lambda + (2.0 * m.eta - m.kappa_sum()) * lambda - m.psi;
  rep.quadratic_mismatch = std::abs(rep.f2_component + rep.quadratic);
  rep.borel = in_borel(conj, 1e-9 * (1.0 + conj.loop_max_abs()));
  if (m.t2 == 1.0) {
    const NumericElement tilde = build_m_tilde({m.t1, lambda, m.phi}, pr);
    const NumericElement diff = conj - tilde;
    rep.tilde_loop_diff = diff.loop_max_abs();
    rep.tilde_k_diff = std::abs(diff.k());
  } else {
    rep.tilde_loop_diff = rep.tilde_k_diff = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

NumericElement m_tilde_time_derivative(const PviState& st, const PviParams& pr, const Velocity& v,
                                       DerivativeMode mode, double fd_step) {
  if (mode == DerivativeMode::kFiniteDifference) {
    const double h = fd_step;
    const PviState plus{st.t + h, st.lambda + h * v.dlambda, st.mu + h * v.dmu};
    const PviState minus{st.t - h, st.lambda - h * v.dlambda, st.mu - h * v.dmu};
    return (build_m_tilde(plus, pr) - build_m_tilde(minus, pr)) * (1.0 / (2.0 * h));
  }
  std::array<Dual, 5> a;
  for (std::size_t j = 0; j < 5; ++j) a[j] = Dual(pr.alpha()[j]);
  const auto cd = m_tilde_coefficients(Dual(st.t, 1.0), Dual(st.lambda, v.dlambda),
                                       Dual(st.mu, v.dmu), a);
  BorelCoefficients<double> c;
  c.K = cd.K.d;
  for (std::size_t j = 0; j < 5; ++j) {
    c.coroot[j] = cd.coroot[j].d;
    c.e[j] = cd.e[j].d;
    c.e2[j] = cd.e2[j].d;
  }
  return assemble(c);
}

CompatibilityReport compatibility_residual(const PviState& st, const PviParams& pr,
                                           const CompatibilityOptions& opts) {
  const Velocity v = opts.velocity ? *opts.velocity : rhs_symmetric(st, pr);
  const NumericElement M = build_m_tilde(st, pr);
  const NumericElement B = build_b_tilde(st, pr, opts.lax);
  const NumericElement dM = m_tilde_time_derivative(st, pr, v, opts.mode, opts.fd_step);
  const NumericElement R = dM - bracket(tables<double>().d_s, B) + bracket(M, B);
  CompatibilityReport rep;
  rep.loop_residual = R.loop_max_abs();
  rep.k_residual = R.k();
  rep.d_residual = R.d();
  rep.m_borel = in_borel(M);
  rep.b_borel = in_borel(B);
  return rep;
}

double lax_scan(Trajectory& traj, const CompatibilityOptions& opts) {
  double worst = 0.0;
  for (Sample& s : traj.samples()) {
    const auto rep = compatibility_residual({s.t, s.lambda, s.mu}, traj.params(), opts);
    s.lax_residual = rep.loop_residual;
    worst = std::max(worst, rep.loop_residual);
  }
  return worst;
}

}  // namespace dsp6
