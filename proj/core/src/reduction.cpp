#include "dsp6/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "dsp6/linalg.hpp"

namespace dsp6 {
namespace {

constexpr int kUnknowns = 14;
constexpr int kLinearRows = 13;

constexpr int u_index(int j, int i) { return 2 * j + i; }
constexpr int x_index(int i) { return 10 + i; }
constexpr int y_index(int i) { return 12 + i; }

template <class T>
ReductionCoefficients<T> unpack(const std::vector<T>& v) {
  ReductionCoefficients<T> rc;
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 2; ++i)
      rc.u[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          v[static_cast<std::size_t>(u_index(j, i))];
  for (int i = 0; i < 2; ++i) {
    rc.x[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(x_index(i))];
    rc.y[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(y_index(i))];
  }
  return rc;
}

double mag(const Rational& v) { return ScalarTraits<Rational>::magnitude(v); }
double mag(double v) { return std::abs(v); }

// (U_i | U_j) * 2, written through the outer-node differences 2u_l - u_2.
template <class T>
T form_twice(const ReductionCoefficients<T>& rc, std::size_t i, std::size_t j) {
  T s(0);
  for (int l : kOuterNodes) {
    const auto ul = static_cast<std::size_t>(l);
    s += (T(2) * rc.u[ul][i] - rc.u[2][i]) * (T(2) * rc.u[ul][j] - rc.u[2][j]);
  }
  s += T(2) * (rc.x[i] * rc.y[j] + rc.y[i] * rc.x[j]);
  return s;
}

}  // namespace

template <class T>
std::array<T, 6> residual_linear(const ReductionCoefficients<T>& rc) {
  const auto& u = rc.u;
  // u[j][0] = u_{j,1}, u[j][1] = u_{j,2}
  return {
      u[1][0] - T(2) * u[2][0] + u[3][0] + T(2) * u[4][0] - u[1][1] + u[3][1],
      u[1][0] - u[3][0] - T(2) * u[0][1] - u[1][1] + T(2) * u[2][1] - u[3][1],
      u[1][0] - u[3][0] + u[1][1] + u[3][1] - T(2) * u[4][1] + T(2) * rc.x[0],
      T(2) * u[0][0] - u[1][0] - u[3][0] - u[1][1] + u[3][1] + T(2) * rc.x[1],
      u[1][0] - u[3][0] + T(2) * u[0][1] - u[1][1] - u[3][1] + T(2) * rc.y[0],
      u[1][0] + u[3][0] - T(2) * u[4][0] - u[1][1] + u[3][1] + T(2) * rc.y[1],
  };
}

template <class T>
LoopElement<T> build_u(const ReductionCoefficients<T>& rc, int i) {
  const auto& tb = tables<T>();
  const auto si = static_cast<std::size_t>(i);
  LoopElement<T> out;
  for (std::size_t j = 0; j < 5; ++j) out += tb.coroot[j] * rc.u[j][si];
  out += tb.e[2] * rc.x[si];
  out += tb.f[2] * rc.y[si];
  return out;
}

template <class T>
LoopElement<T> residual_bracket(const ReductionCoefficients<T>& rc) {
  const auto& tb = tables<T>();
  return bracket(tb.lambda_plus[0], build_u(rc, 1)) - bracket(tb.lambda_plus[1], build_u(rc, 0));
}

template <class T>
std::array<T, 2> residual_norm(const ReductionCoefficients<T>& rc, const T& t1, const T& t2,
                               NormSign sign) {
  const T s = sign == NormSign::kPlus ? T(1) : T(-1);
  std::array<T, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    T lin(0);
    for (int l : kOuterNodes) lin += T(4) * rc.u[static_cast<std::size_t>(l)][i];
    out[i] = lin - s * (t1 * form_twice(rc, i, 0) + t2 * form_twice(rc, i, 1));
  }
  return out;
}

template <class T>
MCoefficients<T> m_from_rc(const ReductionCoefficients<T>& rc, const T& t1, const T& t2) {
  MCoefficients<T> m;
  for (int j : kOuterNodes) {
    const auto sj = static_cast<std::size_t>(j);
    m.kappa[outer_slot(j)] = t1 * rc.u[sj][0] + t2 * rc.u[sj][1];
  }
  m.eta = t1 * rc.u[2][0] + t2 * rc.u[2][1];
  m.phi = t1 * rc.x[0] + t2 * rc.x[1];
  m.psi = t1 * rc.y[0] + t2 * rc.y[1];
  m.t1 = t1;
  m.t2 = t2;
  return m;
}

template <class T>
T eta_quadratic_residual(const MCoefficients<T>& m) {
  T sq(0);
  for (const auto& k : m.kappa) sq += k * k;
  return m.eta * m.eta - m.kappa_sum() * (m.eta + T(1)) + sq + m.phi * m.psi;
}

template <class T>
ReductionCoefficients<T> solve_coefficients(const MCoefficients<T>& m, const SolveOptions& opts) {
  constexpr bool exact = std::is_same_v<T, Rational>;
  if (opts.strict) {
    const double scale = 1.0 + mag(m.eta * m.eta) + mag(m.phi * m.psi);
    if (mag(eta_quadratic_residual(m)) > opts.tol * scale) {
      throw Error(ErrorCode::kInconsistent, "(eta, phi, psi) off the reduced manifold");
    }
  }

  DenseMatrix<T> a(kLinearRows, kUnknowns);
  std::vector<T> b(kLinearRows, T(0));
  // Six bracket constraints, coefficients of residual_linear.
  for (int col = 0; col < kUnknowns; ++col) {
    std::vector<T> e(kUnknowns, T(0));
    e[static_cast<std::size_t>(col)] = T(1);
    const auto r = residual_linear(unpack(e));
    for (int row = 0; row < 6; ++row) a(row, col) = r[static_cast<std::size_t>(row)];
  }
  int row = 6;
  for (int j : kOuterNodes) {
    a(row, u_index(j, 0)) = m.t1;
    a(row, u_index(j, 1)) = m.t2;
    b[static_cast<std::size_t>(row++)] = m.kappa[outer_slot(j)];
  }
  a(row, u_index(2, 0)) = m.t1;
  a(row, u_index(2, 1)) = m.t2;
  b[static_cast<std::size_t>(row++)] = m.eta;
  a(row, x_index(0)) = m.t1;
  a(row, x_index(1)) = m.t2;
  b[static_cast<std::size_t>(row++)] = m.phi;
  a(row, y_index(0)) = m.t1;
  a(row, y_index(1)) = m.t2;
  b[static_cast<std::size_t>(row++)] = m.psi;

  const AffineSolution<T> sol = solve_affine(a, b, 1e-12);
  if (sol.rank < kLinearRows || sol.directions.size() != 1) {
    throw Error(ErrorCode::kSingularTimes, "linear system rank " + std::to_string(sol.rank));
  }
  const auto& p = sol.particular;
  const auto& n = sol.directions.front();
  auto at = [&](const T& s) {
    std::vector<T> v(kUnknowns);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k] + s * n[k];
    return residual_norm(unpack(v), m.t1, m.t2, opts.sign);
  };

  // Each normalization equation is a polynomial of degree <= 2 in the free parameter.
  const auto r0 = at(T(0));
  const auto rp = at(T(1));
  const auto rm = at(T(-1));
  std::array<T, 2> qa, qb, qc;
  for (std::size_t i = 0; i < 2; ++i) {
    qc[i] = r0[i];
    qb[i] = (rp[i] - rm[i]) / T(2);
    qa[i] = (rp[i] + rm[i]) / T(2) - r0[i];
  }
  const std::size_t pick = mag(qb[0]) >= mag(qb[1]) ? 0 : 1;
  const double slope_scale = 1.0 + mag(qc[pick]);
  if (mag(qb[pick]) <= (exact ? 0.0 : 1e-12 * slope_scale) &&
      mag(qa[pick]) <= (exact ? 0.0 : 1e-12 * slope_scale)) {
    throw Error(ErrorCode::kSingularTimes, "normalization does not fix the free direction");
  }

  T s(0);
  if (mag(qa[pick]) <= (exact ? 0.0 : 1e-13 * (mag(qb[pick]) + mag(qc[pick]) + 1.0))) {
    s = -qc[pick] / qb[pick];
  } else {
    if constexpr (exact) {
      throw Error(ErrorCode::kStructuralDefect, "normalization is not affine in the free direction");
    } else {
      // Quadratic branch: keep the root that best satisfies the other equation.
      const double disc = qb[pick] * qb[pick] - 4.0 * qa[pick] * qc[pick];
      if (disc < 0.0) throw Error(ErrorCode::kInconsistent, "normalization has no real root");
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (qb[pick] + std::copysign(sq, qb[pick]));
      const double s1 = q / qa[pick];
      const double s2 = q != 0.0 ? qc[pick] / q : s1;
      const std::size_t other = 1 - pick;
      auto other_res = [&](double v) { return std::abs(qa[other] * v * v + qb[other] * v + qc[other]); };
      s = other_res(s1) <= other_res(s2) ? s1 : s2;
    }
  }

  std::vector<T> v(kUnknowns);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k] + s * n[k];
  const ReductionCoefficients<T> rc = unpack(v);

  const auto check = residual_norm(rc, m.t1, m.t2, opts.sign);
  const std::size_t other = 1 - pick;
  if constexpr (exact) {
    if (sgn(check[other]) != 0) {
      throw Error(ErrorCode::kInconsistent, "normalization equations disagree");
    }
  } else {
    const double scale = 1.0 + mag(qb[other] * s) + mag(qc[other]) + mag(qa[other] * s * s);
    if (mag(check[other]) > 1e3 * opts.tol * scale) {
      throw Error(ErrorCode::kInconsistent, "normalization equations disagree (residual " +
                                                std::to_string(mag(check[other])) + ")");
    }
  }
  return rc;
}

template <class T>
std::array<T, 4> kappa_from_alpha(const OuterAlpha<T>& alpha) {
  const T sq = alpha_square_sum(alpha);
  std::array<T, 4> k;
  for (std::size_t j = 0; j < 4; ++j) k[j] = -(T(8) * alpha[j] - sq - T(4)) / T(16);
  return k;
}

std::vector<OuterAlpha<double>> alpha_candidates_from_kappa(const std::array<double, 4>& kappa) {
  // alpha_j = (S + c_j) / 8 with c_j = 4 - 16 kappa_j and S = sum alpha_j^2, hence
  // 4 S^2 + (2 sum c - 64) S + sum c^2 = 0.
  double sc = 0.0;
  double sc2 = 0.0;
  std::array<double, 4> c{};
  for (std::size_t j = 0; j < 4; ++j) {
    c[j] = 4.0 - 16.0 * kappa[j];
    sc += c[j];
    sc2 += c[j] * c[j];
  }
  const double qa = 4.0;
  const double qb = 2.0 * sc - 64.0;
  const double qc = sc2;
  const double disc = qb * qb - 4.0 * qa * qc;
  std::vector<OuterAlpha<double>> out;
  if (disc < 0.0) return out;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (qb + std::copysign(sq, qb));
  std::vector<double> roots;
  if (q != 0.0) {
    roots.push_back(q / qa);
    roots.push_back(qc / q);
  } else {
    roots.push_back(0.0);
  }
  if (roots.size() == 2 && roots[0] == roots[1]) roots.pop_back();
  for (double s : roots) {
    // One Newton polish on S for the round trip.
    for (int it = 0; it < 2; ++it) {
      const double f = qa * s * s + qb * s + qc;
      const double df = 2.0 * qa * s + qb;
      if (df != 0.0) s -= f / df;
    }
    OuterAlpha<double> a{};
    for (std::size_t j = 0; j < 4; ++j) a[j] = (s + c[j]) / 8.0;
    out.push_back(a);
  }
  return out;
}

OuterAlpha<double> alpha_from_kappa(const std::array<double, 4>& kappa,
                                    const OuterAlpha<double>& near) {
  const auto cands = alpha_candidates_from_kappa(kappa);
  if (cands.empty()) throw Error(ErrorCode::kNonconvergence, "kappa has no real alpha preimage");
  auto dist = [&near](const OuterAlpha<double>& a) {
    double d = 0.0;
    for (std::size_t j = 0; j < 4; ++j) d += (a[j] - near[j]) * (a[j] - near[j]);
    return d;
  };
  const auto& best = *std::min_element(cands.begin(), cands.end(), [&](const auto& x, const auto& y) {
    return dist(x) < dist(y);
  });
  const auto back = kappa_from_alpha(best);
  for (std::size_t j = 0; j < 4; ++j) {
    if (std::abs(back[j] - kappa[j]) > 1e-9 * (1.0 + std::abs(kappa[j]))) {
      throw Error(ErrorCode::kNonconvergence, "alpha preimage failed round trip");
    }
  }
  return best;
}

template <class T>
std::pair<T, T> lambda_mu_from_m(const MCoefficients<T>& m, const OuterAlpha<T>& alpha) {
  if (ScalarTraits<T>::is_zero(m.phi)) throw Error(ErrorCode::kPhiZero, "phi = 0");
  const T lambda = -(T(8) * m.eta - alpha_square_sum(alpha) + T(4)) / (T(8) * m.phi);
  return {lambda, m.phi};
}

template <class T>
MCoefficients<T> m_from_lambda_mu(const T& lambda, const T& mu, const OuterAlpha<T>& alpha,
                                  const T& t1, const T& t2) {
  if (ScalarTraits<T>::is_zero(mu)) throw Error(ErrorCode::kPhiZero, "mu = 0");
  MCoefficients<T> m;
  m.kappa = kappa_from_alpha(alpha);
  m.eta = -lambda * mu + (alpha_square_sum(alpha) - T(4)) / T(8);
  m.phi = mu;
  m.t1 = t1;
  m.t2 = t2;
  m.psi = T(0);
  // eta_quadratic_residual is affine in psi with slope phi.
  m.psi = -eta_quadratic_residual(m) / m.phi;
  return m;
}

template <class T>
std::array<std::optional<T>, 3> lambda_def_residual(const ReductionCoefficients<T>& rc,
                                                    const MCoefficients<T>& m, const T& lambda,
                                                    const T& dlambda1,
                                                    const std::optional<T>& dlambda2) {
  std::array<std::optional<T>, 3> out;
  const T l2 = lambda * lambda;
  out[0] = m.phi * l2 + (T(2) * m.eta - m.kappa_sum()) * lambda - m.psi;
  auto line = [&](std::size_t i, const T& dl) -> T {
    const auto& u = rc.u;
    return dl + rc.x[i] * l2 - (u[0][i] + u[1][i] - T(2) * u[2][i] + u[3][i] + u[4][i]) * lambda -
           rc.y[i];
  };
  out[1] = line(0, dlambda1);
  if (dlambda2) out[2] = line(1, *dlambda2);
  return out;
}

#define DSP6_INSTANTIATE(T)                                                                     \
  template std::array<T, 6> residual_linear(const ReductionCoefficients<T>&);                   \
  template LoopElement<T> residual_bracket(const ReductionCoefficients<T>&);                    \
  template LoopElement<T> build_u(const ReductionCoefficients<T>&, int);                        \
  template std::array<T, 2> residual_norm(const ReductionCoefficients<T>&, const T&, const T&,  \
                                          NormSign);                                            \
  template MCoefficients<T> m_from_rc(const ReductionCoefficients<T>&, const T&, const T&);     \
  template ReductionCoefficients<T> solve_coefficients(const MCoefficients<T>&,                 \
                                                       const SolveOptions&);                    \
  template T eta_quadratic_residual(const MCoefficients<T>&);                                   \
  template std::array<T, 4> kappa_from_alpha(const OuterAlpha<T>&);                             \
  template std::pair<T, T> lambda_mu_from_m(const MCoefficients<T>&, const OuterAlpha<T>&);     \
  template MCoefficients<T> m_from_lambda_mu(const T&, const T&, const OuterAlpha<T>&,          \
                                             const T&, const T&);                               \
  template std::array<std::optional<T>, 3> lambda_def_residual(                                 \
      const ReductionCoefficients<T>&, const MCoefficients<T>&, const T&, const T&,             \
      const std::optional<T>&);

DSP6_INSTANTIATE(Rational)
DSP6_INSTANTIATE(double)

#undef DSP6_INSTANTIATE

}  // namespace dsp6
