// Acceptance criteria 1-10; one PASS/FAIL line each, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "reduction_support.hpp"
#include "support.hpp"

#include "dsp6/chevalley.hpp"
#include "dsp6/heisenberg.hpp"
#include "dsp6/integrator.hpp"
#include "dsp6/lax.hpp"
#include "dsp6/painleve.hpp"
#include "dsp6/reduction.hpp"
#include "dsp6/weyl.hpp"

using namespace dsp6;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.2e", v); }

const PviParams kParams = PviParams::from_outer(0.3, 0.7, -0.4, 1.1);
const PviState kStart{3.0, 0.4, 0.9};
constexpr double kTEnd = 3.5;

std::size_t count_failures(const std::vector<CheckResult>& rs, std::string& first) {
  std::size_t n = 0;
  for (const auto& r : rs)
    if (!r.pass) {
      if (n++ == 0) first = r.name;
    }
  return n;
}

Outcome criterion_algebra(double& seconds_limit) {
  seconds_limit = 5.0;
  const ChevalleyBasis cb = build_chevalley();
  auto rs = verify_chevalley(cb);
  const auto gr = verify_gradation(cb, build_gradation(cb));
  rs.insert(rs.end(), gr.begin(), gr.end());
  std::string first;
  const std::size_t bad = count_failures(rs, first);
  Outcome o{bad == 0, std::to_string(rs.size()) + " exact relations"};
  if (bad) o.detail += ", " + std::to_string(bad) + " failed (first: " + first + ")";
  return o;
}

Outcome criterion_heisenberg(double& seconds_limit) {
  seconds_limit = 10.0;
  const HeisenbergLevel plus = lambda_plus_one();
  const HeisenbergLevel minus = lambda_minus_one();
  auto rs = verify_heisenberg(plus, minus, 3);
  const int expected[9] = {0, 2, 0, 2, 1, 2, 0, 2, 0};
  std::ostringstream dims;
  for (int k = -4; k <= 4; ++k) {
    const auto n = centralizer_component(k).size();
    dims << (k == -4 ? "" : ",") << n;
    rs.push_back({"dim centralizer degree " + std::to_string(k),
                  static_cast<int>(n) == expected[k + 4], std::to_string(n)});
  }
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      rs.push_back({"pairing", central_pairing(plus.basis[i], minus.basis[j]) == Rational(i == j ? 1 : 0), ""});
  rs.push_back({"[Lambda_{1,1}, Lambda_{1,2}] = 0", bracket(plus.basis[0], plus.basis[1]).is_zero(), ""});
  std::string first;
  const std::size_t bad = count_failures(rs, first);
  Outcome o{bad == 0, std::to_string(rs.size()) + " exact checks, centralizer dims k=-4..4: " + dims.str()};
  if (bad) o.detail += ", " + std::to_string(bad) + " failed (first: " + first + ")";
  return o;
}

Outcome criterion_bracket_equivalence(double&) {
  using namespace dsp6::test;
  const auto linear_null = nullspace(linear_matrix());
  const auto bracket_null = nullspace(bracket_matrix());
  bool ok = linear_null.size() == bracket_null.size();
  std::size_t nonzero = 0;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    if (!residual_bracket(from_vector(combine(linear_null, rng))).is_zero()) ++nonzero;
    for (const auto& r : residual_linear(from_vector(combine(bracket_null, rng))))
      if (r != 0) ++nonzero;
  }
  ok = ok && nonzero == 0;
  return {ok, "solution spaces of dim " + std::to_string(linear_null.size()) + "/" +
                  std::to_string(bracket_null.size()) + ", 100 samples each way, " +
                  std::to_string(nonzero) + " nonzero residuals"};
}

double rc_magnitude(const ReductionCoefficients<double>& rc) {
  double big = 0.0;
  for (const auto& row : rc.u) big = std::max({big, std::abs(row[0]), std::abs(row[1])});
  for (std::size_t i = 0; i < 2; ++i) big = std::max({big, std::abs(rc.x[i]), std::abs(rc.y[i])});
  return big;
}

// Residuals are divided by (1 + max|coefficient|)^2, the size of the largest term in the
// quadratic normalization equations; raw maxima are reported alongside.
Outcome criterion_coefficient_solve(double&) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double res = 0.0;
  double raw = 0.0;
  double quad = 0.0;
  double roundtrip = 0.0;
  double largest = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    MCoefficients<double> m;
    for (auto& k : m.kappa) k = u(rng);
    m.eta = u(rng);
    m.phi = std::copysign(0.25 + std::abs(u(rng)), u(rng));
    m.t1 = std::copysign(0.25 + std::abs(u(rng)), u(rng));
    m.t2 = std::copysign(0.25 + std::abs(u(rng)), u(rng));
    m.psi = 0.0;
    m.psi = -eta_quadratic_residual(m) / m.phi;
    const double mscale = 1.0 + std::max({std::abs(m.psi), std::abs(m.phi), std::abs(m.eta)});
    quad = std::max(quad, std::abs(eta_quadratic_residual(m)) / (mscale * mscale));
    const auto rc = solve_coefficients(m);
    const double big = 1.0 + rc_magnitude(rc);
    largest = std::max(largest, big - 1.0);
    for (double r : residual_linear(rc)) {
      raw = std::max(raw, std::abs(r));
      res = std::max(res, std::abs(r) / big);
    }
    for (double r : residual_norm(rc, m.t1, m.t2)) {
      raw = std::max(raw, std::abs(r));
      res = std::max(res, std::abs(r) / (big * big));
    }
    const auto back = m_from_rc(rc, m.t1, m.t2);
    quad = std::max(quad, std::abs(eta_quadratic_residual(back)) / (mscale * mscale));
    const auto again = solve_coefficients(back);
    double d = 0.0;
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t i = 0; i < 2; ++i) d = std::max(d, std::abs(again.u[j][i] - rc.u[j][i]));
    for (std::size_t i = 0; i < 2; ++i) d = std::max({d, std::abs(again.x[i] - rc.x[i]), std::abs(again.y[i] - rc.y[i])});
    roundtrip = std::max(roundtrip, d / big);
  }
  return {res < 1e-10 && quad < 1e-10 && roundtrip < 1e-10,
          "100 instances: scaled residual " + sci(res) + " (raw " + sci(raw) + ", largest coefficient " +
              sci(largest) + "), eta quadratic " + sci(quad) + ", round trip " + sci(roundtrip)};
}

Outcome criterion_theta(double&) {
  const auto fc = f_coords(Rational(2), Rational(0), Rational(1));
  const bool exact = fc.Theta[0] == Rational(-35, 6) && fc.Theta[4] == Rational(-35, 24) &&
                     fc.Theta[4] == fc.Theta[0] * (1 + Rational(-1) - Rational(-1, 4));
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double t = test::regular_time(rng);
    const auto f = f_coords(PviState{t, 0.3, 0.0});
    const std::array<double, 5> tp{-1.0, 2.0 / ((t - 1) * (t - 1)), 0.0, 2.0 / ((t + 1) * (t + 1)), -1.0 / (t * t)};
    for (int j : kOuterNodes) {
      const auto sj = static_cast<std::size_t>(j);
      const double want = f.Theta[0] * (1.0 + tp[0] - tp[sj]);
      worst = std::max(worst, std::abs(f.Theta[sj] - want) / std::abs(want));
    }
  }
  return {exact && worst < 1e-12, "Theta_4(2) = " + to_string(fc.Theta[4]) + ", Theta_0(2) = " +
                                      to_string(fc.Theta[0]) + ", max rel err " + sci(worst) + " over 1000 t"};
}

Outcome criterion_hamiltonian(double&) {
  std::mt19937_64 rng(6);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PviParams pr = test::random_params(rng);
    const PviState st = test::random_state(rng);
    const Velocity a = rhs_symmetric(st, pr);
    const Velocity b = rhs_hamiltonian(st, pr);
    worst = std::max({worst, std::abs(a.dlambda - b.dlambda), std::abs(a.dmu - b.dmu)});
  }
  return {worst < 1e-9, "max |symmetric - Hamiltonian| = " + sci(worst) + " over 100 points"};
}

Outcome criterion_pushforward(double&) {
  const Trajectory traj = integrate(kStart, kParams, kTEnd);
  const PushforwardReport rep = pushforward_check(traj, 200);
  Outcome o{rep.max_defect < 1e-6, "defect " + sci(rep.max_defect) + " at " + std::to_string(rep.points) +
                                        " points; (a1-4) coefficient nominal " + fmt("%.6f", rep.nominal_alpha1_coeff) +
                                        ", fitted " + fmt("%.6f", rep.fitted_alpha1_coeff)};
  if (!o.pass && rep.max_defect_fitted < 1e-6)
    o.detail += "; failure isolated to the (a1-4) term (defect with fitted value " + sci(rep.max_defect_fitted) + ")";
  return o;
}

Outcome criterion_lax(double&) {
  // Exact Borel membership at rational points.
  std::mt19937_64 rng(8);
  bool borel = true;
  for (int trial = 0; trial < 20; ++trial) {
    std::array<Rational, 5> a;
    for (int j : kOuterNodes) a[static_cast<std::size_t>(j)] = test::small_rational(rng, 4, 3);
    a[2] = (Rational(4) - a[0] - a[1] - a[3] - a[4]) / 2;
    const Rational t(7, 2);
    const Rational lambda = test::small_rational(rng);
    const Rational mu = test::small_rational(rng) + Rational(1, 7);
    borel = borel && in_borel(assemble(m_tilde_coefficients(t, lambda, mu, a))) &&
            in_borel(assemble(b_tilde_coefficients(t, lambda, mu, a)));
  }

  double cross = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PviParams pr = test::random_params(rng);
    PviState st = test::random_state(rng);
    if (std::abs(st.mu) < 0.1) st.mu = 0.5;
    const auto m = m_from_lambda_mu(st.lambda, st.mu, pr.outer(), st.t, 1.0);
    cross = std::max(cross, gauge_check(m, st.lambda, pr).tilde_loop_diff);
  }

  std::ostringstream variants;
  std::string passing;
  double best = INFINITY;
  for (Normalization n : {Normalization::kIntro4, Normalization::kSec4}) {
    const PviParams pr = PviParams::from_outer(kParams[0], kParams[1], kParams[3], kParams[4], n);
    const Trajectory traj = integrate(kStart, pr, kTEnd);
    const auto states = traj.resample(1000);
    for (XTildeForm xf : {XTildeForm::kMinusSum, XTildeForm::kPlusSum}) {
      CompatibilityOptions opts;
      opts.lax.x_form = xf;
      double worst = 0.0;
      for (const PviState& st : states) worst = std::max(worst, compatibility_residual(st, pr, opts).loop_residual);
      const std::string tag = to_string(n) + "/" + to_string(xf);
      variants << " " << tag << "=" << sci(worst);
      if (worst < 1e-7) passing += (passing.empty() ? "" : ",") + tag;
      best = std::min(best, worst);
    }
  }
  return {borel && cross < 1e-9 && !passing.empty(),
          std::string("Borel exact ") + (borel ? "yes" : "no") + ", cross-construction " + sci(cross) +
              ", residual over 1000 samples:" + variants.str() + "; passing variant: " +
              (passing.empty() ? "none" : passing)};
}

Outcome criterion_weyl(double&) {
  const CoxeterReport cox = verify_coxeter(100, 9);
  const Trajectory traj = integrate(kStart, kParams, kTEnd);
  std::vector<double> times;
  for (int i = 0; i <= 100; ++i) times.push_back(3.01 + 0.48 * i / 100.0);

  std::vector<WeylWord> words{{0}, {1}, {2}, {3}, {4}};
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> gen(0, 4);
  std::uniform_int_distribution<int> len(2, 6);
  while (words.size() < 8) {
    WeylWord w(static_cast<std::size_t>(len(rng)));
    for (int& g : w) g = gen(rng);
    try {
      for (double t : times) (void)apply_word(w, traj.at(t), kParams, 1e-2);
      words.push_back(w);
    } catch (const Error&) {
      // Word meets a mirror along this trajectory; draw another.
    }
  }
  double worst = 0.0;
  std::ostringstream per;
  for (const WeylWord& w : words) {
    const PviParams img = apply_word(w, kStart, kParams).second;
    const double d = vector_field_defect([&](double t) { return apply_word(w, traj.at(t), kParams).first; }, img, times);
    worst = std::max(worst, d);
    per << " [" << to_string(w) << "]=" << sci(d);
  }
  return {cox.pass() && worst < 1e-6,
          std::to_string(cox.relations) + " relations x " + std::to_string(cox.trials) + " points: params " +
              (cox.params_exact ? "exact" : "inexact") + ", state residual " + sci(cox.max_state_residual) +
              "; Backlund defects" + per.str()};
}

Outcome criterion_reversibility(double&) {
  const Trajectory fwd = integrate(kStart, kParams, kTEnd);
  const Sample& e = fwd.samples().back();
  const Trajectory bwd = integrate({e.t, e.lambda, e.mu}, kParams, kStart.t);
  const Sample& b = bwd.samples().back();
  const double err = std::max(std::abs(b.lambda - kStart.lambda), std::abs(b.mu - kStart.mu));
  return {fwd.completed() && bwd.completed() && err < 1e-7,
          "return error " + sci(err) + " after " + std::to_string(fwd.samples().size() - 1) + "+" +
              std::to_string(bwd.samples().size() - 1) + " steps"};
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const std::vector<std::pair<std::string, std::function<Outcome(double&)>>> criteria{
      {"exact algebra relations", criterion_algebra},
      {"Heisenberg subalgebra", criterion_heisenberg},
      {"bracket constraint vs linear equations", criterion_bracket_equivalence},
      {"coefficient recovery", criterion_coefficient_solve},
      {"Theta consistency", criterion_theta},
      {"Hamiltonian equivalence", criterion_hamiltonian},
      {"canonical-map pushforward", criterion_pushforward},
      {"Lax pair", criterion_lax},
      {"Weyl group action", criterion_weyl},
      {"reversibility", criterion_reversibility},
  };
  const auto start = Clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    double limit = 0.0;
    Outcome o;
    try {
      o = criteria[i].second(limit);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit > 0.0 && secs >= limit) {
      o.pass = false;
      o.detail += "; runtime over " + fmt("%.0f", limit) + " s";
    }
    if (i + 1 == criteria.size()) {
      const double total = std::chrono::duration<double>(Clock::now() - start).count();
      o.detail += ", suite total " + fmt("%.2f", total) + " s";
      if (total >= 120.0) o.pass = false;
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
  }
  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
