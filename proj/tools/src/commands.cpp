#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "dsp6/chevalley.hpp"
#include "dsp6/heisenberg.hpp"
#include "dsp6/weyl.hpp"

namespace dsp6::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string kv(const std::string& key, double v) { return key + ": " + format_number(v); }
std::string kv(const std::string& key, const std::string& v) { return key + ": " + v; }

void put_check(std::ostream& out, const CheckResult& r, bool& all) {
  out << (r.pass ? "PASS " : "FAIL ") << r.name;
  if (!r.pass && !r.detail.empty()) out << " (" << r.detail << ")";
  out << '\n';
  all = all && r.pass;
}

/// Writes to a file, or to `fallback` for "-".
template <class F>
void with_output(const std::string& path, std::ostream& fallback, F&& write) {
  if (path == "-") {
    write(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  write(f);
}

std::vector<double> sample_times(const Trajectory& traj, double interval) {
  std::vector<double> ts;
  if (interval <= 0.0) {
    for (const auto& s : traj.samples()) ts.push_back(s.t);
    return ts;
  }
  const double a = traj.t_begin();
  const double b = traj.t_end();
  const double dir = b >= a ? 1.0 : -1.0;
  const auto n = static_cast<std::size_t>(std::floor(std::abs(b - a) / interval + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) ts.push_back(a + dir * interval * static_cast<double>(k));
  if (std::abs(ts.back() - b) > 1e-12 * (1.0 + std::abs(b))) ts.push_back(b);
  return ts;
}

std::vector<double> trajectory_row(const PviState& st, const PviParams& pr, double lax_residual) {
  std::vector<double> row{st.t, st.lambda, st.mu};
  const FCoords fc = f_coords(st);
  for (double f : fc.F) row.push_back(f);
  double hp = kNaN;
  try {
    hp = hamiltonian_Hprime(st, pr);
  } catch (const Error&) {
  }
  row.push_back(hp);
  StandardState ss{kNaN, kNaN, kNaN};
  try {
    ss = canonical_map(st, pr);
  } catch (const Error&) {
  }
  row.push_back(ss.q);
  row.push_back(ss.p);
  row.push_back(ss.s);
  row.push_back(lax_residual);
  return row;
}


}  // namespace

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols{"t",  "lambda", "mu", "F0", "F1", "F2", "F3", "F4",
                                             "Hprime", "q", "p",  "s",  "lax_residual"};
  return cols;
}

std::vector<double> derivative_weights(double x0, const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::array<double, 2>> c(n, {0.0, 0.0});
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

int cmd_verify_algebra(const VerifyAlgebraRequest& req, std::ostream& out) {
  bool all = true;
  const ChevalleyBasis& cb = chevalley();
  for (const auto& r : verify_chevalley(cb)) put_check(out, r, all);
  for (const auto& r : verify_gradation(cb, gradation())) put_check(out, r, all);
  HeisenbergLevel plus = lambda_plus_one(cb);
  const HeisenbergLevel minus = lambda_minus_one(cb);
  if (req.inject_sign_flip) plus.basis[0] += cb.e[0] * Rational(2);  // -e0 becomes +e0
  for (const auto& r : verify_heisenberg(plus, minus, 3)) put_check(out, r, all);
  out << (all ? "ALL PASS" : "SOME CHECKS FAILED") << '\n';
  return all ? kExitOk : kExitVerifyFailed;
}

SolveResult run_solve(const SolveRequest& req) {
  SolveResult res;
  const RunConfig& cfg = req.cfg;
  const PviParams pr = cfg.params();
  Trajectory traj = integrate(cfg.initial(), pr, cfg.t_end, cfg.integrate_options());

  CompatibilityOptions copts;
  copts.lax.x_form = cfg.x_form;

  res.table.columns = trajectory_columns();
  res.table.meta["config"] = to_json(cfg);
  res.table.meta["stop_reason"] = to_string(traj.stop_reason());
  double lax_max = 0.0;
  double ham_max = 0.0;
  for (double t : sample_times(traj, cfg.sample_interval)) {
    const PviState st = traj.at(t);
    double lr = kNaN;
    if (req.lax) {
      lr = compatibility_residual(st, pr, copts).loop_residual;
      lax_max = std::max(lax_max, lr);
    }
    if (req.check_hamiltonian) {
      const Velocity a = rhs_symmetric(st, pr);
      const Velocity b = rhs_hamiltonian(st, pr);
      ham_max = std::max({ham_max, std::abs(a.dlambda - b.dlambda), std::abs(a.dmu - b.dmu)});
    }
    res.table.rows.push_back(trajectory_row(st, pr, lr));
  }

  bool failed = false;
  res.summary.push_back(kv("stop_reason", to_string(traj.stop_reason())));
  res.summary.push_back(kv("t_reached", traj.t_end()));
  res.summary.push_back(kv("samples", static_cast<double>(res.table.rows.size())));
  res.summary.push_back(kv("alpha2", pr[2]));
  if (req.lax) {
    res.summary.push_back(kv("x_form", to_string(cfg.x_form)));
    res.summary.push_back(kv("lax_residual_max", lax_max));
    failed = failed || !(lax_max < req.lax_tol);
    if (req.random_points > 0) {
      std::mt19937_64 rng(cfg.seed);
      std::uniform_real_distribution<double> u(-2.0, 2.0);
      std::uniform_real_distribution<double> tt(1.6, 5.0);
      double worst = 0.0;
      for (std::size_t k = 0; k < req.random_points; ++k) {
        const PviState st{(rng() & 1 ? 1.0 : -1.0) * tt(rng), u(rng), u(rng)};
        worst = std::max(worst, compatibility_residual(st, pr, copts).loop_residual);
      }
      res.summary.push_back(kv("lax_residual_random_max", worst));
      failed = failed || !(worst < req.lax_tol);
    }
    res.table.meta["lax_residual_max"] = lax_max;
  }
  if (req.check_hamiltonian) {
    res.summary.push_back(kv("hamiltonian_gap_max", ham_max));
    failed = failed || !(ham_max < req.hamiltonian_tol);
  }
  if (req.roundtrip && traj.samples().size() > 1) {
    const Sample& last = traj.samples().back();
    const Trajectory back =
        integrate({last.t, last.lambda, last.mu}, pr, cfg.t0, cfg.integrate_options());
    const Sample& r = back.samples().back();
    const double err = std::max(std::abs(r.lambda - cfg.lambda0), std::abs(r.mu - cfg.mu0));
    res.summary.push_back(kv("roundtrip_error", err));
    failed = failed || !back.completed() || !(err < req.roundtrip_tol);
  }
  res.exit_code = failed ? kExitVerifyFailed : (traj.completed() ? kExitOk : kExitPartial);
  return res;
}

int cmd_solve(const SolveRequest& req, std::ostream& out, std::ostream& diag) {
  const SolveResult res = run_solve(req);
  if (!req.no_output) {
    with_output(req.output, out, [&](std::ostream& os) { write_table(os, res.table, req.cfg.format); });
  }
  for (const auto& line : res.summary) diag << line << '\n';
  return res.exit_code;
}

int cmd_backlund(const BacklundRequest& req, std::ostream& out, std::ostream& diag) {
  const WeylWord word = parse_word(req.word);
  const RunConfig& cfg = req.cfg;
  const PviParams pr = cfg.params();
  const Trajectory traj = integrate(cfg.initial(), pr, cfg.t_end, cfg.integrate_options());

  Table table;
  table.columns = {"t", "lambda", "mu", "lambda_img", "mu_img"};
  PviParams image_params = pr;
  try {
    for (double t : sample_times(traj, cfg.sample_interval)) {
      const PviState st = traj.at(t);
      const auto [img, ip] = apply_word(word, st, pr);
      image_params = ip;
      table.rows.push_back({st.t, st.lambda, st.mu, img.lambda, img.mu});
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kOnMirror) throw;
    diag << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }

  // Defect of the image path against the transformed vector field.
  const double h = 1e-3;
  const double lo = std::min(traj.t_begin(), traj.t_end()) + 2.5 * h;
  const double hi = std::max(traj.t_begin(), traj.t_end()) - 2.5 * h;
  double defect = kNaN;
  if (hi > lo) {
    std::vector<double> ts;
    for (int k = 0; k < 200; ++k) ts.push_back(lo + (hi - lo) * k / 199.0);
    auto path = [&](double t) { return apply_word(word, traj.at(t), pr).first; };
    defect = vector_field_defect(path, image_params, ts, h);
  }

  table.meta["word"] = dsp6::to_string(word);
  table.meta["alpha"] = pr.alpha();
  table.meta["alpha_image"] = image_params.alpha();
  table.meta["stop_reason"] = to_string(traj.stop_reason());
  table.meta["defect"] = std::isfinite(defect) ? nlohmann::json(defect) : nlohmann::json(nullptr);
  with_output(req.output, out, [&](std::ostream& os) { write_table(os, table, cfg.format); });

  std::ostringstream alpha_img;
  for (int j = 0; j < 5; ++j) alpha_img << (j ? "," : "") << format_number(image_params[j]);
  diag << kv("word", dsp6::to_string(word)) << '\n'
       << kv("alpha_image", alpha_img.str()) << '\n'
       << kv("stop_reason", to_string(traj.stop_reason())) << '\n';
  if (std::isfinite(defect)) {
    diag << kv("defect", defect) << '\n';
  } else {
    diag << "defect: skipped (interval too short)\n";
  }
  if (std::isfinite(defect) && !(defect < req.tol)) return kExitVerifyFailed;
  return traj.completed() ? kExitOk : kExitPartial;
}

int cmd_convert(const ConvertRequest& req, std::ostream& out, std::ostream& diag) {
  std::ifstream in(req.input);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + req.input + "'");
  const Table src = read_csv(in);
  const std::size_t it = column_index(src, "t");
  const std::size_t il = column_index(src, "lambda");
  const std::size_t im = column_index(src, "mu");
  const PviParams pr = req.cfg.params();

  Table table;
  table.columns = {"t", "s", "q", "p"};
  const Rational s2 = standard_time(Rational(2));
  table.comments.push_back("s(t=2) = " + s2.get_str());
  table.meta["s_at_2"] = s2.get_str();
  std::vector<double> ts;
  std::vector<StandardState> mapped;
  for (const auto& row : src.rows) {
    const PviState st{row[it], row[il], row[im]};
    const StandardState ss = canonical_map(st, pr);
    ts.push_back(st.t);
    mapped.push_back(ss);
    table.rows.push_back({st.t, ss.s, ss.q, ss.p});
  }

  // dq/ds and dp/ds from 5-point stencils in t divided by the analytic ds/dt.
  double defect = 0.0;
  std::size_t checked = 0;
  for (std::size_t i = 2; i + 2 < ts.size(); ++i) {
    std::vector<double> nodes(ts.begin() + static_cast<long>(i) - 2, ts.begin() + static_cast<long>(i) + 3);
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      dmin = std::min(dmin, std::abs(nodes[k] - nodes[k - 1]));
      dmax = std::max(dmax, std::abs(nodes[k] - nodes[k - 1]));
    }
    if (dmin <= 0.0 || dmax / dmin > 10.0) continue;
    const auto w = derivative_weights(ts[i], nodes);
    double dq = 0.0;
    double dp = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
      dq += w[k] * mapped[i - 2 + k].q;
      dp += w[k] * mapped[i - 2 + k].p;
    }
    const double sdot = standard_time_derivative(ts[i]);
    const StandardVelocity v = rhs_standard(mapped[i], pr);
    defect = std::max({defect, std::abs(dq / sdot - v.dq), std::abs(dp / sdot - v.dp)});
    ++checked;
  }
  table.meta["checked_points"] = checked;
  if (checked > 0) table.meta["defect"] = defect;
  with_output(req.output, out, [&](std::ostream& os) { write_table(os, table, req.cfg.format); });

  diag << kv("s(t=2)", s2.get_str()) << '\n' << kv("points", static_cast<double>(ts.size())) << '\n';
  if (checked == 0) {
    diag << "defect: skipped (fewer than 5 usable samples)\n";
    return kExitOk;
  }
  diag << kv("checked_points", static_cast<double>(checked)) << '\n' << kv("defect", defect) << '\n';
  return defect < req.tol ? kExitOk : kExitVerifyFailed;
}

}  // namespace dsp6::cli
