#include "dsp6/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "dsp6/dopri5.hpp"

namespace dsp6 {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kCompleted: return "completed";
    case StopReason::kBlowUp: return "blow-up";
    case StopReason::kSingularTime: return "singular-time";
    case StopReason::kStepUnderflow: return "step-underflow";
  }
  return "unknown";
}

std::array<double, 7> singular_times() {
  const double r2 = std::sqrt(2.0);
  return {-1.0 - r2, -1.0, 1.0 - r2, 0.0, r2 - 1.0, 1.0, 1.0 + r2};
}

double distance_to_singular(double t) {
  double d = std::numeric_limits<double>::infinity();
  for (double s : singular_times()) d = std::min(d, std::abs(t - s));
  return d;
}

PviState Trajectory::at(double t) const {
  if (segments_.empty()) {
    if (!samples_.empty() && t == samples_.front().t) return {t, samples_.front().lambda, samples_.front().mu};
    throw Error(ErrorCode::kInvalidArgument, "empty trajectory");
  }
  const double dir = segments_.front().h > 0 ? 1.0 : -1.0;
  const double lo = std::min(t_begin(), t_end());
  const double hi = std::max(t_begin(), t_end());
  if (t < lo - 1e-12 * (1.0 + std::abs(lo)) || t > hi + 1e-12 * (1.0 + std::abs(hi))) {
    throw Error(ErrorCode::kInvalidArgument, "t outside trajectory range");
  }
  // Segments are ordered along the direction of integration.
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t, [dir](double v, const Segment& s) {
    return dir * v < dir * s.t0;
  });
  if (it != segments_.begin()) --it;
  const double theta = std::clamp((t - it->t0) / it->h, 0.0, 1.0);
  const auto y = Dopri5Step<2>::interpolate(it->dense, theta);
  return {t, y[0], y[1]};
}

std::vector<PviState> Trajectory::resample(std::size_t n) const {
  std::vector<PviState> out;
  if (n == 0) return out;
  if (n == 1) return {at(t_begin())};
  out.reserve(n);
  const double a = t_begin();
  const double b = t_end();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(at(t));
  }
  return out;
}

Trajectory integrate(const PviState& st0, const PviParams& pr, double t_end,
                     const IntegrateOptions& opts) {
  if (distance_to_singular(st0.t) < opts.singular_margin) {
    throw Error(ErrorCode::kSingularTime, "initial time on the singular set");
  }
  Trajectory traj;
  traj.params_ = pr;
  traj.samples_.push_back({st0.t, st0.lambda, st0.mu, hamiltonian_Hprime(st0, pr)});
  if (t_end == st0.t) return traj;

  const double dir = t_end > st0.t ? 1.0 : -1.0;
  // Stop short of the first singular time strictly between the endpoints.
  double target = t_end;
  bool stops_at_singular = false;
  for (double s : singular_times()) {
    if (dir * (s - st0.t) > 0 && dir * (t_end - s) > -opts.singular_margin) {
      const double candidate = s - dir * opts.singular_margin;
      if (dir * (candidate - target) < 0 || !stops_at_singular) {
        if (!stops_at_singular || dir * (candidate - target) < 0) target = candidate;
        stops_at_singular = true;
      }
    }
  }

  SymmetricOptions sym;
  sym.cross_check = false;
  auto f = [&](double t, const std::array<double, 2>& y) {
    const Velocity v = rhs_symmetric({t, y[0], y[1]}, pr, sym);
    return std::array<double, 2>{v.dlambda, v.dmu};
  };

  double t = st0.t;
  std::array<double, 2> y{st0.lambda, st0.mu};
  std::array<double, 2> k1 = f(t, y);
  double h = opts.initial_step;
  if (h <= 0.0) {
    const double scale = opts.atol + opts.rtol * std::max(std::abs(y[0]), std::abs(y[1]));
    const double dnorm = std::max(std::abs(k1[0]), std::abs(k1[1]));
    h = dnorm > 0 ? 0.01 * std::pow(scale / dnorm, 0.2) : 1e-3;
    h = std::min(h, std::abs(target - t));
  }
  if (opts.max_step > 0.0) h = std::min(std::abs(h), opts.max_step);
  h = dir * std::abs(h);

  traj.reason_ = StopReason::kCompleted;
  std::size_t steps = 0;
  while (dir * (target - t) > 0) {
    if (++steps > opts.max_steps) {
      traj.reason_ = StopReason::kStepUnderflow;
      break;
    }
    if (dir * (t + h - target) > 0) h = target - t;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
      traj.reason_ = StopReason::kStepUnderflow;
      break;
    }
    Dopri5Step<2> step;
    try {
      step = dopri5_step<2>(f, t, y, k1, h, opts.rtol, opts.atol);
    } catch (const Error&) {
      h *= 0.25;
      continue;
    }
    if (!std::isfinite(step.error_norm)) {
      h *= 0.25;
      continue;
    }
    if (step.error_norm <= 1.0) {
      const double t_new = dir * (target - (t + h)) <= 0 ? target : t + h;
      Trajectory::Segment seg;
      seg.t0 = t;
      seg.h = h;
      seg.dense = step.dense;
      t = t_new;
      y = step.y_new;
      k1 = step.k[6];
      if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || std::abs(y[0]) > opts.blowup ||
          std::abs(y[1]) > opts.blowup) {
        traj.reason_ = StopReason::kBlowUp;
        break;
      }
      traj.segments_.push_back(seg);
      const PviState st{t, y[0], y[1]};
      traj.samples_.push_back({t, y[0], y[1], hamiltonian_Hprime(st, pr)});
      if (opts.cross_check) {
        const double dev = symmetric_cross_check(st, pr);
        traj.max_cross_check_ = std::max(traj.max_cross_check_, dev / (1.0 + std::abs(k1[0])));
        if (dev > 1e-9 * (1.0 + std::abs(k1[0]))) {
          throw Error(ErrorCode::kConsistencyFailure, "theta(F_j) cross-check failed during integration");
        }
      }
    }
    const double err = std::max(step.error_norm, 1e-10);
    double fac = 0.9 * std::pow(err, -0.2);
    fac = std::clamp(fac, 0.2, step.error_norm <= 1.0 ? 5.0 : 1.0);
    h *= fac;
    if (opts.max_step > 0.0 && std::abs(h) > opts.max_step) h = dir * opts.max_step;
  }
  if (traj.reason_ == StopReason::kCompleted && stops_at_singular) traj.reason_ = StopReason::kSingularTime;
  return traj;
}

namespace {

template <class G>
double stencil(const G& g, double t, double h) {
  return (-g(t + 2 * h) + 8.0 * g(t + h) - 8.0 * g(t - h) + g(t - 2 * h)) / (12.0 * h);
}

}  // namespace

double vector_field_defect(const StatePath& path, const PviParams& pr,
                           const std::vector<double>& times, double h) {
  double worst = 0.0;
  for (double t : times) {
    const double dl = stencil([&](double s) { return path(s).lambda; }, t, h);
    const double dm = stencil([&](double s) { return path(s).mu; }, t, h);
    const Velocity v = rhs_symmetric(path(t), pr);
    worst = std::max({worst, std::abs(dl - v.dlambda), std::abs(dm - v.dmu)});
  }
  return worst;
}

PushforwardReport pushforward_check(const Trajectory& traj, std::size_t points, double h) {
  PushforwardReport rep;
  const PviParams& pr = traj.params();
  rep.nominal_alpha1_coeff = pr[1] - 4.0;
  const double a = std::min(traj.t_begin(), traj.t_end()) + 2.5 * h;
  const double b = std::max(traj.t_begin(), traj.t_end()) - 2.5 * h;
  if (b <= a || points == 0) return rep;

  struct Row {
    double fd_q, fd_p, base_q, base_p, slope_q, slope_p;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
    auto q_of = [&](double s) { return canonical_map(traj.at(s), pr).q; };
    auto p_of = [&](double s) { return canonical_map(traj.at(s), pr).p; };
    const double sdot = standard_time_derivative(t);
    const StandardState ss = canonical_map(traj.at(t), pr);
    const StandardVelocity v0 = rhs_standard(ss, pr, 0.0);
    const StandardVelocity v1 = rhs_standard(ss, pr, 1.0);
    rows.push_back({stencil(q_of, t, h) / sdot, stencil(p_of, t, h) / sdot, v0.dq, v0.dp,
                    v1.dq - v0.dq, v1.dp - v0.dp});
  }
  auto defects = [&](double c, double& dq, double& dp) {
    dq = dp = 0.0;
    for (const Row& r : rows) {
      dq = std::max(dq, std::abs(r.fd_q - (r.base_q + c * r.slope_q)));
      dp = std::max(dp, std::abs(r.fd_p - (r.base_p + c * r.slope_p)));
    }
  };
  double num = 0.0, den = 0.0;
  for (const Row& r : rows) {
    num += (r.fd_q - r.base_q) * r.slope_q + (r.fd_p - r.base_p) * r.slope_p;
    den += r.slope_q * r.slope_q + r.slope_p * r.slope_p;
  }
  rep.points = rows.size();
  rep.fitted_alpha1_coeff = den > 0 ? num / den : rep.nominal_alpha1_coeff;
  defects(rep.nominal_alpha1_coeff, rep.max_defect_q, rep.max_defect_p);
  rep.max_defect = std::max(rep.max_defect_q, rep.max_defect_p);
  double fq = 0.0, fp = 0.0;
  defects(rep.fitted_alpha1_coeff, fq, fp);
  rep.max_defect_fitted = std::max(fq, fp);
  return rep;
}

}  // namespace dsp6
