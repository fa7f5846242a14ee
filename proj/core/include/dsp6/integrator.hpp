#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dsp6/painleve.hpp"

namespace dsp6 {

enum class StopReason { kCompleted, kBlowUp, kSingularTime, kStepUnderflow };

std::string to_string(StopReason r);

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double blowup = 1e8;            // |lambda| or |mu| beyond this stops the run
  double singular_margin = 1e-6;  // closest approach to the singular set
  double initial_step = 0.0;      // 0 selects a step from the initial derivative
  double max_step = 1e-2;         // keeps the 4th-order dense output accurate to ~1e-8
  std::size_t max_steps = 2'000'000;
  bool cross_check = true;        // j-consistency of the symmetric form on every step
};

struct Sample {
  double t = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double hprime = std::numeric_limits<double>::quiet_NaN();
  double lax_residual = std::numeric_limits<double>::quiet_NaN();
};

/// Accepted integration steps with dense output between them.
class Trajectory {
 public:
  const std::vector<Sample>& samples() const { return samples_; }
  std::vector<Sample>& samples() { return samples_; }
  StopReason stop_reason() const { return reason_; }
  bool completed() const { return reason_ == StopReason::kCompleted; }
  const PviParams& params() const { return params_; }
  double t_begin() const { return samples_.front().t; }
  double t_end() const { return samples_.back().t; }
  double max_cross_check() const { return max_cross_check_; }

  /// Dense-output state at any t between t_begin and t_end.
  PviState at(double t) const;

  /// n states uniformly spaced over [t_begin, t_end] (inclusive).
  std::vector<PviState> resample(std::size_t n) const;

 private:
  friend Trajectory integrate(const PviState&, const PviParams&, double, const IntegrateOptions&);

  struct Segment {
    double t0 = 0.0;
    double h = 0.0;
    std::array<std::array<double, 2>, 5> dense{};
  };

  std::vector<Sample> samples_;
  std::vector<Segment> segments_;
  StopReason reason_ = StopReason::kCompleted;
  PviParams params_;
  double max_cross_check_ = 0.0;
};

/// Points where t(t^2 - 1) Theta_0(t) = 0: {0, +-1, 1 +- sqrt2, -1 +- sqrt2}.
std::array<double, 7> singular_times();
double distance_to_singular(double t);

/// Adaptive Dormand-Prince 5(4) integration of the symmetric form from st0 to t_end.
/// Runs that hit blow-up, the singular set or step underflow return a partial
/// trajectory with the corresponding stop reason.
Trajectory integrate(const PviState& st0, const PviParams& pr, double t_end,
                     const IntegrateOptions& opts = {});

/// Path t -> (lambda, mu) used by the finite-difference defect checks.
using StatePath = std::function<PviState(double)>;

/// Max over sample points of |d/dt path - rhs_symmetric(path)| using a 5-point stencil.
double vector_field_defect(const StatePath& path, const PviParams& pr,
                           const std::vector<double>& times, double h = 1e-3);

struct PushforwardReport {
  std::size_t points = 0;
  double max_defect_q = 0.0;
  double max_defect_p = 0.0;
  double max_defect = 0.0;
  double nominal_alpha1_coeff = 0.0;  // a1 - 4
  double fitted_alpha1_coeff = 0.0;   // least-squares value for that coefficient
  double max_defect_fitted = 0.0;
};

/// Maps the trajectory to (s, q, p) and checks dq/ds = dH/dp, dp/ds = -dH/dq with
/// dq/dt from a 5-point stencil on the dense output and ds/dt analytic.
PushforwardReport pushforward_check(const Trajectory& traj, std::size_t points = 200,
                                    double h = 1e-3);

}  // namespace dsp6
