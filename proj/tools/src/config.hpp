#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "json.hpp"

#include "dsp6/lax.hpp"
#include "dsp6/painleve.hpp"

namespace dsp6::cli {

enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  std::array<double, 4> alphas{0.3, 0.7, -0.4, 1.1};  // a0, a1, a3, a4
  Normalization normalization = Normalization::kIntro4;
  double t0 = 3.0;
  double lambda0 = 0.4;
  double mu0 = 0.9;
  double t_end = 3.5;
  double rtol = 1e-10;
  double atol = 1e-12;
  double sample_interval = 0.0;  // 0 writes the accepted steps
  OutputFormat format = OutputFormat::kCsv;
  std::uint64_t seed = 1;
  XTildeForm x_form = XTildeForm::kMinusSum;

  PviParams params() const;
  PviState initial() const { return {t0, lambda0, mu0}; }
  IntegrateOptions integrate_options() const;
};

/// Missing keys keep their defaults; unknown values throw Error(kInvalidArgument).
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
nlohmann::json to_json(const RunConfig& cfg);

OutputFormat parse_format(const std::string& s);
std::string to_string(OutputFormat f);
XTildeForm parse_x_form(const std::string& s);

using dsp6::to_string;

}  // namespace dsp6::cli
