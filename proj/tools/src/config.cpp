#include "config.hpp"

#include <fstream>

namespace dsp6::cli {

PviParams RunConfig::params() const {
  return PviParams::from_outer(alphas[0], alphas[1], alphas[2], alphas[3], normalization);
}

IntegrateOptions RunConfig::integrate_options() const {
  IntegrateOptions o;
  o.rtol = rtol;
  o.atol = atol;
  return o;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw Error(ErrorCode::kInvalidArgument, "format must be csv or json, got '" + s + "'");
}

std::string to_string(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "json"; }

XTildeForm parse_x_form(const std::string& s) {
  if (s == "plus-sum") return XTildeForm::kPlusSum;
  if (s == "minus-sum") return XTildeForm::kMinusSum;
  throw Error(ErrorCode::kInvalidArgument, "x-form must be minus-sum or plus-sum, got '" + s + "'");
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig cfg) {
  try {
    if (j.contains("alphas")) {
      const auto& a = j.at("alphas");
      if (!a.is_array() || a.size() != 4) {
        throw Error(ErrorCode::kInvalidArgument, "alphas must hold a0, a1, a3, a4");
      }
      for (std::size_t i = 0; i < 4; ++i) cfg.alphas[i] = a[i].get<double>();
    }
    if (j.contains("normalization")) cfg.normalization = parse_normalization(j.at("normalization").get<std::string>());
    if (j.contains("initial")) {
      const auto& init = j.at("initial");
      cfg.t0 = init.value("t", cfg.t0);
      cfg.lambda0 = init.value("lambda", cfg.lambda0);
      cfg.mu0 = init.value("mu", cfg.mu0);
    }
    cfg.t_end = j.value("t_end", cfg.t_end);
    if (j.contains("tolerances")) {
      cfg.rtol = j.at("tolerances").value("rtol", cfg.rtol);
      cfg.atol = j.at("tolerances").value("atol", cfg.atol);
    }
    cfg.sample_interval = j.value("sample_interval", cfg.sample_interval);
    if (j.contains("format")) cfg.format = parse_format(j.at("format").get<std::string>());
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("x_form")) cfg.x_form = parse_x_form(j.at("x_form").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, "config '" + path + "': " + e.what());
  }
  return config_from_json(j, base);
}

nlohmann::json to_json(const RunConfig& cfg) {
  return {{"alphas", cfg.alphas},
          {"normalization", to_string(cfg.normalization)},
          {"initial", {{"t", cfg.t0}, {"lambda", cfg.lambda0}, {"mu", cfg.mu0}}},
          {"t_end", cfg.t_end},
          {"tolerances", {{"rtol", cfg.rtol}, {"atol", cfg.atol}}},
          {"sample_interval", cfg.sample_interval},
          {"format", to_string(cfg.format)},
          {"seed", cfg.seed},
          {"x_form", to_string(cfg.x_form)}};
}

}  // namespace dsp6::cli
