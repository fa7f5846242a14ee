#include "app.hpp"

#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "commands.hpp"
#include "sweep.hpp"

namespace dsp6::cli {

namespace {

/// Command-line overrides applied on top of the (optional) JSON config.
struct RunOverrides {
  std::string config_path;
  std::vector<double> alphas;
  std::optional<std::string> normalization, format, x_form;
  std::optional<double> t0, lambda0, mu0, t_end, rtol, atol, dt;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app->add_option("--alphas", alphas, "a0,a1,a3,a4")->delimiter(',')->expected(4);
    app->add_option("--normalization", normalization, "intro4 | sec4");
    app->add_option("--t0", t0, "initial time");
    app->add_option("--lambda0", lambda0, "initial lambda");
    app->add_option("--mu0", mu0, "initial mu");
    app->add_option("--t-end", t_end, "final time");
    app->add_option("--rtol", rtol, "relative tolerance");
    app->add_option("--atol", atol, "absolute tolerance");
    app->add_option("--dt", dt, "dense-output sampling interval (0: accepted steps)");
    app->add_option("--format", format, "csv | json");
    app->add_option("--seed", seed, "seed for randomized checks");
    app->add_option("--x-form", x_form, "minus-sum | plus-sum");
  }

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (!alphas.empty()) std::copy(alphas.begin(), alphas.end(), cfg.alphas.begin());
    if (normalization) cfg.normalization = parse_normalization(*normalization);
    if (format) cfg.format = parse_format(*format);
    if (x_form) cfg.x_form = parse_x_form(*x_form);
    if (t0) cfg.t0 = *t0;
    if (lambda0) cfg.lambda0 = *lambda0;
    if (mu0) cfg.mu0 = *mu0;
    if (t_end) cfg.t_end = *t_end;
    if (rtol) cfg.rtol = *rtol;
    if (atol) cfg.atol = *atol;
    if (dt) cfg.sample_interval = *dt;
    if (seed) cfg.seed = *seed;
    return cfg;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine D4 loop algebra and Painleve VI verification toolkit", "ds-painleve"};
  app.require_subcommand(1);

  VerifyAlgebraRequest va;
  auto* verify_algebra = app.add_subcommand("verify-algebra", "exact relation suites");
  verify_algebra->add_flag("--inject-sign-flip", va.inject_sign_flip, "test hook: corrupt Lambda_{1,1}")
      ->group("");

  SolveRequest solve_req;
  RunOverrides solve_ovr;
  std::string sweep_spec;
  std::string sweep_dir = "sweep_out";
  auto* solve = app.add_subcommand("solve", "integrate the symmetric form");
  solve_ovr.attach(solve);
  solve->add_option("-o,--output", solve_req.output, "trajectory file ('-' for stdout)");
  solve->add_flag("--lax", solve_req.lax, "compute the compatibility residual per sample");
  solve->add_flag("--check-hamiltonian", solve_req.check_hamiltonian, "compare with the Hamiltonian form");
  solve->add_flag("--roundtrip", solve_req.roundtrip, "integrate back and report the return error");
  solve->add_flag("--no-output", solve_req.no_output, "skip the trajectory file");
  solve->add_option("--lax-tol", solve_req.lax_tol, "compatibility tolerance");
  solve->add_option("--random-points", solve_req.random_points, "extra seeded compatibility checks");
  solve->add_option("--sweep", sweep_spec, "parameter grid, e.g. 'a0=0.1,0.2;a4=1,2'");
  solve->add_option("--output-dir", sweep_dir, "directory for sweep cases");

  SolveRequest lax_req;
  RunOverrides lax_ovr;
  auto* verify_lax = app.add_subcommand("verify-lax", "solve --lax --no-output");
  lax_ovr.attach(verify_lax);
  verify_lax->add_option("--lax-tol", lax_req.lax_tol, "compatibility tolerance");
  verify_lax->add_option("--random-points", lax_req.random_points, "extra seeded compatibility checks");

  BacklundRequest bk_req;
  RunOverrides bk_ovr;
  auto* backlund = app.add_subcommand("backlund", "apply a Weyl word along a trajectory");
  bk_ovr.attach(backlund);
  backlund->add_option("--word", bk_req.word, "comma-separated generators, e.g. 0,2,1,2")->required();
  backlund->add_option("-o,--output", bk_req.output, "output file ('-' for stdout)");
  backlund->add_option("--tol", bk_req.tol, "defect tolerance");

  ConvertRequest cv_req;
  RunOverrides cv_ovr;
  auto* convert = app.add_subcommand("convert", "map a stored trajectory to (s, q, p)");
  cv_ovr.attach(convert);
  convert->add_option("--input", cv_req.input, "trajectory CSV from solve")->required()->check(CLI::ExistingFile);
  convert->add_option("-o,--output", cv_req.output, "output file ('-' for stdout)");
  convert->add_option("--tol", cv_req.tol, "defect tolerance");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (verify_algebra->parsed()) return cmd_verify_algebra(va, out);
    if (solve->parsed()) {
      solve_req.cfg = solve_ovr.resolve();
      if (!sweep_spec.empty()) return run_sweep(solve_req, parse_sweep(sweep_spec), sweep_dir, out);
      std::ostream& diag = (solve_req.output == "-" && !solve_req.no_output) ? err : out;
      return cmd_solve(solve_req, out, diag);
    }
    if (verify_lax->parsed()) {
      lax_req.cfg = lax_ovr.resolve();
      lax_req.lax = true;
      lax_req.no_output = true;
      return cmd_solve(lax_req, out, out);
    }
    if (backlund->parsed()) {
      bk_req.cfg = bk_ovr.resolve();
      return cmd_backlund(bk_req, out, bk_req.output == "-" ? err : out);
    }
    if (convert->parsed()) {
      cv_req.cfg = cv_ovr.resolve();
      return cmd_convert(cv_req, out, cv_req.output == "-" ? err : out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::kInvalidArgument) return kExitUsage;
    if (e.code() == ErrorCode::kSingularTime) return kExitPartial;
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

}  // namespace dsp6::cli
