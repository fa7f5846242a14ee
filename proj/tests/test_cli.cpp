#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

#include "app.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "sweep.hpp"
#include "table.hpp"

using namespace dsp6::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ds-painleve");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dsp6_cli_" + name + "_" + std::to_string(std::random_device{}()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Table parse_csv(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

}  // namespace

TEST_CASE("verify-algebra") {
  const Run ok = run({"verify-algebra"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("ALL PASS") != std::string::npos);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  const Run bad = run({"verify-algebra", "--inject-sign-flip"});
  CHECK(bad.code == kExitVerifyFailed);
  CHECK(bad.out.find("FAIL [Lambda_{1,1}, Lambda_{-1,1}] = K") != std::string::npos);
  CHECK(bad.out.find("SOME CHECKS FAILED") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"solve", "--no-such-flag"}).code == kExitUsage);
  CHECK(run({"solve", "--alphas", "1,2"}).code == kExitUsage);
  CHECK(run({"solve", "--normalization", "other"}).code == kExitUsage);
  CHECK(run({"solve", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"backlund"}).code == kExitUsage);
  CHECK(run({"backlund", "--word", "0,7"}).code == kExitUsage);
  CHECK(run({"convert", "--input", "/nonexistent/file.csv"}).code == kExitUsage);
}

TEST_CASE("solve writes the documented CSV columns") {
  const Run r = run({"solve", "--lax", "--check-hamiltonian"});
  REQUIRE(r.code == kExitOk);
  const Table t = parse_csv(r.out);
  CHECK(t.columns == trajectory_columns());
  REQUIRE(t.rows.size() > 10);
  const auto it = column_index(t, "t");
  CHECK(t.rows.front()[it] == 3.0);
  CHECK(t.rows.back()[it] == 3.5);
  const auto il = column_index(t, "lax_residual");
  for (const auto& row : t.rows) CHECK(row[il] < 1e-7);
  // The outer F columns are lambda minus the pole positions.
  const auto ilam = column_index(t, "lambda");
  const auto iF0 = column_index(t, "F0");
  for (const auto& row : t.rows) CHECK(row[iF0] == doctest::Approx(row[ilam] + row[it]));
  CHECK(r.err.find("stop_reason: completed") != std::string::npos);
  CHECK(r.err.find("hamiltonian_gap_max") != std::string::npos);
}

TEST_CASE("uniform sampling and JSON output") {
  const Run r = run({"solve", "--dt", "0.05", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["columns"].get<std::vector<std::string>>() == trajectory_columns());
  REQUIRE(j["rows"].size() == 11);
  CHECK(j["rows"][10][0].get<double>() == doctest::Approx(3.5));
  CHECK(j["rows"][0][column_index(Table{trajectory_columns(), {}, {}, {}}, "lax_residual")].is_null());
}

TEST_CASE("configuration file and overrides") {
  const fs::path dir = scratch_dir("config");
  const fs::path cfg = dir / "run.json";
  std::ofstream(cfg) << R"({"alphas": [0.5, 0.5, 0.5, 0.5], "initial": {"t": 3.0, "lambda": 0.2, "mu": 0.6},
                           "t_end": 3.2, "format": "csv"})";
  const RunConfig loaded = load_config(cfg.string());
  CHECK(loaded.alphas == std::array<double, 4>{0.5, 0.5, 0.5, 0.5});
  CHECK(loaded.t_end == 3.2);
  CHECK(loaded.params()[2] == doctest::Approx(1.0));
  CHECK(config_from_json(to_json(loaded)).t_end == loaded.t_end);

  const Run r = run({"solve", "--config", cfg.string(), "--t-end", "3.3", "--no-output"});
  CHECK(r.code == kExitOk);
  // Without a table on stdout the summary goes there.
  CHECK(r.out.find("t_reached: 3.3") != std::string::npos);

  std::ofstream(dir / "bad.json") << R"({"alphas": [1, 2]})";
  CHECK(run({"solve", "--config", (dir / "bad.json").string()}).code == kExitUsage);
  fs::remove_all(dir);
}

TEST_CASE("partial runs and verification failures") {
  // A movable pole lies near t = 3.26 for this start.
  const Run pole = run({"solve", "--lambda0", "2", "--t-end", "5", "--no-output"});
  CHECK(pole.code == kExitPartial);
  CHECK(pole.out.find("stop_reason: blow-up") != std::string::npos);

  const Run sing = run({"solve", "--t0", "2.3", "--t-end", "2.6", "--no-output"});
  CHECK(sing.code == kExitPartial);
  CHECK(sing.out.find("singular-time") != std::string::npos);

  CHECK(run({"verify-lax"}).code == kExitOk);
  CHECK(run({"verify-lax", "--x-form", "plus-sum"}).code == kExitVerifyFailed);
  CHECK(run({"verify-lax", "--normalization", "sec4"}).code == kExitVerifyFailed);
}

TEST_CASE("convert and backlund") {
  const fs::path dir = scratch_dir("convert");
  const fs::path traj = dir / "traj.csv";
  REQUIRE(run({"solve", "-o", traj.string()}).code == kExitOk);

  const Run cv = run({"convert", "--input", traj.string()});
  CHECK(cv.code == kExitOk);
  const Table st = parse_csv(cv.out);
  CHECK(st.columns == std::vector<std::string>{"t", "s", "q", "p"});
  CHECK(cv.out.find("# s(t=2) = -49") != std::string::npos);

  const Run id = run({"backlund", "--word", "2,2"});
  REQUIRE(id.code == kExitOk);
  const Table bt = parse_csv(id.out);
  const auto il = column_index(bt, "lambda");
  const auto ili = column_index(bt, "lambda_img");
  const auto im = column_index(bt, "mu");
  const auto imi = column_index(bt, "mu_img");
  for (const auto& row : bt.rows) {
    CHECK(std::abs(row[il] - row[ili]) < 1e-12 * (1.0 + std::abs(row[il])));
    CHECK(std::abs(row[im] - row[imi]) < 1e-12 * (1.0 + std::abs(row[im])));
  }

  const Run trivial = run({"backlund", "--word", "0", "--alphas", "0,0.7,-0.4,1.1"});
  REQUIRE(trivial.code == kExitOk);
  for (const auto& row : parse_csv(trivial.out).rows) CHECK(row[il] == row[ili]);

  CHECK(run({"backlund", "--word", "0,2,1,2"}).code == kExitOk);
  fs::remove_all(dir);
}

TEST_CASE("parameter sweep") {
  CHECK(parse_sweep("a0=0.1,0.2;a4=1,2").size() == 2);
  CHECK_THROWS(parse_sweep("a2=0.1"));
  CHECK_THROWS(parse_sweep("a0="));
  const fs::path dir = scratch_dir("sweep");
  const Run r = run({"solve", "--sweep", "a0=0.1,0.2;a4=1,2", "--output-dir", dir.string(), "--t-end", "3.2"});
  CHECK(r.code == kExitOk);
  for (int i = 0; i < 4; ++i) CHECK(fs::exists(dir / ("case_000" + std::to_string(i) + ".csv")));
  std::ifstream idx(dir / "index.json");
  const auto index = nlohmann::json::parse(idx);
  REQUIRE(index.size() == 4);
  CHECK(index[3]["config"]["alphas"][0].get<double>() == 0.2);
  CHECK(index[3]["config"]["alphas"][3].get<double>() == 2.0);
  for (const auto& e : index) CHECK(e["exit_code"].get<int>() == 0);
  fs::remove_all(dir);
}

TEST_CASE("table helpers") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_number(std::nan("")) == "nan");
  Table t{{"a", "b"}, {{1.0, 2.5}, {3.0, std::nan("")}}, {"note"}, {}};
  std::ostringstream os;
  write_table(os, t, OutputFormat::kCsv);
  const Table back = parse_csv(os.str());
  CHECK(back.columns == t.columns);
  CHECK(back.rows[0] == t.rows[0]);
  CHECK(std::isnan(back.rows[1][1]));
  CHECK_THROWS(column_index(t, "c"));
}

TEST_CASE("finite-difference weights") {
  // Weights reproduce the derivative of every polynomial of degree < n exactly.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> nodes{-2.0, -1.0 + 0.3 * u(rng), 0.0, 1.0 + 0.3 * u(rng), 2.5};
    const double x0 = 0.1 * u(rng);
    const auto w = derivative_weights(x0, nodes);
    for (int deg = 0; deg < 5; ++deg) {
      double approx = 0.0;
      for (std::size_t k = 0; k < nodes.size(); ++k) approx += w[k] * std::pow(nodes[k], deg);
      const double exact = deg == 0 ? 0.0 : deg * std::pow(x0, deg - 1);
      CHECK(approx == doctest::Approx(exact).epsilon(1e-10).scale(1.0));
    }
  }
}
