#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace dsp6::cli {

std::vector<SweepAxis> parse_sweep(const std::string& spec) {
  std::vector<SweepAxis> axes;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos || eq != 2 || part[0] != 'a') {
      throw Error(ErrorCode::kInvalidArgument, "sweep axis must look like a0=v1,v2: '" + part + "'");
    }
    SweepAxis axis;
    axis.node = part[1] - '0';
    if (axis.node != 0 && axis.node != 1 && axis.node != 3 && axis.node != 4) {
      throw Error(ErrorCode::kInvalidArgument, "sweep node must be 0, 1, 3 or 4");
    }
    std::stringstream vs(part.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ',')) {
      try {
        axis.values.push_back(std::stod(v));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidArgument, "bad sweep value '" + v + "'");
      }
    }
    if (axis.values.empty()) throw Error(ErrorCode::kInvalidArgument, "empty sweep axis");
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw Error(ErrorCode::kInvalidArgument, "empty sweep specification");
  return axes;
}

std::size_t sweep_threads() {
  if (const char* env = std::getenv("DS_PAINLEVE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_sweep(const SolveRequest& base, const std::vector<SweepAxis>& axes,
              const std::string& output_dir, std::ostream& diag) {
  std::vector<RunConfig> cases{base.cfg};
  for (const auto& axis : axes) {
    std::vector<RunConfig> next;
    for (const auto& c : cases)
      for (double v : axis.values) {
        RunConfig r = c;
        const std::size_t slot = axis.node == 0 ? 0 : axis.node == 1 ? 1 : axis.node == 3 ? 2 : 3;
        r.alphas[slot] = v;
        next.push_back(r);
      }
    cases = std::move(next);
  }
  std::filesystem::create_directories(output_dir);

  struct Outcome {
    std::string file;
    int exit_code = kExitOk;
    std::vector<std::string> summary;
    std::string error;
  };
  std::vector<Outcome> outcomes(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      Outcome& o = outcomes[i];
      char name[32];
      std::snprintf(name, sizeof name, "case_%04zu.%s", i, to_string(cases[i].format).c_str());
      o.file = name;
      try {
        SolveRequest req = base;
        req.cfg = cases[i];
        const SolveResult res = run_solve(req);
        std::ofstream f(std::filesystem::path(output_dir) / o.file);
        write_table(f, res.table, req.cfg.format);
        o.exit_code = res.exit_code;
        o.summary = res.summary;
      } catch (const std::exception& e) {
        o.exit_code = kExitVerifyFailed;
        o.error = e.what();
      }
    }
  };
  const std::size_t nthreads = std::min(sweep_threads(), cases.size());
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  int worst = kExitOk;
  nlohmann::json index = nlohmann::json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (o.exit_code == kExitVerifyFailed || (o.exit_code == kExitPartial && worst == kExitOk)) worst = o.exit_code;
    nlohmann::json entry{{"case", i}, {"file", o.file}, {"config", to_json(cases[i])}, {"exit_code", o.exit_code}};
    if (!o.error.empty()) entry["error"] = o.error;
    entry["summary"] = o.summary;
    index.push_back(std::move(entry));
  }
  std::ofstream idx(std::filesystem::path(output_dir) / "index.json");
  idx << index.dump(1) << '\n';
  diag << "sweep_cases: " << cases.size() << '\n' << "threads: " << nthreads << '\n';
  return worst;
}

}  // namespace dsp6::cli
