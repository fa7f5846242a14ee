#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace dsp6::cli {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitPartial = 2, kExitUsage = 3 };

struct VerifyAlgebraRequest {
  bool inject_sign_flip = false;  // negates the e_0 term of Lambda_{1,1} (test hook)
};

/// One "PASS name" / "FAIL name (detail)" line per check.
int cmd_verify_algebra(const VerifyAlgebraRequest& req, std::ostream& out);

struct SolveRequest {
  RunConfig cfg;
  std::string output = "-";
  bool lax = false;
  bool check_hamiltonian = false;
  bool roundtrip = false;
  bool no_output = false;
  double lax_tol = 1e-7;
  double hamiltonian_tol = 1e-9;
  double roundtrip_tol = 1e-7;
  std::size_t random_points = 0;  // extra seeded on-manifold compatibility checks
};

struct SolveResult {
  Table table;
  std::vector<std::string> summary;  // "key: value" lines
  int exit_code = kExitOk;
};

SolveResult run_solve(const SolveRequest& req);

/// Runs run_solve, writes the table to req.output (unless no_output) and the summary to `diag`.
int cmd_solve(const SolveRequest& req, std::ostream& out, std::ostream& diag);

struct BacklundRequest {
  RunConfig cfg;
  std::string word;
  std::string output = "-";
  double tol = 1e-6;
};

int cmd_backlund(const BacklundRequest& req, std::ostream& out, std::ostream& diag);

struct ConvertRequest {
  RunConfig cfg;
  std::string input;
  std::string output = "-";
  double tol = 1e-6;
};

int cmd_convert(const ConvertRequest& req, std::ostream& out, std::ostream& diag);

/// Columns written by solve, in order.
const std::vector<std::string>& trajectory_columns();

/// First-derivative weights at x0 over arbitrary distinct nodes (Fornberg).
std::vector<double> derivative_weights(double x0, const std::vector<double>& nodes);

}  // namespace dsp6::cli
