#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "commands.hpp"

namespace dsp6::cli {

/// One grid axis: "a0=0.1,0.2,0.3" sets alpha_0 (outer nodes only) to each value.
struct SweepAxis {
  int node = 0;
  std::vector<double> values;
};

/// Parses "a0=0.1,0.2;a3=1,2" (axes separated by ';').
std::vector<SweepAxis> parse_sweep(const std::string& spec);

/// Thread cap: DS_PAINLEVE_THREADS if set to a positive integer, else the hardware count.
std::size_t sweep_threads();

/// Solves every grid case concurrently; writes case_NNNN.<fmt> per case and index.json last.
/// Returns the worst exit code (1 over 2 over 0).
int run_sweep(const SolveRequest& base, const std::vector<SweepAxis>& axes,
              const std::string& output_dir, std::ostream& diag);

}  // namespace dsp6::cli
