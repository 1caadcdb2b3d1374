#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpf/table.hpp"

namespace lpf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

/// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "LPF_WORKERS";

struct RunConfig {
  std::string subcommand;
  std::vector<std::uint64_t> xs;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t n_max = 0;
  std::vector<double> deltas;
  std::uint64_t q = 4;
  std::uint64_t a = 1;
  std::uint64_t p_max = 100000;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t segment_size = std::size_t{1} << 20;
  unsigned workers = 1;
  std::string output;
  Format format = Format::csv;
  double tail_tolerance = 1e-3;
  bool prime_powers = false;
  bool records_only = false;
  bool grid_only = false;
};

/// Parses and dispatches one invocation. args excludes the program name.
/// Data goes to `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpf::cli
