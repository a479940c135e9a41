#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maxint/io.hpp"

namespace maxint {

struct RunConfig {
  /// solve | sweep | landmarks | limit | bprobe | isotropy
  std::string command;
  std::string preset;
  /// Inline JSON object or a path to a JSON file.
  std::string body;
  std::vector<double> radii;
  /// exact-2d | mc | auto (exact-2d when available, otherwise mc)
  std::string method = "auto";
  std::size_t mc_samples = 200000;
  std::optional<std::uint64_t> seed;
  double grad_tol = 1e-9;
  int max_iter = 2000;
  int multistart = 0;
  std::string out_dir = ".";
  double cluster_window_deg = 5.0;
  std::string side = "john";
  bool normalize = true;
  bool warm_start = true;
  std::vector<double> lambda;
  double t_min = -0.6;
  double t_max = 0.6;
  double t_step = 0.05;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotConverged = 2;

/// Parses "a,b,c".
std::vector<double> parse_number_list(const std::string& s);

/// Executes the command, writes JSON / CSV artifacts into out_dir and prints a
/// one-line summary to `out`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Command-line front end (flag parsing plus run).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maxint
