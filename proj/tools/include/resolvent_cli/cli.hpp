#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace resolvent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Every parameter any subcommand reads. Flags fill it first, then --config
/// overrides whatever keys the JSON file names.
struct RunConfig {
  std::string command;

  double z_re = 2.0;
  double z_im = 0.0;
  std::optional<std::array<double, 2>> interval;
  std::string scheme = "lifted";
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::uint64_t seed = 1;

  // Dense instances. A non-empty spectrum selects the prescribed-spectrum pair.
  std::size_t n = 32;
  std::size_t rank_q = 8;
  std::size_t rank_gamma = 12;
  std::vector<double> spectrum;

  // Periodic composites. "dense" or "grid" selects the estimate instance.
  std::string instance = "dense";
  std::vector<int> grid{64, 64};
  std::string phase_file;
  std::string generator = "laminate:0.5";
  double sigma_re = 3.0;
  double sigma_im = 0.0;
  std::vector<double> e_bar{1.0, 0.0};
  bool full_tensor = false;

  int iters = 50;

  std::string trace_path;
  std::string output_path;
  bool text = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string config_to_json(const RunConfig& cfg);

/// Overrides the fields present in `text` and leaves the rest of `base` alone.
RunConfig apply_config_json(const std::string& text, RunConfig base);

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace resolvent::cli
