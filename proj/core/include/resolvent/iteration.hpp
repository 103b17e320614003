#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "resolvent/operator.hpp"

namespace resolvent {

enum class SolveStatus { Converged, MaxIter, Diverged };

std::string to_string(SolveStatus status);

struct IterationRecord {
  std::size_t iter = 0;
  double residual = 0.0;               ///< relative residual, as measured
  std::optional<double> error;         ///< relative error against the oracle, if any
  double seconds = 0.0;                ///< wall time since the solve started
};

/// Per-iteration history of one solver run. Residuals are stored exactly as
/// measured; nothing is smoothed.
struct IterationTrace {
  std::vector<IterationRecord> records;
  SolveStatus status = SolveStatus::MaxIter;
  std::size_t iterations = 0;
  double final_residual = 0.0;
  std::vector<std::string> warnings;
};

struct SolveConfig {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  bool record_trace = true;
  /// Maps the right-hand side h to the exact solution; enables error tracking.
  std::optional<Operator> oracle;

  void validate() const;
};

struct SolveResult {
  Field solution;
  IterationTrace trace;
};

/// Residual growth factor and window that flag divergence.
inline constexpr double kDivergenceFactor = 1e6;
inline constexpr std::size_t kDivergenceWindow = 50;

/// Fixed point of e -> alpha C e + h by the iteration e_1 = h, e_{m+1} = alpha C e_m + h.
/// Stops when |e_m - (alpha C e_m + h)| <= tol |h| and returns that e_m.
SolveResult iterate_affine(const Operator& c, Complex alpha, const Field& h, const SolveConfig& cfg);

/// Hooks that let a series solver report on a quantity derived from the
/// iterate instead of the iterate itself.
struct SeriesMonitor {
  /// Maps the series partial sum x_m to the solution estimate E_m.
  std::function<Field(const Field& partial_sum)> readout;
  /// Absolute residual of the user-facing equation at E_m.
  std::function<double(const Field& estimate)> residual;
  /// Norm the residual is measured relative to.
  double reference_norm = 1.0;
  /// Right-hand side handed to the oracle when error tracking is enabled.
  const Field* oracle_rhs = nullptr;
};

/// Runs x_1 = seed, x_{m+1} = alpha C x_m + seed, monitoring readout(x_m) and
/// stopping on monitor.residual(readout(x_m)) <= tol * reference_norm.
SolveResult iterate_series(const Operator& c, Complex alpha, const Field& seed, const SolveConfig& cfg,
                           const SeriesMonitor& monitor);

/// Least-squares slope of log(residual) against iteration over the trailing
/// half of the recorded trace (at least three points). Residuals at or below
/// `floor` are excluded. Returns nullopt when too few points remain.
std::optional<double> fitted_log_slope(const IterationTrace& trace, double floor = 0.0);

}  // namespace resolvent
