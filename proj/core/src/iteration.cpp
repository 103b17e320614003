#include "resolvent/iteration.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace resolvent {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIter: return "MaxIter";
    case SolveStatus::Diverged: return "Diverged";
  }
  return "Unknown";
}

void SolveConfig::validate() const {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("SolveConfig: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("SolveConfig: max_iter must be >= 1");
}

namespace {

/// Bookkeeping shared by the two iteration drivers.
class RunRecorder {
public:
  RunRecorder(const SolveConfig& cfg, std::optional<Field> exact)
      : cfg_(cfg), exact_(std::move(exact)), start_(std::chrono::steady_clock::now()) {
    if (exact_) exact_norm_ = norm(*exact_);
  }

  /// Records iteration m with relative residual r; returns the terminal status
  /// if the run should stop here.
  std::optional<SolveStatus> observe(std::size_t m, double r, const Field& estimate) {
    trace_.iterations = m;
    trace_.final_residual = r;
    if (cfg_.record_trace) {
      IterationRecord rec;
      rec.iter = m;
      rec.residual = r;
      if (exact_) {
        const double diff = distance(estimate, *exact_);
        rec.error = exact_norm_ > 0.0 ? diff / exact_norm_ : diff;
      }
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      trace_.records.push_back(rec);
    }
    if (!std::isfinite(r)) return SolveStatus::Diverged;
    if (r <= cfg_.tol) return SolveStatus::Converged;
    if (m == 1) {
      initial_ = r;
    } else if (r > kDivergenceFactor * initial_) {
      if (++growth_streak_ >= kDivergenceWindow) return SolveStatus::Diverged;
    } else {
      growth_streak_ = 0;
    }
    if (m >= cfg_.max_iter) return SolveStatus::MaxIter;
    return std::nullopt;
  }

  IterationTrace finish(SolveStatus status) {
    trace_.status = status;
    return std::move(trace_);
  }

private:
  const SolveConfig& cfg_;
  std::optional<Field> exact_;
  double exact_norm_ = 0.0;
  std::chrono::steady_clock::time_point start_;
  IterationTrace trace_;
  double initial_ = 0.0;
  std::size_t growth_streak_ = 0;
};

double relative(double value, double reference) { return reference > 0.0 ? value / reference : value; }

}  // namespace

SolveResult iterate_affine(const Operator& c, Complex alpha, const Field& h, const SolveConfig& cfg) {
  cfg.validate();
  require_same_size(c.dim(), h.size(), "iterate_affine");
  std::optional<Field> exact;
  if (cfg.oracle) exact = cfg.oracle->apply(h);

  RunRecorder recorder(cfg, std::move(exact));
  const double h_norm = norm(h);
  Field x = h;
  Field next(h.size());
  for (std::size_t m = 1;; ++m) {
    c.apply(x.values(), next.values());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = alpha * next[i] + h[i];
    const double r = relative(distance(next, x), h_norm);
    if (auto status = recorder.observe(m, r, x)) {
      return {std::move(x), recorder.finish(*status)};
    }
    std::swap(x, next);
  }
}

SolveResult iterate_series(const Operator& c, Complex alpha, const Field& seed, const SolveConfig& cfg,
                           const SeriesMonitor& monitor) {
  cfg.validate();
  require_same_size(c.dim(), seed.size(), "iterate_series");
  if (!monitor.readout || !monitor.residual) throw std::invalid_argument("iterate_series: incomplete monitor");
  std::optional<Field> exact;
  if (cfg.oracle && monitor.oracle_rhs) exact = cfg.oracle->apply(*monitor.oracle_rhs);

  RunRecorder recorder(cfg, std::move(exact));
  Field x = seed;
  Field next(seed.size());
  for (std::size_t m = 1;; ++m) {
    Field estimate = monitor.readout(x);
    const double r = relative(monitor.residual(estimate), monitor.reference_norm);
    if (auto status = recorder.observe(m, r, estimate)) {
      return {std::move(estimate), recorder.finish(*status)};
    }
    c.apply(x.values(), next.values());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = alpha * next[i] + seed[i];
    std::swap(x, next);
  }
}

std::optional<double> fitted_log_slope(const IterationTrace& trace, double floor) {
  std::vector<std::pair<double, double>> points;
  for (const auto& rec : trace.records) {
    if (rec.residual > floor && std::isfinite(rec.residual) && rec.residual > 0.0) {
      points.emplace_back(static_cast<double>(rec.iter), std::log(rec.residual));
    }
  }
  if (points.size() < 3) return std::nullopt;
  const std::size_t keep = std::max<std::size_t>(3, points.size() / 2);
  const auto first = points.end() - static_cast<std::ptrdiff_t>(keep);

  double mx = 0.0, my = 0.0;
  for (auto it = first; it != points.end(); ++it) {
    mx += it->first;
    my += it->second;
  }
  mx /= static_cast<double>(keep);
  my /= static_cast<double>(keep);
  double sxx = 0.0, sxy = 0.0;
  for (auto it = first; it != points.end(); ++it) {
    sxx += (it->first - mx) * (it->first - mx);
    sxy += (it->first - mx) * (it->second - my);
  }
  return sxy / sxx;
}

}  // namespace resolvent
