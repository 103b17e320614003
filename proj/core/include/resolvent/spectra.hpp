#pragma once

#include <cstdint>
#include <utility>

#include "resolvent/dense.hpp"
#include "resolvent/operator.hpp"
#include "resolvent/scalar_maps.hpp"

namespace resolvent {

struct BoundEstimate {
  double z_minus_e = 0.0;
  double z_plus_e = 0.0;
  int iterations_used = 0;
  /// Largest Ritz residual |A v - theta v| of the two final top Ritz pairs.
  double residual_gap = 0.0;

  /// [z-_e, z+_e] widened outward by 1e-3 of its width, clipped to [0, 1].
  SpectralInterval widened_interval() const;
};

inline constexpr double kEstimateWidening = 1e-3;

/// Rayleigh-Ritz estimates of the spectral bounds of Gamma Q Gamma on
/// range(Gamma), from block power iteration (block size 2) on Gamma Q Gamma
/// and on Gamma (I - Q) Gamma. z+_e is the best Ritz value seen for the
/// first, z-_e is 1 minus the best for the second, so both move outward
/// monotonically with `iters` for a fixed seed.
BoundEstimate estimate_bounds(const Operator& q, const Operator& gamma, int iters, std::uint64_t seed);

/// max(|v / v+|, |v / v-|) with v = v_of_z(z, est) and v+- the images of the
/// true endpoints under the estimated map. An endpoint that falls inside the
/// estimated cut maps to the unit circle.
double degraded_rate(Complex z, const SpectralInterval& true_iv, const SpectralInterval& est_iv);

/// Exact extreme eigenvalues of Gamma Q Gamma restricted to range(Gamma).
std::pair<double, double> dense_eigen_bounds(const DenseOperator& q, const DenseOperator& gamma);

}  // namespace resolvent
