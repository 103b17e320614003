#pragma once

#include <optional>
#include <stdexcept>

#include "resolvent/field.hpp"

namespace resolvent {

/// Raised when z lies on (or within 1e-12 of) the spectral cut [z-, z+].
class SpectralCutError : public std::domain_error {
public:
  SpectralCutError() : std::domain_error("z on spectral cut") {}
};

/// Absolute distance below which z counts as lying on the cut.
inline constexpr double kCutTolerance = 1e-12;

/// Real interval [z-, z+] inside [0, 1] containing the spectrum of Gamma Q Gamma
/// restricted to range(Gamma).
class SpectralInterval {
public:
  SpectralInterval(double z_minus, double z_plus);

  static SpectralInterval unit() { return {0.0, 1.0}; }

  double lower() const noexcept { return z_minus_; }
  double upper() const noexcept { return z_plus_; }
  double width() const noexcept { return z_plus_ - z_minus_; }
  bool degenerate() const noexcept { return z_plus_ == z_minus_; }

  /// Distance from z to the segment [z-, z+] of the real axis.
  double distance_to_cut(Complex z) const noexcept;
  bool on_cut(Complex z) const noexcept { return distance_to_cut(z) < kCutTolerance; }

  /// Pushes both ends outward by `margin`, clipped to [0, 1].
  SpectralInterval widened(double margin) const;

  friend bool operator==(const SpectralInterval&, const SpectralInterval&) = default;

private:
  double z_minus_;
  double z_plus_;
};

/// Shift triple (s1, s2, s3) with s1^2 + s2^2 + s3^2 = 1, each entry real or
/// purely imaginary. S = s s^T is then a (non-Hermitian) projection.
struct ShiftParams {
  Complex s1;
  Complex s2;
  Complex s3;

  Complex sum_of_squares() const { return s1 * s1 + s2 * s2 + s3 * s3; }
  /// |s1|^2 + |s2|^2 + |s3|^2, which is the operator norm of S.
  double projection_norm() const { return std::norm(s1) + std::norm(s2) + std::norm(s3); }
};

struct SpectrumNormalization {
  double scale;
  double shift;
  Complex z_normalized;
};

/// Maps a spectrum bound a- <= A <= a+ onto [0, 1]: A -> (A - a- I)/scale and
/// z -> (z - a-)/scale, where scale = a+ - a-. The original resolvent is the
/// normalized one divided by scale.
SpectrumNormalization normalize_spectrum(double a_minus, double a_plus, Complex z);

/// sigma = (z - 1)/z.
Complex sigma_of_z(Complex z);

/// Conformal chain z -> sigma_ = (z - z-)/(z - z+) -> w = sqrt(sigma_) -> v = (w-1)/(w+1).
/// All square roots are principal (branch cut on the negative real axis).
Complex sigma_underline_of_z(Complex z, const SpectralInterval& iv);
Complex v_of_w(Complex w);
Complex v_of_z(Complex z, const SpectralInterval& iv);

/// Inverse of v_of_z. Returns nullopt for v = 0 (the point at infinity).
std::optional<Complex> z_of_v(Complex v, const SpectralInterval& iv);

/// u = (sqrt(sigma) - 1)/(sqrt(sigma) + 1); rejects sigma on the closed negative real axis.
Complex u_of_sigma(Complex sigma);

/// s = (sigma - 1)/(sigma + 1).
Complex s_of_sigma(Complex sigma);

/// Shift parameters s1^2 = 1/(z+ - z-), s2^2 = -z+/(z+ - z-), s3^2 = 1 - s1^2 - s2^2,
/// with s1 > 0 and principal roots for s2 and s3.
ShiftParams shift_params(const SpectralInterval& iv);

/// z_ = s1^2 z + s2^2; with shift_params(iv), 1 + 1/z_ = sigma_underline_of_z(z, iv).
Complex z_underline(Complex z, const ShiftParams& shift);

/// Recovers (z-, z+) = (-(1 + s2^2)/s1^2, -s2^2/s1^2).
SpectralInterval interval_of_shift(const ShiftParams& shift);

/// Shift triple used to lift the resolvent problem into the tripled space:
/// (i s1, i s2, sqrt(1 + s1^2 + s2^2)). With it, z_lift = t1^2 z + t2^2 satisfies
/// 1 - 1/z_lift = (z - z-)/(z - z+), so the lifted accelerated series runs in
/// powers of v.
ShiftParams lifting_shift(const SpectralInterval& iv);

struct RateBundle {
  double mu0;           ///< power series in 1/z
  double mu1;           ///< Richardson with c = (1 + sigma)/2
  double mu1_refined;   ///< same, sharpened with the interval
  double mu2;           ///< Richardson with the interval-optimal c
  double mu3;           ///< accelerated scheme, c = sqrt(sigma)
  double mu4;           ///< lifted scheme, |v|
  bool mu3_guaranteed;  ///< false when sigma is in the left half-plane
};

/// All six convergence-rate bounds at z.
RateBundle rate_bounds(Complex z, const SpectralInterval& iv);

/// max_{lambda in [0,1]} |1 - 2 sqrt(sigma)/(sqrt(sigma) + 1 + (sigma - 1) lambda)|,
/// sampled on `grid_points` equispaced lambdas.
double accelerated_contraction(Complex sigma, int grid_points = 1001);

/// Conjugate-gradient rate (sqrt(kappa) - 1)/(sqrt(kappa) + 1) for real z off the cut,
/// with kappa the condition number of z I - P^dagger Q P.
double cg_rate(double z, const SpectralInterval& iv);
double condition_number(double z, const SpectralInterval& iv);

/// Reference constants of the Richardson scheme.
Complex half_sum_reference(Complex z);
Complex optimal_reference(Complex z, const SpectralInterval& iv);

}  // namespace resolvent
