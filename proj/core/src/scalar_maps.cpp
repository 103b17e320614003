#include "resolvent/scalar_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace resolvent {

namespace {

constexpr Complex kI{0.0, 1.0};

bool on_closed_negative_axis(Complex x) { return x.imag() == 0.0 && x.real() <= 0.0; }

}  // namespace

SpectralInterval::SpectralInterval(double z_minus, double z_plus) : z_minus_(z_minus), z_plus_(z_plus) {
  if (!std::isfinite(z_minus) || !std::isfinite(z_plus)) {
    throw std::invalid_argument("spectral interval bounds must be finite");
  }
  if (!(0.0 <= z_minus && z_minus <= z_plus && z_plus <= 1.0)) {
    throw std::invalid_argument("spectral interval must satisfy 0 <= z- <= z+ <= 1, got [" +
                                std::to_string(z_minus) + ", " + std::to_string(z_plus) + "]");
  }
}

double SpectralInterval::distance_to_cut(Complex z) const noexcept {
  if (z.real() < z_minus_) return std::abs(z - Complex(z_minus_));
  if (z.real() > z_plus_) return std::abs(z - Complex(z_plus_));
  return std::abs(z.imag());
}

SpectralInterval SpectralInterval::widened(double margin) const {
  if (margin < 0.0) throw std::invalid_argument("widening margin must be nonnegative");
  return {std::max(0.0, z_minus_ - margin), std::min(1.0, z_plus_ + margin)};
}

SpectrumNormalization normalize_spectrum(double a_minus, double a_plus, Complex z) {
  if (!(a_plus > a_minus)) throw std::invalid_argument("normalize_spectrum: need a+ > a-");
  const double scale = a_plus - a_minus;
  return {scale, a_minus, (z - a_minus) / scale};
}

Complex sigma_of_z(Complex z) {
  if (z == Complex{}) throw std::domain_error("sigma_of_z: z = 0");
  return (z - 1.0) / z;
}

Complex sigma_underline_of_z(Complex z, const SpectralInterval& iv) {
  if (iv.on_cut(z)) throw SpectralCutError();
  return (z - iv.lower()) / (z - iv.upper());
}

Complex v_of_w(Complex w) { return (w - 1.0) / (w + 1.0); }

Complex v_of_z(Complex z, const SpectralInterval& iv) {
  return v_of_w(std::sqrt(sigma_underline_of_z(z, iv)));
}

std::optional<Complex> z_of_v(Complex v, const SpectralInterval& iv) {
  if (!(std::abs(v) < 1.0)) throw std::domain_error("z_of_v: |v| must be < 1");
  if (v == Complex{}) return std::nullopt;
  const Complex w = (1.0 + v) / (1.0 - v);
  const Complex sigma_u = w * w;
  return (iv.upper() * sigma_u - iv.lower()) / (sigma_u - 1.0);
}

Complex u_of_sigma(Complex sigma) {
  if (on_closed_negative_axis(sigma)) {
    throw std::domain_error("u_of_sigma: sigma on the negative real axis");
  }
  const Complex root = std::sqrt(sigma);
  return (root - 1.0) / (root + 1.0);
}

Complex s_of_sigma(Complex sigma) {
  if (sigma == Complex(-1.0)) throw std::domain_error("s_of_sigma: sigma = -1");
  return (sigma - 1.0) / (sigma + 1.0);
}

ShiftParams shift_params(const SpectralInterval& iv) {
  const double width = iv.width();
  if (!(width > 0.0)) throw std::invalid_argument("shift_params: need z+ > z-");
  const double s1_sq = 1.0 / width;
  const double s2_sq = -iv.upper() / width;
  const double s3_sq = (2.0 * iv.upper() - iv.lower() - 1.0) / width;
  auto root = [](double x) { return x >= 0.0 ? Complex(std::sqrt(x)) : Complex(0.0, std::sqrt(-x)); };
  return {root(s1_sq), root(s2_sq), root(s3_sq)};
}

Complex z_underline(Complex z, const ShiftParams& shift) {
  return shift.s1 * shift.s1 * z + shift.s2 * shift.s2;
}

SpectralInterval interval_of_shift(const ShiftParams& shift) {
  const Complex s1_sq = shift.s1 * shift.s1;
  const Complex s2_sq = shift.s2 * shift.s2;
  const double z_plus = (-s2_sq / s1_sq).real();
  const double z_minus = (-(1.0 + s2_sq) / s1_sq).real();
  return {z_minus, z_plus};
}

ShiftParams lifting_shift(const SpectralInterval& iv) {
  const ShiftParams s = shift_params(iv);
  // 1 + s1^2 + s2^2 = (1 - z-)/(z+ - z-) >= 0.
  const double t3_sq = (1.0 - iv.lower()) / iv.width();
  return {kI * s.s1, kI * s.s2, Complex(std::sqrt(t3_sq))};
}

double accelerated_contraction(Complex sigma, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("accelerated_contraction: need >= 2 grid points");
  const Complex root = std::sqrt(sigma);
  double worst = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const double lambda = static_cast<double>(k) / (grid_points - 1);
    const Complex t = 1.0 - 2.0 * root / (root + 1.0 + (sigma - 1.0) * lambda);
    worst = std::max(worst, std::abs(t));
  }
  return worst;
}

RateBundle rate_bounds(Complex z, const SpectralInterval& iv) {
  if (iv.on_cut(z)) throw SpectralCutError();
  constexpr double inf = std::numeric_limits<double>::infinity();

  RateBundle out{};
  const double abs_z = std::abs(z);
  out.mu0 = abs_z == 0.0 ? inf : iv.upper() / abs_z;

  // s = (sigma - 1)/(sigma + 1) = 1/(1 - 2z), written without sigma so z = 0 is harmless.
  const Complex denom = 1.0 - 2.0 * z;
  const double abs_s = denom == Complex{} ? inf : 1.0 / std::abs(denom);
  out.mu1 = abs_s;
  out.mu1_refined =
      abs_s * std::max(std::abs(2.0 * iv.lower() - 1.0), std::abs(2.0 * iv.upper() - 1.0));

  out.mu2 = iv.width() / std::abs(2.0 * z - iv.upper() - iv.lower());

  if (abs_z == 0.0) {
    out.mu3 = 1.0;
    out.mu3_guaranteed = false;
  } else {
    const Complex sigma = sigma_of_z(z);
    if (sigma.real() >= 0.0 && !on_closed_negative_axis(sigma)) {
      out.mu3 = std::abs(u_of_sigma(sigma));
      out.mu3_guaranteed = true;
    } else {
      out.mu3 = accelerated_contraction(sigma);
      out.mu3_guaranteed = false;
    }
  }

  out.mu4 = std::abs(v_of_z(z, iv));
  return out;
}

double condition_number(double z, const SpectralInterval& iv) {
  if (!std::isfinite(z)) throw std::invalid_argument("condition_number: z must be finite");
  if (iv.on_cut(Complex(z))) throw SpectralCutError();
  const double sigma_u = (z - iv.lower()) / (z - iv.upper());
  return z > iv.upper() ? sigma_u : 1.0 / sigma_u;
}

double cg_rate(double z, const SpectralInterval& iv) {
  const double root = std::sqrt(condition_number(z, iv));
  return (root - 1.0) / (root + 1.0);
}

Complex half_sum_reference(Complex z) { return 0.5 * (1.0 + sigma_of_z(z)); }

Complex optimal_reference(Complex z, const SpectralInterval& iv) {
  if (z == Complex{}) throw std::domain_error("optimal_reference: z = 0");
  return 1.0 - (iv.upper() + iv.lower()) / (2.0 * z);
}

}  // namespace resolvent
