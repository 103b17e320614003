#include <gtest/gtest.h>

#include <cmath>

#include "instances.hpp"
#include "resolvent/schemes.hpp"
#include "resolvent/spectra.hpp"

using namespace resolvent;
using namespace resolvent::testing;

TEST(EstimateBounds, KnownSpectrum) {
  const auto inst = spectrum_instance({0.2, 0.5, 0.8}, 8, 1);
  const BoundEstimate est = estimate_bounds(inst.q_op, inst.gamma_op, 200, 7);
  EXPECT_GE(est.z_plus_e, 0.8 - 1e-6);
  EXPECT_LE(est.z_plus_e, 0.8 + 1e-14);
  EXPECT_GE(est.z_minus_e, 0.2 - 1e-14);
  EXPECT_LE(est.z_minus_e, 0.2 + 1e-6);
  EXPECT_EQ(est.iterations_used, 200);
}

TEST(EstimateBounds, QEqualsGamma) {
  const DenseOperator g = make_dense_projection(10, 4, 2);
  const BoundEstimate est = estimate_bounds(g.to_operator(), g.to_operator(), 10, 3);
  EXPECT_NEAR(est.z_plus_e, 1.0, 1e-12);
  EXPECT_NEAR(est.z_minus_e, 1.0, 1e-12);
}

TEST(EstimateBounds, OrthogonalQ) {
  const auto inst = spectrum_instance({0.0, 0.0, 0.0}, 8, 4);
  const BoundEstimate est = estimate_bounds(inst.q_op, inst.gamma_op, 10, 5);
  EXPECT_NEAR(est.z_plus_e, 0.0, 1e-12);
  EXPECT_NEAR(est.z_minus_e, 0.0, 1e-12);
}

TEST(EstimateBounds, Errors) {
  const auto inst = random_instance(6, 2, 0, 1);
  EXPECT_THROW(estimate_bounds(inst.q_op, inst.gamma_op, 5, 1), std::domain_error);
  const auto ok = random_instance(6, 2, 2, 1);
  EXPECT_THROW(estimate_bounds(ok.q_op, ok.gamma_op, 0, 1), std::invalid_argument);
}

TEST(EstimateBounds, InteriorAndMonotone) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = random_instance(40, 12, 15, seed);
    const SpectralInterval truth = inst.exact_interval();
    double prev_plus = -1.0, prev_minus = 2.0;
    for (int iters : {1, 2, 5, 10, 20, 50}) {
      const BoundEstimate est = estimate_bounds(inst.q_op, inst.gamma_op, iters, seed);
      EXPECT_LE(truth.lower(), est.z_minus_e + 1e-12);
      EXPECT_LE(est.z_minus_e, est.z_plus_e);
      EXPECT_LE(est.z_plus_e, truth.upper() + 1e-12);
      EXPECT_GE(est.z_plus_e, prev_plus);
      EXPECT_LE(est.z_minus_e, prev_minus);
      prev_plus = est.z_plus_e;
      prev_minus = est.z_minus_e;
    }
  }
}

TEST(EstimateBounds, SeedReproducible) {
  const auto inst = random_instance(20, 6, 7, 2);
  const auto a = estimate_bounds(inst.q_op, inst.gamma_op, 15, 99);
  const auto b = estimate_bounds(inst.q_op, inst.gamma_op, 15, 99);
  EXPECT_EQ(a.z_plus_e, b.z_plus_e);
  EXPECT_EQ(a.z_minus_e, b.z_minus_e);
}

TEST(EstimateBounds, WidenedInterval) {
  BoundEstimate est;
  est.z_minus_e = 0.2;
  est.z_plus_e = 0.7;
  const auto iv = est.widened_interval();
  EXPECT_NEAR(iv.lower(), 0.2 - 5e-4, 1e-15);
  EXPECT_NEAR(iv.upper(), 0.7 + 5e-4, 1e-15);
  est.z_minus_e = 0.0;
  est.z_plus_e = 1.0;
  EXPECT_EQ(est.widened_interval(), SpectralInterval(0, 1));
}

TEST(DegradedRate, ExactBoundsRecoverV) {
  const SpectralInterval iv(0.2, 0.7);
  for (Complex z : {Complex(2.0), Complex(-0.5, 0.3), Complex(0.4, 0.2)}) {
    EXPECT_NEAR(degraded_rate(z, iv, iv), std::abs(v_of_z(z, iv)), 1e-15);
  }
}

TEST(DegradedRate, LeadingOrderForm) {
  const SpectralInterval truth(0, 1), est(0.01, 0.99);
  const double got = degraded_rate(2.0, truth, est);
  const double v = std::abs(v_of_z(2.0, est));
  // (w - 1)/(w + 1) ~ -1 + 2w for small w = sqrt(delta / width).
  const double endpoint = 1.0 - 2.0 * std::sqrt(0.01 / est.width());
  EXPECT_NEAR(got / (v / endpoint), 1.0, 0.1);
  EXPECT_GT(got, v);
}

TEST(DegradedRate, VanishesAtInfinity) {
  EXPECT_LT(degraded_rate(1e12, {0, 1}, {0.1, 0.9}), 1e-11);
}

TEST(DegradedRate, Errors) {
  EXPECT_THROW(degraded_rate(2.0, {0, 1}, {0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(degraded_rate(0.05, {0, 1}, {0.1, 0.9}), SpectralCutError);
}

TEST(DenseEigenBounds, Examples) {
  const DenseOperator g = make_dense_projection(6, 3, 1);
  auto [lo, hi] = dense_eigen_bounds(g, g);
  EXPECT_NEAR(lo, 1.0, 1e-12);
  EXPECT_NEAR(hi, 1.0, 1e-12);

  std::tie(lo, hi) = dense_eigen_bounds(DenseOperator(DenseMatrix::Zero(6, 6)), g);
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 0.0);

  const auto inst = two_dim_instance(0.25);
  std::tie(lo, hi) = dense_eigen_bounds(inst.q, inst.gamma);
  EXPECT_NEAR(lo, 0.25, 1e-14);
  EXPECT_NEAR(hi, 0.25, 1e-14);
}

TEST(DenseEigenBounds, Errors) {
  DenseMatrix m(2, 2);
  m << 1.0, 1.0, 0.0, 0.0;
  const auto g = make_dense_projection(2, 1, 1);
  EXPECT_THROW(dense_eigen_bounds(DenseOperator(m), g), std::invalid_argument);
  EXPECT_THROW(dense_eigen_bounds(g, DenseOperator(DenseMatrix::Zero(2, 2))), std::domain_error);
}

TEST(EstimatedBounds, LiftedSolveStaysNearDegradedRate) {
  const auto inst = spectrum_instance(spread(0.15, 0.85, 6), 32, 3);
  const SpectralInterval truth = inst.exact_interval();
  for (int iters : {3, 10, 50}) {
    SCOPED_TRACE(iters);
    const BoundEstimate est = estimate_bounds(inst.q_op, inst.gamma_op, iters, 11);
    const SpectralInterval widened = est.widened_interval();
    SolveConfig cfg;
    cfg.tol = 1e-13;
    cfg.record_trace = true;
    cfg.max_iter = 3000;
    const auto r = solve_lifted(inst.q_op, inst.gamma_op, 2.0, widened, inst.rhs(2), cfg);
    EXPECT_EQ(r.trace.status, SolveStatus::Converged);
    const auto slope = fitted_log_slope(r.trace, 1e-12);
    ASSERT_TRUE(slope.has_value());
    // Spectrum ends sit near the widened endpoints, where the lifted residual
    // picks up an n |v|^n transient.
    EXPECT_LE(*slope, std::log(degraded_rate(2.0, truth, widened)) + endpoint_allowance(r.trace, 1e-12));
  }
}
