#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "resolvent/fourier.hpp"

using namespace resolvent;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(FourierConductivity, GradientFieldIsFixed) {
  const GridSpec grid({16, 12});
  Field e = sample_component(grid, 2, 0, [](const std::vector<double>& x) {
    return Complex(2 * kPi * std::cos(2 * kPi * x[0]));
  });
  const Operator gamma = fourier_gamma_conductivity(grid);
  EXPECT_LE(distance(gamma.apply(e), e), 1e-10 * norm(e));
}

TEST(FourierConductivity, MixedGradientIsFixed) {
  // grad of sin(2 pi x1) cos(4 pi x2).
  const GridSpec grid({16, 16});
  Field e = sample_component(grid, 2, 0, [](const std::vector<double>& x) {
    return Complex(2 * kPi * std::cos(2 * kPi * x[0]) * std::cos(4 * kPi * x[1]));
  });
  e += sample_component(grid, 2, 1, [](const std::vector<double>& x) {
    return Complex(-4 * kPi * std::sin(2 * kPi * x[0]) * std::sin(4 * kPi * x[1]));
  });
  const Operator gamma = fourier_gamma_conductivity(grid);
  EXPECT_LE(distance(gamma.apply(e), e), 1e-10 * norm(e));
}

TEST(FourierConductivity, ShearFieldIsAnnihilated) {
  const GridSpec grid({16, 16});
  const Field e = sample_component(grid, 2, 0, [](const std::vector<double>& x) {
    return Complex(-std::sin(2 * kPi * x[1]) + 0.3 * std::cos(6 * kPi * x[1]));
  });
  const Operator gamma = fourier_gamma_conductivity(grid);
  EXPECT_LE(norm(gamma.apply(e)), 1e-10 * norm(e));
}

TEST(FourierConductivity, ConstantFieldIsAnnihilated) {
  const GridSpec grid({8, 8, 4});
  Field e(grid.cells() * 3, Complex(0.7, -0.2));
  const Operator gamma = fourier_gamma_conductivity(grid);
  EXPECT_LE(norm(gamma.apply(e)), 1e-12 * norm(e));
}

TEST(FourierConductivity, ProjectionOnRandomFields) {
  for (const GridSpec& grid : {GridSpec({64, 64}), GridSpec({7, 10}), GridSpec({6, 4, 8})}) {
    const Operator gamma = fourier_gamma_conductivity(grid);
    EXPECT_TRUE(gamma.flags().projection);
    EXPECT_LE(idempotence_defect(gamma, 5, 1), 1e-11);
    EXPECT_LE(adjoint_defect(gamma, 5, 2), 1e-11);
  }
}

TEST(FourierConductivity, OutputIsZeroMean) {
  const GridSpec grid({12, 10});
  const Operator gamma = fourier_gamma_conductivity(grid);
  const Field y = gamma.apply(random_field(grid.cells() * 2, 3));
  for (Complex m : component_means(y, grid, 2)) EXPECT_LT(std::abs(m), 1e-14);
}

TEST(FourierSchrodinger, RangeFieldsAreFixed) {
  const GridSpec grid({8, 8});
  const double v0 = 1.0, e0 = 0.5, hbar2m = 0.3;
  const Operator gamma = fourier_gamma_schrodinger(grid, v0, e0, hbar2m);
  // Build (i k sqrt(hbar2m) psi_hat, sqrt(V0 - E0) psi_hat) in Fourier space
  // via derivatives of a real-space psi = exp(2 pi i (x1 + 2 x2)) + 0.5 exp(-2 pi i x1).
  const auto psi = [](const std::vector<double>& x) {
    return std::exp(Complex(0, 2 * kPi * (x[0] + 2 * x[1]))) + 0.5 * std::exp(Complex(0, -2 * kPi * x[0]));
  };
  const auto dpsi = [](int axis) {
    return [axis](const std::vector<double>& x) {
      const Complex a = std::exp(Complex(0, 2 * kPi * (x[0] + 2 * x[1])));
      const Complex b = 0.5 * std::exp(Complex(0, -2 * kPi * x[0]));
      return axis == 0 ? Complex(0, 2 * kPi) * a + Complex(0, -2 * kPi) * b : Complex(0, 4 * kPi) * a;
    };
  };
  Field f = sample_component(grid, 3, 0, dpsi(0));
  f += sample_component(grid, 3, 1, dpsi(1));
  for (std::size_t i = 0; i < 2 * grid.cells(); ++i) f[i] *= std::sqrt(hbar2m);
  Field last = sample_component(grid, 3, 2, psi);
  last *= std::sqrt(v0 - e0);
  f += last;
  EXPECT_LE(distance(gamma.apply(f), f), 1e-10 * norm(f));
}

TEST(FourierSchrodinger, IdempotentAndSelfAdjoint) {
  const Operator gamma = fourier_gamma_schrodinger(GridSpec({10, 6}), 2.0, 0.5, 1.0);
  EXPECT_EQ(gamma.dim(), 60u * 3u);
  EXPECT_LE(idempotence_defect(gamma, 10, 4), 1e-12);
  EXPECT_LE(adjoint_defect(gamma, 10, 5), 1e-12);
}

TEST(FourierSchrodinger, RequiresPositiveGap) {
  EXPECT_THROW(fourier_gamma_schrodinger(GridSpec({4, 4}), 1.0, 1.0, 1.0), std::domain_error);
  EXPECT_THROW(fourier_gamma_schrodinger(GridSpec({4, 4}), 1.0, 2.0, 1.0), std::domain_error);
}

TEST(FourierSchrodinger, ZParameter) {
  EXPECT_DOUBLE_EQ(schrodinger_z(1.0, 2.0, 0.5), -0.25);
  EXPECT_THROW(schrodinger_z(1.0, 0.0, 0.5), std::domain_error);
}

TEST(PhaseOperatorTest, MasksEveryComponent) {
  const GridSpec grid({4, 4});
  const PhaseMap chi = make_laminate(grid, 0.5, 0);
  const Operator q = phase_operator(chi, 2);
  const Field x(32, 1.0);
  const Field y = q.apply(x);
  for (std::size_t i = 0; i < 32; ++i) EXPECT_EQ(y[i], chi.chi[i % 16] ? Complex(1.0) : Complex{});
}
