#include "resolvent/spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace resolvent {

SpectralInterval BoundEstimate::widened_interval() const {
  const SpectralInterval raw(z_minus_e, z_plus_e);
  return raw.widened(kEstimateWidening * raw.width());
}

namespace {

constexpr int kBlock = 2;

/// Modified Gram-Schmidt in place; drops vectors that collapse.
std::vector<Field> orthonormalize(std::vector<Field> vs, double reference) {
  std::vector<Field> out;
  for (auto& v : vs) {
    for (const auto& u : out) v.axpy(-inner(u.values(), v.values()), u);
    const double nv = norm(v);
    if (nv > 1e-12 * reference && nv > 0.0) {
      v *= 1.0 / nv;
      out.push_back(std::move(v));
    }
  }
  return out;
}

struct BlockPower {
  double best = 0.0;
  double residual = 0.0;
  int steps = 0;
};

/// Block power iteration on the Hermitian operator `a`, whose range lies in
/// range(Gamma). Returns the running maximum of the top Ritz value.
BlockPower block_power(const Operator& a, std::vector<Field> block, int iters) {
  BlockPower out;
  for (int it = 0; it < iters; ++it) {
    if (block.empty()) break;
    std::vector<Field> images;
    images.reserve(block.size());
    for (const auto& v : block) images.push_back(a.apply(v));

    const auto k = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXcd h(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) h(i, j) = inner(block[i].values(), images[j].values());
    }
    h = 0.5 * (h + h.adjoint()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    const double theta = eig.eigenvalues()(k - 1);
    const Eigen::VectorXcd y = eig.eigenvectors().col(k - 1);

    Field ritz(block.front().size());
    Field image(block.front().size());
    for (Eigen::Index j = 0; j < k; ++j) {
      ritz.axpy(y(j), block[j]);
      image.axpy(y(j), images[j]);
    }
    image.axpy(-theta, ritz);
    out.residual = norm(image);
    out.best = std::max(out.best, theta);
    out.steps = it + 1;

    block = orthonormalize(std::move(images), 1.0);
  }
  return out;
}

}  // namespace

BoundEstimate estimate_bounds(const Operator& q, const Operator& gamma, int iters, std::uint64_t seed) {
  if (iters < 1) throw std::invalid_argument("estimate_bounds: iters must be >= 1");
  require_same_size(q.dim(), gamma.dim(), "estimate_bounds");
  const std::size_t n = q.dim();

  std::mt19937_64 rng(seed);
  std::vector<Field> start;
  for (int b = 0; b < kBlock; ++b) {
    Field x = random_field(n, rng);
    const double nx = norm(x);
    start.push_back(gamma.apply(x));
    start.back() *= 1.0 / nx;
  }
  start = orthonormalize(std::move(start), 1.0);
  if (start.empty()) throw std::domain_error("estimate_bounds: range(Gamma) is trivial");

  const std::size_t dim = n;
  const Operator gqg = Operator::self_adjoint(
      dim,
      [q, gamma, dim](std::span<const Complex> x, std::span<Complex> y) {
        Field gx(dim), qgx(dim);
        gamma.apply(x, gx.values());
        q.apply(gx.values(), qgx.values());
        gamma.apply(qgx.values(), y);
      });
  const Operator g_comp_g = Operator::self_adjoint(
      dim,
      [q, gamma, dim](std::span<const Complex> x, std::span<Complex> y) {
        Field gx(dim), qgx(dim);
        gamma.apply(x, gx.values());
        q.apply(gx.values(), qgx.values());
        for (std::size_t i = 0; i < dim; ++i) qgx[i] = gx[i] - qgx[i];
        gamma.apply(qgx.values(), y);
      });

  const BlockPower upper = block_power(gqg, start, iters);
  const BlockPower lower = block_power(g_comp_g, start, iters);

  BoundEstimate est;
  est.z_plus_e = std::clamp(upper.best, 0.0, 1.0);
  est.z_minus_e = std::clamp(1.0 - lower.best, 0.0, 1.0);
  // Roundoff can push the two apart in the wrong order only when they coincide.
  if (est.z_minus_e > est.z_plus_e) est.z_minus_e = est.z_plus_e = 0.5 * (est.z_minus_e + est.z_plus_e);
  est.iterations_used = std::max(upper.steps, lower.steps);
  est.residual_gap = std::max(upper.residual, lower.residual);
  return est;
}

double degraded_rate(Complex z, const SpectralInterval& true_iv, const SpectralInterval& est_iv) {
  if (est_iv.degenerate()) throw std::invalid_argument("degraded_rate: estimated interval is degenerate");
  if (true_iv.on_cut(z)) throw SpectralCutError();
  const Complex v = v_of_z(z, est_iv);
  const auto endpoint_modulus = [&](double endpoint) {
    if (est_iv.on_cut(endpoint)) return 1.0;
    return std::abs(v_of_z(endpoint, est_iv));
  };
  const double v_plus = endpoint_modulus(true_iv.upper());
  const double v_minus = endpoint_modulus(true_iv.lower());
  return std::abs(v) / std::min(v_plus, v_minus);
}

std::pair<double, double> dense_eigen_bounds(const DenseOperator& q, const DenseOperator& gamma) {
  if (!q.flags().hermitian || !gamma.flags().hermitian) {
    throw std::invalid_argument("dense_eigen_bounds: Q and Gamma must be Hermitian");
  }
  if (!gamma.flags().projection) throw std::invalid_argument("dense_eigen_bounds: Gamma must be a projection");
  require_same_size(q.dim(), gamma.dim(), "dense_eigen_bounds");

  const Eigen::SelfAdjointEigenSolver<DenseMatrix> g_eig(gamma.matrix());
  std::vector<Eigen::Index> range_cols;
  for (Eigen::Index i = 0; i < g_eig.eigenvalues().size(); ++i) {
    if (g_eig.eigenvalues()(i) > 0.5) range_cols.push_back(i);
  }
  if (range_cols.empty()) throw std::domain_error("dense_eigen_bounds: range(Gamma) is trivial");
  DenseMatrix basis(gamma.matrix().rows(), static_cast<Eigen::Index>(range_cols.size()));
  for (std::size_t j = 0; j < range_cols.size(); ++j) {
    basis.col(static_cast<Eigen::Index>(j)) = g_eig.eigenvectors().col(range_cols[j]);
  }
  DenseMatrix restricted = basis.adjoint() * q.matrix() * basis;
  restricted = 0.5 * (restricted + restricted.adjoint()).eval();
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(restricted, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return {std::clamp(ev.minCoeff(), 0.0, 1.0), std::clamp(ev.maxCoeff(), 0.0, 1.0)};
}

}  // namespace resolvent
