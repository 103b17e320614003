#include "resolvent/dense.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace resolvent {

namespace {

using Vec = Eigen::VectorXcd;
using ConstMap = Eigen::Map<const Vec>;
using Map = Eigen::Map<Vec>;

double max_abs(const DenseMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  DenseMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      g(i, j) = Complex(re, normal(rng));
    }
  }
  return g;
}

}  // namespace

DenseOperator::DenseOperator(DenseMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionError("DenseOperator: matrix must be square");
  flags_.hermitian = max_abs(m_ - m_.adjoint()) <= kHermitianTolerance;
  const double scale = std::max(1.0, max_abs(m_));
  flags_.projection = max_abs(m_ * m_ - m_) <= kProjectionTolerance * scale;
}

Operator DenseOperator::to_operator() const {
  auto m = std::make_shared<const DenseMatrix>(m_);
  const auto n = dim();
  auto apply = [m](std::span<const Complex> x, std::span<Complex> y) {
    Map(y.data(), static_cast<Eigen::Index>(y.size())).noalias() =
        *m * ConstMap(x.data(), static_cast<Eigen::Index>(x.size()));
  };
  if (flags_.hermitian) return Operator::self_adjoint(n, apply, flags_.projection);
  auto apply_adjoint = [m](std::span<const Complex> x, std::span<Complex> y) {
    Map(y.data(), static_cast<Eigen::Index>(y.size())).noalias() =
        m->adjoint() * ConstMap(x.data(), static_cast<Eigen::Index>(x.size()));
  };
  return Operator(n, apply, apply_adjoint, flags_);
}

DenseMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  const DenseMatrix g = gaussian_matrix(n, n, seed);
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  return qr.householderQ() * DenseMatrix::Identity(n, n);
}

DenseOperator make_dense_projection(std::size_t n, std::size_t rank, std::uint64_t seed) {
  if (rank > n) throw std::invalid_argument("make_dense_projection: rank exceeds dimension");
  const DenseMatrix u = random_unitary(n, seed);
  const DenseMatrix frame = u.leftCols(static_cast<Eigen::Index>(rank));
  DenseMatrix p = frame * frame.adjoint();
  // Symmetrize away the last-bit asymmetry of the product.
  p = 0.5 * (p + p.adjoint()).eval();
  return DenseOperator(std::move(p));
}

DensePair make_dense_pair_with_spectrum(const std::vector<double>& cos2, std::size_t n, std::uint64_t seed) {
  const std::size_t k = cos2.size();
  if (2 * k > n) throw std::invalid_argument("make_dense_pair_with_spectrum: need n >= 2 * number of eigenvalues");
  const DenseMatrix u = random_unitary(n, seed);
  DenseMatrix gamma_frame = u.leftCols(static_cast<Eigen::Index>(k));
  DenseMatrix q_frame(n, k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(cos2[i] >= 0.0 && cos2[i] <= 1.0)) throw std::invalid_argument("cos^2 values must lie in [0, 1]");
    const double c = std::sqrt(cos2[i]);
    const double s = std::sqrt(1.0 - cos2[i]);
    const auto col = static_cast<Eigen::Index>(i);
    q_frame.col(col) = c * u.col(col) + s * u.col(static_cast<Eigen::Index>(k + i));
  }
  DenseMatrix q = q_frame * q_frame.adjoint();
  DenseMatrix g = gamma_frame * gamma_frame.adjoint();
  q = 0.5 * (q + q.adjoint()).eval();
  g = 0.5 * (g + g.adjoint()).eval();
  return {DenseOperator(std::move(q)), DenseOperator(std::move(g))};
}

DenseOperator dense_resolvent_direct(const DenseOperator& a_op, Complex a) {
  if (!is_finite(a)) throw std::domain_error("dense_resolvent_direct: a must be finite");
  const DenseMatrix& m = a_op.matrix();
  const auto n = m.rows();
  if (n > 0) {
    const Eigen::ComplexEigenSolver<DenseMatrix> eig(m, false);
    const double gap = (eig.eigenvalues().array() - a).abs().minCoeff();
    if (gap <= 1e-12) {
      std::ostringstream msg;
      msg << "dense_resolvent_direct: a is within " << gap << " of an eigenvalue";
      throw std::domain_error(msg.str());
    }
  }
  const DenseMatrix shifted = a * DenseMatrix::Identity(n, n) - m;
  DenseMatrix r = shifted.partialPivLu().solve(DenseMatrix::Identity(n, n));

  if (a_op.flags().projection && a_op.flags().hermitian) {
    const DenseMatrix formula = m / (a - 1.0) + (DenseMatrix::Identity(n, n) - m) / a;
    const double scale = std::max(1.0, max_abs(formula));
    if (max_abs(formula - r) > 1e-12 * scale) {
      throw std::runtime_error("dense_resolvent_direct: LU result disagrees with the projection formula");
    }
  }
  return DenseOperator(std::move(r));
}

DenseMatrix dense_series_oracle(const DenseOperator& q, const DenseOperator& gamma, Complex z) {
  require_same_size(q.dim(), gamma.dim(), "dense_series_oracle");
  const auto n = static_cast<Eigen::Index>(q.dim());
  const DenseMatrix system = DenseMatrix::Identity(n, n) - gamma.matrix() * q.matrix() / z;
  return system.partialPivLu().solve(DenseMatrix::Identity(n, n));
}

DenseMatrix assemble(const Operator& op) {
  const auto n = op.dim();
  DenseMatrix m(n, n);
  Field e(n);
  Field col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e.fill(Complex{});
    e[j] = 1.0;
    op.apply(e.values(), col.values());
    for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  return m;
}

double spectral_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::JacobiSVD<DenseMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace resolvent
