#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "resolvent/operator.hpp"

namespace resolvent {

using DenseMatrix = Eigen::MatrixXcd;

/// Explicit n x n matrix with flags detected from its entries.
class DenseOperator {
public:
  DenseOperator() = default;
  explicit DenseOperator(DenseMatrix m);

  const DenseMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const OperatorFlags& flags() const noexcept { return flags_; }

  /// Matrix-free view; the matrix is shared, not copied per apply.
  Operator to_operator() const;

private:
  DenseMatrix m_;
  OperatorFlags flags_;
};

/// Tolerances used when detecting flags.
inline constexpr double kHermitianTolerance = 1e-13;
inline constexpr double kProjectionTolerance = 1e-12;

/// Orthogonal projection of exact rank `rank` onto the span of a random
/// orthonormalized frame.
DenseOperator make_dense_projection(std::size_t n, std::size_t rank, std::uint64_t seed);

/// Random n x n unitary (QR of a complex Gaussian matrix).
DenseMatrix random_unitary(std::size_t n, std::uint64_t seed);

struct DensePair {
  DenseOperator q;
  DenseOperator gamma;
};

/// Q and Gamma in a random basis such that Gamma Q Gamma restricted to
/// range(Gamma) has exactly the eigenvalues `cos2`. Each Gamma direction e_i
/// pairs with one Q direction cos(t_i) e_i + sin(t_i) f_i, so n >= 2 * cos2.size().
DensePair make_dense_pair_with_spectrum(const std::vector<double>& cos2, std::size_t n, std::uint64_t seed);

/// (aI - A)^{-1} by LU. Throws if a is within 1e-12 of an eigenvalue of A. For
/// projections the result is checked against Q/(a-1) + (I-Q)/a.
DenseOperator dense_resolvent_direct(const DenseOperator& a_op, Complex a);

/// [I - Gamma Q / z]^{-1}, the oracle for the schemes.
DenseMatrix dense_series_oracle(const DenseOperator& q, const DenseOperator& gamma, Complex z);

/// Applies op to every unit vector.
DenseMatrix assemble(const Operator& op);

/// Largest singular value.
double spectral_norm(const DenseMatrix& m);

}  // namespace resolvent
