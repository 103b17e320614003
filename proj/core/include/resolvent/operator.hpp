#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>

#include "resolvent/field.hpp"

namespace resolvent {

struct OperatorFlags {
  bool hermitian = false;
  bool projection = false;
};

/// A matrix-free linear map on a space of dimension dim().
///
/// Apply functions write A*x into y and must not mutate shared state: a
/// single Operator may be applied concurrently from several threads as long
/// as each call has its own output buffer. x and y must not alias.
class Operator {
public:
  using ApplyFn = std::function<void(std::span<const Complex> x, std::span<Complex> y)>;

  Operator() = default;
  Operator(std::size_t dim, ApplyFn apply, ApplyFn apply_adjoint, OperatorFlags flags = {});

  /// A Hermitian map; the adjoint is the map itself.
  static Operator self_adjoint(std::size_t dim, ApplyFn apply, bool projection = false);
  static Operator identity(std::size_t dim);
  static Operator zero(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const OperatorFlags& flags() const noexcept { return flags_; }
  bool valid() const noexcept { return static_cast<bool>(apply_); }

  void apply(std::span<const Complex> x, std::span<Complex> y) const;
  void apply_adjoint(std::span<const Complex> x, std::span<Complex> y) const;

  Field apply(const Field& x) const;
  Field apply_adjoint(const Field& x) const;
  Field operator()(const Field& x) const { return apply(x); }

  Operator adjoint() const;

private:
  std::size_t dim_ = 0;
  ApplyFn apply_;
  ApplyFn apply_adjoint_;
  OperatorFlags flags_;
};

/// x -> a(b(x)).
Operator compose(const Operator& a, const Operator& b);

/// Isometric embedding P from a subspace E (dimension inner_dim) into H
/// (dimension outer_dim) with P^dagger P = I on E; P P^dagger is then the
/// orthogonal projection onto the image of P.
class Embedding {
public:
  using MapFn = Operator::ApplyFn;

  Embedding() = default;
  Embedding(std::size_t inner_dim, std::size_t outer_dim, MapFn lift, MapFn restrict);

  std::size_t inner_dim() const noexcept { return inner_dim_; }
  std::size_t outer_dim() const noexcept { return outer_dim_; }

  /// P: E -> H.
  Field lift(const Field& b) const;
  /// P^dagger: H -> E.
  Field restrict(const Field& x) const;

  /// Gamma = P P^dagger as an operator on H.
  Operator projection() const;

private:
  std::size_t inner_dim_ = 0;
  std::size_t outer_dim_ = 0;
  MapFn lift_;
  MapFn restrict_;
};

/// Lower estimate of the operator norm max_{|a|=1} |A a| by power iteration on
/// A^dagger A. Stops after `iters` steps or when the estimate changes by less
/// than 1e-10 relative. Never decreases with more iterations.
double operator_norm_estimate(const Operator& op, int iters);

/// Largest relative defect |<Ax,y> - <x,A^dagger y>| / (|Ax||y| + |x||A^dagger y|)
/// over `samples` random pairs.
double adjoint_defect(const Operator& op, int samples, std::uint64_t seed);

/// max over `samples` random x of |A(Ax) - Ax| / |x|.
double idempotence_defect(const Operator& op, int samples, std::uint64_t seed);

/// Complex Gaussian random field (independent N(0,1/2) real and imaginary parts).
Field random_field(std::size_t n, std::mt19937_64& rng);
Field random_field(std::size_t n, std::uint64_t seed);

}  // namespace resolvent
