#include "resolvent/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace resolvent {

Operator::Operator(std::size_t dim, ApplyFn apply, ApplyFn apply_adjoint, OperatorFlags flags)
    : dim_(dim), apply_(std::move(apply)), apply_adjoint_(std::move(apply_adjoint)), flags_(flags) {
  if (!apply_ || !apply_adjoint_) throw std::invalid_argument("operator needs apply and adjoint");
}

Operator Operator::self_adjoint(std::size_t dim, ApplyFn apply, bool projection) {
  ApplyFn adj = apply;
  return Operator(dim, std::move(apply), std::move(adj), OperatorFlags{true, projection});
}

Operator Operator::identity(std::size_t dim) {
  return self_adjoint(
      dim, [](std::span<const Complex> x, std::span<Complex> y) { std::copy(x.begin(), x.end(), y.begin()); },
      true);
}

Operator Operator::zero(std::size_t dim) {
  return self_adjoint(
      dim, [](std::span<const Complex>, std::span<Complex> y) { std::fill(y.begin(), y.end(), Complex{}); },
      true);
}

void Operator::apply(std::span<const Complex> x, std::span<Complex> y) const {
  require_same_size(x.size(), dim_, "Operator::apply input");
  require_same_size(y.size(), dim_, "Operator::apply output");
  apply_(x, y);
}

void Operator::apply_adjoint(std::span<const Complex> x, std::span<Complex> y) const {
  require_same_size(x.size(), dim_, "Operator::apply_adjoint input");
  require_same_size(y.size(), dim_, "Operator::apply_adjoint output");
  apply_adjoint_(x, y);
}

Field Operator::apply(const Field& x) const {
  Field y(dim_);
  apply(x.values(), y.values());
  return y;
}

Field Operator::apply_adjoint(const Field& x) const {
  Field y(dim_);
  apply_adjoint(x.values(), y.values());
  return y;
}

Operator Operator::adjoint() const { return Operator(dim_, apply_adjoint_, apply_, flags_); }

Operator compose(const Operator& a, const Operator& b) {
  require_same_size(a.dim(), b.dim(), "compose");
  const std::size_t n = a.dim();
  auto fwd = [a, b, n](std::span<const Complex> x, std::span<Complex> y) {
    Field tmp(n);
    b.apply(x, tmp.values());
    a.apply(tmp.values(), y);
  };
  auto adj = [a, b, n](std::span<const Complex> x, std::span<Complex> y) {
    Field tmp(n);
    a.apply_adjoint(x, tmp.values());
    b.apply_adjoint(tmp.values(), y);
  };
  return Operator(n, fwd, adj);
}

Embedding::Embedding(std::size_t inner_dim, std::size_t outer_dim, MapFn lift, MapFn restrict)
    : inner_dim_(inner_dim), outer_dim_(outer_dim), lift_(std::move(lift)), restrict_(std::move(restrict)) {
  if (inner_dim_ > outer_dim_) throw DimensionError("embedding: subspace larger than ambient space");
}

Field Embedding::lift(const Field& b) const {
  require_same_size(b.size(), inner_dim_, "Embedding::lift");
  Field out(outer_dim_);
  lift_(b.values(), out.values());
  return out;
}

Field Embedding::restrict(const Field& x) const {
  require_same_size(x.size(), outer_dim_, "Embedding::restrict");
  Field out(inner_dim_);
  restrict_(x.values(), out.values());
  return out;
}

Operator Embedding::projection() const {
  auto self = *this;
  return Operator::self_adjoint(
      outer_dim_,
      [self](std::span<const Complex> x, std::span<Complex> y) {
        Field inner_part(self.inner_dim_);
        self.restrict_(x, inner_part.values());
        self.lift_(inner_part.values(), y);
      },
      true);
}

double operator_norm_estimate(const Operator& op, int iters) {
  if (iters < 1) throw std::invalid_argument("operator_norm_estimate: iters must be >= 1");
  const std::size_t n = op.dim();
  if (n == 0) throw DimensionError("operator_norm_estimate: zero-dimensional operator");

  // Deterministic start with every coordinate excited.
  Field x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) + 1.0;
    x[i] = Complex(1.0 + 0.5 * std::sin(1.7 * t), 0.25 * std::cos(2.3 * t));
  }
  x *= 1.0 / norm(x);

  Field ax(n), atax(n);
  double best = 0.0;
  for (int k = 0; k < iters; ++k) {
    op.apply(x.values(), ax.values());
    const double estimate = norm(ax);
    const double previous = best;
    best = std::max(best, estimate);
    op.apply_adjoint(ax.values(), atax.values());
    const double next_norm = norm(atax);
    if (next_norm == 0.0) break;
    x = atax;
    x *= 1.0 / next_norm;
    if (k > 0 && std::abs(best - previous) <= 1e-10 * best) break;
  }
  return best;
}

Field random_field(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  Field out(n);
  for (auto& v : out) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v = Complex(re, im);
  }
  return out;
}

Field random_field(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_field(n, rng);
}

double adjoint_defect(const Operator& op, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Field x = random_field(op.dim(), rng);
    const Field y = random_field(op.dim(), rng);
    const Field ax = op.apply(x);
    const Field aty = op.apply_adjoint(y);
    const double scale = norm(ax) * norm(y) + norm(x) * norm(aty);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(inner(ax, y) - inner(x, aty)) / scale);
  }
  return worst;
}

double idempotence_defect(const Operator& op, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Field x = random_field(op.dim(), rng);
    const Field ax = op.apply(x);
    const Field aax = op.apply(ax);
    worst = std::max(worst, distance(aax, ax) / norm(x));
  }
  return worst;
}

}  // namespace resolvent
