#include "resolvent/field.hpp"

#include <algorithm>
#include <cmath>

namespace resolvent {

Complex make_complex(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw std::invalid_argument("complex value must have finite components");
  }
  return {re, im};
}

bool is_finite(Complex value) noexcept {
  return std::isfinite(value.real()) && std::isfinite(value.imag());
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

void Field::fill(Complex value) { std::fill(values_.begin(), values_.end(), value); }

Field& Field::axpy(Complex alpha, const Field& x) {
  require_same_size(size(), x.size(), "axpy");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += alpha * x.values_[i];
  return *this;
}

Field& Field::operator+=(const Field& other) {
  require_same_size(size(), other.size(), "operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_size(size(), other.size(), "operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(Complex alpha) {
  for (auto& v : values_) v *= alpha;
  return *this;
}

Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
Field operator*(Complex alpha, Field x) { return x *= alpha; }

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  require_same_size(x.size(), y.size(), "inner");
  Complex acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm(std::span<const Complex> x) {
  // Scaled accumulation keeps huge and tiny entries from overflowing.
  double scale = 0.0;
  for (const auto& v : x) scale = std::max({scale, std::abs(v.real()), std::abs(v.imag())});
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (const auto& v : x) {
    const double re = v.real() / scale;
    const double im = v.imag() / scale;
    sum += re * re + im * im;
  }
  return scale * std::sqrt(sum);
}

double distance(std::span<const Complex> x, std::span<const Complex> y) {
  require_same_size(x.size(), y.size(), "distance");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::norm(x[i] - y[i]);
  return std::sqrt(sum);
}

TripledField::TripledField(Field b0, Field b1, Field b2)
    : block0(std::move(b0)), block1(std::move(b1)), block2(std::move(b2)) {
  require_same_size(block0.size(), block1.size(), "TripledField");
  require_same_size(block0.size(), block2.size(), "TripledField");
}

Field& TripledField::block(std::size_t i) {
  switch (i) {
    case 0: return block0;
    case 1: return block1;
    case 2: return block2;
    default: throw std::out_of_range("TripledField has three blocks");
  }
}

const Field& TripledField::block(std::size_t i) const {
  return const_cast<TripledField*>(this)->block(i);
}

Field TripledField::flatten() const {
  const std::size_t n = block_size();
  Field flat(3 * n);
  for (std::size_t b = 0; b < 3; ++b) {
    std::copy(block(b).begin(), block(b).end(), flat.begin() + static_cast<std::ptrdiff_t>(b * n));
  }
  return flat;
}

TripledField TripledField::from_flat(std::span<const Complex> flat) {
  if (flat.size() % 3 != 0) throw DimensionError("tripled field length must be a multiple of 3");
  const std::size_t n = flat.size() / 3;
  TripledField out(n);
  for (std::size_t b = 0; b < 3; ++b) {
    auto src = flat.subspan(b * n, n);
    std::copy(src.begin(), src.end(), out.block(b).begin());
  }
  return out;
}

Complex inner(const TripledField& x, const TripledField& y) {
  return inner(x.block0, y.block0) + inner(x.block1, y.block1) + inner(x.block2, y.block2);
}

double norm(const TripledField& x) {
  const double a = norm(x.block0), b = norm(x.block1), c = norm(x.block2);
  return std::sqrt(a * a + b * b + c * c);
}

}  // namespace resolvent
