#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace resolvent {

using Complex = std::complex<double>;

/// Raised when two fields (or a field and an operator) disagree on dimension.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Builds a complex scalar, rejecting NaN and infinite components.
Complex make_complex(double re, double im = 0.0);

/// True when both components are finite.
bool is_finite(Complex value) noexcept;

/// An element of the ambient space H: a dense, contiguous vector of complex
/// entries with value semantics.
///
/// The inner product is conjugate-linear in its FIRST argument:
/// inner(x, y) = sum_i conj(x_i) * y_i.
class Field {
public:
  Field() = default;
  explicit Field(std::size_t n) : values_(n) {}
  Field(std::size_t n, Complex fill) : values_(n, fill) {}
  Field(std::initializer_list<Complex> values) : values_(values) {}
  explicit Field(std::vector<Complex> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  Complex* data() noexcept { return values_.data(); }
  const Complex* data() const noexcept { return values_.data(); }

  std::span<Complex> values() noexcept { return values_; }
  std::span<const Complex> values() const noexcept { return values_; }

  operator std::span<Complex>() noexcept { return values_; }
  operator std::span<const Complex>() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  void fill(Complex value);
  void set_zero() { fill(Complex{}); }

  /// this += alpha * x
  Field& axpy(Complex alpha, const Field& x);

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(Complex alpha);

  const std::vector<Complex>& storage() const noexcept { return values_; }

private:
  std::vector<Complex> values_;
};

Field operator+(Field lhs, const Field& rhs);
Field operator-(Field lhs, const Field& rhs);
Field operator*(Complex alpha, Field x);

/// Conjugate-linear in x, linear in y.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);
double distance(std::span<const Complex> x, std::span<const Complex> y);

void require_same_size(std::size_t a, std::size_t b, const char* what);

/// Three equally sized blocks of H, the ambient space of the lifted problem.
/// The inner product is the sum of blockwise inner products.
struct TripledField {
  Field block0;
  Field block1;
  Field block2;

  TripledField() = default;
  explicit TripledField(std::size_t n) : block0(n), block1(n), block2(n) {}
  TripledField(Field b0, Field b1, Field b2);

  std::size_t block_size() const noexcept { return block0.size(); }
  std::size_t size() const noexcept { return 3 * block0.size(); }

  Field& block(std::size_t i);
  const Field& block(std::size_t i) const;

  /// Concatenation (block0, block1, block2) of length 3n.
  Field flatten() const;
  static TripledField from_flat(std::span<const Complex> flat);
};

Complex inner(const TripledField& x, const TripledField& y);
double norm(const TripledField& x);

}  // namespace resolvent
