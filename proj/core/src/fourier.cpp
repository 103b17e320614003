#include "resolvent/fourier.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace resolvent {

namespace {

// FFTW planning is not thread-safe; execution with new-array functions is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

/// Forward and backward plans for one scalar grid, usable on any buffer.
class FftPair {
public:
  explicit FftPair(const GridSpec& grid) : cells_(grid.cells()) {
    std::vector<int> dims = grid.dims();
    std::vector<Complex> scratch(cells_);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, FFTW_BACKWARD, flags);
    if (!forward_ || !backward_) throw std::runtime_error("FFTW plan creation failed");
  }
  FftPair(const FftPair&) = delete;
  FftPair& operator=(const FftPair&) = delete;
  ~FftPair() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  void forward(std::span<Complex> data) const { run(forward_, data); }
  /// Unnormalized inverse; callers divide by cells().
  void backward(std::span<Complex> data) const { run(backward_, data); }
  std::size_t cells() const noexcept { return cells_; }

private:
  static void run(fftw_plan plan, std::span<Complex> data) {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
  }

  std::size_t cells_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

/// Integer frequency vectors for every cell.
std::vector<std::vector<double>> frequency_table(const GridSpec& grid) {
  std::vector<std::vector<double>> table(grid.cells());
  for (std::size_t cell = 0; cell < grid.cells(); ++cell) {
    const auto idx = grid.unflatten(cell);
    auto& k = table[cell];
    k.resize(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) k[a] = GridSpec::frequency(idx[a], grid.dims()[a]);
  }
  return table;
}

/// Builds a Hermitian operator that transforms each component, calls
/// `multiply(cell, values)` on the per-frequency component vector, and
/// transforms back.
template <class Multiply>
Operator fourier_multiplier(const GridSpec& grid, int components, Multiply multiply) {
  auto fft = std::make_shared<const FftPair>(grid);
  const std::size_t cells = grid.cells();
  const auto ncomp = static_cast<std::size_t>(components);
  auto apply = [fft, cells, ncomp, multiply](std::span<const Complex> x, std::span<Complex> y) {
    std::copy(x.begin(), x.end(), y.begin());
    for (std::size_t c = 0; c < ncomp; ++c) fft->forward(y.subspan(c * cells, cells));
    std::vector<Complex> local(ncomp);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      for (std::size_t c = 0; c < ncomp; ++c) local[c] = y[c * cells + cell];
      multiply(cell, local);
      for (std::size_t c = 0; c < ncomp; ++c) y[c * cells + cell] = local[c];
    }
    const double scale = 1.0 / static_cast<double>(cells);
    for (std::size_t c = 0; c < ncomp; ++c) fft->backward(y.subspan(c * cells, cells));
    for (auto& value : y) value *= scale;
  };
  return Operator::self_adjoint(cells * ncomp, apply, true);
}

}  // namespace

Operator fourier_gamma_conductivity(const GridSpec& grid) {
  auto table = std::make_shared<const std::vector<std::vector<double>>>(frequency_table(grid));
  return fourier_multiplier(grid, grid.dimension(), [table](std::size_t cell, std::vector<Complex>& v) {
    const auto& k = (*table)[cell];
    double k2 = 0.0;
    Complex kv{};
    for (std::size_t a = 0; a < k.size(); ++a) {
      k2 += k[a] * k[a];
      kv += k[a] * v[a];
    }
    if (k2 == 0.0) {
      std::fill(v.begin(), v.end(), Complex{});
      return;
    }
    for (std::size_t a = 0; a < k.size(); ++a) v[a] = k[a] * kv / k2;
  });
}

Operator fourier_gamma_schrodinger(const GridSpec& grid, double v0, double e0, double hbar2m) {
  if (!(v0 - e0 > 0.0)) throw std::domain_error("Schrodinger Gamma needs V0 - E0 > 0");
  if (!(hbar2m > 0.0)) throw std::domain_error("Schrodinger Gamma needs hbar^2/2m > 0");
  auto table = std::make_shared<const std::vector<std::vector<double>>>(frequency_table(grid));
  const double root_h = std::sqrt(hbar2m);
  const double root_gap = std::sqrt(v0 - e0);
  const std::size_t d = grid.dims().size();
  return fourier_multiplier(grid, grid.dimension() + 1,
                            [table, root_h, root_gap, d](std::size_t cell, std::vector<Complex>& v) {
                              const auto& m = (*table)[cell];
                              std::vector<Complex> a(d + 1);
                              double norm2 = root_gap * root_gap;
                              for (std::size_t i = 0; i < d; ++i) {
                                const double k = 2.0 * std::numbers::pi * m[i];
                                a[i] = Complex(0.0, k * root_h);
                                norm2 += k * k * root_h * root_h;
                              }
                              a[d] = root_gap;
                              Complex coeff{};
                              for (std::size_t i = 0; i <= d; ++i) coeff += std::conj(a[i]) * v[i];
                              coeff /= norm2;
                              for (std::size_t i = 0; i <= d; ++i) v[i] = a[i] * coeff;
                            });
}

double schrodinger_z(double v0, double v1, double e0) {
  if (v1 == 0.0) throw std::domain_error("schrodinger_z: V1 must be nonzero");
  return (e0 - v0) / v1;
}

Operator phase_operator(const PhaseMap& phase, int components) {
  if (phase.chi.size() != phase.grid.cells()) throw DimensionError("phase map size does not match its grid");
  if (components < 1) throw std::invalid_argument("phase_operator: components must be >= 1");
  auto chi = std::make_shared<const std::vector<std::uint8_t>>(phase.chi);
  const std::size_t cells = phase.grid.cells();
  const std::size_t dim = cells * static_cast<std::size_t>(components);
  return Operator::self_adjoint(
      dim,
      [chi, cells](std::span<const Complex> x, std::span<Complex> y) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = (*chi)[i % cells] ? x[i] : Complex{};
      },
      true);
}

std::vector<Complex> component_means(const Field& field, const GridSpec& grid, int components) {
  const std::size_t cells = grid.cells();
  require_same_size(field.size(), cells * static_cast<std::size_t>(components), "component_means");
  std::vector<Complex> means(static_cast<std::size_t>(components));
  for (std::size_t c = 0; c < means.size(); ++c) {
    Complex sum{};
    for (std::size_t i = 0; i < cells; ++i) sum += field[c * cells + i];
    means[c] = sum / static_cast<double>(cells);
  }
  return means;
}

}  // namespace resolvent
