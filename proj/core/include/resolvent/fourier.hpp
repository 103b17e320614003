#pragma once

#include "resolvent/operator.hpp"
#include "resolvent/phase_map.hpp"

namespace resolvent {

// Vector fields on a grid are stored component-major: component c occupies
// entries [c * cells, (c + 1) * cells), each block in the grid's cell order.

/// Gamma = grad (laplacian)^{-1} div on d-component fields: k k^T / |k|^2 at
/// each nonzero frequency and 0 at k = 0. Hermitian projection.
Operator fourier_gamma_conductivity(const GridSpec& grid);

/// Rank-one projection a a^dagger / |a|^2 per frequency on (d+1)-component
/// fields, a = (i k sqrt(hbar2m), sqrt(V0 - E0)) with k = 2 pi m. Throws unless
/// V0 - E0 > 0 and hbar2m > 0.
Operator fourier_gamma_schrodinger(const GridSpec& grid, double v0, double e0, double hbar2m);

/// z for the Schrodinger problem with potential V0 + V1 chi.
double schrodinger_z(double v0, double v1, double e0);

/// Q = chi I acting on `components`-component fields.
Operator phase_operator(const PhaseMap& phase, int components);

/// Samples f at cell positions x_a = i_a / n_a into component `component` of a
/// zero-initialized field with `components` components.
template <class F>
Field sample_component(const GridSpec& grid, int components, int component, F&& f) {
  Field out(grid.cells() * static_cast<std::size_t>(components));
  std::vector<double> x(grid.dims().size());
  for (std::size_t cell = 0; cell < grid.cells(); ++cell) {
    const auto idx = grid.unflatten(cell);
    for (std::size_t a = 0; a < idx.size(); ++a) x[a] = static_cast<double>(idx[a]) / grid.dims()[a];
    out[static_cast<std::size_t>(component) * grid.cells() + cell] = f(x);
  }
  return out;
}

/// Cell average of each component.
std::vector<Complex> component_means(const Field& field, const GridSpec& grid, int components);

}  // namespace resolvent
