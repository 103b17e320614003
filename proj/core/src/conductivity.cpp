#include "resolvent/conductivity.hpp"

#include <cmath>
#include <stdexcept>

namespace resolvent {

namespace {

Field apply_l(const PhaseMap& chi, Complex sigma, const Field& e) {
  const std::size_t cells = chi.grid.cells();
  Field out = e;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (chi.chi[i % cells]) out[i] *= sigma;
  }
  return out;
}

PhaseMap complement(const PhaseMap& chi) {
  PhaseMap out = chi;
  for (auto& c : out.chi) c = c ? 0 : 1;
  return out;
}

}  // namespace

ConductivityResult conductivity_solve(const GridSpec& grid, const PhaseMap& chi, Complex sigma,
                                      const std::vector<Complex>& e_bar, const Scheme& scheme,
                                      const std::optional<SpectralInterval>& iv, const SolveConfig& cfg) {
  if (!(chi.grid == grid)) throw DimensionError("phase map grid does not match the solve grid");
  if (chi.chi.size() != grid.cells()) throw DimensionError("phase map size does not match its grid");
  const int d = grid.dimension();
  if (e_bar.size() != static_cast<std::size_t>(d)) throw DimensionError("e_bar needs one entry per axis");
  if (!is_finite(sigma) || sigma == Complex{}) throw std::domain_error("sigma must be finite and nonzero");

  const std::size_t cells = grid.cells();
  Field mean_field(cells * static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) {
    for (std::size_t i = 0; i < cells; ++i) mean_field[static_cast<std::size_t>(c) * cells + i] = e_bar[c];
  }

  ConductivityResult result;
  const Operator gamma = fourier_gamma_conductivity(grid);

  if (sigma == Complex(1.0)) {
    // Homogeneous medium: no fluctuation.
    result.e = mean_field;
    result.trace.status = SolveStatus::Converged;
  } else {
    const bool swap = std::abs(sigma) > 1.0;
    const PhaseMap active = swap ? complement(chi) : chi;
    const Complex sigma_active = swap ? 1.0 / sigma : sigma;
    const Complex z = 1.0 / (1.0 - sigma_active);
    std::optional<SpectralInterval> iv_active = iv.value_or(SpectralInterval::unit());
    if (swap) iv_active = SpectralInterval(1.0 - iv_active->upper(), 1.0 - iv_active->lower());

    // h = -Gamma L_active e_bar = -(sigma_active - 1) Gamma (chi_active e_bar).
    const Operator q = phase_operator(active, d);
    Field source = q.apply(mean_field);
    source *= -(sigma_active - 1.0);
    const Field h = gamma.apply(source);

    SolveResult solved = solve(q, gamma, z, h, scheme, iv_active, cfg);
    result.e = mean_field;
    result.e += solved.solution;
    result.trace = std::move(solved.trace);
    result.phases_swapped = swap;
  }

  result.effective_column = component_means(apply_l(chi, sigma, result.e), grid, d);
  return result;
}

Complex conductivity_energy(const PhaseMap& chi, Complex sigma, const Field& e) {
  const Field le = apply_l(chi, sigma, e);
  return inner(e.values(), le.values()) / static_cast<double>(chi.grid.cells());
}

}  // namespace resolvent
