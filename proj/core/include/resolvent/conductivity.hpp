#pragma once

#include <optional>
#include <vector>

#include "resolvent/fourier.hpp"
#include "resolvent/schemes.hpp"

namespace resolvent {

struct ConductivityResult {
  /// Total field e = e_bar + fluctuation, component-major.
  Field e;
  /// <L e> per component: one column of the effective tensor.
  std::vector<Complex> effective_column;
  IterationTrace trace;
  /// True when the solve ran on the swapped formulation (|sigma| > 1).
  bool phases_swapped = false;
};

/// Two-phase periodic conductivity with L = I + (sigma - 1) chi, phase 2
/// normalized to 1. Solves Gamma L e~ = -Gamma L e_bar for the zero-mean
/// fluctuation e~ with z = 1/(1 - sigma).
///
/// When |sigma| > 1 the equation is divided by sigma, which swaps the roles of
/// the phases (Q -> I - Q, z -> 1 - z, [z-, z+] -> [1 - z+, 1 - z-]) so that
/// every scheme sees |z| bounded away from the cut. `iv` always describes the
/// spectrum of Gamma chi Gamma; when absent, [0, 1] is used.
ConductivityResult conductivity_solve(const GridSpec& grid, const PhaseMap& chi, Complex sigma,
                                      const std::vector<Complex>& e_bar, const Scheme& scheme,
                                      const std::optional<SpectralInterval>& iv, const SolveConfig& cfg);

/// <conj(e) . L e> over the cell.
Complex conductivity_energy(const PhaseMap& chi, Complex sigma, const Field& e);

}  // namespace resolvent
