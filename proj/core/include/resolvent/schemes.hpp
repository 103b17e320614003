#pragma once

#include <optional>
#include <string>

#include "resolvent/iteration.hpp"
#include "resolvent/operator.hpp"
#include "resolvent/scalar_maps.hpp"

namespace resolvent {

enum class SchemeKind { PowerSeries, Richardson, Accelerated, Lifted };

/// Reference constant c of the Richardson expansion.
enum class ReferenceChoice {
  HalfSum,   ///< c = (1 + sigma)/2
  Optimal,   ///< c = 1 - (z+ + z-)/(2z), needs the interval
  Explicit,  ///< user-supplied c
};

struct Scheme {
  SchemeKind kind = SchemeKind::PowerSeries;
  ReferenceChoice reference = ReferenceChoice::HalfSum;
  Complex explicit_c{};

  static Scheme power_series() { return {SchemeKind::PowerSeries}; }
  static Scheme richardson(ReferenceChoice choice) { return {SchemeKind::Richardson, choice}; }
  static Scheme richardson_explicit(Complex c) {
    return {SchemeKind::Richardson, ReferenceChoice::Explicit, c};
  }
  static Scheme accelerated() { return {SchemeKind::Accelerated}; }
  static Scheme lifted() { return {SchemeKind::Lifted}; }

  bool needs_interval() const {
    return kind == SchemeKind::Lifted ||
           (kind == SchemeKind::Richardson && reference == ReferenceChoice::Optimal);
  }
};

/// Names used on the command line and in JSON:
/// power, richardson (half-sum), richardson-optimal, accelerated, lifted.
std::string to_string(const Scheme& scheme);
Scheme parse_scheme(const std::string& name);

/// Solves [I - Gamma Q / z] E = h, i.e. Gamma L E = h with L = I - Q/z.
///
/// Every solver measures the relative residual |Gamma L E - h| / |h| of this
/// equation and stops when it drops below cfg.tol. A right-hand side with a
/// component outside range(Gamma) is projected first and a warning is logged
/// in the trace.

/// E <- Gamma Q E / z + h.
SolveResult solve_power_series(const Operator& q, const Operator& gamma, Complex z, const Field& h,
                               const SolveConfig& cfg);

/// E <- Gamma (I - L/c) E + h/c, the expansion of [c I + Gamma (L - c I)]^{-1}.
SolveResult solve_richardson(const Operator& q, const Operator& gamma, Complex z, ReferenceChoice choice,
                             const std::optional<SpectralInterval>& iv, const Field& h,
                             const SolveConfig& cfg, Complex explicit_c = {});

/// E = H sum_n u^n [(I - 2 Gamma)(2Q - I)]^n h with c = sqrt(sigma),
/// H = 2 [Q/sqrt(sigma) + (I - Q)] / (1 + sqrt(sigma)), u = (sqrt(sigma)-1)/(sqrt(sigma)+1).
SolveResult solve_accelerated(const Operator& q, const Operator& gamma, Complex z, const Field& h,
                              const SolveConfig& cfg);

/// Lifted series in powers of v on the tripled space; see lifted.hpp.
SolveResult solve_lifted(const Operator& q, const Operator& gamma, Complex z, const SpectralInterval& iv,
                         const Field& h, const SolveConfig& cfg);

/// Dispatches on scheme.kind.
SolveResult solve(const Operator& q, const Operator& gamma, Complex z, const Field& h, const Scheme& scheme,
                  const std::optional<SpectralInterval>& iv, const SolveConfig& cfg);

/// |Gamma (E - Q E / z) - h|.
double equation_residual(const Operator& q, const Operator& gamma, Complex z, const Field& e, const Field& h);

struct ResolventResult {
  Field value;
  IterationTrace trace;
};

/// y = [z I - P^dagger Q P]^{-1} b computed as y = P^dagger E / z with
/// E = [I - Gamma Q / z]^{-1} Gamma P b and Gamma = P P^dagger.
ResolventResult resolvent_apply(const Operator& q, const Embedding& p, Complex z, const Field& b,
                                const Scheme& scheme, const std::optional<SpectralInterval>& iv,
                                const SolveConfig& cfg);

/// Same with the subspace identified with range(Gamma) inside H: b must satisfy
/// b = Gamma b and y = E / z with E = [I - Gamma Q / z]^{-1} b.
ResolventResult resolvent_apply(const Operator& q, const Operator& gamma, Complex z, const Field& b,
                                const Scheme& scheme, const std::optional<SpectralInterval>& iv,
                                const SolveConfig& cfg);

}  // namespace resolvent
