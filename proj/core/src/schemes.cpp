#include "resolvent/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "resolvent/lifted.hpp"

namespace resolvent {

std::string to_string(const Scheme& scheme) {
  switch (scheme.kind) {
    case SchemeKind::PowerSeries: return "power";
    case SchemeKind::Accelerated: return "accelerated";
    case SchemeKind::Lifted: return "lifted";
    case SchemeKind::Richardson:
      switch (scheme.reference) {
        case ReferenceChoice::HalfSum: return "richardson";
        case ReferenceChoice::Optimal: return "richardson-optimal";
        case ReferenceChoice::Explicit: return "richardson-explicit";
      }
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "power") return Scheme::power_series();
  if (name == "richardson" || name == "richardson-halfsum") return Scheme::richardson(ReferenceChoice::HalfSum);
  if (name == "richardson-optimal") return Scheme::richardson(ReferenceChoice::Optimal);
  if (name == "accelerated") return Scheme::accelerated();
  if (name == "lifted") return Scheme::lifted();
  throw std::invalid_argument("unknown scheme '" + name +
                              "' (expected power, richardson, richardson-optimal, accelerated, lifted)");
}

double equation_residual(const Operator& q, const Operator& gamma, Complex z, const Field& e, const Field& h) {
  Field le = q.apply(e);
  for (std::size_t i = 0; i < le.size(); ++i) le[i] = e[i] - le[i] / z;
  const Field gle = gamma.apply(le);
  return distance(gle, h);
}

namespace {

void require_nonzero(Complex z) {
  if (z == Complex{} || !is_finite(z)) throw std::domain_error("z must be finite and nonzero");
}

/// Projects h onto range(Gamma) when it has a component outside it.
Field admissible_rhs(const Operator& gamma, const Field& h, std::vector<std::string>& warnings) {
  require_same_size(gamma.dim(), h.size(), "right-hand side");
  Field projected = gamma.apply(h);
  const double h_norm = norm(h);
  if (distance(projected, h) > 1e-12 * std::max(h_norm, 1e-300)) {
    warnings.emplace_back("right-hand side not in range(Gamma); projected h <- Gamma h");
  }
  return projected;
}

void attach_warnings(SolveResult& result, std::vector<std::string> warnings) {
  result.trace.warnings.insert(result.trace.warnings.begin(), warnings.begin(), warnings.end());
}

SeriesMonitor equation_monitor(const Operator& q, const Operator& gamma, Complex z, const Field& h) {
  SeriesMonitor monitor;
  monitor.residual = [q, gamma, z, &h](const Field& e) { return equation_residual(q, gamma, z, e, h); };
  monitor.reference_norm = norm(h);
  monitor.oracle_rhs = &h;
  return monitor;
}

}  // namespace

SolveResult solve_power_series(const Operator& q, const Operator& gamma, Complex z, const Field& h_in,
                               const SolveConfig& cfg) {
  require_nonzero(z);
  require_same_size(q.dim(), gamma.dim(), "solve_power_series");
  std::vector<std::string> warnings;
  const Field h = admissible_rhs(gamma, h_in, warnings);

  // For E in range(Gamma) the fixed-point residual of E <- Gamma Q E / z + h
  // is exactly Gamma L E - h.
  const Operator gamma_q = compose(gamma, q);
  SolveResult result = iterate_affine(gamma_q, 1.0 / z, h, cfg);
  attach_warnings(result, std::move(warnings));
  return result;
}

SolveResult solve_richardson(const Operator& q, const Operator& gamma, Complex z, ReferenceChoice choice,
                             const std::optional<SpectralInterval>& iv, const Field& h_in,
                             const SolveConfig& cfg, Complex explicit_c) {
  require_nonzero(z);
  require_same_size(q.dim(), gamma.dim(), "solve_richardson");
  if (iv && iv->on_cut(z)) throw SpectralCutError();

  Complex c{};
  switch (choice) {
    case ReferenceChoice::HalfSum: c = half_sum_reference(z); break;
    case ReferenceChoice::Optimal:
      if (!iv) throw std::invalid_argument("Richardson with the optimal reference needs a spectral interval");
      c = optimal_reference(z, *iv);
      break;
    case ReferenceChoice::Explicit: c = explicit_c; break;
  }
  if (c == Complex{} || !is_finite(c)) throw std::domain_error("Richardson reference constant c must be nonzero");

  std::vector<std::string> warnings;
  const Field h = admissible_rhs(gamma, h_in, warnings);

  // I - L/c = (1 - 1/c) I + Q/(c z).
  const Complex diag = 1.0 - 1.0 / c;
  const Complex coupling = 1.0 / (c * z);
  const std::size_t n = q.dim();
  const Operator step(
      n,
      [q, gamma, diag, coupling, n](std::span<const Complex> x, std::span<Complex> y) {
        Field t(n);
        q.apply(x, t.values());
        for (std::size_t i = 0; i < n; ++i) t[i] = diag * x[i] + coupling * t[i];
        gamma.apply(t.values(), y);
      },
      [q, gamma, diag, coupling, n](std::span<const Complex> x, std::span<Complex> y) {
        Field gx(n);
        gamma.apply(x, gx.values());
        q.apply(gx.values(), y);
        for (std::size_t i = 0; i < n; ++i) y[i] = std::conj(diag) * gx[i] + std::conj(coupling) * y[i];
      });

  Field seed = h;
  seed *= 1.0 / c;

  SeriesMonitor monitor = equation_monitor(q, gamma, z, h);
  monitor.readout = [](const Field& x) { return x; };
  SolveResult result = iterate_series(step, 1.0, seed, cfg, monitor);
  attach_warnings(result, std::move(warnings));
  return result;
}

SolveResult solve_accelerated(const Operator& q, const Operator& gamma, Complex z, const Field& h_in,
                              const SolveConfig& cfg) {
  require_nonzero(z);
  require_same_size(q.dim(), gamma.dim(), "solve_accelerated");
  const Complex sigma = sigma_of_z(z);
  const Complex u = u_of_sigma(sigma);  // throws on the negative real axis

  std::vector<std::string> warnings;
  if (sigma.real() < 0.0) {
    warnings.emplace_back("sigma in the left half-plane; the rate bound |u| is not guaranteed");
  }
  const Field h = admissible_rhs(gamma, h_in, warnings);

  const std::size_t n = q.dim();
  // D = (I - 2 Gamma)(2Q - I); its adjoint is (2Q - I)(I - 2 Gamma).
  const Operator d(
      n,
      [q, gamma, n](std::span<const Complex> x, std::span<Complex> y) {
        Field w(n);
        q.apply(x, w.values());
        for (std::size_t i = 0; i < n; ++i) w[i] = 2.0 * w[i] - x[i];
        gamma.apply(w.values(), y);
        for (std::size_t i = 0; i < n; ++i) y[i] = w[i] - 2.0 * y[i];
      },
      [q, gamma, n](std::span<const Complex> x, std::span<Complex> y) {
        Field w(n);
        gamma.apply(x, w.values());
        for (std::size_t i = 0; i < n; ++i) w[i] = x[i] - 2.0 * w[i];
        q.apply(w.values(), y);
        for (std::size_t i = 0; i < n; ++i) y[i] = 2.0 * y[i] - w[i];
      });

  const Complex root = std::sqrt(sigma);
  const Complex on_q = 2.0 / (root * (1.0 + root));
  const Complex off_q = 2.0 / (1.0 + root);

  SeriesMonitor monitor = equation_monitor(q, gamma, z, h);
  monitor.readout = [q, gamma, on_q, off_q, n](const Field& x) {
    Field hx = q.apply(x);
    for (std::size_t i = 0; i < n; ++i) hx[i] = on_q * hx[i] + off_q * (x[i] - hx[i]);
    return gamma.apply(hx);
  };
  SolveResult result = iterate_series(d, u, h, cfg, monitor);
  attach_warnings(result, std::move(warnings));
  return result;
}

SolveResult solve_lifted(const Operator& q, const Operator& gamma, Complex z, const SpectralInterval& iv,
                         const Field& h_in, const SolveConfig& cfg) {
  require_nonzero(z);
  require_same_size(q.dim(), gamma.dim(), "solve_lifted");
  const LiftedOperators lifted = build_lifted(q, gamma, z, iv);  // throws on the cut

  std::vector<std::string> warnings;
  const Field h = admissible_rhs(gamma, h_in, warnings);
  const std::size_t n = q.dim();

  Field seed(3 * n);
  std::copy(h.begin(), h.end(), seed.begin());

  SeriesMonitor monitor = equation_monitor(q, gamma, z, h);
  monitor.readout = [lifted, gamma](const Field& x) { return gamma.apply(lifted.readout(x)); };
  SolveResult result = iterate_series(lifted.d_underline, lifted.v, seed, cfg, monitor);
  attach_warnings(result, std::move(warnings));
  return result;
}

SolveResult solve(const Operator& q, const Operator& gamma, Complex z, const Field& h, const Scheme& scheme,
                  const std::optional<SpectralInterval>& iv, const SolveConfig& cfg) {
  switch (scheme.kind) {
    case SchemeKind::PowerSeries: return solve_power_series(q, gamma, z, h, cfg);
    case SchemeKind::Richardson:
      return solve_richardson(q, gamma, z, scheme.reference, iv, h, cfg, scheme.explicit_c);
    case SchemeKind::Accelerated: return solve_accelerated(q, gamma, z, h, cfg);
    case SchemeKind::Lifted:
      if (!iv) throw std::invalid_argument("the lifted scheme needs a spectral interval");
      return solve_lifted(q, gamma, z, *iv, h, cfg);
  }
  throw std::logic_error("unhandled scheme");
}

ResolventResult resolvent_apply(const Operator& q, const Embedding& p, Complex z, const Field& b,
                                const Scheme& scheme, const std::optional<SpectralInterval>& iv,
                                const SolveConfig& cfg) {
  require_nonzero(z);
  require_same_size(q.dim(), p.outer_dim(), "resolvent_apply");
  const Operator gamma = p.projection();
  const Field h = p.lift(b);
  SolveResult inner_solve = solve(q, gamma, z, h, scheme, iv, cfg);
  Field y = p.restrict(inner_solve.solution);
  y *= 1.0 / z;
  return {std::move(y), std::move(inner_solve.trace)};
}

ResolventResult resolvent_apply(const Operator& q, const Operator& gamma, Complex z, const Field& b,
                                const Scheme& scheme, const std::optional<SpectralInterval>& iv,
                                const SolveConfig& cfg) {
  require_nonzero(z);
  SolveResult inner_solve = solve(q, gamma, z, b, scheme, iv, cfg);
  Field y = std::move(inner_solve.solution);
  y *= 1.0 / z;
  return {std::move(y), std::move(inner_solve.trace)};
}

}  // namespace resolvent
