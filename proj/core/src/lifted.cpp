#include "resolvent/lifted.hpp"

#include <array>
#include <cmath>

namespace resolvent {

namespace {

using Triple = std::array<Complex, 3>;

Triple as_triple(const ShiftParams& s) { return {s.s1, s.s2, s.s3}; }
Triple conjugated(const Triple& t) { return {std::conj(t[0]), std::conj(t[1]), std::conj(t[2])}; }

/// out_k = t_k * Q(sum_j t_j x_j) for each block k.
void apply_structured_projection(const Operator& q, const Triple& t, std::span<const Complex> x,
                                 std::span<Complex> out) {
  const std::size_t n = q.dim();
  Field combined(n);
  for (std::size_t i = 0; i < n; ++i) combined[i] = t[0] * x[i] + t[1] * x[n + i] + t[2] * x[2 * n + i];
  Field projected(n);
  q.apply(combined.values(), projected.values());
  for (std::size_t b = 0; b < 3; ++b) {
    for (std::size_t i = 0; i < n; ++i) out[b * n + i] = t[b] * projected[i];
  }
}

void apply_lifted_gamma(const Operator& gamma, std::span<const Complex> x, std::span<Complex> out) {
  const std::size_t n = gamma.dim();
  gamma.apply(x.subspan(0, n), out.subspan(0, n));
  for (std::size_t i = 0; i < n; ++i) {
    out[n + i] = x[n + i];
    out[2 * n + i] = Complex{};
  }
}

/// out = (I - 2 Gamma_)(2 Q_ - I) x.
void apply_lifted_d(const Operator& q, const Operator& gamma, const Triple& t, std::span<const Complex> x,
                    std::span<Complex> out) {
  const std::size_t n = q.dim();
  Field w(3 * n);
  apply_structured_projection(q, t, x, w.values());
  for (std::size_t i = 0; i < 3 * n; ++i) w[i] = 2.0 * w[i] - x[i];
  Field gw(n);
  gamma.apply(w.values().subspan(0, n), gw.values());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = w[i] - 2.0 * gw[i];
    out[n + i] = -w[n + i];
    out[2 * n + i] = w[2 * n + i];
  }
}

/// D_^dagger = (2 Q_^dagger - I)(I - 2 Gamma_).
void apply_lifted_d_adjoint(const Operator& q, const Operator& gamma, const Triple& t,
                            std::span<const Complex> x, std::span<Complex> out) {
  const std::size_t n = q.dim();
  Field y(3 * n);
  Field gx(n);
  gamma.apply(x.subspan(0, n), gx.values());
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = x[i] - 2.0 * gx[i];
    y[n + i] = -x[n + i];
    y[2 * n + i] = x[2 * n + i];
  }
  Field py(3 * n);
  apply_structured_projection(q, conjugated(t), y.values(), py.values());
  for (std::size_t i = 0; i < 3 * n; ++i) out[i] = 2.0 * py[i] - y[i];
}

/// out = a Q_ x + b (x - Q_ x).
void apply_lifted_h(const Operator& q, const Triple& t, Complex a, Complex b, std::span<const Complex> x,
                    std::span<Complex> out) {
  const std::size_t n = q.dim();
  Field px(3 * n);
  apply_structured_projection(q, t, x, px.values());
  for (std::size_t i = 0; i < 3 * n; ++i) out[i] = a * px[i] + b * (x[i] - px[i]);
}

}  // namespace

LiftedOperators build_lifted(const Operator& q, const Operator& gamma, const ShiftParams& shift,
                             Complex sigma_underline) {
  require_same_size(q.dim(), gamma.dim(), "build_lifted");
  const std::size_t n3 = 3 * q.dim();
  const Triple t = as_triple(shift);
  const Triple tc = conjugated(t);

  const Complex root = std::sqrt(sigma_underline);
  const Complex a = 2.0 / (sigma_underline + root);
  const Complex b = 2.0 / (1.0 + root);

  LiftedOperators out;
  out.shift = shift;
  out.sigma_underline = sigma_underline;
  out.v = v_of_w(root);
  out.q = q;
  // z_lift is defined by sigma_ = 1 - 1/z_lift.
  out.z_lifted = 1.0 / (1.0 - sigma_underline);

  out.q_underline = Operator(
      n3, [q, t](std::span<const Complex> x, std::span<Complex> y) { apply_structured_projection(q, t, x, y); },
      [q, tc](std::span<const Complex> x, std::span<Complex> y) { apply_structured_projection(q, tc, x, y); },
      OperatorFlags{false, true});

  out.gamma_underline = Operator::self_adjoint(
      n3, [gamma](std::span<const Complex> x, std::span<Complex> y) { apply_lifted_gamma(gamma, x, y); }, true);

  out.d_underline = Operator(
      n3, [q, gamma, t](std::span<const Complex> x, std::span<Complex> y) { apply_lifted_d(q, gamma, t, x, y); },
      [q, gamma, t](std::span<const Complex> x, std::span<Complex> y) {
        apply_lifted_d_adjoint(q, gamma, t, x, y);
      });

  out.h_underline = Operator(
      n3, [q, t, a, b](std::span<const Complex> x, std::span<Complex> y) { apply_lifted_h(q, t, a, b, x, y); },
      [q, tc, a, b](std::span<const Complex> x, std::span<Complex> y) {
        apply_lifted_h(q, tc, std::conj(a), std::conj(b), x, y);
      });
  return out;
}

LiftedOperators build_lifted(const Operator& q, const Operator& gamma, Complex z, const SpectralInterval& iv) {
  const Complex sigma_u = sigma_underline_of_z(z, iv);
  return build_lifted(q, gamma, lifting_shift(iv), sigma_u);
}

Field LiftedOperators::readout(const Field& flat) const {
  const std::size_t n = q.dim();
  require_same_size(flat.size(), 3 * n, "LiftedOperators::readout");
  const Complex root = std::sqrt(sigma_underline);
  const Complex a = 2.0 / (sigma_underline + root);
  const Complex b = 2.0 / (1.0 + root);
  Field combined(n);
  for (std::size_t i = 0; i < n; ++i) {
    combined[i] = shift.s1 * flat[i] + shift.s2 * flat[n + i] + shift.s3 * flat[2 * n + i];
  }
  const Field projected = q.apply(combined);
  Field out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex qx = shift.s1 * projected[i];
    out[i] = a * qx + b * (flat[i] - qx);
  }
  return out;
}

}  // namespace resolvent
