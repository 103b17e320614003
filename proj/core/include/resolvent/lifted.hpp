#pragma once

#include "resolvent/field.hpp"
#include "resolvent/operator.hpp"
#include "resolvent/scalar_maps.hpp"

namespace resolvent {

/// Operators of the lifted problem on H x H x H.
///
/// With shift triple t (t^T t = 1):
///   Q_ = (t t^T) (x) Q          applied as p = Q(t1 x0 + t2 x1 + t3 x2), (t1 p, t2 p, t3 p)
///   Gamma_ = diag(Gamma, I, 0)
///   D_ = (I - 2 Gamma_)(2 Q_ - I)
///   H_ = 2 Q_ / (sigma_ + sqrt(sigma_)) + 2 (I - Q_) / (1 + sqrt(sigma_))
/// and [I - Gamma Q / z]^{-1} h = first block of H_ sum_n v^n D_^n (h, 0, 0).
///
/// Q_ is a projection but not Hermitian; Gamma_ is an orthogonal projection.
/// All operators act on flattened tripled fields of length 3n.
struct LiftedOperators {
  Operator q_underline;
  Operator gamma_underline;
  Operator h_underline;
  Operator d_underline;
  Complex v;
  Complex sigma_underline;
  /// t1^2 z + t2^2; equals -(s1^2 z + s2^2) for the shift_params triple s.
  Complex z_lifted;
  ShiftParams shift;
  /// The original projection Q, kept for the readout.
  Operator q;

  /// Block 0 of H_ x, computed with a single Q application.
  Field readout(const Field& flat) const;
};

LiftedOperators build_lifted(const Operator& q, const Operator& gamma, Complex z, const SpectralInterval& iv);

/// Lifted operators for an explicit shift triple (must satisfy t^T t = 1) and
/// lifted parameter sigma_. Used to check the projection structure of Q_.
LiftedOperators build_lifted(const Operator& q, const Operator& gamma, const ShiftParams& shift,
                             Complex sigma_underline);

}  // namespace resolvent
