#pragma once

#include <optional>

#include "ballw/complex_ball.hpp"

namespace ballw {

struct CFloat {
  Float re;
  Float im;
};

struct ApproxOptions {
  long guard = 10;
  int step_cap = 40;
  /// Start from a hardware double solution when z is in double range.
  /// When false every step runs in arbitrary precision.
  bool use_double = true;
};

struct ApproxResult {
  CFloat w;
  /// Heuristic number of correct bits in w, relative to |w|.
  long est_bits = 0;
  /// Iterate before the last Halley step and a ball containing e^{w_prev};
  /// set when at least one arbitrary-precision step ran.
  CFloat w_prev;
  std::optional<ComplexBall> exp_prev;
  int steps = 0;
  /// Exponentials evaluated at precision >= q.
  int full_exps = 0;
};

/// Starting point for the Halley iteration for W_k(z).
CFloat initial_guess(const CFloat& z, long k);

/// One Halley step for w e^w = z at precision prec. Throws std::domain_error
/// when w = -1 exactly.
CFloat halley_step(const CFloat& w, const CFloat& z, long prec);

/// Heuristic approximation of W_k(z) to about q bits plus guard bits.
/// Not certified; see certify().
ApproxResult approx_w(const CFloat& z, long k, long q, const ApproxOptions& opt = {});

}  // namespace ballw
