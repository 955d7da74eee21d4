#pragma once

#include "ballw/branch.hpp"
#include "ballw/complex_ball.hpp"

namespace ballw {

/// Term counts for the direct series paths: Taylor at 0, asymptotic in
/// (sigma, tau), Puiseux at -1/e.
struct SeriesParams {
  int T = 12;
  int L = 10;
  int M = 10;
  int P = 20;
};

struct EvalRequest {
  ComplexBall z;
  BranchSpec spec;
  long prec = 53;
  SeriesParams tuning;
};

/// Enclosure of W_k(z) for the requested branch and cut convention.
/// Indeterminate for non-finite z, for k != 0 with 0 in z, and when the
/// precision does not resolve z against a cut.
ComplexBall lambertw(const EvalRequest& req);

/// Real W_0 on (-1/e, inf) or W_{-1} on (-1/e, 0); indeterminate outside.
RealBall lambertw_real(const RealBall& x, long k, long prec, const SeriesParams& tuning = {});

inline ComplexBall evaluate(const ComplexBall& z, long k, Cut cut, long prec) {
  return lambertw({z, {k, cut}, prec, {}});
}

inline RealBall evaluate_real(const RealBall& x, long k, long prec) { return lambertw_real(x, k, prec); }

}  // namespace ballw
