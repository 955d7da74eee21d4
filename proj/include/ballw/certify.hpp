#pragma once

#include <optional>

#include "ballw/approx.hpp"

namespace ballw {

/// e^{w_prev} from the last Halley step, reused as e^{w} = e^{w_prev} e^{w - w_prev}.
struct ExpCache {
  CFloat w_prev;
  ComplexBall exp_prev;
};

struct CertInput {
  ComplexBall z;
  long k = 0;
  CFloat w;
  long prec = 53;
  std::optional<ExpCache> exp_cache;
};

/// Enclosure of W_k(z) around the approximation w by backward error
/// analysis, or an indeterminate ball when the branch or the path from z to
/// w e^w cannot be verified. z must not straddle the cut of W_k.
ComplexBall certify(const CertInput& in);

/// Real variant for k = 0 on (-1/e, inf) and k = -1 on (-1/e, 0): returns
/// [w +/- r]. Indeterminate when w or the segment leaves that domain.
RealBall certify_real(const RealBall& x, long k, const Float& w, long prec);

}  // namespace ballw
