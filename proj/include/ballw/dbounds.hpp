#pragma once

#include "ballw/complex_ball.hpp"

namespace ballw {

/// Upper bound for |W_k'(z)| over all z in U, the smallest of the
/// applicable closed-form bounds. +inf when none applies (for instance
/// 0 in U with k != 0). U must not straddle a cut of W_k.
Mag bound_wp(const ComplexBall& U, long k);

}  // namespace ballw
