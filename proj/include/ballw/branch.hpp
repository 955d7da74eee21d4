#pragma once

#include <utility>

#include "ballw/complex_ball.hpp"

namespace ballw {

enum class Cut {
  Standard,
  Left,    // W_k above the real axis joined with W_{k+1} below
  Middle,  // W_{-1} above joined with W_1 below; k is ignored
};

struct BranchSpec {
  long k = 0;
  Cut cut = Cut::Standard;
};

/// True only if every point of w lies in the image of W_k. Evaluated with
/// strong interval predicates, so it can fail for points near the boundary
/// curves or for wide balls.
bool range_check(const ComplexBall& w, long k, long prec);

/// True if the straight segment inside U provably avoids the cut of W_k:
/// U is in a closed upper or open lower half plane, or to the right of the
/// branch point.
bool cut_clearance(const ComplexBall& U, long k);

/// True if z has points strictly below the real axis and points on or
/// above it, and its real part meets the cut of the given branch.
bool straddles_cut(const ComplexBall& z, const BranchSpec& spec);

/// Ball [0, h] with h >= hi (hi >= 0) whose lower endpoint is exactly 0.
RealBall zero_to(const Float& hi);

/// z_a = Re z + (Im z & [0, inf)) i and z_b = Re z + (-Im z & [0, inf)) i,
/// so that z is covered by z_a and conj(z_b).
std::pair<ComplexBall, ComplexBall> split_half_planes(const ComplexBall& z, long prec);

}  // namespace ballw
