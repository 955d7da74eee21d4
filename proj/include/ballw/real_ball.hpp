#pragma once

#include <string>

#include "ballw/float.hpp"
#include "ballw/mag.hpp"

namespace ballw {

/// Real interval [mid - rad, mid + rad] with an arbitrary-precision midpoint
/// and a Mag radius. rad = +inf means "any real number".
class RealBall {
 public:
  RealBall() = default;
  RealBall(int v) : mid_(v) {}
  RealBall(long v) : mid_(v) {}
  explicit RealBall(Float mid, Mag rad = Mag());

  static RealBall indeterminate();
  /// Smallest-effort ball containing [lo, hi], midpoint rounded to prec bits.
  static RealBall from_bounds(const Float& lo, const Float& hi, long prec);

  const Float& mid() const { return mid_; }
  const Mag& rad() const { return rad_; }

  bool is_finite() const { return mid_.is_finite() && rad_.is_finite(); }
  bool is_exact() const { return rad_.is_zero(); }
  bool is_zero() const { return is_exact() && mid_.is_zero(); }

  /// Endpoints rounded outward at the given precision.
  Float lower(long prec = 64) const;
  Float upper(long prec = 64) const;
  /// Bounds for sup |x| and inf |x| over the ball.
  Mag abs_upper() const;
  Mag abs_lower() const;

  bool contains(const Float& x) const;
  bool contains(const RealBall& x) const;
  bool contains_zero() const { return contains(Float()); }
  bool overlaps(const RealBall& x) const;

  // Strong predicates: true only when every point of the ball satisfies them.
  bool is_positive() const;
  bool is_nonnegative() const;
  bool is_negative() const;
  bool is_nonpositive() const;

  RealBall operator-() const { return RealBall(-mid_, rad_); }
  RealBall add_error(const Mag& err) const { return RealBall(mid_, rad_ + err); }
  RealBall mul_2exp(exp_t e) const { return RealBall(mid_.mul_2exp(e), rad_.mul_2exp(e)); }

  std::string repr() const;

 private:
  Float mid_;
  Mag rad_;
};

RealBall add(const RealBall& a, const RealBall& b, long prec);
RealBall sub(const RealBall& a, const RealBall& b, long prec);
RealBall mul(const RealBall& a, const RealBall& b, long prec);
RealBall div(const RealBall& a, const RealBall& b, long prec);
RealBall sqr(const RealBall& a, long prec);
RealBall abs(const RealBall& a);
/// Rounds the midpoint to prec bits, moving the rounding error into the radius.
RealBall set_round(const RealBall& a, long prec);

RealBall exp(const RealBall& a, long prec);
/// Indeterminate unless a is strictly positive.
RealBall log(const RealBall& a, long prec);
/// Contains sqrt of the nonnegative part of a; indeterminate if a < 0 entirely.
RealBall sqrt(const RealBall& a, long prec);
RealBall sin(const RealBall& a, long prec);
RealBall cos(const RealBall& a, long prec);
/// sin(x)/x with sinc(0) = 1.
RealBall sinc(const RealBall& a, long prec);
/// Principal argument of x + yi, enclosing both +pi and -pi when the input
/// straddles the negative real axis.
RealBall atan2(const RealBall& y, const RealBall& x, long prec);

RealBall const_pi(long prec);
RealBall const_e(long prec);
RealBall const_ln2(long prec);

/// Ball containing both operands.
RealBall union_of(const RealBall& a, const RealBall& b, long prec);
/// Ball containing [lo, hi] given as balls: from lower(lo) to upper(hi).
RealBall hull(const RealBall& lo, const RealBall& hi, long prec);

}  // namespace ballw
