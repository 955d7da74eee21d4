#pragma once

#include <string>

#include "ballw/real_ball.hpp"

namespace ballw {

/// Rectangle re x im of two real balls.
class ComplexBall {
 public:
  ComplexBall() = default;
  ComplexBall(int v) : re_(v) {}
  ComplexBall(long v) : re_(v) {}
  ComplexBall(RealBall re, RealBall im = RealBall()) : re_(std::move(re)), im_(std::move(im)) {}

  static ComplexBall indeterminate() { return {RealBall::indeterminate(), RealBall::indeterminate()}; }

  const RealBall& re() const { return re_; }
  const RealBall& im() const { return im_; }

  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_exact() const { return re_.is_exact() && im_.is_exact(); }
  /// Imaginary part is exactly zero.
  bool is_real() const { return im_.is_zero(); }

  Mag abs_upper() const;
  Mag abs_lower() const;

  bool contains(const ComplexBall& z) const { return re_.contains(z.re_) && im_.contains(z.im_); }
  bool contains(const Float& re, const Float& im) const { return re_.contains(re) && im_.contains(im); }
  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool overlaps(const ComplexBall& z) const { return re_.overlaps(z.re_) && im_.overlaps(z.im_); }

  ComplexBall operator-() const { return {-re_, -im_}; }
  ComplexBall conj() const { return {re_, -im_}; }
  ComplexBall mid() const { return {RealBall(re_.mid()), RealBall(im_.mid())}; }
  ComplexBall add_error(const Mag& err) const { return {re_.add_error(err), im_.add_error(err)}; }
  ComplexBall mul_2exp(exp_t e) const { return {re_.mul_2exp(e), im_.mul_2exp(e)}; }

  std::string repr() const;

 private:
  RealBall re_;
  RealBall im_;
};

ComplexBall add(const ComplexBall& a, const ComplexBall& b, long prec);
ComplexBall sub(const ComplexBall& a, const ComplexBall& b, long prec);
ComplexBall mul(const ComplexBall& a, const ComplexBall& b, long prec);
ComplexBall mul(const ComplexBall& a, const RealBall& b, long prec);
ComplexBall div(const ComplexBall& a, const ComplexBall& b, long prec);
ComplexBall sqr(const ComplexBall& a, long prec);
ComplexBall set_round(const ComplexBall& a, long prec);

ComplexBall exp(const ComplexBall& a, long prec);
/// Principal branch, Im in (-pi, pi]. When a straddles (-inf, 0] the result
/// contains the values from both sides of the cut.
ComplexBall log(const ComplexBall& a, long prec);
/// Principal branch with the same cut conventions as log.
ComplexBall sqrt(const ComplexBall& a, long prec);

ComplexBall union_of(const ComplexBall& a, const ComplexBall& b, long prec);

}  // namespace ballw
