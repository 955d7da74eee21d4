#include "ballw/complex_ball.hpp"

#include "ballw/mpfr_interop.hpp"

namespace ballw {

namespace {

constexpr long kGuard = 8;

// Upper bound on the distance from mid(a) to any point of a.
Mag rect_radius(const ComplexBall& a) {
  if (a.re().rad().is_zero()) return a.im().rad();
  if (a.im().rad().is_zero()) return a.re().rad();
  return sqrt_upper(a.re().rad() * a.re().rad() + a.im().rad() * a.im().rad());
}

Mag mid_abs_lower(const ComplexBall& a) {
  const Mag x = Mag::lower(a.re().mid()), y = Mag::lower(a.im().mid());
  return sqrt_lower(add_lower(mul_lower(x, x), mul_lower(y, y)));
}

// True when a has points on both sides of (-inf, 0], i.e. strictly below the
// real axis and on or above it, with some negative real part.
bool straddles_negative_axis(const ComplexBall& a) {
  return !a.re().is_nonnegative() && a.im().lower().sign() < 0 && a.im().upper().sign() >= 0;
}

// Splits a into the part with Im >= 0 and the mirror image of the part with Im <= 0.
std::pair<ComplexBall, ComplexBall> split_upper_lower(const ComplexBall& a) {
  const RealBall up = RealBall::from_bounds(Float(), a.im().upper(), 64);
  const RealBall down = RealBall::from_bounds(Float(), (-a.im()).upper(), 64);
  return {ComplexBall(a.re(), up), ComplexBall(a.re(), down)};
}

}  // namespace

std::string ComplexBall::repr() const { return re_.repr() + " + " + im_.repr() + "i"; }

Mag ComplexBall::abs_upper() const {
  const Mag x = re_.abs_upper(), y = im_.abs_upper();
  if (y.is_zero()) return x;
  if (x.is_zero()) return y;
  return sqrt_upper(x * x + y * y);
}

Mag ComplexBall::abs_lower() const {
  const Mag x = re_.abs_lower(), y = im_.abs_lower();
  if (y.is_zero()) return x;
  if (x.is_zero()) return y;
  return sqrt_lower(add_lower(mul_lower(x, x), mul_lower(y, y)));
}

ComplexBall add(const ComplexBall& a, const ComplexBall& b, long prec) {
  return {add(a.re(), b.re(), prec), add(a.im(), b.im(), prec)};
}

ComplexBall sub(const ComplexBall& a, const ComplexBall& b, long prec) {
  return {sub(a.re(), b.re(), prec), sub(a.im(), b.im(), prec)};
}

ComplexBall mul(const ComplexBall& a, const RealBall& b, long prec) {
  return {mul(a.re(), b, prec), a.im().is_zero() ? RealBall() : mul(a.im(), b, prec)};
}

ComplexBall mul(const ComplexBall& a, const ComplexBall& b, long prec) {
  if (b.is_real()) return mul(a, b.re(), prec);
  if (a.is_real()) return mul(b, a.re(), prec);
  return {sub(mul(a.re(), b.re(), prec), mul(a.im(), b.im(), prec), prec),
          add(mul(a.re(), b.im(), prec), mul(a.im(), b.re(), prec), prec)};
}

ComplexBall sqr(const ComplexBall& a, long prec) {
  if (a.is_real()) return ComplexBall(sqr(a.re(), prec));
  return {sub(sqr(a.re(), prec), sqr(a.im(), prec), prec), mul(a.re(), a.im(), prec).mul_2exp(1)};
}

ComplexBall div(const ComplexBall& a, const ComplexBall& b, long prec) {
  if (b.is_real()) {
    return {div(a.re(), b.re(), prec), a.im().is_zero() ? RealBall() : div(a.im(), b.re(), prec)};
  }
  const long wp = prec + kGuard;
  const RealBall den = add(sqr(b.re(), wp), sqr(b.im(), wp), wp);
  if (den.contains_zero()) return ComplexBall::indeterminate();
  const ComplexBall num = mul(a, b.conj(), wp);
  return {div(num.re(), den, prec), div(num.im(), den, prec)};
}

ComplexBall set_round(const ComplexBall& a, long prec) {
  return {set_round(a.re(), prec), set_round(a.im(), prec)};
}

ComplexBall exp(const ComplexBall& a, long prec) {
  if (a.is_real()) return ComplexBall(exp(a.re(), prec));
  const long wp = prec + kGuard;
  const RealBall m = exp(a.re(), wp);
  return {mul(m, cos(a.im(), wp), prec), mul(m, sin(a.im(), wp), prec)};
}

ComplexBall log(const ComplexBall& a, long prec) {
  if (!a.is_finite()) return ComplexBall::indeterminate();
  const long wp = prec + kGuard;
  if (a.is_real() && a.re().is_positive()) return ComplexBall(log(a.re(), prec));

  const RealBall im = atan2(a.im(), a.re(), prec);
  const Mag rad = rect_radius(a);
  const Mag dist = sub_lower(mid_abs_lower(a), rad);
  if (dist.is_zero()) return {RealBall::indeterminate(), im};

  // log|mid| from a rigorous enclosure of |mid|^2.
  const Float& x = a.re().mid();
  const Float& y = a.im().mid();
  const Float xx = mul(x, x, kExact, Round::Nearest), yy = mul(y, y, kExact, Round::Nearest);
  const Float s_lo = add(xx, yy, wp + 4, Round::Floor), s_hi = add(xx, yy, wp + 4, Round::Ceil);
  const Bounds lo = log_bounds(s_lo, wp), hi = log_bounds(s_hi, wp);
  RealBall re = RealBall::from_bounds(lo.lo.mul_2exp(-1), hi.hi.mul_2exp(-1), prec);
  if (!rad.is_zero()) re = re.add_error(rad / dist);
  return {re, im};
}

namespace {

// Principal sqrt of an exact point, cancellation-free.
ComplexBall sqrt_point(const Float& x, const Float& y, long prec) {
  const long wp = prec + kGuard;
  if (y.is_zero()) {
    if (x.sign() >= 0) return ComplexBall(sqrt(RealBall(x), prec));
    return ComplexBall(RealBall(), sqrt(RealBall(-x), prec));
  }
  const RealBall bx(x), by(y);
  const RealBall modulus = sqrt(add(sqr(bx, wp), sqr(by, wp), wp), wp);
  const RealBall t = sqrt(add(modulus, abs(bx), wp).mul_2exp(-1), wp);
  const RealBall other = div(abs(by), t, wp).mul_2exp(-1);
  if (x.sign() >= 0) {
    return {set_round(t, prec), set_round(y.sign() < 0 ? -other : other, prec)};
  }
  return {set_round(other, prec), set_round(y.sign() < 0 ? -t : t, prec)};
}

}  // namespace

ComplexBall sqrt(const ComplexBall& a, long prec) {
  if (!a.is_finite()) return ComplexBall::indeterminate();
  if (a.is_real() && a.re().is_nonnegative()) return ComplexBall(sqrt(a.re(), prec));
  if (straddles_negative_axis(a)) {
    const auto [up, down] = split_upper_lower(a);
    return union_of(sqrt(up, prec), sqrt(down, prec).conj(), prec);
  }
  const Mag rad = rect_radius(a);
  const Mag dist = sub_lower(mid_abs_lower(a), rad);
  if (dist.is_zero() || dist < rad) {
    const Mag s = sqrt_upper(a.abs_upper());
    return {RealBall(Float(), s), RealBall(Float(), s)};
  }
  ComplexBall r = sqrt_point(a.re().mid(), a.im().mid(), prec);
  // |sqrt'(t)| = 1 / (2 sqrt|t|) along the segment from mid(a).
  if (!rad.is_zero()) r = r.add_error((rad / sqrt_lower(dist)).mul_2exp(-1));
  return r;
}

ComplexBall union_of(const ComplexBall& a, const ComplexBall& b, long prec) {
  return {union_of(a.re(), b.re(), prec), union_of(a.im(), b.im(), prec)};
}

}  // namespace ballw
