#include "ballw/real_ball.hpp"

#include <cmath>
#include <sstream>

#include "ballw/mpfr_interop.hpp"

namespace ballw {

namespace {

// Guard bits used when evaluating elementary functions at the midpoint.
constexpr long kElemGuard = 8;
// Precision used for endpoint and comparison computations.
constexpr long kCmpPrec = 64;

Mag rounding_error(bool inexact, const Float& m, long prec) {
  return inexact ? Mag::upper(ulp(m, prec)) : Mag();
}

// Bounds [lo, hi] of x - y at kCmpPrec bits.
Bounds diff_bounds(const Float& x, const Float& y) {
  return {sub(x, y, kCmpPrec, Round::Floor), sub(x, y, kCmpPrec, Round::Ceil)};
}

Mag abs_diff_upper(const Float& x, const Float& y) {
  const Bounds d = diff_bounds(x, y);
  return max(Mag::upper(d.lo), Mag::upper(d.hi));
}

Mag abs_diff_lower(const Float& x, const Float& y) {
  const Bounds d = diff_bounds(x, y);
  if (d.lo.sign() <= 0 && d.hi.sign() >= 0) return Mag();
  return min(Mag::lower(d.lo), Mag::lower(d.hi));
}

RealBall unit_interval() { return RealBall(Float(), Mag::pow2(0)); }

}  // namespace

RealBall::RealBall(Float mid, Mag rad) : mid_(std::move(mid)), rad_(std::move(rad)) {
  if (!mid_.is_finite()) {
    mid_ = Float();
    rad_ = Mag::inf();
  }
}

RealBall RealBall::indeterminate() { return RealBall(Float(), Mag::inf()); }

RealBall RealBall::from_bounds(const Float& lo, const Float& hi, long prec) {
  if (!lo.is_finite() || !hi.is_finite()) return indeterminate();
  const Float m = round(add(lo, hi, kExact, Round::Nearest).mul_2exp(-1), prec, Round::Nearest);
  const Float d1 = sub(hi, m, Mag::kPrec, Round::Ceil);
  const Float d2 = sub(m, lo, Mag::kPrec, Round::Ceil);
  return RealBall(m, Mag::upper(max(d1, d2)));
}

Float RealBall::lower(long prec) const {
  if (rad_.is_inf()) return Float::neg_inf();
  return sub(mid_, rad_.value(), prec, Round::Floor);
}

Float RealBall::upper(long prec) const {
  if (rad_.is_inf()) return Float::pos_inf();
  return add(mid_, rad_.value(), prec, Round::Ceil);
}

Mag RealBall::abs_upper() const {
  if (rad_.is_inf()) return Mag::inf();
  return Mag::upper(add(mid_.abs(), rad_.value(), Mag::kPrec, Round::Up));
}

Mag RealBall::abs_lower() const {
  if (rad_.is_inf()) return Mag();
  return sub_lower(Mag::lower(mid_), rad_);
}

bool RealBall::contains(const Float& x) const {
  if (x.is_nan()) return false;
  if (rad_.is_inf()) return true;
  if (!x.is_finite()) return false;
  // Floor/Ceil at >= 30 bits are adjacent, and rad is representable, so the
  // upper bound decides containment exactly.
  return abs_diff_upper(x, mid_) <= rad_;
}

bool RealBall::contains(const RealBall& x) const {
  if (rad_.is_inf()) return true;
  if (x.rad_.is_inf()) return false;
  if (x.is_exact()) return contains(x.mid_);
  return abs_diff_upper(x.mid_, mid_) + x.rad_ <= rad_;
}

bool RealBall::overlaps(const RealBall& x) const {
  if (rad_.is_inf() || x.rad_.is_inf()) return true;
  return abs_diff_lower(x.mid_, mid_) <= rad_ + x.rad_;
}

bool RealBall::is_positive() const { return lower(kCmpPrec).sign() > 0; }
bool RealBall::is_nonnegative() const { return lower(kCmpPrec).sign() >= 0; }
bool RealBall::is_negative() const { return upper(kCmpPrec).sign() < 0; }
bool RealBall::is_nonpositive() const { return upper(kCmpPrec).sign() <= 0; }

std::string RealBall::repr() const {
  std::ostringstream os;
  os << "[" << mid_.to_double() << " +/- " << rad_.to_double() << "]";
  return os.str();
}

RealBall add(const RealBall& a, const RealBall& b, long prec) {
  bool ix = false;
  Float m = add(a.mid(), b.mid(), prec, Round::Nearest, &ix);
  Mag r = a.rad() + b.rad() + rounding_error(ix, m, prec);
  return RealBall(std::move(m), r);
}

RealBall sub(const RealBall& a, const RealBall& b, long prec) { return add(a, -b, prec); }

RealBall mul(const RealBall& a, const RealBall& b, long prec) {
  bool ix = false;
  Float m = mul(a.mid(), b.mid(), prec, Round::Nearest, &ix);
  Mag r = Mag::upper(a.mid()) * b.rad() + Mag::upper(b.mid()) * a.rad() + a.rad() * b.rad();
  r += rounding_error(ix, m, prec);
  return RealBall(std::move(m), r);
}

RealBall sqr(const RealBall& a, long prec) { return mul(a, a, prec); }

RealBall div(const RealBall& a, const RealBall& b, long prec) {
  if (!a.is_finite() || !b.is_finite() || b.contains_zero()) return RealBall::indeterminate();
  bool ix = false;
  Float m = div(a.mid(), b.mid(), prec, Round::Nearest, &ix);
  Mag r;
  if (!a.rad().is_zero() || !b.rad().is_zero()) {
    const Mag bm = Mag::lower(b.mid());
    const Mag num = Mag::upper(a.mid()) * b.rad() + Mag::upper(b.mid()) * a.rad();
    r = num / mul_lower(bm, sub_lower(bm, b.rad()));
  }
  r += rounding_error(ix, m, prec);
  return RealBall(std::move(m), r);
}

RealBall abs(const RealBall& a) {
  if (a.mid().sign() >= 0) return a;
  return -a;
}

RealBall set_round(const RealBall& a, long prec) {
  bool ix = false;
  Float m = round(a.mid(), prec, Round::Nearest, &ix);
  return RealBall(m, a.rad() + rounding_error(ix, m, prec));
}

RealBall exp(const RealBall& a, long prec) {
  if (!a.is_finite()) return RealBall::indeterminate();
  const Bounds b = exp_bounds(a.mid(), prec + kElemGuard);
  if (!b.hi.is_finite()) return RealBall::indeterminate();
  RealBall r = RealBall::from_bounds(b.lo, b.hi, prec);
  if (!a.rad().is_zero()) r = r.add_error(Mag::upper(b.hi) * expm1_upper(a.rad()));
  return r;
}

RealBall log(const RealBall& a, long prec) {
  if (!a.is_finite() || !a.is_positive()) return RealBall::indeterminate();
  const Bounds b = log_bounds(a.mid(), prec + kElemGuard);
  RealBall r = RealBall::from_bounds(b.lo, b.hi, prec);
  if (!a.rad().is_zero()) r = r.add_error(a.rad() / sub_lower(Mag::lower(a.mid()), a.rad()));
  return r;
}

RealBall sqrt(const RealBall& a, long prec) {
  if (!a.is_finite()) return RealBall::indeterminate();
  if (a.is_negative()) return RealBall::indeterminate();
  if (!a.is_positive()) {
    const Float hi = sqrt(a.upper(kCmpPrec), Mag::kPrec, Round::Ceil).mul_2exp(-1);
    return RealBall(hi, Mag::upper(hi));
  }
  RealBall r = RealBall::from_bounds(sqrt(a.mid(), prec + kElemGuard, Round::Floor),
                                     sqrt(a.mid(), prec + kElemGuard, Round::Ceil), prec);
  if (!a.rad().is_zero()) r = r.add_error(a.rad() / sqrt_lower(Mag::lower(a.mid())));
  return r;
}

namespace {

RealBall trig(const RealBall& a, long prec, bool is_sin) {
  if (!a.is_finite()) return unit_interval();
  const auto b = is_sin ? sin_bounds(a.mid(), prec + kElemGuard) : cos_bounds(a.mid(), prec + kElemGuard);
  if (!b) return unit_interval();
  RealBall r = RealBall::from_bounds(b->lo, b->hi, prec).add_error(a.rad());
  if (r.rad() > Mag::pow2(1)) return unit_interval();
  return r;
}

}  // namespace

RealBall sin(const RealBall& a, long prec) { return trig(a, prec, true); }
RealBall cos(const RealBall& a, long prec) { return trig(a, prec, false); }

RealBall sinc(const RealBall& a, long prec) {
  if (!a.is_finite()) return unit_interval();
  if (!a.contains_zero()) return div(sin(a, prec), a, prec);
  const Mag big = a.abs_upper();
  if (!(big < Mag::pow2(-1))) return unit_interval();
  // Taylor series in x^2 with the tail bounded by twice the first omitted term.
  const double lr = std::log2(big.to_double());
  long n = 1;
  while (n < 100000) {
    const double lt = 2.0 * n * lr - std::lgamma(2.0 * n + 2) / std::log(2.0);
    if (lt < -(prec + 2)) break;
    ++n;
  }
  const RealBall t = sqr(a, prec);
  RealBall acc(1);
  for (long j = n - 1; j >= 1; --j) {
    const RealBall q = div(mul(t, acc, prec), RealBall((2 * j) * (2 * j + 1)), prec);
    acc = sub(RealBall(1), q, prec);
  }
  // |tail| <= 2 R^(2n) / (2n+1)!
  Mag tail = Mag::pow2(1);
  for (long j = 0; j < 2 * n; ++j) tail = tail * big;
  for (long j = 2; j <= 2 * n + 1; ++j) tail = tail / Mag::lower(Float(j));
  return acc.add_error(tail);
}

namespace {

RealBall atan2_nostraddle(const RealBall& y, const RealBall& x, long prec, const RealBall& pi) {
  const RealBall whole(Float(), pi.abs_upper());
  if (y.mid().is_zero() && x.mid().is_zero()) return whole;
  const Bounds b = atan2_bounds(y.mid(), x.mid(), prec + kElemGuard);
  RealBall r = RealBall::from_bounds(b.lo, b.hi, prec);
  if (!x.rad().is_zero() || !y.rad().is_zero()) {
    const Mag rad = sqrt_upper(x.rad() * x.rad() + y.rad() * y.rad());
    const Mag m2 = add_lower(mul_lower(Mag::lower(x.mid()), Mag::lower(x.mid())),
                             mul_lower(Mag::lower(y.mid()), Mag::lower(y.mid())));
    const Mag dist = sub_lower(sqrt_lower(m2), rad);
    if (dist.is_zero()) return whole;
    r = r.add_error(rad / dist);
  }
  if (whole.rad() < r.rad()) return whole;
  return r;
}

}  // namespace

RealBall atan2(const RealBall& y, const RealBall& x, long prec) {
  const RealBall pi = const_pi(prec);
  if (!x.is_finite() || !y.is_finite()) return RealBall(Float(), pi.abs_upper());
  const bool straddle = !x.is_nonnegative() && y.lower(kCmpPrec).sign() < 0 && y.upper(kCmpPrec).sign() >= 0;
  if (!straddle) return atan2_nostraddle(y, x, prec, pi);
  const RealBall up = RealBall::from_bounds(Float(), y.upper(kCmpPrec), kCmpPrec);
  const RealBall down = RealBall::from_bounds(Float(), (-y).upper(kCmpPrec), kCmpPrec);
  return union_of(atan2_nostraddle(up, x, prec, pi), -atan2_nostraddle(down, x, prec, pi), prec);
}

RealBall const_pi(long prec) {
  const Bounds b = pi_bounds(prec + kElemGuard);
  return RealBall::from_bounds(b.lo, b.hi, prec);
}

RealBall const_e(long prec) {
  const Bounds b = exp_bounds(Float(1), prec + kElemGuard);
  return RealBall::from_bounds(b.lo, b.hi, prec);
}

RealBall const_ln2(long prec) {
  const Bounds b = ln2_bounds(prec + kElemGuard);
  return RealBall::from_bounds(b.lo, b.hi, prec);
}

RealBall union_of(const RealBall& a, const RealBall& b, long prec) {
  if (!a.is_finite() || !b.is_finite()) return RealBall::indeterminate();
  const long p = std::max(prec, kCmpPrec);
  return RealBall::from_bounds(min(a.lower(p), b.lower(p)), max(a.upper(p), b.upper(p)), prec);
}

RealBall hull(const RealBall& lo, const RealBall& hi, long prec) {
  if (!lo.is_finite() || !hi.is_finite()) return RealBall::indeterminate();
  const long p = std::max(prec, kCmpPrec);
  return RealBall::from_bounds(lo.lower(p), hi.upper(p), prec);
}

}  // namespace ballw
