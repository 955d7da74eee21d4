#include "ballw/branch.hpp"

#include <cstdlib>

namespace ballw {

namespace {

bool gt(const RealBall& a, const RealBall& b, long prec) { return sub(a, b, prec).is_positive(); }
bool lt(const RealBall& a, const RealBall& b, long prec) { return sub(b, a, prec).is_positive(); }

RealBall neg_inv_e(long prec) { return -div(RealBall(1), const_e(prec), prec); }

RealBall nonneg_part(const RealBall& x, long prec) {
  if (x.is_nonnegative()) return x;
  const Float hi = x.upper(prec);
  if (hi < Float()) return RealBall::indeterminate();
  return zero_to(hi);
}

}  // namespace

bool range_check(const ComplexBall& w, long k, long prec) {
  if (!w.is_finite()) return false;
  const long wp = prec + 10;
  const RealBall& x = w.re();
  const RealBall& y = w.im();
  const RealBall t = mul(x, sinc(y, wp), wp);
  const RealBall v = -cos(y, wp);
  // u = sgn(k) y / pi, with the k = 0 strip |y| < pi read off u = y / pi
  RealBall u = div(y, const_pi(wp), wp);
  if (k < 0) u = -u;

  if (k == 0) return lt(abs(u), RealBall(1), wp) && gt(t, v, wp);

  const long m = 2 * std::labs(k);
  const bool p1 = gt(u, RealBall(m - 2), wp) && lt(u, RealBall(m + 1), wp);
  if (!p1) return false;
  const bool p2 = gt(u, RealBall(m - 1), wp) && lt(u, RealBall(m), wp);
  const bool p3 = lt(u, RealBall(m), wp) && lt(t, v, wp);
  const bool p4 = gt(u, RealBall(m - 1), wp) && gt(t, v, wp);
  return p2 || p3 || p4;
}

bool cut_clearance(const ComplexBall& U, long k) {
  if (!U.is_finite()) return false;
  if (U.im().is_nonnegative() || U.im().is_negative()) return true;
  if (k == 0) {
    constexpr long wp = 64;
    return add(mul(U.re(), const_e(wp), wp), RealBall(1), wp).is_positive();
  }
  return U.re().is_positive();
}

bool straddles_cut(const ComplexBall& z, const BranchSpec& spec) {
  if (!z.is_finite()) return false;
  const RealBall& im = z.im();
  if (!(im.lower() < Float() && !(im.upper() < Float()))) return false;

  constexpr long wp = 64;
  const Float re_lo = z.re().lower(wp), re_hi = z.re().upper(wp);
  const Float b_hi = neg_inv_e(wp).upper(wp);  // just above -1/e
  const Float b_lo = neg_inv_e(wp).lower(wp);
  switch (spec.cut) {
    case Cut::Standard:
      return spec.k == 0 ? re_lo <= b_hi : re_lo < Float();
    case Cut::Left:
      return (spec.k == 0 || spec.k == -1) ? re_hi > b_lo : re_hi > Float();
    case Cut::Middle:
      return re_lo <= b_hi || re_hi >= Float();
  }
  return true;
}

RealBall zero_to(const Float& hi) {
  // mid = rad with a Mag-sized mantissa, so the lower endpoint is exactly 0.
  const Float m = round(hi.mul_2exp(-1), Mag::kPrec, Round::Ceil);
  return RealBall(m, Mag::upper(m));
}

std::pair<ComplexBall, ComplexBall> split_half_planes(const ComplexBall& z, long prec) {
  return {ComplexBall(z.re(), nonneg_part(z.im(), prec)), ComplexBall(z.re(), nonneg_part(-z.im(), prec))};
}

}  // namespace ballw
