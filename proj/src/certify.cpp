#include "ballw/certify.hpp"

#include "ballw/branch.hpp"
#include "ballw/dbounds.hpp"

namespace ballw {

namespace {

constexpr long kGuard = 10;

ComplexBall point(const CFloat& w) { return {RealBall(w.re), RealBall(w.im)}; }

ComplexBall exp_of(const CFloat& w, const std::optional<ExpCache>& cache, long prec) {
  const ComplexBall wb = point(w);
  if (!cache || !cache->exp_prev.is_finite()) return exp(wb, prec);
  const ComplexBall delta = sub(wb, point(cache->w_prev), prec);
  return mul(cache->exp_prev, exp(delta, prec), prec);
}

}  // namespace

ComplexBall certify(const CertInput& in) {
  const ComplexBall wb = point(in.w);
  if (!range_check(wb, in.k, in.prec)) return ComplexBall::indeterminate();

  const long wp = in.prec + kGuard;
  ComplexBall ew = exp_of(in.w, in.exp_cache, wp);
  // The cached exponential may carry less precision than this call needs.
  if (in.exp_cache && ew.re().rad() + ew.im().rad() > ew.abs_lower().mul_2exp(-wp + 4)) ew = exp(wb, wp);
  const ComplexBall zt = mul(wb, ew, wp);
  if (!zt.is_finite()) return ComplexBall::indeterminate();

  const ComplexBall U = union_of(in.z, zt, wp);
  if (!cut_clearance(U, in.k)) return ComplexBall::indeterminate();

  const Mag C = bound_wp(U, in.k);
  if (C.is_inf()) return ComplexBall::indeterminate();
  const Mag r = C * sub(in.z, zt, wp).abs_upper();
  if (in.w.im.is_zero() && U.is_real() && (in.k == 0 || in.k == -1)) {
    // On (-1/e, inf) for k = 0, or (-1/e, 0) for k = -1, W is real.
    const RealBall ez1 = add(mul(U.re(), const_e(wp), wp), RealBall(1), wp);
    if (ez1.is_positive() && (in.k == 0 || U.re().is_negative())) return {RealBall(in.w.re, r), RealBall()};
  }
  return wb.add_error(r);
}

RealBall certify_real(const RealBall& x, long k, const Float& w, long prec) {
  if (k != 0 && k != -1) return RealBall::indeterminate();
  const long wp = prec + kGuard;
  // W_0 > -1 and W_{-1} < -1 on the real domain.
  if (k == 0 ? !(w > Float(-1L)) : !(w < Float(-1L))) return RealBall::indeterminate();

  const RealBall wb(w);
  const RealBall zt = mul(wb, exp(wb, wp), wp);
  const RealBall U = union_of(x, zt, wp);
  const RealBall ez1 = add(mul(U, const_e(wp), wp), RealBall(1), wp);
  if (!ez1.is_positive()) return RealBall::indeterminate();
  if (k == -1 && !U.is_negative()) return RealBall::indeterminate();

  const Mag C = bound_wp(ComplexBall(U), k);
  if (C.is_inf()) return RealBall::indeterminate();
  return RealBall(w, C * sub(x, zt, wp).abs_upper());
}

}  // namespace ballw
