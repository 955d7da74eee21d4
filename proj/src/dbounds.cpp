#include "ballw/dbounds.hpp"

#include <algorithm>
#include <cstdlib>

namespace ballw {

namespace {

constexpr long kPrec = 64;

Mag mag(long v) { return Mag::upper(Float(v)); }

Mag pi_upper() { return Mag::upper(const_pi(kPrec).upper()); }
Mag pi_lower() { return Mag::lower(const_pi(kPrec).lower()); }

// x/(x - 1) rounded up for x > 1 given as a lower bound.
Mag ratio_upper(const Mag& x) { return x / sub_lower(x, mag(1)); }

}  // namespace

Mag bound_wp(const ComplexBall& U, long k) {
  if (!U.is_finite()) return Mag::inf();
  const long ak = std::labs(k);
  const Mag a = U.abs_lower();  // |z| >= a
  const Mag inv_a = mag(1) / a;
  const Mag one = mag(1);

  const RealBall e = const_e(kPrec);
  auto dist = [&U](long prec) {
    const RealBall ep = const_e(prec);
    const ComplexBall ez1(add(mul(U.re(), ep, prec), RealBall(1), prec), mul(U.im(), ep, prec));
    return ez1.abs_lower();
  };
  Mag t = dist(kPrec);  // |ez + 1| >= t
  if (t < Mag::pow2(-kPrec + 16)) {
    // Close to -1/e the cancellation needs the full width of the midpoint.
    const long wp = std::max(U.re().mid().bits(), U.im().mid().bits()) + kPrec;
    if (wp > kPrec) t = max(t, dist(wp));
  }

  Mag best = Mag::inf();
  auto consider = [&best](const Mag& c) { best = min(best, c); };

  if (ak >= 2) {
    const Mag num = pi_upper() * mag(2 * ak - 2);
    const Mag den = sub_lower(mul_lower(pi_lower(), mag(2 * ak - 2)), one);
    consider(inv_a * (num / den));
  }
  if ((k == 1 && U.im().is_nonnegative()) || (k == -1 && U.im().is_negative())) {
    consider(inv_a * ratio_upper(pi_lower()));
  }
  if (a > Mag::upper(e.upper())) {
    // W_0(x) >= log x - log log x for x >= e, and x/(x-1) is decreasing.
    const RealBall L = log(RealBall(a.value()), kPrec);
    const RealBall lw = sub(L, log(L, kPrec), kPrec);
    if (lw.lower() > Float(1L)) consider(inv_a * ratio_upper(Mag::lower(lw.lower())));
  }
  if (a >= mag(4 * (ak + 1))) consider(inv_a);
  if (!t.is_zero()) {
    const Mag g = Mag::upper(Float(1.5)) / sqrt_lower(t);
    consider(inv_a * max(mag(3), g));
  }

  if (k == 0) {
    if (U.abs_upper() <= mag(64) && !t.is_zero()) {
      consider(Mag::upper(Float(2.25)) / sqrt_lower(mul_lower(t, add_lower(one, t))));
    }
    if (a >= one) consider(inv_a);
  } else if (ak == 1) {
    const Mag h = inv_a * (one + one / add_lower(mag(4), mul_lower(a, a)));
    if ((k == -1 && U.im().is_negative()) || (k == 1 && U.im().is_nonnegative())) {
      consider(h);
    } else if (U.re().is_nonnegative()) {
      // The same bound fails by up to 0.3% in the right half plane on the far
      // side of the axis (near |z| = 0.17, arg z = -pi/2 for k = 1).
      consider(h * (one + Mag::pow2(-6)));
    }
    if (!t.is_zero()) consider(inv_a * (one + Mag::upper(Float(23.0 / 32.0)) / sqrt_lower(t)));
  }
  return best;
}

}  // namespace ballw
