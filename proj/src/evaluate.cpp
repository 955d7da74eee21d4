#include "ballw/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "ballw/approx.hpp"
#include "ballw/certify.hpp"
#include "ballw/dbounds.hpp"
#include "ballw/series.hpp"

namespace ballw {

namespace {

constexpr long kGuard = 10;

Mag one() { return Mag::pow2(0); }

Mag mag_pow(Mag x, int n) {
  Mag r = one();
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

// Exponent of the larger midpoint component, empty when mid(z) = 0.
std::optional<exp_t> mid_top(const ComplexBall& z) {
  const Float &a = z.re().mid(), &b = z.im().mid();
  if (a.is_zero() && b.is_zero()) return std::nullopt;
  if (a.is_zero()) return b.top();
  if (b.is_zero()) return a.top();
  return std::max(a.top(), b.top());
}

// min(p, max(10, -log2(rad(z) / |mid(z)|))), read off exponents.
long accuracy_goal(const ComplexBall& z, long p) {
  const Mag rad = max(z.re().rad(), z.im().rad());
  if (rad.is_zero()) return p;
  const auto t = mid_top(z);
  if (!t) return std::min(p, 10L);
  const exp_t g = *t - rad.value().top();
  return static_cast<long>(std::clamp<exp_t>(g, 10, std::max(p, 10L)));
}

struct LogBits {
  long b1;
  long b2;
};

long bit_length(long v) {
  long n = 0;
  while (v > 0) {
    ++n;
    v >>= 1;
  }
  return n;
}

// b1 ~ log2 |log z + 2 pi k i| and b2 ~ log2 b1 from the exponent of mid(z).
LogBits log_bits(const ComplexBall& z, long k) {
  const auto t = mid_top(z);
  const double e = t ? std::fabs(static_cast<double>(*t)) : 0.0;
  const double a = std::max(e * M_LN2, 2 * M_PI * static_cast<double>(std::labs(k)));
  const long b1 = a < 2 ? 1 : static_cast<long>(std::floor(std::log2(a))) + 1;
  return {b1, bit_length(b1)};
}

// Taylor series at 0 when |mid z| < 2^(-q/T) and the truncation error is
// below 2^(-q) |z|.
std::optional<ComplexBall> try_taylor(const ComplexBall& z, long q, long p, int T) {
  const auto t = mid_top(z);
  if (t && *t > -((q + T - 1) / T)) return std::nullopt;
  const Mag az = z.abs_upper();
  const Mag ez = Mag::upper(const_e(64).upper()) * az;
  if (!(ez < Mag::pow2(-1))) return std::nullopt;
  const Mag tail = mag_pow(ez, T) / sub_lower(one(), ez);
  if (!(tail <= az.mul_2exp(-q - 1))) return std::nullopt;
  const ComplexBall w = taylor_w0(z, T, p + kGuard);
  if (!w.is_finite()) return std::nullopt;
  return set_round(w, p);
}

std::optional<ComplexBall> try_asymptotic(const ComplexBall& z, long k, long q, long p, const SeriesParams& tun) {
  const LogBits lb = log_bits(z, k);
  const long s = 2 - lb.b1, t = 2 + lb.b2 - lb.b1;
  if (!(lb.b1 - std::max(t + tun.L * s, tun.M * t) > q)) return std::nullopt;
  const ComplexBall w = asym_w(z, k, tun.L, tun.M, p + kGuard);
  if (!w.is_finite()) return std::nullopt;
  return set_round(w, p);
}

std::optional<ComplexBall> try_puiseux(const ComplexBall& z, long k, long q, long p, const SeriesParams& tun) {
  if (std::labs(k) > 1) return std::nullopt;
  if (k == 1 && !z.im().is_negative()) return std::nullopt;
  if (k == -1 && !z.im().is_nonnegative()) return std::nullopt;
  const long wp = p + kGuard;
  const ComplexBall t = add(mul(z, const_e(wp), wp), ComplexBall(1), wp);
  const exp_t lim = -((2 * q + tun.P - 1) / tun.P) - 6;
  if (!(t.abs_upper() < Mag::pow2(lim))) return std::nullopt;
  const ComplexBall w = puiseux_w(z, k, tun.P, wp);
  if (!w.is_finite()) return std::nullopt;
  return set_round(w, p);
}

ComplexBall eval_std(const ComplexBall& z, long k, long p, long q, const SeriesParams& tun, bool after_split);

// Steps 9 to 12: perturb off the cut, approximate, certify, propagate.
ComplexBall eval_point(const ComplexBall& z, long k, long p, long q) {
  const Float& x = z.re().mid();
  const Float& y = z.im().mid();
  const RealBall inv_e = div(RealBall(1), const_e(64), 64);
  const bool left = k == 0 ? x < (-inv_e).upper() : x.sign() < 0;
  const Float eps = x.abs().mul_2exp(-q);

  bool conj_mode = false;
  ComplexBall zp = z;
  if (left && y.abs() < eps) {
    conj_mode = y.sign() < 0;
    const ComplexBall z2 = conj_mode ? z.conj() : z;
    const Float hi = max(z2.im().upper(), eps);
    zp = ComplexBall(z2.re(), zero_to(hi));
  }
  const long kk = conj_mode ? -k : k;

  const CFloat m{zp.re().mid(), zp.im().mid()};
  const ApproxResult a = approx_w(m, kk, q);
  CertInput in{zp.mid(), kk, a.w, q + kGuard, std::nullopt};
  if (a.exp_prev) in.exp_cache = ExpCache{a.w_prev, *a.exp_prev};
  ComplexBall w = certify(in);
  if (!w.is_finite()) return ComplexBall::indeterminate();

  if (!zp.is_exact()) {
    const Mag C = bound_wp(zp, kk);
    if (C.is_inf()) return ComplexBall::indeterminate();
    w = w.add_error(C * (zp.re().rad() + zp.im().rad()));
  }
  w = set_round(w, p + kGuard);
  return conj_mode ? w.conj() : w;
}

ComplexBall eval_std(const ComplexBall& z, long k, long p, long q, const SeriesParams& tun, bool after_split) {
  if (!after_split) {
    if (!z.is_finite() || (k != 0 && z.contains_zero())) return ComplexBall::indeterminate();
    if (z.is_real() && (k == 0 || k == -1)) {
      const RealBall w = lambertw_real(z.re(), k, p, tun);
      if (w.is_finite()) return ComplexBall(w);
    }
    q = accuracy_goal(z, p);
    if (k == 0) {
      if (auto w = try_taylor(z, q, p, tun.T)) return *w;
    }
    const auto t = mid_top(z);
    if (t && (*t >= 8 || (k != 0 && *t <= -8))) {
      const LogBits lb = log_bits(z, k);
      q = std::min(p, std::max(q + lb.b1 - lb.b2, 10L));
    }
    if (auto w = try_asymptotic(z, k, q, p, tun)) return *w;
  }
  if (auto w = try_puiseux(z, k, q, p, tun)) return *w;

  if (straddles_cut(z, {k, Cut::Standard})) {
    const auto [za, zb] = split_half_planes(z, p + kGuard);
    const ComplexBall wa = eval_std(za, k, p, q, tun, true);
    const ComplexBall wb = eval_std(zb, -k, p, q, tun, true).conj();
    if (!wa.is_finite() || !wb.is_finite()) return ComplexBall::indeterminate();
    return union_of(wa, wb, p + kGuard);
  }
  return eval_point(z, k, p, q);
}

ComplexBall eval_standard(const ComplexBall& z, long k, long p, const SeriesParams& tun) {
  return eval_std(z, k, p, p, tun, false);
}

// W_a above the real axis joined with conj(W_{-b}(conj z)) below, where
// (a, b) = (k, k + 1) for the left cut and (-1, 1) for the middle cut.
ComplexBall eval_alt(const ComplexBall& z, const BranchSpec& spec, long p, const SeriesParams& tun) {
  if (!z.is_finite()) return ComplexBall::indeterminate();
  const bool middle = spec.cut == Cut::Middle;
  const long ka = middle ? -1 : spec.k;
  const long kb = middle ? 1 : spec.k + 1;
  auto above = [&](const ComplexBall& u) { return eval_standard(u, ka, p, tun); };
  auto below = [&](const ComplexBall& u) { return eval_standard(u.conj(), -kb, p, tun).conj(); };
  auto both = [&](const ComplexBall& u, const ComplexBall& v) {
    const ComplexBall a = above(u), b = below(v);
    if (!a.is_finite() || !b.is_finite()) return ComplexBall::indeterminate();
    return union_of(a, b, p + kGuard);
  };

  const RealBall& im = z.im();
  if (im.is_positive()) return above(z);
  if (im.is_negative()) return below(z);
  if (im.is_zero()) {
    // On the real axis the new cut takes its value from below.
    const RealBall inv_e = div(RealBall(1), const_e(64), 64);
    const Float re_lo = z.re().lower(), re_hi = z.re().upper();
    Float start;  // the alternative cut is [start, inf)
    if (middle) {
      if (re_hi < Float()) return above(z);
      start = (-inv_e).lower();
    } else {
      const bool near = spec.k == 0 || spec.k == -1;
      start = near ? (-inv_e).lower() : Float();
      if (re_hi < start) return above(z);
    }
    if (re_lo > (middle || spec.k == 0 || spec.k == -1 ? (-inv_e).upper() : Float())) return below(z);
    return both(z, z);
  }
  const auto [za, zb] = split_half_planes(z, p + kGuard);
  return both(za, ComplexBall(zb.re(), -zb.im()));
}

// Point evaluation of the real branches after the series checks.
RealBall real_point(const RealBall& x, long k, long p, long q) {
  const ApproxResult a = approx_w({x.mid(), Float()}, k, q);
  if (!a.w.im.is_zero()) return RealBall::indeterminate();
  RealBall w = certify_real(RealBall(x.mid()), k, a.w.re, q + kGuard);
  if (!w.is_finite()) return w;
  if (!x.is_exact()) {
    const Mag C = bound_wp(ComplexBall(x), k);
    if (C.is_inf()) return RealBall::indeterminate();
    w = w.add_error(C * x.rad());
  }
  return set_round(w, p + kGuard);
}

bool in_real_domain(const RealBall& x, long k, long prec) {
  const long wp = std::max(prec, x.mid().bits()) + 64;
  const RealBall ez1 = add(mul(x, const_e(wp), wp), RealBall(1), wp);
  if (!ez1.is_positive()) return false;
  return k == 0 || x.is_negative();
}

}  // namespace

RealBall lambertw_real(const RealBall& x, long k, long prec, const SeriesParams& tun) {
  if (!x.is_finite() || (k != 0 && k != -1)) return RealBall::indeterminate();
  if (!in_real_domain(x, k, prec)) return RealBall::indeterminate();
  if (k == 0 && x.is_zero()) return RealBall();

  const ComplexBall z(x);
  long q = accuracy_goal(z, prec);
  if (k == 0) {
    if (auto w = try_taylor(z, q, prec, tun.T)) return w->re();
  }
  const auto t = mid_top(z);
  if (t && (*t >= 8 || (k != 0 && *t <= -8))) {
    const LogBits lb = log_bits(z, k);
    q = std::min(prec, std::max(q + lb.b1 - lb.b2, 10L));
  }
  if (auto w = try_asymptotic(z, k, q, prec, tun)) return w->re();
  if (auto w = try_puiseux(z, k, q, prec, tun)) return w->re();

  if (!x.is_exact() && q < prec) {
    // W_0 increases and W_{-1} decreases: evaluate at the endpoints.
    const long ep = std::max(prec, x.mid().bits()) + 8;
    const RealBall lo(x.lower(ep)), hi(x.upper(ep));
    if (in_real_domain(lo, k, prec) && in_real_domain(hi, k, prec)) {
      const RealBall wl = lambertw_real(lo, k, prec, tun);
      const RealBall wh = lambertw_real(hi, k, prec, tun);
      if (wl.is_finite() && wh.is_finite()) return union_of(wl, wh, prec + kGuard);
    }
  }
  return real_point(x, k, prec, q);
}

ComplexBall lambertw(const EvalRequest& req) {
  const long p = std::max(req.prec, 2L);
  if (req.spec.cut == Cut::Standard) return eval_standard(req.z, req.spec.k, p, req.tuning);
  return eval_alt(req.z, req.spec, p, req.tuning);
}

}  // namespace ballw
