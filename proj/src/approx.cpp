#include "ballw/approx.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "ballw/series.hpp"

namespace ballw {

namespace {

using cd = std::complex<double>;

struct Seed {
  CFloat w;
  long bits;
};

ComplexBall point(const CFloat& w) { return {RealBall(w.re), RealBall(w.im)}; }
CFloat mid_of(const ComplexBall& b) { return {b.re().mid(), b.im().mid()}; }
cd to_cd(const CFloat& w) { return {w.re.to_double(), w.im.to_double()}; }
CFloat from_cd(cd w) { return {Float(w.real()), Float(w.imag())}; }

// Rough log2 |a + bi|, or a large negative number for zero.
double log2_abs(const Float& a, const Float& b) {
  const bool za = a.is_zero(), zb = b.is_zero();
  if (za && zb) return -1e300;
  const exp_t t = za ? b.top() : zb ? a.top() : std::max(a.top(), b.top());
  return static_cast<double>(t);
}

double log2_abs(const CFloat& w) { return log2_abs(w.re, w.im); }

// Bits lost to cancellation when w is close to -1.
long extra_bits(const CFloat& w) {
  const Float r = add(w.re, Float(1L), kExact, Round::Nearest);
  const double l = log2_abs(r, w.im);
  return l < 0 ? static_cast<long>(std::min(-l, 1e9)) : 0;
}

bool near_branch_kind(const CFloat& z, long k) {
  return k == 0 || (k == -1 && z.im.sign() >= 0) || (k == 1 && z.im.sign() < 0);
}

bool in_double_range(const CFloat& z) {
  const double l = log2_abs(z);
  return l > -900 && l < 900;
}

// L1 - L2 + L2/L1 with L1 = log z + 2 pi k i, in balls at prec bits.
ComplexBall asym_seed(const CFloat& z, long k, long prec) {
  ComplexBall L1 = log(point(z), prec);
  L1 = add(L1, ComplexBall(RealBall(), mul(const_pi(prec), RealBall(2 * k), prec)), prec);
  const ComplexBall L2 = log(L1, prec);
  return add(sub(L1, L2, prec), div(L2, L1, prec), prec);
}

// Real W_{-1} on (-1/e, 0): L1 = log(-x), L2 = log(-L1).
RealBall asym_seed_real_m1(const Float& x, long prec) {
  const RealBall L1 = log(RealBall(-x), prec);
  const RealBall L2 = log(-L1, prec);
  return add(sub(L1, L2, prec), div(L2, L1, prec), prec);
}

// log(1 + z) (1 - log(1 + log(1 + z)) / (2 + log(1 + z))), good for k = 0 and
// moderate |z| away from the negative real axis.
ComplexBall small_seed(const CFloat& z, long prec) {
  const ComplexBall l = log(add(point(z), ComplexBall(1), prec), prec);
  const ComplexBall ll = log(add(l, ComplexBall(1), prec), prec);
  const ComplexBall f = sub(ComplexBall(1), div(ll, add(l, ComplexBall(2), prec), prec), prec);
  return mul(l, f, prec);
}

// W_{-1} is real on (-1/e, 0).
bool is_real_m1_case(const CFloat& z, long k) {
  return k == -1 && z.im.is_zero() && z.re.sign() < 0 && z.re > Float(-0.36787944117144233);
}

// Seed from closed-form approximations only, with a crude accuracy estimate.
Seed formula_seed(const CFloat& z, long k, long goal) {
  constexpr long wp = 64;
  const double lz = log2_abs(z);
  if (k == 0 && lz < -6) {
    // z(1 - z): relative error about 1.5 |z|^2
    const long p = std::max(goal, wp);
    const ComplexBall zb = point(z);
    const ComplexBall w = mul(zb, sub(ComplexBall(1), zb, p), p);
    const long bits = static_cast<long>(std::min(-2 * lz - 2, 1e15));
    return {mid_of(w), std::max(bits, 1L)};
  }
  if (is_real_m1_case(z, k) && lz < 0) {
    const RealBall w = asym_seed_real_m1(z.re, wp);
    if (w.is_finite()) return {{w.mid(), Float()}, 4};
  }
  if (k == 0 && lz < 2 && z.re > Float(-0.5)) {
    const ComplexBall w = small_seed(z, wp);
    if (w.is_finite()) return {mid_of(w), 4};
  }
  const ComplexBall w = asym_seed(z, k, wp);
  if (w.is_finite()) return {mid_of(w), 4};
  return {{Float(-1L), Float(1L)}, 1};
}

// -1 + xi - xi^2/3 + 11/72 xi^3 with xi = +-sqrt(2(ez + 1)), when |ez + 1| < 1/2.
std::optional<Seed> branch_seed(const CFloat& z, long k, long goal) {
  if (std::abs(k) > 1 || !near_branch_kind(z, k)) return std::nullopt;
  const ComplexBall zb = point(z);
  auto ez1 = [&](long p) {
    return add(mul(zb, const_e(p), p), ComplexBall(1), p);
  };
  long p = 64;
  ComplexBall t = ez1(p);
  if (t.is_finite() && !t.contains_zero() && t.abs_lower() > Mag::pow2(-1)) return std::nullopt;
  const long cap = 4 * (goal + z.re.bits() + z.im.bits() + 64);
  while ((!t.is_finite() || t.contains_zero() ||
          t.abs_upper() > t.abs_lower().mul_2exp(1)) && p < cap) {
    p *= 2;
    t = ez1(p);
  }
  if (!t.is_finite()) return std::nullopt;
  if (t.abs_lower() > Mag::pow2(-1)) return std::nullopt;
  if (t.contains_zero()) return Seed{{Float(-1L), Float()}, 1};

  const long ex = std::max(0L, static_cast<long>(-log2_abs(mid_of(t))));
  const long wp = goal + 2 * ex + 32;
  t = ez1(wp);
  ComplexBall xi = sqrt(t.mul_2exp(1), wp);
  if (k != 0) xi = -xi;
  // Horner: -1 + xi (1 + xi (-1/3 + xi 11/72))
  const RealBall c2 = div(RealBall(-1), RealBall(3), wp);
  const RealBall c3 = div(RealBall(11), RealBall(72), wp);
  ComplexBall w = add(ComplexBall(c2), mul(xi, c3, wp), wp);
  w = add(ComplexBall(1), mul(xi, w, wp), wp);
  w = add(ComplexBall(-1), mul(xi, w, wp), wp);
  const CFloat xm = mid_of(xi);
  const long bits = static_cast<long>(std::min(-4 * log2_abs(xm) - 1, 1e15));
  return Seed{mid_of(w), std::clamp(bits, 1L, goal)};
}

// Double-precision Halley from a closed-form seed; empty if it breaks down.
std::optional<cd> double_solve(cd z, cd w) {
  for (int i = 0; i < 60; ++i) {
    const cd ew = std::exp(w);
    const cd f = w * ew - z;
    const cd wp1 = w + 1.0;
    if (wp1 == 0.0) return std::nullopt;
    const cd d = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= d;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return std::nullopt;
    if (std::abs(d) <= 1e-15 * std::abs(w)) break;
  }
  return w;
}

// Newton on w + log w = L1 for |z| outside double range.
std::optional<cd> double_solve_log(cd L1, cd w) {
  for (int i = 0; i < 60; ++i) {
    const cd g = w + std::log(w) - L1;
    const cd d = g * w / (w + 1.0);
    w -= d;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return std::nullopt;
    if (std::abs(d) <= 1e-15 * std::abs(w)) break;
  }
  return w;
}

Seed double_seed(const CFloat& z, long k, const Seed& fs) {
  constexpr long kDoubleBits = 46;
  if (fs.bits >= kDoubleBits) return fs;
  if (in_double_range(z)) {
    const auto w = double_solve(to_cd(z), to_cd(fs.w));
    if (!w) return fs;
    CFloat out = from_cd(*w);
    if (z.im.is_zero() && (k == 0 || is_real_m1_case(z, k)) && std::abs(w->imag()) < 1e-12) {
      out.im = Float();
    }
    const long bits = kDoubleBits - extra_bits(out);
    return bits > fs.bits ? Seed{out, bits} : fs;
  }
  if (k == 0 && log2_abs(z) < 0) return fs;
  ComplexBall L1 = log(point(z), 64);
  L1 = add(L1, ComplexBall(RealBall(), mul(const_pi(64), RealBall(2 * k), 64)), 64);
  const auto w = double_solve_log(to_cd(mid_of(L1)), to_cd(fs.w));
  if (!w) return fs;
  return {from_cd(*w), kDoubleBits};
}

// Newton step for w + log w = L1, used when |w| is large: there Halley on
// w e^w = z needs w to absolute accuracy, which a double seed cannot give.
CFloat log_step(const CFloat& w, const CFloat& z, long k, long prec) {
  const ComplexBall wb = point(w);
  ComplexBall L1 = log(point(z), prec);
  L1 = add(L1, ComplexBall(RealBall(), mul(const_pi(prec), RealBall(2 * k), prec)), prec);
  const ComplexBall g = sub(add(wb, log(wb, prec), prec), L1, prec);
  const ComplexBall d = div(mul(g, wb, prec), add(wb, ComplexBall(1), prec), prec);
  if (!d.is_finite()) return w;
  return mid_of(sub(wb, d.mid(), prec));
}

CFloat step(const CFloat& w, const CFloat& z, long prec, ComplexBall* ew_out) {
  if (w.re == Float(-1L) && w.im.is_zero()) throw std::domain_error("halley_step: w = -1");
  const ComplexBall wb = point(w);
  const ComplexBall ew = exp(wb, prec);
  const ComplexBall f = sub(mul(wb, ew, prec), point(z), prec);
  const ComplexBall wp1 = add(wb, ComplexBall(1), prec);
  const ComplexBall corr = div(mul(add(wb, ComplexBall(2), prec), f, prec), wp1.mul_2exp(1), prec);
  const ComplexBall den = sub(mul(ew, wp1, prec), corr, prec);
  const ComplexBall d = div(f, den, prec);
  if (ew_out) *ew_out = ew;
  if (!d.is_finite()) return w;
  const ComplexBall out = sub(wb, d.mid(), prec);
  return mid_of(out);
}

}  // namespace

CFloat initial_guess(const CFloat& z, long k) {
  if (auto s = branch_seed(z, k, 64)) return s->w;
  const Seed fs = formula_seed(z, k, 64);
  return double_seed(z, k, fs).w;
}

CFloat halley_step(const CFloat& w, const CFloat& z, long prec) { return step(w, z, prec, nullptr); }

ApproxResult approx_w(const CFloat& z, long k, long q, const ApproxOptions& opt) {
  ApproxResult res;
  if (z.re.is_zero() && z.im.is_zero()) {
    res.w = {Float(), Float()};
    res.est_bits = k == 0 ? q + opt.guard : 0;
    return res;
  }
  const long goal = q + opt.guard;

  Seed s;
  if (auto b = branch_seed(z, k, goal)) {
    s = *b;
  } else {
    s = formula_seed(z, k, goal);
    if (opt.use_double) s = double_seed(z, k, s);
  }

  CFloat w = s.w;
  long bits = s.bits;
  if (w.re == Float(-1L) && w.im.is_zero()) w.re = add(w.re, Float::pow2(-goal), kExact, Round::Nearest);
  while (bits < goal && res.steps < opt.step_cap) {
    const bool log_form = log2_abs(w) > 12;
    const long order = log_form ? 2 : 3;
    const long target = std::min(goal, std::max(order * bits, 24L));
    const long ex = extra_bits(w);
    const long wp = target + 16 + ex;
    CFloat next;
    if (log_form) {
      next = log_step(w, z, k, wp);
      res.exp_prev.reset();
    } else {
      ComplexBall ew;
      next = step(w, z, wp, &ew);
      if (wp >= q) ++res.full_exps;
      res.w_prev = w;
      res.exp_prev = ew;
    }
    ++res.steps;

    const Float dre = sub(next.re, w.re, kExact, Round::Nearest);
    const Float dim = sub(next.im, w.im, kExact, Round::Nearest);
    const double ld = log2_abs(dre, dim);
    const double lw = log2_abs(next);
    const long m = ld < -1e299 ? wp : static_cast<long>(std::floor(lw - ld)) - 1;
    bits = std::max(1L, std::min(target, order * m - 2));
    w = {round(next.re, wp, Round::Nearest), round(next.im, wp, Round::Nearest)};
  }
  res.w = w;
  res.est_bits = bits;
  return res;
}

}  // namespace ballw
