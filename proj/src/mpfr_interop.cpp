#include "ballw/mpfr_interop.hpp"

#include <algorithm>
#include <stdexcept>

namespace ballw {

namespace {

constexpr exp_t kMpfrSafeExp = exp_t(1) << 60;

bool fits(const Float& x) {
  return x.is_zero() || !x.is_finite() ||
         (x.exponent() > -kMpfrSafeExp && x.top() < kMpfrSafeExp && x.exponent() < kMpfrSafeExp);
}

using Fn1 = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

Bounds eval_directed(Fn1 f, const Float& x, long wp) {
  ensure_mpfr_range();
  MpfrVar in(2), lo(wp), hi(wp);
  if (!to_mpfr(in, x)) throw std::overflow_error("ballw: argument outside MPFR range");
  f(lo, in, MPFR_RNDD);
  f(hi, in, MPFR_RNDU);
  return {from_mpfr(lo), from_mpfr(hi)};
}

}  // namespace

MpfrVar::MpfrVar(long prec) { mpfr_init2(v_, std::max<long>(prec, MPFR_PREC_MIN)); }
MpfrVar::~MpfrVar() { mpfr_clear(v_); }

void ensure_mpfr_range() {
  thread_local bool done = false;
  if (!done) {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    done = true;
  }
}

bool to_mpfr(mpfr_ptr out, const Float& x) {
  ensure_mpfr_range();
  switch (x.kind()) {
    case Float::Kind::NaN: mpfr_set_nan(out); return true;
    case Float::Kind::PosInf: mpfr_set_inf(out, 1); return true;
    case Float::Kind::NegInf: mpfr_set_inf(out, -1); return true;
    default: break;
  }
  if (!fits(x)) return false;
  mpfr_set_prec(out, std::max<long>(x.bits(), MPFR_PREC_MIN));
  if (x.is_zero()) {
    mpfr_set_zero(out, 1);
    return true;
  }
  mpfr_set_z_2exp(out, x.mantissa().get_mpz_t(), static_cast<mpfr_exp_t>(x.exponent()), MPFR_RNDN);
  return true;
}

Float from_mpfr(mpfr_srcptr x) {
  if (mpfr_nan_p(x)) return Float::nan();
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? Float::pos_inf() : Float::neg_inf();
  if (mpfr_zero_p(x)) return Float();
  mpz_class m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  return Float::from_mpz(std::move(m), e);
}

Bounds ln2_bounds(long wp) {
  ensure_mpfr_range();
  MpfrVar lo(wp), hi(wp);
  mpfr_const_log2(lo, MPFR_RNDD);
  mpfr_const_log2(hi, MPFR_RNDU);
  return {from_mpfr(lo), from_mpfr(hi)};
}

Bounds pi_bounds(long wp) {
  ensure_mpfr_range();
  MpfrVar lo(wp), hi(wp);
  mpfr_const_pi(lo, MPFR_RNDD);
  mpfr_const_pi(hi, MPFR_RNDU);
  return {from_mpfr(lo), from_mpfr(hi)};
}

Bounds exp_bounds(const Float& x, long wp) {
  if (x.is_zero()) return {Float(1), Float(1)};
  if (x.top() > 100) {
    if (x.sign() > 0) return {Float::pos_inf(), Float::pos_inf()};
    return {Float(), Float::pow2(-(exp_t(1) << 100))};
  }
  if (x.top() <= 30) return eval_directed(mpfr_exp, x, wp);

  // exp(x) = 2^n exp(x - n log 2) with r = x - n log 2 enclosed rigorously.
  ensure_mpfr_range();
  const long tp = static_cast<long>(x.top());
  const long wp2 = wp + tp + 20;
  MpfrVar xv(2), c_lo(wp2), c_hi(wp2), q(tp + 64);
  to_mpfr(xv, x);
  mpfr_const_log2(c_lo, MPFR_RNDD);
  mpfr_const_log2(c_hi, MPFR_RNDU);
  mpfr_div(q, xv, c_lo, MPFR_RNDN);
  mpz_class n;
  mpfr_get_z(n.get_mpz_t(), q, MPFR_RNDD);
  MpfrVar t_lo(wp2), t_hi(wp2), r_lo(wp2), r_hi(wp2);
  // n*ln2 enclosure
  if (sgn(n) >= 0) {
    mpfr_mul_z(t_lo, c_lo, n.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(t_hi, c_hi, n.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(t_lo, c_hi, n.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(t_hi, c_lo, n.get_mpz_t(), MPFR_RNDU);
  }
  mpfr_sub(r_lo, xv, t_hi, MPFR_RNDD);
  mpfr_sub(r_hi, xv, t_lo, MPFR_RNDU);
  MpfrVar e_lo(wp), e_hi(wp);
  mpfr_exp(e_lo, r_lo, MPFR_RNDD);
  mpfr_exp(e_hi, r_hi, MPFR_RNDU);
  const exp_t shift = to_exp(n);
  return {from_mpfr(e_lo).mul_2exp(shift), from_mpfr(e_hi).mul_2exp(shift)};
}

Bounds log_bounds(const Float& x, long wp) {
  if (x.sign() <= 0) throw std::domain_error("ballw: log of non-positive value");
  if (fits(x)) return eval_directed(mpfr_log, x, wp);

  // log(x) = log(t) + E log 2 with t in [1/2, 1); |log x| is huge so there
  // is no cancellation.
  ensure_mpfr_range();
  const exp_t big = x.top();
  const mpz_class e = to_mpz(big);
  const long wp2 = wp + static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) + 20;
  MpfrVar t(2);
  to_mpfr(t, Float::from_mpz(x.mantissa(), -x.bits()));
  MpfrVar lt_lo(wp2), lt_hi(wp2), c_lo(wp2), c_hi(wp2), m_lo(wp2), m_hi(wp2);
  mpfr_log(lt_lo, t, MPFR_RNDD);
  mpfr_log(lt_hi, t, MPFR_RNDU);
  mpfr_const_log2(c_lo, MPFR_RNDD);
  mpfr_const_log2(c_hi, MPFR_RNDU);
  if (sgn(e) >= 0) {
    mpfr_mul_z(m_lo, c_lo, e.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(m_hi, c_hi, e.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(m_lo, c_hi, e.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(m_hi, c_lo, e.get_mpz_t(), MPFR_RNDU);
  }
  MpfrVar lo(wp), hi(wp);
  mpfr_add(lo, lt_lo, m_lo, MPFR_RNDD);
  mpfr_add(hi, lt_hi, m_hi, MPFR_RNDU);
  return {from_mpfr(lo), from_mpfr(hi)};
}

std::optional<Bounds> sin_bounds(const Float& x, long wp) {
  if (!fits(x)) return std::nullopt;
  return eval_directed(mpfr_sin, x, wp);
}

std::optional<Bounds> cos_bounds(const Float& x, long wp) {
  if (!fits(x)) return std::nullopt;
  return eval_directed(mpfr_cos, x, wp);
}

Bounds atan2_bounds(const Float& y, const Float& x, long wp) {
  ensure_mpfr_range();
  if (y.is_zero() && x.is_zero()) throw std::domain_error("ballw: atan2(0, 0)");
  // Scale to a common exponent window; a component that falls far below the
  // other is replaced by a signed zero and its effect |small/large| is added.
  const exp_t ty = y.is_zero() ? x.top() : y.top();
  const exp_t tx = x.is_zero() ? y.top() : x.top();
  const exp_t shift = -std::max(ty, tx);
  constexpr exp_t kGap = exp_t(1) << 40;
  Float err;
  Float ys = y.mul_2exp(shift), xs = x.mul_2exp(shift);
  bool y_zero = y.is_zero(), x_zero = x.is_zero();
  if (!y_zero && ty < tx - kGap) {
    err = Float::pow2(ty - tx + 1);
    y_zero = true;
  } else if (!x_zero && tx < ty - kGap) {
    err = Float::pow2(tx - ty + 1);
    x_zero = true;
  }
  MpfrVar yv(2), xv(2), lo(wp), hi(wp);
  if (y_zero) mpfr_set_zero(yv, y.sign() < 0 ? -1 : 1);
  else to_mpfr(yv, ys);
  if (x_zero) mpfr_set_zero(xv, x.sign() < 0 ? -1 : 1);
  else to_mpfr(xv, xs);
  mpfr_atan2(lo, yv, xv, MPFR_RNDD);
  mpfr_atan2(hi, yv, xv, MPFR_RNDU);
  Float flo = from_mpfr(lo), fhi = from_mpfr(hi);
  if (!err.is_zero()) {
    flo = sub(flo, err, wp, Round::Floor);
    fhi = add(fhi, err, wp, Round::Ceil);
  }
  return {flo, fhi};
}

}  // namespace ballw
