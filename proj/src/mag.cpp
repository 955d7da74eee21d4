#include "ballw/mag.hpp"

#include <cmath>

namespace ballw {

namespace {

Float clamp_nonneg(Float v) { return v.sign() < 0 || v.is_nan() ? Float() : v; }

}  // namespace

Mag Mag::upper(const Float& x) {
  if (x.is_nan() || x.is_inf()) return inf();
  return Mag(round(x.abs(), kPrec, Round::Up));
}

Mag Mag::lower(const Float& x) {
  if (x.is_nan()) return Mag();
  if (x.is_inf()) return inf();
  return Mag(round(x.abs(), kPrec, Round::Down));
}

Mag operator+(const Mag& a, const Mag& b) { return Mag(add(a.v_, b.v_, Mag::kPrec, Round::Up)); }

Mag operator*(const Mag& a, const Mag& b) {
  if (a.is_zero() || b.is_zero()) return Mag();
  return Mag(mul(a.v_, b.v_, Mag::kPrec, Round::Up));
}

Mag operator/(const Mag& a, const Mag& b) {
  if (a.is_zero()) return Mag();
  if (b.is_zero() || a.is_inf()) return Mag::inf();
  return Mag(div(a.v_, b.v_, Mag::kPrec, Round::Up));
}

Mag add_lower(const Mag& a, const Mag& b) { return Mag(add(a.v_, b.v_, Mag::kPrec, Round::Down)); }

Mag mul_lower(const Mag& a, const Mag& b) {
  if (a.is_zero() || b.is_zero()) return Mag();
  return Mag(mul(a.v_, b.v_, Mag::kPrec, Round::Down));
}

Mag div_lower(const Mag& a, const Mag& b) {
  if (a.is_zero() || b.is_inf()) return Mag();
  if (b.is_zero()) return Mag::inf();
  return Mag(div(a.v_, b.v_, Mag::kPrec, Round::Down));
}

Mag sub_lower(const Mag& a, const Mag& b) {
  if (b.is_inf()) return Mag();
  return Mag(clamp_nonneg(sub(a.v_, b.v_, Mag::kPrec, Round::Floor)));
}

Mag sub_upper(const Mag& a, const Mag& b) {
  if (a.is_inf()) return Mag::inf();
  return Mag(clamp_nonneg(sub(a.v_, b.v_, Mag::kPrec, Round::Ceil)));
}

Mag sqrt_upper(const Mag& a) { return Mag(sqrt(a.v_, Mag::kPrec, Round::Up)); }

Mag sqrt_lower(const Mag& a) { return Mag(sqrt(a.v_, Mag::kPrec, Round::Down)); }

Mag expm1_upper(const Mag& r) {
  if (r.is_inf()) return Mag::inf();
  if (r <= Mag::pow2(0)) return r + r * r;  // e^r - 1 <= r + (e-2) r^2 for r <= 1
  const double d = std::nextafter(r.to_double(), HUGE_VAL);
  if (d > 700) return Mag::inf();
  return Mag::from_double_upper(std::exp(d) * (1 + 1e-12));
}

}  // namespace ballw
