#include "ballw/float.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ballw {

namespace {

constexpr exp_t kExpLimit = exp_t(1) << 120;

void check_exp(exp_t e) {
  if (e > kExpLimit || e < -kExpLimit) throw std::overflow_error("ballw::Float exponent out of range");
}

// Rounding direction applied to the magnitude of a value with the given sign.
bool rounds_away(Round rnd, int sign) {
  switch (rnd) {
    case Round::Down: return false;
    case Round::Up: return true;
    case Round::Floor: return sign < 0;
    case Round::Ceil: return sign > 0;
    case Round::Nearest: return false;
  }
  return false;
}

// Rounds the integer m (nonzero) to prec bits in place, adjusting e.
bool round_mantissa(mpz_class& m, exp_t& e, long prec, Round rnd) {
  const long b = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
  if (prec == kExact || b <= prec) return false;
  const int s = sgn(m);
  const unsigned long shift = static_cast<unsigned long>(b - prec);
  mpz_class mag = abs(m);
  const bool inexact = mpz_scan1(mag.get_mpz_t(), 0) < shift;
  if (!inexact) {
    m >>= shift;  // exact for either sign
    e += shift;
    return false;
  }
  bool bump;
  if (rnd == Round::Nearest) {
    const bool half = mpz_tstbit(mag.get_mpz_t(), shift - 1);
    const bool rest = mpz_scan1(mag.get_mpz_t(), 0) < shift - 1;
    mpz_class q;
    mpz_tdiv_q_2exp(q.get_mpz_t(), mag.get_mpz_t(), shift);
    bump = half && (rest || mpz_odd_p(q.get_mpz_t()));
    mag = q;
  } else {
    bump = rounds_away(rnd, s);
    mpz_tdiv_q_2exp(mag.get_mpz_t(), mag.get_mpz_t(), shift);
  }
  if (bump) mag += 1;
  m = s < 0 ? mpz_class(-mag) : mag;
  e += shift;
  return true;
}

void set_flag(bool* flag, bool v) {
  if (flag) *flag = v;
}

}  // namespace

mpz_class to_mpz(exp_t e) {
  const bool neg = e < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(e + 1)) + 1 : static_cast<unsigned __int128>(e);
  mpz_class z = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  z <<= 64;
  z += static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  return neg ? mpz_class(-z) : z;
}

exp_t to_exp(const mpz_class& z) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 125) throw std::overflow_error("ballw: exponent out of range");
  mpz_class a = abs(z);
  mpz_class hi = a >> 64;
  mpz_class lo = a - (hi << 64);
  unsigned __int128 u = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                        static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
  exp_t v = static_cast<exp_t>(u);
  return sgn(z) < 0 ? -v : v;
}

std::string exp_to_string(exp_t e) { return to_mpz(e).get_str(); }

Float::Float(long v) : man_(v) { normalize(); }

Float::Float(double v) {
  if (std::isnan(v)) {
    kind_ = Kind::NaN;
    return;
  }
  if (std::isinf(v)) {
    kind_ = v > 0 ? Kind::PosInf : Kind::NegInf;
    return;
  }
  int e = 0;
  const double f = std::frexp(v, &e);
  man_ = std::ldexp(f, 53);  // exact: |f| in [0.5, 1)
  exp_ = e - 53;
  normalize();
}

Float Float::from_mpz(mpz_class m, exp_t e) {
  Float x;
  x.man_ = std::move(m);
  x.exp_ = e;
  x.normalize();
  return x;
}

Float Float::pos_inf() {
  Float x;
  x.kind_ = Kind::PosInf;
  return x;
}

Float Float::neg_inf() {
  Float x;
  x.kind_ = Kind::NegInf;
  return x;
}

Float Float::nan() {
  Float x;
  x.kind_ = Kind::NaN;
  return x;
}

void Float::normalize() {
  if (kind_ != Kind::Finite) {
    man_ = 0;
    exp_ = 0;
    return;
  }
  if (sgn(man_) == 0) {
    exp_ = 0;
    return;
  }
  const auto tz = mpz_scan1(man_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
    exp_ += tz;
  }
  check_exp(exp_);
}

int Float::sign() const {
  switch (kind_) {
    case Kind::PosInf: return 1;
    case Kind::NegInf: return -1;
    case Kind::NaN: return 0;
    default: return sgn(man_);
  }
}

long Float::bits() const {
  if (kind_ != Kind::Finite || sgn(man_) == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(man_.get_mpz_t(), 2));
}

Float Float::operator-() const {
  Float x = *this;
  if (kind_ == Kind::PosInf) x.kind_ = Kind::NegInf;
  else if (kind_ == Kind::NegInf) x.kind_ = Kind::PosInf;
  else x.man_ = -man_;
  return x;
}

Float Float::abs() const { return sign() < 0 ? -*this : *this; }

Float Float::mul_2exp(exp_t e) const {
  if (!is_finite() || is_zero()) return *this;
  Float x = *this;
  x.exp_ += e;
  check_exp(x.exp_);
  return x;
}

double Float::to_double() const {
  switch (kind_) {
    case Kind::PosInf: return HUGE_VAL;
    case Kind::NegInf: return -HUGE_VAL;
    case Kind::NaN: return std::nan("");
    default: break;
  }
  if (is_zero()) return 0.0;
  if (top() > 1100) return sign() > 0 ? HUGE_VAL : -HUGE_VAL;
  if (top() < -1100) return 0.0;
  const Float r = round(*this, 53, Round::Nearest);
  return std::ldexp(r.man_.get_d(), static_cast<int>(r.exp_));
}

mpz_class Float::floor_mpz() const {
  if (!is_finite()) throw std::domain_error("ballw: floor of non-finite value");
  if (exp_ >= 0) {
    if (exp_ > (exp_t(1) << 40)) throw std::overflow_error("ballw: integer too large");
    mpz_class r = man_;
    r <<= static_cast<unsigned long>(exp_);
    return r;
  }
  if (-exp_ > bits() + 1) return sgn(man_) < 0 ? -1 : 0;
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), man_.get_mpz_t(), static_cast<unsigned long>(-exp_));
  return r;
}

mpz_class Float::ceil_mpz() const { return -(-*this).floor_mpz(); }

std::string Float::repr() const {
  switch (kind_) {
    case Kind::PosInf: return "+inf";
    case Kind::NegInf: return "-inf";
    case Kind::NaN: return "nan";
    default: break;
  }
  return man_.get_str() + "*2^" + exp_to_string(exp_);
}

Float round(const Float& x, long prec, Round rnd, bool* inexact) {
  if (!x.is_finite() || x.is_zero()) {
    set_flag(inexact, false);
    return x;
  }
  Float r = x;
  const bool ix = round_mantissa(r.man_, r.exp_, prec, rnd);
  r.normalize();
  set_flag(inexact, ix);
  return r;
}

Float add(const Float& a, const Float& b, long prec, Round rnd, bool* inexact) {
  set_flag(inexact, false);
  if (!a.is_finite() || !b.is_finite()) {
    if (a.is_nan() || b.is_nan()) return Float::nan();
    if (a.is_inf() && b.is_inf()) return a.kind() == b.kind() ? a : Float::nan();
    return a.is_inf() ? a : b;
  }
  if (b.is_zero()) return round(a, prec, rnd, inexact);
  if (a.is_zero()) return round(b, prec, rnd, inexact);

  // hi has the larger magnitude bound.
  const bool swap = a.top() < b.top();
  const Float& hi = swap ? b : a;
  const Float& lo = swap ? a : b;

  if (prec != kExact) {
    // If |lo| is far below the rounding granularity of hi, replace it by a
    // tiny sticky term of the same sign; the rounded sum is unchanged.
    const exp_t g = std::min(hi.exp_, hi.top() - prec - 3);
    if (lo.top() <= g - 1) {
      const exp_t base = g - 2;
      mpz_class m = hi.man_;
      m <<= static_cast<unsigned long>(hi.exp_ - base);
      m += lo.sign();
      exp_t e = base;
      const bool ix = round_mantissa(m, e, prec, rnd);
      set_flag(inexact, ix);
      return Float::from_mpz(std::move(m), e);
    }
  }

  const exp_t e = std::min(hi.exp_, lo.exp_);
  mpz_class m = hi.man_;
  m <<= static_cast<unsigned long>(hi.exp_ - e);
  mpz_class t = lo.man_;
  t <<= static_cast<unsigned long>(lo.exp_ - e);
  m += t;
  if (sgn(m) == 0) return Float();
  exp_t re = e;
  const bool ix = round_mantissa(m, re, prec, rnd);
  set_flag(inexact, ix);
  return Float::from_mpz(std::move(m), re);
}

Float sub(const Float& a, const Float& b, long prec, Round rnd, bool* inexact) {
  return add(a, -b, prec, rnd, inexact);
}

Float mul(const Float& a, const Float& b, long prec, Round rnd, bool* inexact) {
  set_flag(inexact, false);
  if (!a.is_finite() || !b.is_finite()) {
    if (a.is_nan() || b.is_nan()) return Float::nan();
    const int s = a.sign() * b.sign();
    if (s == 0) return Float::nan();
    return s > 0 ? Float::pos_inf() : Float::neg_inf();
  }
  if (a.is_zero() || b.is_zero()) return Float();
  mpz_class m = a.man_ * b.man_;
  exp_t e = a.exp_ + b.exp_;
  const bool ix = round_mantissa(m, e, prec, rnd);
  set_flag(inexact, ix);
  return Float::from_mpz(std::move(m), e);
}

Float div(const Float& a, const Float& b, long prec, Round rnd, bool* inexact) {
  set_flag(inexact, false);
  if (a.is_nan() || b.is_nan()) return Float::nan();
  if (b.is_zero()) {
    if (a.is_zero()) return Float::nan();
    return a.sign() > 0 ? Float::pos_inf() : Float::neg_inf();
  }
  if (a.is_inf()) {
    if (b.is_inf()) return Float::nan();
    return a.sign() * b.sign() > 0 ? Float::pos_inf() : Float::neg_inf();
  }
  if (b.is_inf() || a.is_zero()) return Float();
  if (prec == kExact) throw std::invalid_argument("ballw: division requires finite precision");

  const int s = a.sign() * b.sign();
  const long shift = std::max(0L, prec + 3 + b.bits() - a.bits());
  mpz_class num = abs(a.man_);
  num <<= static_cast<unsigned long>(shift);
  mpz_class den = abs(b.man_);
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  exp_t e = a.exp_ - b.exp_ - shift;
  if (sgn(r) != 0) {
    q = 2 * q + 1;
    e -= 1;
  }
  if (s < 0) q = -q;
  bool ix = round_mantissa(q, e, prec, rnd);
  ix = ix || sgn(r) != 0;
  set_flag(inexact, ix);
  return Float::from_mpz(std::move(q), e);
}

Float sqrt(const Float& a, long prec, Round rnd, bool* inexact) {
  set_flag(inexact, false);
  if (a.is_nan() || a.sign() < 0) return Float::nan();
  if (a.is_inf() || a.is_zero()) return a;
  if (prec == kExact) throw std::invalid_argument("ballw: sqrt requires finite precision");
  mpz_class m = a.man_;
  exp_t e = a.exp_;
  if (e % 2 != 0) {
    m <<= 1;
    e -= 1;
  }
  const long want = 2 * (prec + 3);
  const long have = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
  if (have < want) {
    long t = (want - have + 1) / 2;
    m <<= static_cast<unsigned long>(2 * t);
    e -= 2 * t;
  }
  mpz_class root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t());
  exp_t re = e / 2;
  if (sgn(rem) != 0) {
    root = 2 * root + 1;
    re -= 1;
  }
  bool ix = round_mantissa(root, re, prec, rnd);
  ix = ix || sgn(rem) != 0;
  set_flag(inexact, ix);
  return Float::from_mpz(std::move(root), re);
}

int cmp_abs(const Float& a, const Float& b) {
  const bool ai = a.is_inf(), bi = b.is_inf();
  if (ai || bi) return ai == bi ? 0 : (ai ? 1 : -1);
  if (a.is_zero() || b.is_zero()) return (a.is_zero() ? 0 : 1) - (b.is_zero() ? 0 : 1);
  if (a.top() != b.top()) return a.top() < b.top() ? -1 : 1;
  const exp_t e = std::min(a.exponent(), b.exponent());
  mpz_class x = abs(a.mantissa());
  x <<= static_cast<unsigned long>(a.exponent() - e);
  mpz_class y = abs(b.mantissa());
  y <<= static_cast<unsigned long>(b.exponent() - e);
  const int c = cmp(x, y);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::partial_ordering operator<=>(const Float& a, const Float& b) {
  if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
  const int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? std::partial_ordering::less : std::partial_ordering::greater;
  if (sa == 0) return std::partial_ordering::equivalent;
  int c = cmp_abs(a, b);
  if (sa < 0) c = -c;
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool operator==(const Float& a, const Float& b) { return (a <=> b) == std::partial_ordering::equivalent; }

const Float& min(const Float& a, const Float& b) { return b < a ? b : a; }
const Float& max(const Float& a, const Float& b) { return a < b ? b : a; }

Float ulp(const Float& x, long prec) {
  if (!x.is_finite() || x.is_zero()) return Float();
  return Float::pow2(x.top() - prec);
}

}  // namespace ballw
