#include "ballw/format.hpp"

#include <cctype>
#include <cmath>
#include <regex>
#include <stdexcept>

#include "ballw/mpfr_interop.hpp"

namespace ballw {

namespace {

constexpr long kExactPow10Limit = 20000;

// floor(log10 |x|), possibly off by one near powers of ten.
mpz_class floor_log10_estimate(const Float& x) {
  ensure_mpfr_range();
  MpfrVar t(192), f(192), l(192);
  const mpz_class top1 = to_mpz(x.top() - 1);
  mpfr_set_z(t, top1.get_mpz_t(), MPFR_RNDN);
  // |x| / 2^(top-1) in [1, 2)
  const Float frac = round(x.abs(), 60, Round::Nearest).mul_2exp(-(x.top() - 1));
  mpfr_set_d(f, frac.to_double(), MPFR_RNDN);
  mpfr_log2(f, f, MPFR_RNDN);
  mpfr_add(t, t, f, MPFR_RNDN);
  mpfr_set_ui(l, 2, MPFR_RNDN);
  mpfr_log10(l, l, MPFR_RNDN);
  mpfr_mul(t, t, l, MPFR_RNDN);
  mpfr_floor(t, t);
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), t, MPFR_RNDN);
  return r;
}

// Exact floor(log10 |x|) for finite nonzero x.
mpz_class floor_log10(const Float& x) {
  mpz_class e = floor_log10_estimate(x);
  const RealBall ax(x.abs());
  for (int iter = 0; iter < 8; ++iter) {
    const long wp = 64 + static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
    const RealBall y = mul(ax, pow10(-e, wp), wp);
    if (y.upper() < Float(1L)) {
      e -= 1;
    } else if (!(y.lower() < Float(10L))) {
      e += 1;
    } else {
      break;
    }
  }
  return e;
}

std::string condense_run(const std::string& run, long n) {
  if (n <= 0 || static_cast<long>(run.size()) <= 3 * n) return run;
  const long hidden = static_cast<long>(run.size()) - 2 * n;
  return run.substr(0, n) + "{..." + std::to_string(hidden) + " digits...}" + run.substr(run.size() - n);
}

// The value s[0].s[1..] * 10^e, where s is a string of decimal digits.
std::string layout(const std::string& s, const mpz_class& e, long condense, long min_fixed = -4) {
  const long len = static_cast<long>(s.size());
  if (e >= min_fixed && e < len) {
    const long ei = e.get_si();
    if (ei >= 0) {
      std::string out = condense_run(s.substr(0, ei + 1), condense);
      if (ei + 1 < len) out += "." + condense_run(s.substr(ei + 1), condense);
      return out;
    }
    return "0." + condense_run(std::string(-ei - 1, '0') + s, condense);
  }
  std::string out = s.substr(0, 1);
  if (len > 1) out += "." + condense_run(s.substr(1), condense);
  out += "e";
  out += e < 0 ? "-" : "+";
  out += mpz_class(abs(e)).get_str();
  return out;
}

// Three significant digits, rounded up; r > 0 finite.
std::string radius_string(const Float& r) {
  mpz_class e = floor_log10(r);
  mpz_class k;
  for (int iter = 0; iter < 8; ++iter) {
    const long wp = 64 + static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
    const RealBall v = mul(RealBall(r), pow10(2 - e, wp), wp);
    k = v.upper(wp).ceil_mpz();
    if (k >= 1000) {
      e += 1;
    } else if (k < 100) {
      e -= 1;
    } else {
      break;
    }
  }
  return layout(k.get_str(), e, 0, -2);
}

std::string plus_minus(const Mag& r) { return "[+/- " + (r.is_inf() ? std::string("inf") : radius_string(r.value())) + "]"; }

}  // namespace

RealBall pow10(const mpz_class& n, long prec) {
  if (abs(n) <= kExactPow10Limit) {
    const unsigned long m = mpz_class(abs(n)).get_ui();
    mpz_class five;
    mpz_ui_pow_ui(five.get_mpz_t(), 5, m);
    if (n >= 0) return set_round(RealBall(Float::from_mpz(five, static_cast<exp_t>(m))), prec);
    return div(RealBall(Float::pow2(-static_cast<exp_t>(m))), RealBall(Float::from_mpz(five)), prec);
  }
  const long wp = prec + static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) + 16;
  const RealBall ln10 = log(RealBall(10), wp);
  return exp(mul(RealBall(Float::from_mpz(n)), ln10, wp), prec + 8);
}

std::string format(const RealBall& x, long digits, long condense) {
  if (!x.is_finite()) return "[+/- inf]";
  if (x.is_zero()) return "0";
  if (x.contains_zero()) return plus_minus(x.abs_upper());
  digits = std::max(1L, digits);

  const Float& mid = x.mid();
  mpz_class e = floor_log10(mid);
  long d = digits;
  if (!x.rad().is_zero()) {
    // Keep the last printed digit no finer than the radius.
    const mpz_class er = floor_log10(x.rad().value());
    const mpz_class room = e - er;
    if (room < d) d = room.get_si();
    if (d < 1) return plus_minus(x.abs_upper());
  }

  long wp = static_cast<long>(std::ceil(d * 3.3219280948873623)) + 32;
  if (!x.rad().is_zero() && !mid.is_zero()) {
    // enough bits that the conversion error stays well below the radius
    const exp_t gap = mid.top() - x.rad().value().top() + 16;
    wp = std::max(wp, static_cast<long>(std::min<exp_t>(gap, mid.bits() + 64)));
  }
  mpz_class n, scale;
  RealBall y;
  const mpz_class lo = [&] {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(d - 1));
    return p;
  }();
  const mpz_class hi = lo * 10;
  for (int iter = 0; iter < 4; ++iter) {
    scale = e - d + 1;
    const long sw = wp + static_cast<long>(mpz_sizeinbase(scale.get_mpz_t(), 2));
    y = mul(RealBall(mid), pow10(-scale, sw), wp);
    n = add(y.mid(), Float::pow2(-1), kExact, Round::Nearest).floor_mpz();
    if (abs(n) >= hi) {
      e += 1;  // rounding carried into a new leading digit
    } else if (abs(n) < lo) {
      e -= 1;
    } else {
      break;
    }
  }

  const long rw = 64 + static_cast<long>(mpz_sizeinbase(scale.get_mpz_t(), 2));
  Mag err = sub(y, RealBall(Float::from_mpz(n)), wp).abs_upper();
  if (!x.rad().is_zero()) err += mul(RealBall(x.rad().value()), pow10(-scale, rw), rw).abs_upper();

  const std::string num = (n < 0 ? "-" : "") + layout(mpz_class(abs(n)).get_str(), e, condense);
  if (err.is_zero()) return num;
  const Mag total = mul(RealBall(err.value()), pow10(scale, rw), rw).abs_upper();
  return "[" + num + " +/- " + radius_string(total.value()) + "]";
}

std::string format(const ComplexBall& z, long digits, long condense) {
  if (z.is_real()) return format(z.re(), digits, condense);
  return format(z.re(), digits, condense) + " + " + format(z.im(), digits, condense) + "i";
}

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

[[noreturn]] void bad(std::string_view text) { throw std::invalid_argument("cannot parse number: " + std::string(text)); }

RealBall parse_decimal(const std::string& s, long prec) {
  static const std::regex re(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) bad(s);
  const std::string ip = m[2].str(), fp = m[3].str();
  if (ip.empty() && fp.empty()) bad(s);
  mpz_class n(ip + fp == "" ? "0" : ip + fp, 10);
  if (m[1].str() == "-") n = -n;
  mpz_class e = 0;
  if (m[4].matched) {
    std::string es = m[4].str();
    if (es[0] == '+') es.erase(0, 1);
    e = mpz_class(es, 10);
  }
  e -= static_cast<long>(fp.size());
  if (n == 0) return RealBall();
  if (e < 0 && -e <= kExactPow10Limit) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, mpz_class(-e).get_ui());
    return div(RealBall(Float::from_mpz(n)), RealBall(Float::from_mpz(p)), prec);
  }
  const long wp = prec + 16;
  return mul(RealBall(Float::from_mpz(n)), pow10(e, wp + static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2))), prec);
}

}  // namespace

RealBall parse_real(std::string_view text, long prec) {
  const std::string s = trim(text);
  if (s.empty()) bad(text);
  if (s.front() != '[') return parse_decimal(s, prec);
  if (s.back() != ']') bad(text);
  const std::string body = s.substr(1, s.size() - 2);

  if (const auto pm = body.find("+/-"); pm != std::string::npos) {
    const std::string m = trim(body.substr(0, pm)), r = trim(body.substr(pm + 3));
    const RealBall mid = m.empty() ? RealBall() : parse_decimal(m, prec);
    if (r == "inf") return RealBall::indeterminate();
    const RealBall rad = parse_decimal(r, 64);
    if (rad.mid() < Float()) bad(text);
    return mid.add_error(rad.abs_upper());
  }
  if (const auto c = body.find(','); c != std::string::npos) {
    const RealBall a = parse_decimal(trim(body.substr(0, c)), prec);
    const RealBall b = parse_decimal(trim(body.substr(c + 1)), prec);
    if (b.upper() < a.lower()) bad(text);
    return hull(a, b, prec);
  }
  bad(text);
}

}  // namespace ballw
