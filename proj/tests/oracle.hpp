#pragma once

// Reference values of W_k for tests, computed without the library's ball
// code: a double-precision root is located on the right branch by radial
// continuation from large or tiny |z| (where log z + 2 pi k i pins the
// branch), then polished with Halley's method in MPFR.

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <stdexcept>

#include "ballw/complex_ball.hpp"
#include "ballw/mpfr_interop.hpp"

namespace ballw::oracle {

using boost::multiprecision::mpfr_float;
using cd = std::complex<double>;

struct Cx {
  mpfr_float re, im;
};

inline Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Cx operator/(const Cx& a, const Cx& b) {
  const mpfr_float d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Cx cexp(const Cx& a) {
  const mpfr_float m = exp(a.re);
  return {m * cos(a.im), m * sin(a.im)};
}
inline mpfr_float cabs(const Cx& a) { return sqrt(a.re * a.re + a.im * a.im); }

inline void set_bits(long bits) {
  ensure_mpfr_range();
  mpfr_float::default_precision(static_cast<unsigned>(bits * 0.30103) + 10);
}

inline mpfr_float to_mp(const Float& x) {
  MpfrVar t(2);
  to_mpfr(t, x);
  mpfr_float v;
  mpfr_set(v.backend().data(), t.get(), MPFR_RNDN);
  return v;
}

inline Float to_float(const mpfr_float& x) { return from_mpfr(x.backend().data()); }

inline cd newton_double(cd w, cd z) {
  for (int i = 0; i < 60; ++i) {
    const cd e = std::exp(w);
    const cd d = (w * e - z) / (e * (w + 1.0));
    w -= d;
    if (std::abs(d) < 1e-15 * (1 + std::abs(w))) break;
  }
  return w;
}

/// Double-precision W_k(z), branch chosen by continuation along the ray of z,
/// inward from infinity when |z| > 1/e and outward from 0 otherwise, so the
/// path never meets -1/e.
inline cd w_double(cd z, long k) {
  double theta = std::arg(z);
  if (z.imag() == 0 && z.real() < 0) theta = M_PI - 1e-7;  // cut values are limits from above
  const double r = std::abs(z);
  auto near = [theta](double rc) { return std::abs(M_E * std::polar(rc, theta) + 1.0) / M_E; };
  if (r > 1 / M_E) {
    double rc = std::max(r, 1e6);
    const cd L1(std::log(rc), theta + 2 * M_PI * static_cast<double>(k));
    const cd L2 = std::log(L1);
    cd w = newton_double(L1 - L2 + L2 / L1, std::polar(rc, theta));
    while (rc > r) {
      // Shorter steps near -1/e, where neighbouring branches nearly meet.
      rc = std::max({r, rc * 0.9, rc - 0.05 * near(rc) - 1e-4 * rc});
      w = newton_double(w, std::polar(rc, theta));
    }
    return newton_double(w, z);
  }
  double rc = std::min(r, 1e-12);
  const cd z0 = std::polar(rc, theta);
  cd w = z0;
  if (k != 0) {
    const cd L1(std::log(rc), theta + 2 * M_PI * static_cast<double>(k));
    const cd L2 = std::log(L1);
    w = L1 - L2 + L2 / L1;
  }
  w = newton_double(w, z0);
  while (rc < r) {
    rc = std::min({r, rc * 1.1, rc + 0.05 * near(rc) + 1e-4 * rc});
    w = newton_double(w, std::polar(rc, theta));
  }
  return newton_double(w, z);
}

/// Halley polish to about `bits` bits starting from w.
inline Cx halley(Cx w, const Cx& z, long bits) {
  const mpfr_float tol = ldexp(mpfr_float(1), static_cast<int>(-bits + 8));
  const Cx one{1, 0}, two{2, 0};
  for (int i = 0; i < 60; ++i) {
    const Cx e = cexp(w);
    const Cx f = w * e - z;
    const Cx wp1 = w + one;
    const Cx den = e * wp1 - (w + two) * f / (two * wp1);
    const Cx d = f / den;
    w = w - d;
    if (cabs(d) <= tol * (1 + cabs(w))) break;
  }
  return w;
}

/// W_k(x + yi) at about `bits` bits. Throws if polishing left the branch.
inline Cx lambertw(const Float& x, const Float& y, long k, long bits = 1000) {
  set_bits(bits + 20);
  const cd zd(x.to_double(), y.to_double());
  const cd wd = w_double(zd, k);
  const Cx z{to_mp(x), to_mp(y)};
  const Cx w = halley({mpfr_float(wd.real()), mpfr_float(wd.imag())}, z, bits + 10);
  const double dev = std::abs(cd(w.re.convert_to<double>(), w.im.convert_to<double>()) - wd);
  if (!(dev <= 1e-6 * (1 + std::abs(wd)))) throw std::runtime_error("oracle left the branch");
  return w;
}

/// Near the branch point: the root of w e^w = z with w + 1 close to
/// sign * sqrt(2(ez + 1)), principal square root.
inline Cx lambertw_near_branch(const Cx& z, int sign, long bits = 1000) {
  set_bits(bits + 20);
  const mpfr_float e = exp(mpfr_float(1));
  const Cx t{2 * (e * z.re + 1), 2 * e * z.im};
  // principal sqrt
  const mpfr_float m = cabs(t);
  mpfr_float sr = sqrt((m + abs(t.re)) / 2);
  Cx a;
  if (t.re >= 0) {
    a = {sr, sr == 0 ? mpfr_float(0) : t.im / (2 * sr)};
  } else {
    const mpfr_float si = t.im < 0 ? mpfr_float(-sr) : sr;
    a = {abs(t.im) / (2 * sr), si};
  }
  if (sign < 0) a = {-a.re, -a.im};
  // -1 + a - a^2/3 is accurate to O(a^3), far below the root separation 2|a|.
  const Cx third{mpfr_float(1) / 3, 0};
  const Cx w0 = Cx{-1, 0} + a - a * a * third;
  return halley(w0, z, bits + 10);
}

inline bool ball_near(const RealBall& b, const mpfr_float& v, long bits) {
  const Float f = to_float(v);
  const Mag tol = Mag::upper(mul(f, Float::pow2(-bits + 4), 64, Round::Up)) + Mag::pow2(-bits);
  return b.overlaps(RealBall(f, tol));
}

/// Ball contains the reference value up to the oracle's own accuracy.
inline bool encloses(const ComplexBall& b, const Cx& w, long bits = 1000) {
  return ball_near(b.re(), w.re, bits) && ball_near(b.im(), w.im, bits);
}

}  // namespace ballw::oracle
