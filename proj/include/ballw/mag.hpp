#pragma once

#include "ballw/float.hpp"

namespace ballw {

/// Nonnegative low-precision bound used for ball radii. The stored value is
/// always rounded in the direction that keeps the bound valid: operators and
/// the *_up helpers round up; the *_lower helpers round down.
class Mag {
 public:
  static constexpr long kPrec = 30;

  Mag() = default;
  /// |x| rounded up.
  static Mag upper(const Float& x);
  /// |x| rounded down.
  static Mag lower(const Float& x);
  static Mag pow2(exp_t e) { return Mag(Float::pow2(e)); }
  static Mag inf() { return Mag(Float::pos_inf()); }
  static Mag from_double_upper(double d) { return upper(Float(d)); }

  const Float& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_inf() const { return !v_.is_finite(); }
  bool is_finite() const { return v_.is_finite(); }
  double to_double() const { return v_.to_double(); }
  Mag mul_2exp(exp_t e) const { return Mag(v_.mul_2exp(e)); }

  friend Mag operator+(const Mag& a, const Mag& b);
  friend Mag operator*(const Mag& a, const Mag& b);
  friend Mag operator/(const Mag& a, const Mag& b);
  Mag& operator+=(const Mag& b) { return *this = *this + b; }
  Mag& operator*=(const Mag& b) { return *this = *this * b; }

  friend auto operator<=>(const Mag& a, const Mag& b) { return a.v_ <=> b.v_; }
  friend bool operator==(const Mag& a, const Mag& b) { return a.v_ == b.v_; }

 private:
  explicit Mag(Float v) : v_(std::move(v)) {}
  friend Mag add_lower(const Mag&, const Mag&);
  friend Mag mul_lower(const Mag&, const Mag&);
  friend Mag div_lower(const Mag&, const Mag&);
  friend Mag sub_lower(const Mag&, const Mag&);
  friend Mag sub_upper(const Mag&, const Mag&);
  friend Mag sqrt_upper(const Mag&);
  friend Mag sqrt_lower(const Mag&);

  Float v_;
};

Mag add_lower(const Mag& a, const Mag& b);
Mag mul_lower(const Mag& a, const Mag& b);
Mag div_lower(const Mag& a, const Mag& b);
/// max(a - b, 0) rounded down.
Mag sub_lower(const Mag& a, const Mag& b);
/// max(a - b, 0) rounded up.
Mag sub_upper(const Mag& a, const Mag& b);
Mag sqrt_upper(const Mag& a);
Mag sqrt_lower(const Mag& a);
/// Upper bound for e^r - 1.
Mag expm1_upper(const Mag& r);
inline const Mag& max(const Mag& a, const Mag& b) { return a < b ? b : a; }
inline const Mag& min(const Mag& a, const Mag& b) { return b < a ? b : a; }

}  // namespace ballw
