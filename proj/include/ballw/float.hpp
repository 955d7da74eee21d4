#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace ballw {

/// Binary exponent. 128 bits is far beyond anything a computation can reach
/// (10^(10^20) needs ~69 bits); operations that would leave +/-2^120 throw
/// std::overflow_error instead of wrapping.
using exp_t = __int128;

/// Sentinel precision meaning "do not round".
inline constexpr long kExact = 0;

enum class Round {
  Down,     // toward zero
  Up,       // away from zero
  Floor,    // toward -inf
  Ceil,     // toward +inf
  Nearest,  // ties to even
};

mpz_class to_mpz(exp_t e);
exp_t to_exp(const mpz_class& z);  // throws std::overflow_error when out of range
std::string exp_to_string(exp_t e);

class Float;
Float round(const Float& x, long prec, Round rnd, bool* inexact = nullptr);
Float add(const Float& a, const Float& b, long prec, Round rnd, bool* inexact = nullptr);
Float sub(const Float& a, const Float& b, long prec, Round rnd, bool* inexact = nullptr);
Float mul(const Float& a, const Float& b, long prec, Round rnd, bool* inexact = nullptr);
Float div(const Float& a, const Float& b, long prec, Round rnd, bool* inexact = nullptr);
Float sqrt(const Float& a, long prec, Round rnd, bool* inexact = nullptr);

/// Arbitrary-precision binary floating-point number m * 2^e with an odd
/// (or zero) integer mantissa. Values are immutable in spirit: every
/// operation returns a fresh Float.
class Float {
 public:
  enum class Kind : std::uint8_t { Finite, PosInf, NegInf, NaN };

  Float() = default;
  Float(int v) : Float(static_cast<long>(v)) {}
  Float(long v);
  explicit Float(double v);

  /// Exact value m * 2^e.
  static Float from_mpz(mpz_class m, exp_t e = 0);
  static Float pow2(exp_t e) { return from_mpz(1, e); }
  static Float pos_inf();
  static Float neg_inf();
  static Float nan();

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_inf() const { return kind_ == Kind::PosInf || kind_ == Kind::NegInf; }
  bool is_nan() const { return kind_ == Kind::NaN; }
  bool is_zero() const { return kind_ == Kind::Finite && sgn(man_) == 0; }
  int sign() const;

  const mpz_class& mantissa() const { return man_; }
  exp_t exponent() const { return exp_; }
  /// Number of significant bits of the mantissa (0 for zero).
  long bits() const;
  /// For finite nonzero x: 2^(top-1) <= |x| < 2^top.
  exp_t top() const { return exp_ + bits(); }
  bool is_integer() const { return is_finite() && (is_zero() || exp_ >= 0); }

  Float operator-() const;
  Float abs() const;
  Float mul_2exp(exp_t e) const;

  /// Nearest double; saturates to +/-inf or 0 outside the double range.
  double to_double() const;
  /// Floor/ceil to an integer (exact).
  mpz_class floor_mpz() const;
  mpz_class ceil_mpz() const;
  /// Debug representation "m*2^e".
  std::string repr() const;

  friend Float round(const Float& x, long prec, Round rnd, bool* inexact);
  friend Float add(const Float& a, const Float& b, long prec, Round rnd, bool* inexact);
  friend Float mul(const Float& a, const Float& b, long prec, Round rnd, bool* inexact);
  friend Float div(const Float& a, const Float& b, long prec, Round rnd, bool* inexact);
  friend Float sqrt(const Float& a, long prec, Round rnd, bool* inexact);

  /// Total order on non-NaN values; NaN compares unordered.
  friend std::partial_ordering operator<=>(const Float& a, const Float& b);
  friend bool operator==(const Float& a, const Float& b);

 private:
  void normalize();

  mpz_class man_;
  exp_t exp_ = 0;
  Kind kind_ = Kind::Finite;
};

int cmp_abs(const Float& a, const Float& b);
const Float& min(const Float& a, const Float& b);
const Float& max(const Float& a, const Float& b);

/// Unit in the last place at precision prec: 2^(top(x) - prec); zero for x = 0.
Float ulp(const Float& x, long prec);

}  // namespace ballw
