#pragma once

#include <mpfr.h>

#include <optional>

#include "ballw/float.hpp"

namespace ballw {

/// RAII owner of an mpfr_t.
class MpfrVar {
 public:
  explicit MpfrVar(long prec);
  ~MpfrVar();
  MpfrVar(const MpfrVar&) = delete;
  MpfrVar& operator=(const MpfrVar&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  operator mpfr_ptr() { return v_; }
  operator mpfr_srcptr() const { return v_; }

 private:
  mpfr_t v_;
};

/// Widens the MPFR exponent range of the calling thread to the maximum.
void ensure_mpfr_range();

/// Sets out to exactly x, raising the precision of out as needed. Returns
/// false when the exponent of x does not fit in MPFR's exponent range.
bool to_mpfr(mpfr_ptr out, const Float& x);
Float from_mpfr(mpfr_srcptr x);

/// Rigorous lower/upper bounds for elementary function values at a point,
/// computed with directed rounding at working precision wp.
struct Bounds {
  Float lo;
  Float hi;
};

Bounds exp_bounds(const Float& x, long wp);
/// x > 0.
Bounds log_bounds(const Float& x, long wp);
std::optional<Bounds> sin_bounds(const Float& x, long wp);
std::optional<Bounds> cos_bounds(const Float& x, long wp);
/// Principal argument of x + yi in (-pi, pi]; (x, y) != (0, 0).
Bounds atan2_bounds(const Float& y, const Float& x, long wp);
Bounds pi_bounds(long wp);
Bounds ln2_bounds(long wp);

}  // namespace ballw
