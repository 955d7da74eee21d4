#pragma once

#include <string>
#include <string_view>

#include "ballw/complex_ball.hpp"

namespace ballw {

/// Decimal interval "[m +/- r]" whose printed interval contains the ball.
/// The midpoint carries at most `digits` significant digits and is cut
/// where the radius makes further digits meaningless; the radius is printed
/// with three digits, rounded up. Exact values print as a plain number and
/// an indeterminate ball prints as "[+/- inf]".
///
/// With condense = n > 0, every run of more than 3n digits is shortened to
/// its first and last n digits around "{...k digits...}".
std::string format(const RealBall& x, long digits, long condense = 0);
std::string format(const ComplexBall& z, long digits, long condense = 0);

/// Parses "1.5", "-2e-30", "1e100000000000000000000", "[a,b]", "[m +/- r]"
/// or "[+/- r]" into a ball containing the denoted set, with midpoint at
/// prec bits. Throws std::invalid_argument on malformed input.
RealBall parse_real(std::string_view text, long prec);

/// Exact power of ten as a ball (rounded to prec bits).
RealBall pow10(const mpz_class& n, long prec);

}  // namespace ballw
