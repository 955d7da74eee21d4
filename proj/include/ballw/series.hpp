#pragma once

#include <gmpxx.h>

#include <vector>

#include "ballw/complex_ball.hpp"

namespace ballw {

/// Exact rational as a ball with a prec-bit midpoint.
RealBall ball_from_mpq(const mpq_class& q, long prec);

/// (-n)^(n-1) / n!, the n-th Taylor coefficient of W_0 at 0.
mpq_class taylor_coeff(int n);

/// W_0(z) from T terms of the Taylor series at 0, plus the truncation bound.
/// Indeterminate unless |z| < 1/e on the whole ball.
ComplexBall taylor_w0(const ComplexBall& z, int T, long prec);

/// Coefficients c_0..c_n of B(xi) = W((xi^2 - 2) / (2e)) = sum c_n xi^n,
/// where B is the branch through -1 at xi = 0 with B'(0) = 1.
std::vector<mpq_class> puiseux_coeffs(int n);

/// W_k(z) near -1/e from P terms of B(+-alpha), alpha = sqrt(2(ez + 1)).
/// k = 0 uses B(alpha); k = -1 needs Im(z) >= 0 and k = 1 needs Im(z) < 0,
/// both using B(-alpha). Anything else, or |alpha| >= 5/4, is indeterminate.
ComplexBall puiseux_w(const ComplexBall& z, long k, int P, long prec);

/// Unsigned Stirling number of the first kind [n, k].
mpz_class stirling1(int n, int k);

/// c_{l,m} = (-1)^l / m! * [l+m, l+1], so that the leading correction
/// to L1 - L2 is +L2/L1.
mpq_class asym_coeff(int l, int m);

/// W_k(z) from the doubly indexed asymptotic series in sigma = 1/L1 and
/// tau = L2/L1, with L1 = log z + 2 pi k i (or log(-z) + (2k+1) pi i when
/// negated_log is set) and L2 = log L1. Indeterminate unless |sigma| and
/// |tau| are below 1/4 and, on the branches that reach 0, |z| > 1.
ComplexBall asym_w(const ComplexBall& z, long k, int L, int M, long prec, bool negated_log = false);

}  // namespace ballw
