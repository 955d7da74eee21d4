#pragma once

#include <vector>

#include "ballw/complex_ball.hpp"

namespace ballw {

/// Truncated power series, coefficient i of x^i.
template <class B>
using Series = std::vector<B>;

/// First n + 1 coefficients of W_k(f(x)) by Newton iteration on w e^w = f.
/// Throws std::domain_error when 1 + W_k(f(0)) contains 0 (f(0) at the
/// branch point). An indeterminate constant term gives an all-indeterminate
/// series.
Series<ComplexBall> series_lambertw(const Series<ComplexBall>& f, long k, long n, long prec);

/// Real variant for W_0 and W_{-1} with f(0) in the real domain of the
/// branch; other inputs give an indeterminate series.
Series<RealBall> series_lambertw(const Series<RealBall>& f, long k, long n, long prec);

template <class B>
Series<B> series_mullow(const Series<B>& a, const Series<B>& b, long len, long prec);

/// exp(h) to len terms for h(0) = 0.
template <class B>
Series<B> series_exp0(const Series<B>& h, long len, long prec);

template <class B>
Series<B> series_div(const Series<B>& a, const Series<B>& b, long len, long prec);

}  // namespace ballw
