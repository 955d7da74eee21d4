#include "ballw/powser.hpp"

#include <stdexcept>

#include "ballw/evaluate.hpp"

namespace ballw {

namespace {

constexpr long kGuard = 20;

template <class B>
const B& at(const Series<B>& s, long i, const B& zero) {
  return i < static_cast<long>(s.size()) ? s[i] : zero;
}

RealBall scale(const RealBall& a, const RealBall& c, long prec) { return mul(a, c, prec); }
ComplexBall scale(const ComplexBall& a, const RealBall& c, long prec) { return mul(a, c, prec); }

bool finite(const RealBall& x) { return x.is_finite(); }
bool finite(const ComplexBall& x) { return x.is_finite(); }

bool is_zero(const RealBall& x) { return x.is_zero(); }
bool is_zero(const ComplexBall& x) { return x.re().is_zero() && x.im().is_zero(); }

template <class B>
B indeterminate();
template <>
RealBall indeterminate<RealBall>() { return RealBall::indeterminate(); }
template <>
ComplexBall indeterminate<ComplexBall>() { return ComplexBall::indeterminate(); }

template <class B>
Series<B> newton(const Series<B>& f, const B& w0, long n, long prec) {
  const long wp = prec + kGuard;
  const B zero{};
  const long len = n + 1;
  if (!finite(w0)) return Series<B>(len, indeterminate<B>());
  const B d0 = add(w0, B(1), wp);
  if (d0.contains_zero()) throw std::domain_error("branch point: 1 + W(f(0)) contains 0");

  // Target lengths ceil(len / 2^j), smallest first.
  std::vector<long> sched;
  for (long m = len; m > 1; m = (m + 1) / 2) sched.push_back(m);

  const B e0 = exp(w0, wp);
  Series<B> w{w0};
  for (auto it = sched.rbegin(); it != sched.rend(); ++it) {
    const long L = *it, m = static_cast<long>(w.size());
    // e^w = e_0 exp(w - w_0)
    Series<B> h(w);
    h[0] = zero;
    Series<B> E = series_exp0(h, L, wp);
    for (auto& c : E) c = mul(c, e0, wp);
    const Series<B> wE = series_mullow(w, E, L, wp);

    // The residual w e^w - f vanishes below x^m; only its top part is needed.
    Series<B> r(L - m), den(L - m);
    for (long i = m; i < L; ++i) r[i - m] = sub(wE[i], at(f, i, zero), wp);
    for (long i = 0; i < L - m; ++i) den[i] = add(E[i], wE[i], wp);
    const Series<B> q = series_div(r, den, L - m, wp);
    for (long i = 0; i < L - m; ++i) w.push_back(-q[i]);
  }
  for (auto& c : w) c = set_round(c, prec);
  return w;
}

}  // namespace

template <class B>
Series<B> series_mullow(const Series<B>& a, const Series<B>& b, long len, long prec) {
  Series<B> c(len);
  const long na = std::min<long>(a.size(), len), nb = std::min<long>(b.size(), len);
  for (long i = 0; i < na; ++i) {
    for (long j = 0; j < nb && i + j < len; ++j) c[i + j] = add(c[i + j], mul(a[i], b[j], prec), prec);
  }
  return c;
}

template <class B>
Series<B> series_exp0(const Series<B>& h, long len, long prec) {
  // e' = h' e, so k e_k = sum_{j=1..k} j h_j e_{k-j}
  const B zero{};
  Series<B> e(len);
  if (len == 0) return e;
  e[0] = B(1);
  for (long k = 1; k < len; ++k) {
    B s{};
    for (long j = 1; j <= k; ++j) {
      const B& hj = at(h, j, zero);
      if (is_zero(hj)) continue;
      s = add(s, scale(mul(hj, e[k - j], prec), RealBall(j), prec), prec);
    }
    e[k] = scale(s, div(RealBall(1), RealBall(k), prec), prec);
  }
  return e;
}

template <class B>
Series<B> series_div(const Series<B>& a, const Series<B>& b, long len, long prec) {
  const B zero{};
  Series<B> q(len);
  if (len == 0) return q;
  const B inv = div(B(1), b.at(0), prec);
  for (long k = 0; k < len; ++k) {
    B s = at(a, k, zero);
    for (long j = 1; j <= k; ++j) {
      const B& bj = at(b, j, zero);
      if (is_zero(bj)) continue;
      s = sub(s, mul(bj, q[k - j], prec), prec);
    }
    q[k] = mul(s, inv, prec);
  }
  return q;
}

template Series<RealBall> series_mullow(const Series<RealBall>&, const Series<RealBall>&, long, long);
template Series<ComplexBall> series_mullow(const Series<ComplexBall>&, const Series<ComplexBall>&, long, long);
template Series<RealBall> series_exp0(const Series<RealBall>&, long, long);
template Series<ComplexBall> series_exp0(const Series<ComplexBall>&, long, long);
template Series<RealBall> series_div(const Series<RealBall>&, const Series<RealBall>&, long, long);
template Series<ComplexBall> series_div(const Series<ComplexBall>&, const Series<ComplexBall>&, long, long);

Series<ComplexBall> series_lambertw(const Series<ComplexBall>& f, long k, long n, long prec) {
  if (f.empty() || n < 0) throw std::invalid_argument("series_lambertw: empty input");
  const ComplexBall w0 = evaluate(f[0], k, Cut::Standard, prec + kGuard);
  return newton(f, w0, n, prec);
}

Series<RealBall> series_lambertw(const Series<RealBall>& f, long k, long n, long prec) {
  if (f.empty() || n < 0) throw std::invalid_argument("series_lambertw: empty input");
  RealBall w0 = RealBall::indeterminate();
  if (k == 0 || k == -1) {
    w0 = lambertw_real(f[0], k, prec + kGuard);
    if (!w0.is_finite()) {
      // f(0) may touch -1/e, where the real path gives up; the complex
      // evaluation still detects the branch point.
      const ComplexBall c = evaluate(ComplexBall(f[0]), k, Cut::Standard, prec + kGuard);
      if (c.is_finite() && add(c, ComplexBall(1), prec).contains_zero())
        throw std::domain_error("branch point: 1 + W(f(0)) contains 0");
    }
  }
  return newton(f, w0, n, prec);
}

}  // namespace ballw
