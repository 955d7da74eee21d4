#pragma once

#include <vector>

#include "oracle.hpp"

namespace ballw::oracle {

// Taylor coefficients of W_k(f(x)) at 0 from the derivative formula
// W^(n)(z) = e^{-nW} p_n(W) / (1 + W)^{2n-1}, p_1 = 1,
// p_{n+1}(w) = -(n w + 3n - 1) p_n(w) + (1 + w) p_n'(w),
// composed with f by plain series arithmetic in MPFR.
inline std::vector<Cx> derivative_oracle(const std::vector<Cx>& f, long k, int len, long bits) {
  const Cx w = lambertw(to_float(f[0].re), to_float(f[0].im), k, bits);
  set_bits(bits);
  std::vector<std::vector<mpfr_float>> p{{}, {mpfr_float(1)}};
  for (int n = 1; n + 1 < len; ++n) {
    const auto& pn = p[n];
    std::vector<mpfr_float> q(pn.size() + 1, mpfr_float(0));
    for (size_t i = 0; i < pn.size(); ++i) {
      q[i + 1] -= n * pn[i];
      q[i] -= (3 * n - 1) * pn[i];
      if (i > 0) {
        q[i - 1] += i * pn[i];
        q[i] += i * pn[i];
      }
    }
    p.push_back(q);
  }
  // d_n = W^(n)(f0) / n!
  std::vector<Cx> d(len);
  d[0] = w;
  const Cx one{1, 0};
  const Cx opw = one + w;
  for (int n = 1; n < len; ++n) {
    Cx pv{0, 0};
    for (size_t i = p[n].size(); i-- > 0;) pv = pv * w + Cx{p[n][i], 0};
    Cx den = one;
    for (int j = 0; j < 2 * n - 1; ++j) den = den * opw;
    const Cx enw = cexp(Cx{-n * w.re, -n * w.im});
    Cx v = enw * pv / den;
    mpfr_float fact = 1;
    for (int j = 2; j <= n; ++j) fact *= j;
    d[n] = {v.re / fact, v.im / fact};
  }
  // sum_n d_n (f - f0)^n
  std::vector<Cx> g(len, Cx{0, 0}), pw(len, Cx{0, 0});
  pw[0] = one;
  g[0] = d[0];
  for (int n = 1; n < len; ++n) {
    std::vector<Cx> nxt(len, Cx{0, 0});
    for (int i = 0; i < len; ++i)
      for (int j = 1; i + j < len; ++j) nxt[i + j] = nxt[i + j] + pw[i] * f[j];
    pw = nxt;
    for (int i = 0; i < len; ++i) g[i] = g[i] + d[n] * pw[i];
  }
  return g;
}

}  // namespace ballw::oracle
