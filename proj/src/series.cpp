#include "ballw/series.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace ballw {

namespace {

// Grow-only table guarded for concurrent readers.
template <class Row>
class GrowCache {
 public:
  template <class Extend>
  Row get(size_t n, Extend extend) {
    {
      std::shared_lock lock(mu_);
      if (n < rows_.size()) return rows_[n];
    }
    std::unique_lock lock(mu_);
    while (rows_.size() <= n) rows_.push_back(extend(rows_));
    return rows_[n];
  }

 private:
  std::shared_mutex mu_;
  std::vector<Row> rows_;
};

Mag mag_pow(const Mag& a, int n) {
  Mag r = Mag::pow2(0);
  for (int i = 0; i < n; ++i) r *= a;
  return r;
}

const Mag& one() {
  static const Mag m = Mag::pow2(0);
  return m;
}

ComplexBall add_real(const ComplexBall& z, const RealBall& x, long prec) { return {add(z.re(), x, prec), z.im()}; }

}  // namespace

RealBall ball_from_mpq(const mpq_class& q, long prec) {
  const RealBall num(Float::from_mpz(q.get_num()));
  if (q.get_den() == 1) return set_round(num, prec);
  return div(num, RealBall(Float::from_mpz(q.get_den())), prec);
}

mpq_class taylor_coeff(int n) {
  if (n < 1) return 0;
  mpz_class num, fac;
  mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n - 1));
  if (n % 2 == 0) num = -num;
  mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(n));
  mpq_class c(num, fac);
  c.canonicalize();
  return c;
}

ComplexBall taylor_w0(const ComplexBall& z, int T, long prec) {
  if (!z.is_finite()) return ComplexBall::indeterminate();
  const Mag ez = Mag::upper(mul(RealBall(z.abs_upper().value()), const_e(64), 64).upper());
  if (!(ez < one())) return ComplexBall::indeterminate();
  const Mag err = mag_pow(ez, T) / sub_lower(one(), ez);

  const long wp = prec + 8;
  ComplexBall acc;
  for (int n = T - 1; n >= 1; --n) {
    acc = mul(add_real(acc, ball_from_mpq(taylor_coeff(n), wp), wp), z, wp);
  }
  return set_round(acc, prec).add_error(err);
}

std::vector<mpq_class> puiseux_coeffs(int n) {
  if (n < 0) throw std::invalid_argument("puiseux_coeffs: negative order");
  // With B = -1 + u, differentiating B e^B = (xi^2 - 2)/(2e) and eliminating
  // e^B gives u u' (xi^2 - 2) = 2 xi (u - 1). Writing p_m for the
  // coefficients of u u', this is p_m = (p_{m-2} - 2 c_{m-1}) / 2, and p_m
  // involves c_m only through (m + 1) c_m c_1.
  struct Entry {
    mpq_class c, p;
  };
  static GrowCache<Entry> cache;
  auto extend = [](const std::vector<Entry>& rows) {
    const size_t m = rows.size();
    if (m == 0) return Entry{-1, 0};
    if (m == 1) return Entry{1, 1};
    Entry e;
    e.p = (rows[m - 2].p - 2 * rows[m - 1].c) / 2;
    mpq_class rest = 0;
    for (size_t i = 2; i < m; ++i) rest += mpq_class(static_cast<long>(i)) * rows[i].c * rows[m + 1 - i].c;
    e.c = (e.p - rest) / static_cast<long>(m + 1);
    e.c.canonicalize();
    return e;
  };
  cache.get(static_cast<size_t>(n), extend);
  std::vector<mpq_class> out;
  out.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out.push_back(cache.get(static_cast<size_t>(i), extend).c);
  return out;
}

ComplexBall puiseux_w(const ComplexBall& z, long k, int P, long prec) {
  if (!z.is_finite() || k < -1 || k > 1) return ComplexBall::indeterminate();
  if (k == -1 && !z.im().is_nonnegative()) return ComplexBall::indeterminate();
  if (k == 1 && !z.im().is_negative()) return ComplexBall::indeterminate();

  const long wp = prec + 10;
  const ComplexBall ez1 = add_real(mul(z, const_e(wp), wp), RealBall(1), wp);
  ComplexBall xi = sqrt(ez1.mul_2exp(1), wp);
  if (k != 0) xi = -xi;

  const Mag r = xi.abs_upper() * Mag::pow2(2) / Mag::upper(Float(5L));
  if (!(r < one())) return ComplexBall::indeterminate();
  const Mag tail = mag_pow(r, P).mul_2exp(1) / sub_lower(one(), r);

  const std::vector<mpq_class> c = puiseux_coeffs(std::max(P - 1, 0));
  ComplexBall acc;
  for (int n = P - 1; n >= 0; --n) {
    acc = add_real(acc, ball_from_mpq(c[static_cast<size_t>(n)], wp), wp);
    if (n > 0) acc = mul(acc, xi, wp);
  }
  return set_round(acc, prec).add_error(tail);
}

mpz_class stirling1(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("stirling1: negative index");
  if (k > n) return 0;
  static GrowCache<std::vector<mpz_class>> cache;
  const auto row = cache.get(static_cast<size_t>(n), [](const std::vector<std::vector<mpz_class>>& rows) {
    if (rows.empty()) return std::vector<mpz_class>{1};
    const auto& prev = rows.back();
    const long m = static_cast<long>(rows.size()) - 1;  // building row m + 1
    std::vector<mpz_class> next(prev.size() + 1, 0);
    for (size_t j = 0; j < next.size(); ++j) {
      if (j < prev.size()) next[j] += m * prev[j];
      if (j >= 1) next[j] += prev[j - 1];
    }
    return next;
  });
  return row[static_cast<size_t>(k)];
}

mpq_class asym_coeff(int l, int m) {
  if (l < 0 || m < 1) throw std::invalid_argument("asym_coeff: index out of range");
  mpz_class fac;
  mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(m));
  mpq_class c(stirling1(l + m, l + 1), fac);
  c.canonicalize();
  return l % 2 ? mpq_class(-c) : c;
}

ComplexBall asym_w(const ComplexBall& z, long k, int L, int M, long prec, bool negated_log) {
  if (!z.is_finite() || z.contains_zero()) return ComplexBall::indeterminate();
  // These branches approach W_0 near the origin, where the expansion fails.
  const bool near_w0 = negated_log ? (k == 0 || k == -1) : k == 0;
  if (near_w0 && !(z.abs_lower() > one())) return ComplexBall::indeterminate();

  const long wp = prec + 16;
  const ComplexBall lz = log(negated_log ? -z : z, wp);
  const long turns = negated_log ? 2 * k + 1 : 2 * k;
  const RealBall shift = mul(const_pi(wp), RealBall(turns), wp);
  const ComplexBall L1(lz.re(), add(lz.im(), shift, wp));
  const ComplexBall L2 = log(L1, wp);
  const ComplexBall sigma = div(ComplexBall(1), L1, wp);
  const ComplexBall tau = mul(L2, sigma, wp);

  const Mag quarter = Mag::pow2(-2);
  const Mag s = sigma.abs_upper(), t = tau.abs_upper();
  if (!(s < quarter) || !(t < quarter)) return ComplexBall::indeterminate();
  const Mag s4 = s.mul_2exp(2), t4 = t.mul_2exp(2);
  const Mag eps = (t4 * mag_pow(s4, L) + mag_pow(t4, M)) / mul_lower(sub_lower(one(), s4), sub_lower(one(), t4));

  ComplexBall sum;
  for (int m = M - 1; m >= 1; --m) {
    ComplexBall inner;
    for (int l = L - 1; l >= 0; --l) {
      inner = add_real(inner, ball_from_mpq(asym_coeff(l, m), wp), wp);
      if (l > 0) inner = mul(inner, sigma, wp);
    }
    sum = mul(add(sum, inner, wp), tau, wp);
  }
  const ComplexBall w = add(sub(L1, L2, wp), sum, wp);
  return set_round(w, prec).add_error(eps);
}

}  // namespace ballw
