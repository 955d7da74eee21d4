#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ballw/branch.hpp"
#include "ballw/dbounds.hpp"
#include "ballw/format.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace ballw;
using namespace ballw::testing;
namespace orc = ballw::oracle;

namespace {

double urand(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

ComplexBall pt(double x, double y) { return {RealBall(Float(x)), RealBall(Float(y))}; }
ComplexBall bx(double x, double rx, double y, double ry) {
  return {RealBall(Float(x), Mag::from_double_upper(rx)), RealBall(Float(y), Mag::from_double_upper(ry))};
}

// Branch whose image contains x + yi, read off the separating curves
// x = -y cot y (and their mirror images), for y not a multiple of pi.
long expected_branch(double x, double y) {
  if (y < 0) return -expected_branch(x, -y);
  const long j = static_cast<long>(std::floor(y / M_PI));
  if (j % 2 == 1) return (j + 1) / 2;
  const double c = -y / std::tan(y);
  return x > c ? j / 2 : j / 2 + 1;
}

// |W'(z)| = |W / (z (1 + W))| from a reference value of W.
double deriv_abs(double x, double y, long k) {
  const orc::cd wd = orc::w_double(orc::cd(x, y), k);
  return std::abs(wd / (orc::cd(x, y) * (1.0 + wd)));
}

}  // namespace

TEST_CASE("range check examples") {
  CHECK(range_check(pt(1.745528, 0), 0, 64));
  CHECK_FALSE(range_check(pt(-2, 0), 0, 64));
  const orc::Cx w1 = orc::lambertw(Float(10L), Float(), 1, 64);
  const double y1 = w1.im.convert_to<double>();
  CHECK(y1 > M_PI);
  CHECK(y1 < 2 * M_PI);
  const ComplexBall w1b = pt(w1.re.convert_to<double>(), y1);
  CHECK(range_check(w1b, 1, 64));
  CHECK_FALSE(range_check(w1b, 0, 64));
  CHECK_FALSE(range_check(w1b, 2, 64));
}

TEST_CASE("range check partitions the plane") {
  std::mt19937_64 rng(10);
  int tested = 0;
  for (int iter = 0; iter < 20000; ++iter) {
    const double x = urand(rng, -12, 12), y = urand(rng, -40, 40);
    const double frac = y / M_PI - std::round(y / M_PI);
    if (std::fabs(frac) < 1e-6) continue;
    const double c = -y / std::tan(y);
    if (std::fabs(x - c) < 1e-9 * (1 + std::fabs(c))) continue;
    const long want = expected_branch(x, y);
    const ComplexBall w = pt(x, y);
    for (long k = -6; k <= 6; ++k) {
      INFO("x=" << x << " y=" << y << " k=" << k << " want=" << want);
      REQUIRE(range_check(w, k, 64) == (k == want));
    }
    ++tested;
  }
  CHECK(tested > 19000);
}

TEST_CASE("range check is monotone under shrinking") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 3000; ++iter) {
    const double x = urand(rng, -6, 6), y = urand(rng, -20, 20);
    const double r = std::exp(urand(rng, -20, 0));
    const ComplexBall w = bx(x, r, y, r);
    const long k = static_cast<long>(rng() % 7) - 3;
    if (!range_check(w, k, 64)) continue;
    const ComplexBall inner(RealBall(sample_point(rng, w.re()), Mag::from_double_upper(r / 4)),
                            RealBall(sample_point(rng, w.im()), Mag()));
    if (!w.contains(inner)) continue;
    REQUIRE(range_check(inner, k, 64));
  }
}

TEST_CASE("cut clearance") {
  CHECK(cut_clearance(bx(-3, 1, 2, 1), 0));
  CHECK(cut_clearance(bx(-3, 1, -2, 1), 5));
  CHECK(cut_clearance(bx(-0.2, 0.05, 0, 0.05), 0));
  CHECK_FALSE(cut_clearance(bx(-2, 0.1, 0, 0.1), 0));
  CHECK_FALSE(cut_clearance(bx(-0.2, 0.05, 0, 0.05), 1));
  CHECK(cut_clearance(bx(0.5, 0.1, 0, 0.1), 1));
  CHECK(cut_clearance(bx(-2, 0.1, 0, 0), 0));  // on the cut: Im >= 0 holds
}

TEST_CASE("cut straddling") {
  CHECK(straddles_cut(bx(-5, 0.1, 0, 0.1), {0, Cut::Standard}));
  CHECK_FALSE(straddles_cut(ComplexBall(parse_real("[-5,-4]", 64)), {0, Cut::Standard}));
  CHECK(straddles_cut(bx(2, 0.1, 0, 0.1), {0, Cut::Left}));
  CHECK_FALSE(straddles_cut(bx(2, 0.1, 0, 0.1), {0, Cut::Standard}));
  CHECK_FALSE(straddles_cut(bx(-5, 0.1, 0, 0.1), {0, Cut::Left}));
  CHECK(straddles_cut(bx(-0.2, 0.01, 0, 0.01), {1, Cut::Standard}));
  CHECK_FALSE(straddles_cut(bx(-0.2, 0.01, 0, 0.01), {0, Cut::Standard}));
  CHECK_FALSE(straddles_cut(bx(-0.2, 0.01, 0, 0.01), {-1, Cut::Middle}));
  CHECK(straddles_cut(bx(-0.5, 0.01, 0, 0.01), {-1, Cut::Middle}));
  CHECK(straddles_cut(bx(3, 0.01, 0, 0.01), {-1, Cut::Middle}));
  CHECK_FALSE(straddles_cut(bx(-5, 0.1, 1, 0.1), {0, Cut::Standard}));
}

TEST_CASE("half plane split") {
  const auto [a, b] = split_half_planes(bx(-5, 0, 0, 0.2), 64);
  CHECK(a.im().contains(Float()));
  CHECK(a.im().contains(Float(0.2)));
  CHECK_FALSE(a.im().contains(Float(-0.01)));
  CHECK(b.im().contains(Float(0.2)));

  const ComplexBall z(RealBall(-5), parse_real("[-0.3,0.1]", 64));
  const auto [za, zb] = split_half_planes(z, 64);
  CHECK(za.im().upper() >= Float(0.1));
  CHECK(za.im().lower() <= Float());
  CHECK(za.im().upper() < Float(0.11));
  CHECK(zb.im().upper() >= Float(0.3));
  CHECK(zb.im().upper() < Float(0.31));

  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Float y = sample_point(rng, z.im());
    REQUIRE((za.im().contains(y) || zb.im().contains(-y)));
  }
}

TEST_CASE("derivative bound examples") {
  CHECK(bound_wp(pt(10, 0), 3) <= Mag::from_double_upper(0.12));
  const Mag c1 = bound_wp(pt(1, 0), 0);
  CHECK(c1 <= Mag::from_double_upper(1.0));
  CHECK(c1.to_double() >= deriv_abs(1, 0, 0));
  CHECK(deriv_abs(1, 0, 0) == doctest::Approx(0.3618).epsilon(1e-3));

  const RealBall zb = add(-div(RealBall(1), const_e(128), 128), parse_real("1e-8", 128), 128);
  const ComplexBall z(zb);
  const double t = M_E * 1e-8;
  const Mag c = bound_wp(z, 0);
  CHECK(c.to_double() <= 2.25 / std::sqrt(t * (1 + t)) * (1 + 1e-6));
  const orc::Cx w = orc::lambertw_near_branch({orc::to_mp(zb.mid()), 0}, 1, 128);
  const orc::cd wd(w.re.convert_to<double>(), 0);
  CHECK(c.to_double() >= std::abs(wd / (zb.mid().to_double() * (1.0 + wd))));

  // right half plane below the axis for k = 1, where the 1 + 1/(4 + |z|^2)
  // factor alone is slightly too small
  for (int k : {1, -1}) {
    const double x = 0.1679 * std::cos(1.5643), y = -k * 0.1679 * std::sin(1.5643);
    const double d = deriv_abs(x, y, k);
    CHECK(d * 0.1679 > 1.0019 * (1 + 1 / (4 + 0.1679 * 0.1679)));
    CHECK(bound_wp(pt(x, y), k).to_double() >= d);
  }

  CHECK(bound_wp(bx(0, 0.1, 0, 0.1), 2).is_inf());
  CHECK(bound_wp(bx(0, 0.1, 0, 0.1), 0).is_finite());
}

TEST_CASE("derivative bound soundness and tightness") {
  std::mt19937_64 rng(13);
  int loose = 0, checked = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    const long k = static_cast<long>(rng() % 9) - 4;
    double x, y;
    if (rng() % 4 == 0) {
      // near the branch point
      const double t = std::exp(urand(rng, std::log(1e-8), 0)), ph = urand(rng, -M_PI, M_PI);
      x = (t * std::cos(ph) - 1) / M_E;
      y = t * std::sin(ph) / M_E;
    } else {
      const double r = std::exp(urand(rng, -10, 10)), th = urand(rng, -M_PI, M_PI);
      x = r * std::cos(th);
      y = r * std::sin(th);
    }
    if (std::fabs(y) < 1e-12) continue;
    const double d = deriv_abs(x, y, k);
    const Mag c = bound_wp(pt(x, y), k);
    INFO("x=" << x << " y=" << y << " k=" << k << " d=" << d << " C=" << c.to_double());
    REQUIRE(c.to_double() >= d * (1 - 1e-12));
    ++checked;
    const double t = std::abs(M_E * orc::cd(x, y) + 1.0);
    if (t > 0.1 && std::hypot(x, y) > 0.1 && c.to_double() > 20 * d) ++loose;
  }
  CHECK(checked > 9900);
  CHECK(loose == 0);
}

TEST_CASE("derivative bound covers whole balls") {
  std::mt19937_64 rng(14);
  for (int iter = 0; iter < 2000; ++iter) {
    const long k = static_cast<long>(rng() % 5) - 2;
    const double r = std::exp(urand(rng, -4, 4)), th = urand(rng, 0.05, M_PI - 0.05) * (rng() % 2 ? 1 : -1);
    const double rad = r * 0.02;
    const ComplexBall U = bx(r * std::cos(th), rad, r * std::sin(th), rad);
    const Mag c = bound_wp(U, k);
    for (int s = 0; s < 4; ++s) {
      const Float x = sample_point(rng, U.re()), y = sample_point(rng, U.im());
      REQUIRE(c.to_double() >= deriv_abs(x.to_double(), y.to_double(), k) * (1 - 1e-12));
    }
  }
}
