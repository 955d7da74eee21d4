#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>

#include "ballw/format.hpp"
#include "test_util.hpp"

using namespace ballw;
using namespace ballw::testing;

namespace {

// Exact rational value of a plain decimal string.
mpq_class decimal_q(const std::string& s) {
  static const std::regex re(R"(([+-]?)(\d+)(?:\.(\d+))?(?:e([+-]\d+))?)");
  std::smatch m;
  REQUIRE(std::regex_match(s, m, re));
  const std::string frac = m[3].str();
  mpq_class q(mpz_class(m[2].str() + frac, 10));
  long e = m[4].matched ? std::stol(m[4].str()) : 0;
  e -= static_cast<long>(frac.size());
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
  if (e >= 0) q *= p;
  else q /= p;
  if (m[1].str() == "-") q = -q;
  return q;
}

// Exact interval denoted by printed output.
std::pair<mpq_class, mpq_class> printed_interval(const std::string& s) {
  if (s.front() != '[') {
    const mpq_class v = decimal_q(s);
    return {v, v};
  }
  const auto pm = s.find("+/- ");
  REQUIRE(pm != std::string::npos);
  const std::string mid = pm > 1 ? s.substr(1, pm - 2) : "";
  const mpq_class r = decimal_q(s.substr(pm + 4, s.size() - pm - 5));
  const mpq_class m = mid.empty() ? mpq_class(0) : decimal_q(mid);
  return {m - r, m + r};
}

bool printed_contains(const std::string& s, const RealBall& x) {
  const auto [lo, hi] = printed_interval(s);
  return lo <= to_mpq(x.lower(4096)) && to_mpq(x.upper(4096)) <= hi;
}

RealBall dec(const char* s, long prec = 256) { return parse_real(s, prec); }

}  // namespace

TEST_CASE("special values") {
  CHECK(format(RealBall(), 10) == "0");
  CHECK(format(RealBall::indeterminate(), 10) == "[+/- inf]");
  CHECK(format(RealBall(3), 10) == "3.000000000");
  CHECK(format(RealBall(Float(-0.25)), 3) == "-0.250");
  CHECK(format(RealBall(Float(), Mag::pow2(-10)), 10) == "[+/- 9.77e-4]");
}

TEST_CASE("midpoint digits are cut at the radius") {
  CHECK(format(dec("[1.7455280027 +/- 3e-10]"), 10).rfind("[1.745528003 +/- ", 0) == 0);
  CHECK(format(dec("[-0.99999 +/- 3.18e-5]"), 10).rfind("[-1.000 +/- ", 0) == 0);
  CHECK(format(dec("[230258509299404568354.9 +/- 3e10]"), 10).rfind("[2.302585093e+20 +/- ", 0) == 0);
  CHECK(format(dec("[0.5671432904097838 +/- 1e-30]"), 10).rfind("[0.5671432904 +/- ", 0) == 0);
  CHECK(format(dec("[5 +/- 2]"), 10) == "[+/- 7.00]");
}

TEST_CASE("radius has three digits and rounds up") {
  const std::string s = format(RealBall(Float(1L), Mag::from_double_upper(3.811e-10)), 10);
  CHECK(s == "[1.000000000 +/- 3.82e-10]");
  CHECK(format(RealBall(Float(1000L), Mag::pow2(-6)), 3) == "[1.00e+3 +/- 0.0157]");
}

TEST_CASE("condensed output") {
  const std::string s = format(const_pi(400), 100, 10);
  CHECK(s.rfind("[3.1415926535{...79 digits...}", 0) == 0);
  CHECK(format(const_pi(400), 100).find("{") == std::string::npos);
}

TEST_CASE("parsing") {
  CHECK(dec("1.5").contains(Float(1.5)));
  CHECK(dec("1.5").is_exact());
  CHECK(ball_contains_q(dec("-2.5e-3"), mpq_class(-1, 400)));
  CHECK(dec("-2.5e-3").rad() < Mag::pow2(-250));
  const RealBall iv = dec("[1,2]");
  CHECK(iv.contains(Float(1L)));
  CHECK(iv.contains(Float(2L)));
  const RealBall pm = dec("[3 +/- 0.5]");
  CHECK(pm.contains(Float(2.5)));
  CHECK(pm.contains(Float(3.5)));
  CHECK(dec("[+/- inf]").is_finite() == false);
  CHECK_THROWS_AS(dec("abc"), std::invalid_argument);
  CHECK_THROWS_AS(dec("[2,1]"), std::invalid_argument);
  CHECK_THROWS_AS(dec("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(dec(""), std::invalid_argument);
}

TEST_CASE("parsing huge exponents") {
  const RealBall big = dec("1e100000000000000000000", 64);
  REQUIRE(big.is_finite());
  const RealBall l10 = div(log(big, 128), log(RealBall(10), 128), 128);
  CHECK(l10.contains(Float(1e20)));
  CHECK(format(big, 10).rfind("[1.000000000e+100000000000000000000 +/- ", 0) == 0);
}

TEST_CASE("printed interval contains the ball") {
  std::mt19937_64 rng(31337);
  for (int iter = 0; iter < 2000; ++iter) {
    const RealBall x = random_ball(rng, -40, 40);
    const long digits = 1 + static_cast<long>(rng() % 40);
    const std::string s = format(x, digits);
    INFO(s);
    REQUIRE(printed_contains(s, x));
    // Reparsing is sound as well.
    REQUIRE(parse_real(s, 200).contains(x));
  }
}
