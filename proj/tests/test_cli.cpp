#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "ballw/format.hpp"
#include "commands.hpp"
#include "test_util.hpp"

using namespace ballw;
using namespace ballw::testing;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ballw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("eval") {
  const Result a = run({"eval", "--z", "10", "--k", "0", "--digits", "10"});
  CHECK(a.code == 0);
  CHECK(a.out.rfind("[1.745528003 +/- ", 0) == 0);

  const Result b = run({"eval", "--z", "0", "--k", "1", "--digits", "10"});
  CHECK(b.code == 0);
  CHECK(b.out == "[+/- inf] + [+/- inf]i\n");

  const Result c = run({"eval", "--z", " -0.2", "--k", "-1", "--cut", "middle", "--digits", "20"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("[-2.54264135777352642", 0) == 0);
  CHECK(c.out.find('i') == std::string::npos);

  // continuity of the middle cut across (-1/e, 0)
  const Result up = run({"eval", "--z", "-0.2", "--im", "1e-30", "--cut", "middle", "--digits", "20"});
  const Result dn = run({"eval", "--z", "-0.2", "--im", "-1e-30", "--cut", "middle", "--digits", "20"});
  CHECK(up.out.rfind("[-2.54264135777352642", 0) == 0);
  CHECK(dn.out.rfind("[-2.54264135777352642", 0) == 0);

  const Result d = run({"eval", "--z", "-1/e+1e-100", "--digits", "100", "--condense", "10"});
  CHECK(d.code == 0);
  CHECK(d.out.rfind("[-0.9999999999{", 0) == 0);
}

TEST_CASE("usage and parse errors") {
  CHECK(run({"eval", "--z", "abc"}).code == 1);
  CHECK(run({"eval"}).code == 1);
  CHECK(run({"eval", "--z", "1", "--cut", "sideways"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("default precision from the environment") {
  setenv("BALLW_PREC", "200", 1);
  const Result a = run({"eval", "--z", "2"});
  unsetenv("BALLW_PREC");
  const Result b = run({"eval", "--z", "2"});
  CHECK(a.out.size() > b.out.size() + 30);
  CHECK(a.out.rfind("[0.85260550201372549134647241469531746689845", 0) == 0);
}

TEST_CASE("series") {
  const Result a = run({"series", "--f", "exp1px", "--terms", "2", "--digits", "20"});
  REQUIRE(a.code == 0);
  const auto la = lines(a.out);
  REQUIRE(la.size() == 2);
  CHECK(la[1].rfind("1: [0.5000000000000000000", 0) == 0);

  const Result b = run({"series", "--f", "x", "--terms", "5"});
  REQUIRE(b.code == 0);
  const auto lb = lines(b.out);
  REQUIRE(lb.size() == 5);
  CHECK(lb[0] == "0: 0");
  CHECK(lb[1].rfind("1: 1.0", 0) == 0);
  CHECK(lb[2].rfind("2: -1.0", 0) == 0);
  CHECK(lb[3].rfind("3: 1.5", 0) == 0);
  CHECK(lb[4].rfind("4: [-2.66666", 0) == 0);

  const Result c = run({"series", "--coeffs", "[-0.36787944118,-0.36787944117],1", "--terms", "3"});
  CHECK(c.code == 1);
  CHECK(c.err.find("branch point") != std::string::npos);

  // a complex branch of a real series
  const Result d = run({"series", "--f", "x", "--coeffs", "1,1", "--k", "1", "--terms", "2"});
  CHECK(d.code == 0);
  CHECK(lines(d.out)[0].find('i') != std::string::npos);
}

TEST_CASE("plot rows") {
  auto rad_ok = [](const std::vector<cli::PlotRow>& rows, double eps) {
    for (const auto& r : rows) {
      if (!r.out.is_finite()) return false;
      if (!(max(r.out.re().rad(), r.out.im().rad()) < Mag::upper(Float(eps)))) return false;
    }
    return true;
  };
  const long p = 64;
  const auto r0 = cli::plot_real(0, cli::parse_value("-1/e", p), cli::parse_value("1", p), 1e-3, 40, p);
  CHECK(rad_ok(r0, 1e-3));
  const auto r1 = cli::plot_real(-1, cli::parse_value("-1/e", p), cli::parse_value("-0.01", p), 1e-3, 40, p);
  CHECK(rad_ok(r1, 1e-3));
  // the rows tile the range in order
  for (size_t i = 1; i < r0.size(); ++i) CHECK(r0[i - 1].in_re.overlaps(r0[i].in_re));

  const auto circle = cli::plot_circle(1.0 / 13, 64);
  CHECK(circle.size() == 78);
  for (size_t i = 1; i < circle.size(); ++i) {
    INFO("row " << i);
    CHECK(circle[i - 1].out.overlaps(circle[i].out));
  }

  const auto loop = cli::plot_loop(0.05, 40, 64);
  for (const auto& r : loop) CHECK(r.out.abs_upper() < Mag::pow2(1));

  const Result csv = run({"plot", "--mode", "circle"});
  const auto lc = lines(csv.out);
  CHECK(lc[0] == "re_lo,re_hi,im_lo,im_hi,out_re_mid,out_re_rad,out_im_mid,out_im_rad");
  CHECK(lc.size() == 79);
  CHECK(lc[1].find("e-01,") != std::string::npos);
}

TEST_CASE("selftest") {
  const Result r = run({"selftest", "--cases", "300", "--seed", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("parse then format covers the input") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    const RealBall x = random_ball(rng, -60, 60);
    const std::string s = format(x, 1 + static_cast<long>(rng() % 30));
    const RealBall back = cli::parse_value(s, 128);
    INFO(s);
    CHECK(back.contains(x));
  }
  const RealBall iv = cli::parse_value("[-0.5,0.25]", 64);
  CHECK(iv.contains(Float(-0.5)));
  CHECK(iv.contains(Float(0.25)));
}
