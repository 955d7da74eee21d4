#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ballw/format.hpp"
#include "ballw/powser.hpp"

namespace ballw::cli {

namespace {

constexpr int kDefaultDigits = 15;

RealBall inv_e(long prec) { return div(RealBall(1), const_e(prec), prec); }

Float midpoint(const Float& a, const Float& b) { return add(a, b, kExact, Round::Nearest).mul_2exp(-1); }

RealBall interval(const Float& a, const Float& b) { return RealBall::from_bounds(a, b, 128); }

double mag_up(const Mag& m) {
  if (m.is_inf()) return INFINITY;
  if (m.is_zero()) return 0;
  const double d = m.value().to_double();
  return std::nextafter(d, INFINITY);
}

double out_rad(const ComplexBall& w) {
  if (!w.is_finite()) return INFINITY;
  return std::max(mag_up(w.re().rad()), mag_up(w.im().rad()));
}

// z = e^{pi i theta} as a ball.
ComplexBall unit_circle(const RealBall& theta, long prec) {
  const RealBall a = mul(theta, const_pi(prec), prec);
  return {cos(a, prec), sin(a, prec)};
}

// Theta grid point lo + j * step as a ball, step = 1/den or a dyadic.
RealBall grid(double lo, long j, double step, long prec) {
  const double inv = 1 / step;
  if (std::fabs(inv - std::round(inv)) < 1e-9) {
    const RealBall q = div(RealBall(j), RealBall(static_cast<long>(std::round(inv))), prec);
    return add(RealBall(Float(lo)), q, prec);
  }
  return add(RealBall(Float(lo)), mul(RealBall(j), RealBall(Float(step)), prec), prec);
}

struct Segment {
  double lo, hi;
  BranchSpec spec;
};

// Branch schedule for the two loops of (xi^2 - 2)/(2e) around -1/e. The
// argument crosses the real axis at theta = 0, 1/2, 1, 3/2; each crossing
// sits inside a segment whose cut is elsewhere.
const std::vector<Segment>& loop_schedule() {
  static const std::vector<Segment> s{
      {0.0, 0.25, {0, Cut::Standard}},    {0.25, 0.75, {0, Cut::Left}},     {0.75, 0.875, {1, Cut::Standard}},
      {0.875, 1.125, {0, Cut::Middle}},   {1.125, 1.25, {-1, Cut::Standard}}, {1.25, 1.75, {-1, Cut::Left}},
      {1.75, 2.0, {0, Cut::Standard}},
  };
  return s;
}

void bisect(const Float& lo, const Float& hi, int depth, int cap, double eps,
            const std::function<ComplexBall(const RealBall&)>& f, std::vector<PlotRow>& rows) {
  const RealBall in = interval(lo, hi);
  const ComplexBall w = f(in);
  if (out_rad(w) < eps || depth >= cap) {
    rows.push_back({in, RealBall(), w});
    return;
  }
  const Float m = midpoint(lo, hi);
  bisect(lo, m, depth + 1, cap, eps, f, rows);
  bisect(m, hi, depth + 1, cap, eps, f, rows);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

double urand(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

ComplexBall random_input(std::mt19937_64& rng) {
  double x, y;
  switch (rng() % 4) {
    case 0: {
      // close to -1/e
      const double t = std::exp(urand(rng, std::log(1e-14), 0.5)), ph = urand(rng, -M_PI, M_PI);
      x = (t * std::cos(ph) - 1) / M_E;
      y = t * std::sin(ph) / M_E;
      break;
    }
    case 1:
      // on or near the negative real axis
      x = -std::exp(urand(rng, -8, 8));
      y = (rng() % 3 == 0) ? 0.0 : x * std::exp(urand(rng, -45, -1)) * (rng() % 2 ? 1 : -1);
      break;
    default: {
      const double r = std::exp(urand(rng, -30, 30)), th = urand(rng, -M_PI, M_PI);
      x = r * std::cos(th);
      y = r * std::sin(th);
    }
  }
  const double scale = std::max(std::fabs(x), std::fabs(y));
  ComplexBall z{RealBall(Float(x)), RealBall(Float(y))};
  if (rng() % 2) z = z.add_error(Mag::upper(Float(scale * std::exp(urand(rng, -70, -2)))));
  return z;
}

template <class F>
double seconds_per_call(F&& f) {
  using clock = std::chrono::steady_clock;
  long reps = 1;
  for (;;) {
    const auto t0 = clock::now();
    for (long i = 0; i < reps; ++i) f();
    const double dt = std::chrono::duration<double>(clock::now() - t0).count();
    if (dt > 0.2 || reps > (1L << 24)) return dt / static_cast<double>(reps);
    reps *= 2;
  }
}

long default_prec() {
  if (const char* s = std::getenv("BALLW_PREC")) {
    const long p = std::strtol(s, nullptr, 10);
    if (p >= 2) return p;
  }
  return digits_to_prec(kDefaultDigits);
}

Cut parse_cut(const std::string& s) {
  if (s == "std" || s == "standard") return Cut::Standard;
  if (s == "left") return Cut::Left;
  if (s == "middle") return Cut::Middle;
  throw std::invalid_argument("unknown cut: " + s);
}

long prec_for(long digits, bool digits_given) { return digits_given ? digits_to_prec(digits) : default_prec(); }

long digits_for(long prec, long digits, bool digits_given) {
  return digits_given ? digits : std::max(1L, static_cast<long>(std::floor(prec * 0.30103)));
}

}  // namespace

long digits_to_prec(long digits) { return static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 4; }

RealBall parse_value(const std::string& text, long prec) {
  const std::string t = trim(text);
  const long wp = prec + 16;
  for (const char* name : {"-1/e", "e"}) {
    const std::string n(name);
    if (t.compare(0, n.size(), n) != 0) continue;
    RealBall base = n == "e" ? const_e(wp) : -inv_e(wp);
    const std::string rest = trim(t.substr(n.size()));
    if (rest.empty()) return base;
    if (rest[0] == '+') return add(base, parse_real(trim(rest.substr(1)), wp), wp);
    if (rest[0] == '-') return sub(base, parse_real(trim(rest.substr(1)), wp), wp);
  }
  return parse_real(t, wp);
}

std::vector<PlotRow> plot_real(long k, const RealBall& a, const RealBall& b, double eps, int depth_cap, long prec) {
  std::vector<PlotRow> rows;
  const Float lo = a.lower(prec + 16), hi = b.upper(prec + 16);
  if (!(lo < hi)) throw std::invalid_argument("plot: empty range");
  bisect(lo, hi, 0, depth_cap, eps,
         [&](const RealBall& x) { return lambertw({ComplexBall(x), {k, Cut::Standard}, prec, {}}); }, rows);
  return rows;
}

std::vector<PlotRow> plot_circle(double step, long prec) {
  std::vector<PlotRow> rows;
  const long n = static_cast<long>(std::llround(6.0 / step));
  const long per = static_cast<long>(std::llround(1.0 / step));
  for (long j = 0; j < n; ++j) {
    const RealBall a = grid(-0.5, j, step, prec + 16), b = grid(-0.5, j + 1, step, prec + 16);
    const RealBall theta = union_of(a, b, prec + 16);
    // segment s covers theta in [s - 1/2, s + 1/2]
    const long s = j / per;
    const BranchSpec spec = s % 2 == 0 ? BranchSpec{s / 2, Cut::Standard} : BranchSpec{(s - 1) / 2, Cut::Left};
    rows.push_back({theta, RealBall(), lambertw({unit_circle(theta, prec + 10), spec, prec, {}})});
  }
  return rows;
}

ComplexBall loop_value(const RealBall& theta, const BranchSpec& spec, long prec) {
  const long wp = prec + 10;
  const ComplexBall xi = unit_circle(theta, wp);
  const ComplexBall xi2 = mul(sqr(xi, wp), RealBall(Float(1.5625)), wp);
  const ComplexBall u = div(sub(xi2, ComplexBall(2), wp), ComplexBall(mul(RealBall(2), const_e(wp), wp)), wp);
  return add(ComplexBall(2), lambertw({u, spec, prec, {}}), prec);
}

ComplexBall loop_value(const RealBall& theta, long prec) {
  for (const Segment& seg : loop_schedule()) {
    if (!(theta.lower() < Float(seg.lo)) && !(theta.upper() > Float(seg.hi))) return loop_value(theta, seg.spec, prec);
  }
  return ComplexBall::indeterminate();
}

std::vector<PlotRow> plot_loop(double eps, int depth_cap, long prec) {
  std::vector<PlotRow> rows;
  for (const Segment& seg : loop_schedule()) {
    // start from pieces of width 1/64 so every box stays near its segment
    const long pieces = static_cast<long>(std::llround((seg.hi - seg.lo) * 64));
    for (long i = 0; i < pieces; ++i) {
      const Float lo(seg.lo + static_cast<double>(i) / 64), hi(seg.lo + static_cast<double>(i + 1) / 64);
      bisect(lo, hi, 0, depth_cap, eps, [&](const RealBall& th) { return loop_value(th, seg.spec, prec); }, rows);
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<PlotRow>& rows) {
  out << "re_lo,re_hi,im_lo,im_hi,out_re_mid,out_re_rad,out_im_mid,out_im_rad\n";
  out << std::scientific << std::setprecision(17);
  for (const PlotRow& r : rows) {
    out << r.in_re.lower().to_double() << ',' << r.in_re.upper().to_double() << ',' << r.in_im.lower().to_double()
        << ',' << r.in_im.upper().to_double() << ',';
    if (r.out.is_finite()) {
      out << r.out.re().mid().to_double() << ',' << mag_up(r.out.re().rad()) << ',' << r.out.im().mid().to_double()
          << ',' << mag_up(r.out.im().rad()) << '\n';
    } else {
      out << "nan,inf,nan,inf\n";
    }
  }
}

SelftestReport selftest(long cases, std::uint64_t seed) {
  SelftestReport rep;
  std::mt19937_64 rng(seed);
  auto fail = [&rep](const std::string& what, const ComplexBall& z, long k, long p) {
    ++rep.failures;
    if (rep.messages.size() < 20) {
      std::ostringstream s;
      s << what << ": z = " << format(z, 20) << ", k = " << k << ", prec = " << p;
      rep.messages.push_back(s.str());
    }
  };
  for (long i = 0; i < cases; ++i) {
    const long k = static_cast<long>(rng() % 11) - 5;
    const long p1 = 20 + static_cast<long>(rng() % 581), p2 = 20 + static_cast<long>(rng() % 581);
    const ComplexBall z1 = random_input(rng);
    const Mag grow = Mag::upper(Float(std::exp(urand(rng, -60, -2)))) * max(z1.abs_upper(), Mag::pow2(-60));
    const ComplexBall z2 = z1.add_error(grow);
    ++rep.cases;

    const ComplexBall w1 = evaluate(z1, k, Cut::Standard, p1);
    const ComplexBall w2 = evaluate(z2, k, Cut::Standard, p2);
    if (w1.is_finite()) {
      ++rep.finite;
      const long wp = p1 + 30;
      if (!mul(w1, exp(w1, wp), wp).overlaps(z1)) fail("w e^w misses z", z1, k, p1);
    }
    if (w1.is_finite() && w2.is_finite() && !w1.overlaps(w2)) fail("overlapping inputs, disjoint outputs", z1, k, p1);
    if (z1.im().is_positive() || z1.im().is_negative()) {
      const ComplexBall c = evaluate(z1.conj(), -k, Cut::Standard, p1);
      if (w1.is_finite() != c.is_finite() || (w1.is_finite() && !w1.overlaps(c.conj())))
        fail("conjugate symmetry", z1, k, p1);
    }
  }
  return rep;
}

double bench_ratio(const ComplexBall& z, long digits, double* w_seconds) {
  const long prec = digits_to_prec(digits);
  const ComplexBall w = evaluate(z, 0, Cut::Standard, prec);
  const double tw = seconds_per_call([&] { (void)evaluate(z, 0, Cut::Standard, prec); });
  const ComplexBall wm = w.mid();
  double te;
  if (wm.is_real()) {
    const RealBall x = wm.re();
    te = seconds_per_call([&] { (void)exp(x, prec); });
  } else {
    te = seconds_per_call([&] { (void)exp(wm, prec); });
  }
  if (w_seconds) *w_seconds = tw;
  return tw / te;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigorous Lambert W evaluation in ball arithmetic"};
  app.require_subcommand(1);

  std::string z_text = "0", im_text, cut_text = "std", f_text = "x", coeffs_text, mode = "real", from = "-1/e",
              to = "1", out_path;
  long k = 0, digits = kDefaultDigits, terms = 5, condense = 0, cases = 10000, depth = 40;
  double eps = 1e-3, step = 1.0 / 13;
  std::uint64_t seed = 1;

  auto* eval = app.add_subcommand("eval", "Enclose W_k(z)");
  eval->add_option("--z", z_text, "real part, number or interval")->required();
  eval->add_option("--im", im_text, "imaginary part");
  eval->add_option("--k", k, "branch index");
  eval->add_option("--cut", cut_text, "std, left or middle");
  auto* eval_digits = eval->add_option("--digits", digits, "decimal digits");
  eval->add_option("--condense", condense, "shorten long digit runs");

  auto* series = app.add_subcommand("series", "Coefficients of W_k(f(x))");
  series->add_option("--f", f_text, "x or exp1px");
  series->add_option("--coeffs", coeffs_text, "comma separated coefficients of f");
  series->add_option("--k", k, "branch index");
  series->add_option("--terms", terms, "number of coefficients")->check(CLI::PositiveNumber);
  auto* series_digits = series->add_option("--digits", digits, "decimal digits");
  series->add_option("--condense", condense, "shorten long digit runs");

  auto* plot = app.add_subcommand("plot", "CSV of output boxes under adaptive subdivision");
  plot->add_option("--mode", mode, "real, circle or loop");
  plot->add_option("--k", k, "branch index (real mode)");
  plot->add_option("--from", from, "left end (real mode)");
  plot->add_option("--to", to, "right end (real mode)");
  plot->add_option("--eps", eps, "target output radius");
  plot->add_option("--step", step, "theta interval width (circle mode)");
  plot->add_option("--depth", depth, "subdivision depth cap");
  auto* plot_digits = plot->add_option("--digits", digits, "decimal digits");
  plot->add_option("--output", out_path, "CSV file, default stdout");

  auto* self = app.add_subcommand("selftest", "Randomized correctness checks");
  self->add_option("--cases", cases, "number of cases");
  self->add_option("--seed", seed, "random seed");

  auto* bench = app.add_subcommand("bench", "Time of W_0 relative to exp");
  auto* bench_z = bench->add_option("--z", z_text, "single input instead of the standard set");
  bench->add_option("--digits", digits, "decimal digits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (eval->parsed()) {
      const bool given = eval_digits->count() > 0;
      const long prec = prec_for(digits, given);
      const RealBall re = parse_value(z_text, prec);
      const RealBall im = im_text.empty() ? RealBall() : parse_value(im_text, prec);
      const ComplexBall w = lambertw({{re, im}, {k, parse_cut(cut_text)}, prec, {}});
      out << format(w, digits_for(prec, digits, given), condense) << '\n';
      return 0;
    }

    if (series->parsed()) {
      const bool given = series_digits->count() > 0;
      const long prec = prec_for(digits, given);
      const long shown = digits_for(prec, digits, given);
      const long wp = prec + 16;
      Series<RealBall> f;
      if (!coeffs_text.empty()) {
        for (const std::string& c : split_list(coeffs_text)) f.push_back(parse_value(c, prec));
      } else if (f_text == "x") {
        f = {RealBall(), RealBall(1)};
      } else if (f_text == "exp1px") {
        RealBall c = const_e(wp);
        for (long i = 0; i < terms; ++i) {
          f.push_back(c);
          c = div(c, RealBall(i + 1), wp);
        }
      } else {
        throw std::invalid_argument("unknown series: " + f_text);
      }
      if (k == 0 || k == -1) {
        const Series<RealBall> w = series_lambertw(f, k, terms - 1, prec);
        bool real_ok = true;
        for (const auto& c : w) real_ok = real_ok && c.is_finite();
        if (real_ok) {
          for (long i = 0; i < terms; ++i) out << i << ": " << format(w[i], shown, condense) << '\n';
          return 0;
        }
      }
      Series<ComplexBall> fc(f.begin(), f.end());
      const Series<ComplexBall> w = series_lambertw(fc, k, terms - 1, prec);
      for (long i = 0; i < terms; ++i) out << i << ": " << format(w[i], shown, condense) << '\n';
      return 0;
    }

    if (plot->parsed()) {
      const long prec = plot_digits->count() > 0 ? digits_to_prec(digits) : 64;
      std::vector<PlotRow> rows;
      if (mode == "real") {
        rows = plot_real(k, parse_value(from, prec), parse_value(to, prec), eps, static_cast<int>(depth), prec);
      } else if (mode == "circle") {
        rows = plot_circle(step, prec);
      } else if (mode == "loop") {
        rows = plot_loop(eps, static_cast<int>(depth), prec);
      } else {
        throw std::invalid_argument("unknown plot mode: " + mode);
      }
      if (out_path.empty()) {
        write_csv(out, rows);
      } else {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot open " + out_path);
        write_csv(f, rows);
      }
      return 0;
    }

    if (self->parsed()) {
      const SelftestReport r = selftest(cases, seed);
      for (const auto& m : r.messages) err << m << '\n';
      out << r.cases << " cases, " << r.finite << " finite, " << r.failures << " failures\n";
      out << (r.failures == 0 ? "PASS" : "FAIL") << '\n';
      return r.failures == 0 ? 0 : 2;
    }

    if (bench->parsed()) {
      const long prec = digits_to_prec(digits) + 16;
      std::vector<std::pair<std::string, ComplexBall>> inputs;
      if (bench_z->count() > 0) {
        inputs.emplace_back(z_text, ComplexBall(parse_value(z_text, prec)));
      } else {
        const RealBall big = parse_real("1e100000000000000000000", prec);
        const RealBall tiny = parse_real("1e-100", prec);
        inputs = {
            {"10", ComplexBall(10)},
            {"1e10", ComplexBall(parse_real("1e10", prec))},
            {"10^(10^20)", ComplexBall(big)},
            {"10i", ComplexBall(RealBall(), RealBall(10))},
            {"-10^(10^20)", ComplexBall(-big)},
            {"-1/e+1e-100", ComplexBall(add(-inv_e(prec), tiny, prec))},
            {"-1/e-1e-100", ComplexBall(sub(-inv_e(prec), tiny, prec))},
        };
      }
      out << "z,digits,ratio,seconds\n";
      for (const auto& [name, z] : inputs) {
        double tw = 0;
        const double r = bench_ratio(z, digits, &tw);
        out << name << ',' << digits << ',' << std::fixed << std::setprecision(2) << r << ',' << std::scientific
            << std::setprecision(3) << tw << '\n';
      }
      return 0;
    }
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace ballw::cli
