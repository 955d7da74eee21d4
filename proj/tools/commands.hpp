#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ballw/evaluate.hpp"

namespace ballw::cli {

/// One CSV row. In the real mode the input columns hold the x interval; in
/// the circle and loop modes they hold the theta interval with a zero
/// imaginary part.
struct PlotRow {
  RealBall in_re, in_im;
  ComplexBall out;
};

/// Adaptive bisection of [a, b] until the output radius is below eps or
/// the depth cap is reached.
std::vector<PlotRow> plot_real(long k, const RealBall& a, const RealBall& b, double eps, int depth_cap, long prec);

/// W(e^{pi i theta}) for theta in [-0.5, 5.5] on intervals of width `step`,
/// continued across the real axis with W_n and W_left|n.
std::vector<PlotRow> plot_circle(double step, long prec);

/// 2 + W((xi^2 - 2)/(2e)) for xi = 1.25 e^{pi i theta}, theta in [0, 2],
/// continued through W_0, left|0, W_1, middle, W_{-1}, left|-1, W_0.
/// Intervals are bisected until the output radius is below eps.
std::vector<PlotRow> plot_loop(double eps, int depth_cap, long prec);

/// The loop function on a theta interval inside one schedule segment of
/// [0, 2]; indeterminate when theta crosses a segment boundary.
ComplexBall loop_value(const RealBall& theta, long prec);

void write_csv(std::ostream& out, const std::vector<PlotRow>& rows);

struct SelftestReport {
  long cases = 0;
  long finite = 0;
  long failures = 0;
  std::vector<std::string> messages;
};

/// Randomized containment, overlap and conjugate symmetry checks.
SelftestReport selftest(long cases, std::uint64_t seed);

/// Time of W_0(z) divided by the time of exp(W_0(z)) at the given digits.
double bench_ratio(const ComplexBall& z, long digits, double* w_seconds = nullptr);

/// Named inputs: "-1/e", "e", or anything parse_real accepts.
RealBall parse_value(const std::string& text, long prec);

/// Precision in bits for a decimal digit count.
long digits_to_prec(long digits);

/// Full command line front end; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ballw::cli
