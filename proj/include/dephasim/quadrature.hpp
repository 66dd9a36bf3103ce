#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace dephasim::quad {

struct Options {
  double rel_tol{1e-10};
  double abs_tol{0.0};
  int max_intervals{20000};
};

struct Outcome {
  double value{0.0};
  double error{0.0};  // estimated absolute error
  int intervals{0};
  bool converged{true};
};

namespace detail {

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule.
inline constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Segment {
  double a, b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment evaluate(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_mid = f(mid);
  double kronrod = kKronrodW[7] * f_mid;
  double gauss = kGaussW[3] * f_mid;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double fi = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodW[i] * fi;
    if (i % 2 == 1) gauss += kGaussW[i / 2] * fi;
  }
  kronrod *= half;
  gauss *= half;
  return Segment{a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration over a pre-split partition.
// All initial segments are seeded into the refinement queue, so caller-supplied
// breakpoints (half periods of an oscillatory factor, a low/high split, ...)
// participate in the global error budget. Convergence is declared when the
// summed error estimate drops below max(abs_tol, rel_tol*|I|) or below the
// roundoff floor of the partition sum.
template <class F>
Outcome integrate_segments(const F& f, std::span<const double> breakpoints,
                           const Options& opts = {}) {
  Outcome out;
  if (breakpoints.size() < 2) return out;

  std::priority_queue<detail::Segment> queue;
  double total = 0.0;
  double total_err = 0.0;
  double total_abs = 0.0;
  int count = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) continue;
    auto seg = detail::evaluate(f, breakpoints[i], breakpoints[i + 1]);
    total += seg.value;
    total_err += seg.error;
    total_abs += std::abs(seg.value);
    queue.push(seg);
    ++count;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  auto floor = [&] { return 50.0 * eps * total_abs; };
  auto target = [&] {
    return std::max({opts.abs_tol, opts.rel_tol * std::abs(total), floor()});
  };

  while (total_err > target() && count < opts.max_intervals && !queue.empty()) {
    const auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // interval no longer splittable in double precision
      total_err -= worst.error;
      continue;
    }
    auto left = detail::evaluate(f, worst.a, mid);
    auto right = detail::evaluate(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_abs += std::abs(left.value) + std::abs(right.value) -
                 std::abs(worst.value);
    queue.push(left);
    queue.push(right);
    ++count;
  }

  out.value = total;
  out.error = total_err;
  out.intervals = count;
  out.converged = total_err <= target() * 1.000001 || total_err <= 100.0 * floor();
  return out;
}

template <class F>
Outcome integrate(const F& f, double a, double b, const Options& opts = {}) {
  const double pts[2] = {a, b};
  return integrate_segments(f, pts, opts);
}

}  // namespace dephasim::quad
