#include "dephasim/bath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "dephasim/errors.hpp"
#include "dephasim/numerics.hpp"
#include "dephasim/quadrature.hpp"

namespace dephasim::bath {

namespace {

constexpr double kRelTol = 1e-10;

// Partition of [0, upper] for the kernel integrals (t > 0): the low/high
// split at wc*max(1, 1/t) plus half periods of the trigonometric factor once
// the integrand oscillates (t*wc > 10). The upper cutoff is far enough into
// the exponential tail that the remainder is below the 1e-10 relative target.
std::vector<double> kernel_breakpoints(const SpectralParams& p, double t) {
  const double wc = p.cutoff;
  const double upper = wc * (46.0 + 8.0 * p.ohmicity + std::log1p(t * wc));
  std::vector<double> pts;
  pts.push_back(0.0);
  const double split = wc * std::max(1.0, 1.0 / t);
  if (split < upper) pts.push_back(split);
  // graded mesh toward 0 for the w^{s-2}-type endpoint behavior
  for (double w = std::min(split, upper) / 4.0; w > 1e-10 * wc; w /= 4.0) {
    pts.push_back(w);
  }
  if (t * wc > 10.0) {
    const double half_period = std::numbers::pi / t;
    for (double w = half_period; w < upper; w += half_period) {
      pts.push_back(w);
    }
  } else {
    for (double w = 2.0 * wc; w < upper; w *= 2.0) pts.push_back(w);
  }
  pts.push_back(upper);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

enum class Kernel { Gamma, Delta, GammaRate, DeltaRate };

// sin(x) - x without cancellation near zero
double sin_minus_x(double x) {
  if (std::abs(x) < 0.25) {
    const double x2 = x * x;
    return -(x * x2 / 6.0) *
           (1.0 - x2 / 20.0 *
                      (1.0 - x2 / 42.0 *
                                 (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0))));
  }
  return std::sin(x) - x;
}

double kernel_integral(const SpectralParams& p, double t, Kernel which) {
  if (t == 0.0) return 0.0;
  const double G = p.coupling;
  if (G == 0.0) return 0.0;
  const double s = p.ohmicity;
  const double wc = p.cutoff;
  const double beta = p.inverse_temperature;
  const bool zero_T = p.zero_temperature();
  // Delta is the production closed-form substitute for s != 1 and feeds
  // finite-difference cross-checks; run it an extra two digits tight.
  const double rel_tol = which == Kernel::Delta ? 1e-12 : kRelTol;

  auto integrand = [&](double w) -> double {
    if (w <= 0.0) return 0.0;
    // J(w)/w^2 = G w^{s-2} wc^{1-s} e^{-w/wc}
    const double base =
        G * std::pow(w, s - 2.0) * std::pow(wc, 1.0 - s) * std::exp(-w / wc);
    const double x = w * t;
    double value = 0.0;
    switch (which) {
      case Kernel::Gamma: {
        const double sh = std::sin(0.5 * x);
        value = base * 2.0 * sh * sh;  // (1 - cos x) without cancellation
        if (!zero_T) value *= num::coth(0.5 * beta * w);
        break;
      }
      case Kernel::Delta:
        value = base * sin_minus_x(x);
        break;
      case Kernel::GammaRate:
        value = base * w * std::sin(x);
        if (!zero_T) value *= num::coth(0.5 * beta * w);
        break;
      case Kernel::DeltaRate: {
        const double sh = std::sin(0.5 * x);
        value = -base * w * 2.0 * sh * sh;  // (cos x - 1)
        break;
      }
    }
    return value;
  };

  const auto pts = kernel_breakpoints(p, t);
  quad::Options opts;
  opts.rel_tol = rel_tol;
  opts.max_intervals = std::max<int>(20000, 8 * static_cast<int>(pts.size()));
  const auto out = quad::integrate_segments(integrand, pts, opts);
  if (!out.converged) {
    throw NumericalError(
        "bath kernel quadrature did not reach the requested tolerance",
        out.error);
  }
  return out.value;
}

// Zero-temperature Gamma(t), valid for every s > 0. The bracket
// 1 - e^{-eps L} cos(eps theta) with eps = s - 1, L = ln(1+x^2)/2 is written
// through expm1/sin^2 so the s -> 1 pole of Gamma(s-1) cancels without loss
// of precision.
double gamma_closed_zero_T(double G, double s, double wc, double t) {
  const double x = wc * t;
  const double L = 0.5 * std::log1p(x * x);
  if (s == 1.0) return G * L;
  const double eps = s - 1.0;
  const double theta = std::atan(x);
  const double sh = std::sin(0.5 * eps * theta);
  const double bracket =
      -std::expm1(-eps * L) + 2.0 * std::exp(-eps * L) * sh * sh;
  return G * num::gamma_fn(s + 1.0) / s * (bracket / eps);
}

std::pair<double, double> rates_closed_zero_T(double G, double s, double wc,
                                              double t) {
  const double x = wc * t;
  const double theta = std::atan(x);
  const double pref = G * num::gamma_fn(s) * wc * std::pow(1.0 + x * x, -0.5 * s);
  const double gamma_rate = pref * std::sin(s * theta);
  const double delta_rate = pref * std::cos(s * theta) - G * num::gamma_fn(s) * wc;
  return {gamma_rate, delta_rate};
}

void check_time(double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("time must be nonnegative");
  }
}

}  // namespace

void SpectralParams::validate() const {
  if (!(coupling >= 0.0)) {
    throw std::invalid_argument("SpectralParams: coupling G must be >= 0");
  }
  if (!(ohmicity > 0.0)) {
    throw std::invalid_argument("SpectralParams: ohmicity s must be > 0");
  }
  if (!(cutoff > 0.0)) {
    throw std::invalid_argument("SpectralParams: cutoff wc must be > 0");
  }
  if (!(inverse_temperature > 0.0)) {
    throw std::invalid_argument(
        "SpectralParams: inverse temperature beta must be > 0 or infinite");
  }
}

double spectral_density(const SpectralParams& p, double omega) {
  p.validate();
  if (!(omega >= 0.0)) {
    throw std::invalid_argument("spectral_density: omega must be >= 0");
  }
  if (omega == 0.0) return 0.0;
  return p.coupling * std::pow(omega, p.ohmicity) *
         std::pow(p.cutoff, 1.0 - p.ohmicity) * std::exp(-omega / p.cutoff);
}

double gamma_exact(const SpectralParams& p, double t) {
  p.validate();
  check_time(t);
  if (t == 0.0) return 0.0;
  if (p.zero_temperature()) {
    return gamma_closed_zero_T(p.coupling, p.ohmicity, p.cutoff, t);
  }
  return kernel_integral(p, t, Kernel::Gamma);
}

double delta_exact(const SpectralParams& p, double t) {
  p.validate();
  check_time(t);
  if (t == 0.0) return 0.0;
  if (p.ohmicity == 1.0) {
    const double x = p.cutoff * t;
    return p.coupling * (std::atan(x) - x);
  }
  return kernel_integral(p, t, Kernel::Delta);
}

std::pair<double, double> kernel_rates(const SpectralParams& p, double t) {
  p.validate();
  check_time(t);
  if (t == 0.0) return {0.0, 0.0};
  if (p.zero_temperature()) {
    return rates_closed_zero_T(p.coupling, p.ohmicity, p.cutoff, t);
  }
  return {kernel_integral(p, t, Kernel::GammaRate),
          kernel_integral(p, t, Kernel::DeltaRate)};
}

KernelValues kernel_quadrature(const SpectralParams& p, double t) {
  p.validate();
  check_time(t);
  KernelValues kv;
  if (t == 0.0) return kv;
  kv.gamma = kernel_integral(p, t, Kernel::Gamma);
  kv.delta = kernel_integral(p, t, Kernel::Delta);
  kv.gamma_rate = kernel_integral(p, t, Kernel::GammaRate);
  kv.delta_rate = kernel_integral(p, t, Kernel::DeltaRate);
  return kv;
}

LongTimeLimits long_time_limits(const SpectralParams& p) {
  p.validate();
  const double G = p.coupling;
  const double s = p.ohmicity;
  LongTimeLimits lim;
  if (s > 1.0) {
    lim.gamma_limit = G * num::gamma_shifted(s);
    lim.delta_offset = 0.0;
  } else if (s == 1.0) {
    lim.delta_offset = 0.5 * std::numbers::pi * G;
  }
  lim.delta_slope = -G * num::gamma_fn(s) * p.cutoff;
  return lim;
}

KernelCache::KernelCache(SpectralParams p) : params_(p), unit_params_(p) {
  params_.validate();
  unit_params_.coupling = 1.0;
}

KernelValues KernelCache::unit_at(double t) const {
  check_time(t);
  const auto key = std::bit_cast<std::uint64_t>(t);
  Entry e;
  bool have_gamma = false;
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      if (it->second.has_delta) {
        const Entry& hit = it->second;
        return {hit.gamma, hit.delta, hit.gamma_rate, hit.delta_rate};
      }
      e = it->second;
      have_gamma = true;
    }
  }
  if (!have_gamma) {
    e.gamma = gamma_exact(unit_params_, t);
    std::tie(e.gamma_rate, e.delta_rate) = kernel_rates(unit_params_, t);
  } else if (!unit_params_.zero_temperature()) {
    e.delta_rate =
        t == 0.0 ? 0.0 : kernel_integral(unit_params_, t, Kernel::DeltaRate);
  }
  e.delta = delta_exact(unit_params_, t);
  e.has_delta = true;
  std::lock_guard lock(mutex_);
  cache_[key] = e;
  return {e.gamma, e.delta, e.gamma_rate, e.delta_rate};
}

std::pair<double, double> KernelCache::unit_gamma_at(double t) const {
  check_time(t);
  const auto key = std::bit_cast<std::uint64_t>(t);
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      return {it->second.gamma, it->second.gamma_rate};
    }
  }
  Entry e;
  e.gamma = gamma_exact(unit_params_, t);
  if (unit_params_.zero_temperature()) {
    // the rate pair is closed form at zero temperature, delta is not needed
    std::tie(e.gamma_rate, e.delta_rate) = kernel_rates(unit_params_, t);
  } else {
    e.gamma_rate =
        t == 0.0 ? 0.0 : kernel_integral(unit_params_, t, Kernel::GammaRate);
  }
  std::lock_guard lock(mutex_);
  const auto it = cache_.emplace(key, e).first;
  return {it->second.gamma, it->second.gamma_rate};
}

KernelValues KernelCache::at(double t) const {
  KernelValues kv = unit_at(t);
  const double G = params_.coupling;
  return {kv.gamma * G, kv.delta * G, kv.gamma_rate * G, kv.delta_rate * G};
}

bool KernelCache::compatible(const SpectralParams& p) const {
  return p.ohmicity == params_.ohmicity && p.cutoff == params_.cutoff &&
         p.inverse_temperature == params_.inverse_temperature;
}

std::size_t KernelCache::size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

}  // namespace dephasim::bath
