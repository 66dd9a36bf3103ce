#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>

namespace dephasim::bath {

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

// Exponential-cutoff power-law bath: J(w) = G w^s wc^{1-s} exp(-w/wc).
struct SpectralParams {
  double coupling{1.0};            // G >= 0
  double ohmicity{1.0};            // s > 0
  double cutoff{3.0};              // wc > 0
  double inverse_temperature{kInfiniteBeta};  // beta > 0, infinity = T = 0

  void validate() const;  // throws std::invalid_argument
  bool zero_temperature() const { return std::isinf(inverse_temperature); }
};

// Decoherence exponent, indirect-interaction phase and their time derivatives
// at one time point.
struct KernelValues {
  double gamma{0.0};       // Gamma(t) >= 0
  double delta{0.0};       // Delta(t) <= 0
  double gamma_rate{0.0};  // dGamma/dt
  double delta_rate{0.0};  // dDelta/dt
};

struct LongTimeLimits {
  std::optional<double> gamma_limit;   // empty: Gamma(t) diverges (s <= 1)
  double delta_slope{0.0};             // always finite, <= 0
  std::optional<double> delta_offset;  // empty: offset diverges (s < 1)
};

double spectral_density(const SpectralParams& p, double omega);

// Gamma(t). Zero temperature: closed form, uniformly accurate in s including
// the s -> 1 pole. Finite beta: adaptive quadrature of the defining integral
// with the coth kernel, relative tolerance 1e-10.
double gamma_exact(const SpectralParams& p, double t);

// Delta(t). s = 1: closed form G(atan(wc t) - wc t). s != 1: adaptive
// quadrature of the defining integral (temperature independent).
double delta_exact(const SpectralParams& p, double t);

// (dGamma/dt, dDelta/dt). Zero temperature: closed forms; finite beta:
// quadrature of the differentiated integrands.
std::pair<double, double> kernel_rates(const SpectralParams& p, double t);

// All four kernel values by adaptive quadrature only, no closed forms.
// Serves as the in-repo cross-check for the closed-form paths.
KernelValues kernel_quadrature(const SpectralParams& p, double t);

LongTimeLimits long_time_limits(const SpectralParams& p);

// Memoizing kernel evaluator for hot loops. Values are cached per time point
// at unit coupling (all kernels are linear in G) and scaled on return, so a
// cache can be shared across coupling strengths. The decoherence pair
// (gamma, gamma_rate) can be served without triggering the quadrature behind
// delta, which single-qubit scans never need. Thread safe.
class KernelCache {
 public:
  explicit KernelCache(SpectralParams p);

  KernelValues at(double t) const;       // scaled by params().coupling
  KernelValues unit_at(double t) const;  // values at coupling 1
  // (gamma, gamma_rate) at coupling 1; never evaluates delta
  std::pair<double, double> unit_gamma_at(double t) const;

  const SpectralParams& params() const { return params_; }
  // true if the cache can serve another parameter set (same s, wc, beta)
  bool compatible(const SpectralParams& p) const;
  std::size_t size() const;

 private:
  struct Entry {
    double gamma{0.0};
    double gamma_rate{0.0};
    double delta{0.0};
    double delta_rate{0.0};
    bool has_delta{false};
  };

  SpectralParams params_;
  SpectralParams unit_params_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, Entry> cache_;
};

}  // namespace dephasim::bath
