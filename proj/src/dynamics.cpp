#include "dephasim/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dephasim/numerics.hpp"

namespace dephasim::dynamics {

namespace {

constexpr double kKinkEps = 1e-12;

void check_time(double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("time must be nonnegative");
  }
}

}  // namespace

void ModelConfig::validate() const {
  if (qubit_count < 1) {
    throw std::invalid_argument("ModelConfig: qubit_count N must be >= 1");
  }
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("ModelConfig: horizon T must be > 0");
  }
  if (!std::isfinite(splitting)) {
    throw std::invalid_argument("ModelConfig: splitting omega_0 must be finite");
  }
}

BasisString::BasisString(std::vector<int> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("BasisString: must not be empty");
  }
  for (int n : entries_) {
    if (n != 1 && n != -1) {
      throw std::invalid_argument("BasisString: entries must be +1 or -1");
    }
    sum_ += n;
    product_ *= n;
  }
}

double relative_entropy(double trace_distance) {
  if (!(trace_distance >= 0.0) || trace_distance > 1.0) {
    throw std::invalid_argument("relative_entropy: need 0 <= D <= 1");
  }
  if (trace_distance >= 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  if (trace_distance == 0.0) return 0.0;
  return trace_distance *
         (std::log1p(trace_distance) - std::log1p(-trace_distance));
}

CoherenceModel::CoherenceModel(ModelConfig model, bath::SpectralParams params)
    : CoherenceModel(std::move(model), params,
                     std::make_shared<bath::KernelCache>(params)) {}

CoherenceModel::CoherenceModel(ModelConfig model, bath::SpectralParams params,
                               std::shared_ptr<const bath::KernelCache> cache)
    : model_(model), params_(params), cache_(std::move(cache)) {
  model_.validate();
  params_.validate();
  if (!cache_ || !cache_->compatible(params_)) {
    throw std::invalid_argument(
        "CoherenceModel: kernel cache does not match the bath parameters");
  }
}

bath::KernelValues CoherenceModel::kernels(double t) const {
  bath::KernelValues kv = cache_->unit_at(t);
  const double G = params_.coupling;
  return {kv.gamma * G, kv.delta * G, kv.gamma_rate * G, kv.delta_rate * G};
}

bath::KernelValues CoherenceModel::coherence_kernels(double t) const {
  if (model_.qubit_count == 1) {
    const auto [gamma, gamma_rate] = cache_->unit_gamma_at(t);
    const double G = params_.coupling;
    return {gamma * G, 0.0, gamma_rate * G, 0.0};
  }
  return kernels(t);
}

std::pair<double, double> CoherenceModel::cosine_and_rate(
    double delta, double delta_rate) const {
  const int N = model_.qubit_count;
  if (N == 1) return {1.0, 0.0};
  if (model_.variant == Variant::Paper) {
    const double arg = 0.5 * N * delta;
    const double c = std::cos(arg);
    const double dc = -std::sin(arg) * 0.5 * N * delta_rate;
    return {c, dc};
  }
  const double cd = std::cos(delta);
  const double c = num::int_pow(cd, N - 1);
  const double dc =
      (N - 1) * num::int_pow(cd, N - 2) * (-std::sin(delta)) * delta_rate;
  return {c, dc};
}

CoherenceFactors CoherenceModel::factors(double t) const {
  check_time(t);
  const auto kv = coherence_kernels(t);
  CoherenceFactors out;
  out.f = std::exp(-kv.gamma);
  const auto [c, dc] = cosine_and_rate(kv.delta, kv.delta_rate);
  (void)dc;
  out.g = std::abs(c);
  out.chi = c < 0.0 ? std::numbers::pi : 0.0;
  const double phase = model_.splitting * t + out.chi;
  out.alpha_offdiag = out.f * out.g *
                      std::complex<double>(std::cos(phase), std::sin(phase));
  return out;
}

double CoherenceModel::trace_distance(double t) const {
  const auto fac = factors(t);
  return fac.f * fac.g;
}

double CoherenceModel::cosine_factor(double t) const {
  const auto kv = coherence_kernels(t);
  return cosine_and_rate(kv.delta, kv.delta_rate).first;
}

MeasureRates CoherenceModel::rates(double t) const {
  check_time(t);
  const auto kv = coherence_kernels(t);
  const double f = std::exp(-kv.gamma);
  const auto [c, dc] = cosine_and_rate(kv.delta, kv.delta_rate);
  const double g = std::abs(c);
  const double D = f * g;

  MeasureRates out;
  if (g <= kKinkEps && model_.qubit_count > 1) {
    out.at_kink = true;
    out.dD_dt = f * std::abs(dc);
    out.dD_dt_left = -out.dD_dt;
  } else {
    const double dg = c < 0.0 ? -dc : dc;
    out.dD_dt = f * (dg - kv.gamma_rate * g);
    out.dD_dt_left = out.dD_dt;
  }

  double bracket = 0.0;
  if (D > 0.0 && D < 1.0) {
    bracket = (std::log1p(D) - std::log1p(-D)) + 2.0 * D / (1.0 - D * D);
  }
  out.dS_dt = out.dD_dt == 0.0 ? 0.0 : out.dD_dt * bracket;
  out.dS_dt_left = out.dD_dt_left == 0.0 ? 0.0 : out.dD_dt_left * bracket;
  return out;
}

std::pair<QubitState, QubitState> CoherenceModel::reduced_pair(double t) const {
  const auto fac = factors(t);
  const std::complex<double> off = 0.5 * fac.alpha_offdiag;
  QubitState rho1;
  rho1 << 0.5, off, std::conj(off), 0.5;
  QubitState rho2;
  rho2 << 0.5, -off, -std::conj(off), 0.5;
  return {rho1, rho2};
}

std::complex<double> CoherenceModel::element(double t, const BasisString& bra,
                                             const BasisString& ket) const {
  check_time(t);
  const int N = model_.qubit_count;
  if (bra.size() != N || ket.size() != N) {
    throw std::invalid_argument(
        "element: basis string length must equal the qubit count");
  }
  const auto kv = kernels(t);
  const double ds = bra.sum() - ket.sum();
  // initial state fixed to the all-|+> product: every element starts at 2^-N
  const double initial = std::ldexp(1.0, -N);
  double phase = 0.5 * model_.splitting * t * ds;
  if (model_.variant == Variant::Paper) {
    phase -= 0.25 * N * kv.delta * (bra.product() - ket.product());
  } else {
    phase -= 0.5 * kv.delta * (bra.pair_sum() - ket.pair_sum());
  }
  const double damping = std::exp(-0.25 * ds * ds * kv.gamma);
  return initial * damping *
         std::complex<double>(std::cos(phase), std::sin(phase));
}

CoherenceFactors coherence_factors(const ModelConfig& m,
                                   const bath::SpectralParams& p, double t) {
  return CoherenceModel(m, p).factors(t);
}

std::pair<QubitState, QubitState> reduced_pair(const ModelConfig& m,
                                               const bath::SpectralParams& p,
                                               double t) {
  return CoherenceModel(m, p).reduced_pair(t);
}

std::complex<double> n_qubit_element(const ModelConfig& m,
                                     const bath::SpectralParams& p, double t,
                                     const BasisString& bra,
                                     const BasisString& ket) {
  return CoherenceModel(m, p).element(t, bra, ket);
}

double trace_distance(const ModelConfig& m, const bath::SpectralParams& p,
                      double t) {
  return CoherenceModel(m, p).trace_distance(t);
}

MeasureRates rates(const ModelConfig& m, const bath::SpectralParams& p,
                   double t) {
  return CoherenceModel(m, p).rates(t);
}

}  // namespace dephasim::dynamics
