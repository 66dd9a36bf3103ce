#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dephasim/bath.hpp"

namespace dephasim::dynamics {

// Convention for the environment-induced phase factor that survives the
// partial trace. Paper: g = |cos(N Delta/2)|, product-parity phase.
// Pairwise: g = |cos Delta|^{N-1}, pair-sum phase. The two coincide for
// N <= 2; the brute-force oracle arbitrates between them for N > 2.
enum class Variant { Paper, Pairwise };

struct ModelConfig {
  int qubit_count{2};          // N >= 1
  double splitting{1.0};       // omega_0; pure phase, cancels in all measures
  Variant variant{Variant::Paper};
  double horizon{20.0};        // T > 0

  void validate() const;
};

// Factorization of the off-diagonal coherence: alpha = f g e^{i(w0 t + chi)}
// with f = e^{-Gamma}, g the nonnegative cosine factor and chi in {0, pi}
// absorbing its sign.
struct CoherenceFactors {
  double f{1.0};
  double g{1.0};
  double chi{0.0};
  std::complex<double> alpha_offdiag{1.0, 0.0};
};

using QubitState = Eigen::Matrix2cd;

// Joint sigma_z eigenbasis label: entries +1/-1 with the cached sum,
// product and pair sum that enter the density-matrix element formula.
class BasisString {
 public:
  explicit BasisString(std::vector<int> entries);

  int size() const { return static_cast<int>(entries_.size()); }
  int sum() const { return sum_; }
  int product() const { return product_; }
  int pair_sum() const { return (sum_ * sum_ - size()) / 2; }
  const std::vector<int>& entries() const { return entries_; }

 private:
  std::vector<int> entries_;
  int sum_{0};
  int product_{1};
};

// d/dt of the trace distance and of the relative entropy. At a zero of the
// cosine factor the trace distance has a kink; both one-sided limits are
// reported and at_kink is set. Away from kinks left == right.
struct MeasureRates {
  double dD_dt{0.0};
  double dS_dt{0.0};
  double dD_dt_left{0.0};
  double dS_dt_left{0.0};
  bool at_kink{false};
};

// S = D ln[(1+D)/(1-D)]; returns +infinity at D = 1.
double relative_entropy(double trace_distance);

// One model + bath pairing with a shared memoized kernel evaluator; the unit
// of reuse for trajectory scans and measure integration.
class CoherenceModel {
 public:
  CoherenceModel(ModelConfig model, bath::SpectralParams params);
  // Share an existing kernel cache (must be compatible: same s, wc, beta).
  CoherenceModel(ModelConfig model, bath::SpectralParams params,
                 std::shared_ptr<const bath::KernelCache> cache);

  const ModelConfig& config() const { return model_; }
  const bath::SpectralParams& params() const { return params_; }
  const std::shared_ptr<const bath::KernelCache>& cache() const {
    return cache_;
  }

  bath::KernelValues kernels(double t) const;
  CoherenceFactors factors(double t) const;
  double trace_distance(double t) const;
  // signed cosine factor c(t) with g = |c|; used by kink root finding
  double cosine_factor(double t) const;
  MeasureRates rates(double t) const;
  std::pair<QubitState, QubitState> reduced_pair(double t) const;
  std::complex<double> element(double t, const BasisString& bra,
                               const BasisString& ket) const;

 private:
  ModelConfig model_;
  bath::SpectralParams params_;
  std::shared_ptr<const bath::KernelCache> cache_;

  // (c, dc/dt) of the signed cosine factor
  std::pair<double, double> cosine_and_rate(double delta,
                                            double delta_rate) const;
  // single-qubit scans never need delta; skip its quadrature
  bath::KernelValues coherence_kernels(double t) const;
};

// Single-call forms of the operations above.
CoherenceFactors coherence_factors(const ModelConfig& m,
                                   const bath::SpectralParams& p, double t);
std::pair<QubitState, QubitState> reduced_pair(const ModelConfig& m,
                                               const bath::SpectralParams& p,
                                               double t);
std::complex<double> n_qubit_element(const ModelConfig& m,
                                     const bath::SpectralParams& p, double t,
                                     const BasisString& bra,
                                     const BasisString& ket);
double trace_distance(const ModelConfig& m, const bath::SpectralParams& p,
                      double t);
MeasureRates rates(const ModelConfig& m, const bath::SpectralParams& p,
                   double t);

}  // namespace dephasim::dynamics
