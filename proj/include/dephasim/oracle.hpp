#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "dephasim/bath.hpp"
#include "dephasim/dynamics.hpp"

namespace dephasim::oracle {

struct Mode {
  double omega{0.0};
  std::complex<double> coupling{0.0, 0.0};  // g_k
};

// Finite bath: modes plus a per-mode Fock-space truncation dimension.
struct DiscreteBath {
  std::vector<Mode> modes;
  std::vector<int> fock_dims;

  void validate() const;
  long full_dimension(int qubit_count) const;
};

// Hard ceiling on the full qubits x Fock Hilbert-space dimension.
inline constexpr long kMaxFullDimension = 1L << 14;

// Midpoint-rule discretization of the continuum bath on [0, omega_max]:
// w_k = (k - 1/2) omega_max / K, |g_k|^2 = J(w_k) (omega_max/K) / 4.
// Zero temperature only. Fock dimensions start from the Poisson tail rule
// with qubit_count = 1; use assign_fock_dims to resize for larger systems.
DiscreteBath discretize(const bath::SpectralParams& p, int mode_count,
                        double omega_max);

// Smallest d_k with Poisson tail below tail_bound for the displacement
// bound lambda_k = (2 N |g_k| / w_k)^2.
void assign_fock_dims(DiscreteBath& b, int qubit_count,
                      double tail_bound = 1e-12);

// Union bound on the probability mass above the Fock cutoffs.
double truncation_leakage_bound(const DiscreteBath& b, int qubit_count);

// (Gamma_K, Delta_K): the discrete zero-temperature kernel sums.
std::pair<double, double> discrete_kernels(const DiscreteBath& b, double t);

struct ExactOptions {
  double splitting{0.0};     // omega_0 in the full Hamiltonian
  double max_leakage{1e-6};  // reject baths whose truncation bound exceeds this
};

struct ExactResult {
  dynamics::QubitState reduced;  // single-qubit state after the partial trace
  double norm_error{0.0};        // |trace of the full state - 1|
  double truncation_leakage{0.0};
};

// Brute force: assemble the full Hamiltonian, exponentiate it (dense
// scaling-and-squaring Pade), propagate the product initial state
// (all-|+> or all-|->, environment vacuum) and trace out everything but
// one qubit. Shares no code with the closed-form paths it checks.
ExactResult exact_reduced_state(int qubit_count, const DiscreteBath& b,
                                double t, int initial_sign,
                                const ExactOptions& options = {});

struct ArbitrationRow {
  double t{0.0};
  double eta_exact{0.0};
  double eta_paper{0.0};     // e^{-Gamma_K} |cos(N Delta_K / 2)|
  double eta_pairwise{0.0};  // e^{-Gamma_K} |cos Delta_K|^{N-1}
  double dev_paper{0.0};
  double dev_pairwise{0.0};
  double gamma_discrete{0.0};
  double delta_discrete{0.0};
  double norm_error{0.0};
  double truncation_leakage{0.0};
};

struct ArbitrationReport {
  int qubit_count{0};
  std::vector<ArbitrationRow> rows;
};

// Compares the two reduced-coherence conventions against the exact evolution.
// Informational for N = 3; at N <= 2 the three values must agree to 1e-6 and
// a disagreement raises NumericalError.
ArbitrationReport arbitrate_variants(int qubit_count, const DiscreteBath& b,
                                     const std::vector<double>& times,
                                     const ExactOptions& options = {});

}  // namespace dephasim::oracle
