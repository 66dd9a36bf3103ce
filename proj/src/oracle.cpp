#include "dephasim/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "dephasim/errors.hpp"
#include "dephasim/numerics.hpp"

namespace dephasim::oracle {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using complex = std::complex<double>;

// a + a^dagger on a d-dimensional Fock space, weighted by the coupling:
// g* a + g a^dagger
MatrixXcd displacement_operator(const complex& g, int d) {
  MatrixXcd op = MatrixXcd::Zero(d, d);
  for (int n = 0; n + 1 < d; ++n) {
    const double root = std::sqrt(n + 1.0);
    op(n, n + 1) = std::conj(g) * root;  // annihilation part
    op(n + 1, n) = g * root;             // creation part
  }
  return op;
}

// Kronecker helper: embeds a single-mode operator at the given slot of the
// mode tensor product.
MatrixXcd embed_mode_operator(const MatrixXcd& op, int slot,
                              const std::vector<int>& dims) {
  long left = 1;
  for (int k = 0; k < slot; ++k) left *= dims[k];
  long right = 1;
  for (int k = slot + 1; k < static_cast<int>(dims.size()); ++k)
    right *= dims[k];
  const long d = dims[slot];
  const long total = left * d * right;
  MatrixXcd out = MatrixXcd::Zero(total, total);
  for (long l = 0; l < left; ++l) {
    for (long i = 0; i < d; ++i) {
      for (long j = 0; j < d; ++j) {
        if (op(i, j) == complex(0.0, 0.0)) continue;
        for (long r = 0; r < right; ++r) {
          out((l * d + i) * right + r, (l * d + j) * right + r) = op(i, j);
        }
      }
    }
  }
  return out;
}

int sz_sum(long qubit_index, int qubit_count) {
  // bit = 0 means n_i = +1 (qubit 1 is the most significant factor)
  int ones = 0;
  for (int b = 0; b < qubit_count; ++b) {
    if (qubit_index & (1L << b)) ++ones;
  }
  return qubit_count - 2 * ones;
}

}  // namespace

void DiscreteBath::validate() const {
  if (modes.empty()) {
    throw std::invalid_argument("DiscreteBath: at least one mode required");
  }
  if (fock_dims.size() != modes.size()) {
    throw std::invalid_argument(
        "DiscreteBath: one Fock dimension per mode required");
  }
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (!(modes[k].omega > 0.0)) {
      throw std::invalid_argument("DiscreteBath: mode frequencies must be > 0");
    }
    if (fock_dims[k] < 2) {
      throw std::invalid_argument("DiscreteBath: Fock dimensions must be >= 2");
    }
    for (std::size_t l = k + 1; l < modes.size(); ++l) {
      if (modes[k].omega == modes[l].omega) {
        throw std::invalid_argument(
            "DiscreteBath: mode frequencies must be distinct");
      }
    }
  }
}

long DiscreteBath::full_dimension(int qubit_count) const {
  long dim = 1L << qubit_count;
  for (int d : fock_dims) {
    dim *= d;
    if (dim > (1L << 40)) break;  // avoid overflow in pathological input
  }
  return dim;
}

DiscreteBath discretize(const bath::SpectralParams& p, int mode_count,
                        double omega_max) {
  p.validate();
  if (!p.zero_temperature()) {
    throw std::invalid_argument("discretize: only the zero-temperature bath");
  }
  if (mode_count < 1) {
    throw std::invalid_argument("discretize: mode_count must be >= 1");
  }
  if (!(omega_max > 0.0)) {
    throw std::invalid_argument("discretize: omega_max must be > 0");
  }
  DiscreteBath b;
  const double dw = omega_max / mode_count;
  for (int k = 1; k <= mode_count; ++k) {
    Mode mode;
    mode.omega = (k - 0.5) * dw;
    mode.coupling = std::sqrt(bath::spectral_density(p, mode.omega) * dw / 4.0);
    b.modes.push_back(mode);
  }
  b.fock_dims.assign(b.modes.size(), 2);
  assign_fock_dims(b, 1);
  return b;
}

void assign_fock_dims(DiscreteBath& b, int qubit_count, double tail_bound) {
  if (qubit_count < 1) {
    throw std::invalid_argument("assign_fock_dims: qubit_count must be >= 1");
  }
  b.fock_dims.resize(b.modes.size());
  for (std::size_t k = 0; k < b.modes.size(); ++k) {
    const double lambda =
        std::pow(2.0 * qubit_count * std::abs(b.modes[k].coupling) /
                     b.modes[k].omega,
                 2);
    int d = 2;
    while (d < 4096 && num::poisson_tail(d, lambda) >= tail_bound) ++d;
    b.fock_dims[k] = d;
  }
}

double truncation_leakage_bound(const DiscreteBath& b, int qubit_count) {
  double bound = 0.0;
  for (std::size_t k = 0; k < b.modes.size(); ++k) {
    const double lambda =
        std::pow(2.0 * qubit_count * std::abs(b.modes[k].coupling) /
                     b.modes[k].omega,
                 2);
    bound += num::poisson_tail(b.fock_dims[k], lambda);
  }
  return bound;
}

std::pair<double, double> discrete_kernels(const DiscreteBath& b, double t) {
  double gamma = 0.0;
  double delta = 0.0;
  for (const auto& mode : b.modes) {
    const double g2 = std::norm(mode.coupling);
    const double w = mode.omega;
    const double x = w * t;
    const double sh = std::sin(0.5 * x);
    gamma += 4.0 * g2 * 2.0 * sh * sh / (w * w);
    delta += 4.0 * g2 * (std::sin(x) - x) / (w * w);
  }
  return {gamma, delta};
}

ExactResult exact_reduced_state(int qubit_count, const DiscreteBath& b,
                                double t, int initial_sign,
                                const ExactOptions& options) {
  b.validate();
  if (qubit_count < 1) {
    throw std::invalid_argument("exact_reduced_state: qubit_count must be >= 1");
  }
  if (initial_sign != 1 && initial_sign != -1) {
    throw std::invalid_argument("exact_reduced_state: initial_sign must be +-1");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("exact_reduced_state: time must be >= 0");
  }
  const long dim = b.full_dimension(qubit_count);
  if (dim > kMaxFullDimension) {
    throw std::invalid_argument(
        "exact_reduced_state: full Hilbert-space dimension exceeds the guard");
  }

  const double leakage = truncation_leakage_bound(b, qubit_count);
  if (leakage > options.max_leakage) {
    throw NumericalError(
        "exact_reduced_state: Fock truncation bound exceeded; raise the "
        "per-mode dimensions d_k",
        leakage);
  }

  const int n_modes = static_cast<int>(b.modes.size());
  long env_dim = 1;
  for (int d : b.fock_dims) env_dim *= d;
  const long n_qubit_states = 1L << qubit_count;

  // Environment pieces: H_B = sum_k w_k n_k and the collective coupling
  // B = sum_k (g_k^* b_k + g_k b_k^dagger).
  MatrixXcd h_env = MatrixXcd::Zero(env_dim, env_dim);
  MatrixXcd coupling = MatrixXcd::Zero(env_dim, env_dim);
  for (int k = 0; k < n_modes; ++k) {
    const int d = b.fock_dims[k];
    MatrixXcd number = MatrixXcd::Zero(d, d);
    for (int n = 0; n < d; ++n) number(n, n) = b.modes[k].omega * n;
    h_env += embed_mode_operator(number, k, b.fock_dims);
    coupling +=
        embed_mode_operator(displacement_operator(b.modes[k].coupling, d), k,
                            b.fock_dims);
  }

  // Full H, assembled block-row by qubit configuration:
  // H = (w0/2) Sz x 1 + 1 x H_B + Sz x B with Sz the total sigma_z.
  MatrixXcd h_full = MatrixXcd::Zero(dim, dim);
  for (long q = 0; q < n_qubit_states; ++q) {
    const double s = sz_sum(q, qubit_count);
    h_full.block(q * env_dim, q * env_dim, env_dim, env_dim) =
        h_env + s * coupling;
    for (long e = 0; e < env_dim; ++e) {
      h_full(q * env_dim + e, q * env_dim + e) +=
          0.5 * options.splitting * s;
    }
  }

  // Propagator by dense scaling-and-squaring Pade exponential.
  const MatrixXcd u = (complex(0.0, -1.0) * t * h_full).exp();

  // Initial state: every qubit in (|1> + initial_sign |-1>)/sqrt(2),
  // environment in the vacuum.
  VectorXcd psi0 = VectorXcd::Zero(dim);
  const double amp = std::pow(2.0, -0.5 * qubit_count);
  for (long q = 0; q < n_qubit_states; ++q) {
    const int minus_count = __builtin_popcountll(q);  // bits set = qubits at -1
    const double sign = (initial_sign == 1 || minus_count % 2 == 0) ? 1.0 : -1.0;
    psi0(q * env_dim) = amp * sign;
  }

  const VectorXcd psi = u * psi0;

  ExactResult out;
  out.truncation_leakage = leakage;
  out.norm_error = std::abs(psi.squaredNorm() - 1.0);

  // Partial trace onto qubit 1 (the most significant tensor factor): the
  // state vector splits into two contiguous blocks of length dim/2.
  const long half = dim / 2;
  const auto upper = psi.segment(0, half);
  const auto lower = psi.segment(half, half);
  out.reduced(0, 0) = upper.squaredNorm();
  out.reduced(1, 1) = lower.squaredNorm();
  out.reduced(0, 1) = lower.dot(upper);  // sum_r psi_up[r] conj(psi_low[r])
  out.reduced(1, 0) = std::conj(out.reduced(0, 1));
  return out;
}

ArbitrationReport arbitrate_variants(int qubit_count, const DiscreteBath& b,
                                     const std::vector<double>& times,
                                     const ExactOptions& options) {
  if (qubit_count < 1 || qubit_count > 3) {
    throw std::invalid_argument("arbitrate_variants: qubit_count must be 1..3");
  }
  ArbitrationReport report;
  report.qubit_count = qubit_count;
  for (double t : times) {
    const auto exact = exact_reduced_state(qubit_count, b, t, 1, options);
    const auto [gamma_k, delta_k] = discrete_kernels(b, t);
    ArbitrationRow row;
    row.t = t;
    row.eta_exact = 2.0 * std::abs(exact.reduced(0, 1));
    // the cosine factor only appears once partner qubits are traced out
    const double g_paper =
        qubit_count == 1 ? 1.0
                         : std::abs(std::cos(0.5 * qubit_count * delta_k));
    const double g_pairwise =
        num::int_pow(std::abs(std::cos(delta_k)), qubit_count - 1);
    row.eta_paper = std::exp(-gamma_k) * g_paper;
    row.eta_pairwise = std::exp(-gamma_k) * g_pairwise;
    row.dev_paper = std::abs(row.eta_exact - row.eta_paper);
    row.dev_pairwise = std::abs(row.eta_exact - row.eta_pairwise);
    row.gamma_discrete = gamma_k;
    row.delta_discrete = delta_k;
    row.norm_error = exact.norm_error;
    row.truncation_leakage = exact.truncation_leakage;
    report.rows.push_back(row);

    if (qubit_count <= 2) {
      const double worst = std::max(
          {row.dev_paper, row.dev_pairwise,
           std::abs(row.eta_paper - row.eta_pairwise)});
      if (worst > 1e-6) {
        throw NumericalError(
            "arbitrate_variants: the conventions must coincide for N <= 2",
            worst);
      }
    }
  }
  return report;
}

}  // namespace dephasim::oracle
