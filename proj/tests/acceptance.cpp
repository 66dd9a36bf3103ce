// Acceptance suite: every release gate in one binary, one line per criterion.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dephasim/bath.hpp"
#include "dephasim/cli.hpp"
#include "dephasim/dynamics.hpp"
#include "dephasim/measures.hpp"
#include "dephasim/oracle.hpp"

using namespace dephasim;
namespace fs = std::filesystem;

namespace {

struct Checker {
  int failures = 0;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      notes.push_back(what);
    }
  }
};

bath::SpectralParams make_bath(double G, double s, double wc) {
  bath::SpectralParams p;
  p.coupling = G;
  p.ohmicity = s;
  p.cutoff = wc;
  return p;
}

dynamics::ModelConfig make_model(int N, double T,
                                 dynamics::Variant variant =
                                     dynamics::Variant::Paper) {
  dynamics::ModelConfig m;
  m.qubit_count = N;
  m.horizon = T;
  m.variant = variant;
  return m;
}

double semi_rel(double a, double b) {
  return std::abs(a - b) / (1.0 + std::abs(b));
}

measures::MeasureResult run_measure(int N, double s, double G, double wc,
                                    double T) {
  return measures::blp_measure(make_model(N, T), make_bath(G, s, wc),
                               measures::kDefaultGridPoints,
                               measures::default_tol(T));
}

// 1. closed forms vs quadrature across the parameter box, under a minute
void criterion_1(Checker& c) {
  for (double s : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    for (double wc : {0.5, 1.0, 3.0}) {
      for (double G : {0.5, 1.0, 3.0}) {
        const auto p = make_bath(G, s, wc);
        for (int i = 0; i < 50; ++i) {
          const double t = 20.0 * i / 49.0;
          const auto kq = bath::kernel_quadrature(p, t);
          c.require(semi_rel(bath::gamma_exact(p, t), kq.gamma) < 1e-8,
                    "gamma closed vs quadrature");
          c.require(semi_rel(bath::delta_exact(p, t), kq.delta) < 1e-8,
                    "delta closed vs quadrature");
          const auto [gdot, ddot] = bath::kernel_rates(p, t);
          const double h = 1e-5;
          if (t == 0.0) {
            c.require(gdot == 0.0 && ddot == 0.0, "rates vanish at t = 0");
            continue;
          }
          const double gdot_fd =
              (bath::gamma_exact(p, t + h) - bath::gamma_exact(p, t - h)) /
              (2 * h);
          const double ddot_fd =
              (bath::delta_exact(p, t + h) - bath::delta_exact(p, t - h)) /
              (2 * h);
          c.require(semi_rel(gdot, gdot_fd) < 1e-6, "gamma rate vs fd");
          c.require(semi_rel(ddot, ddot_fd) < 1e-6, "delta rate vs fd");
        }
      }
    }
  }
}

// 2. exact zeros for a single qubit at s <= 2
void criterion_2(Checker& c) {
  for (double s : {0.5, 1.0, 2.0}) {
    for (double G : {0.5, 1.0, 3.0}) {
      for (double wc : {0.5, 1.0, 3.0}) {
        const auto res = run_measure(1, s, G, wc, 20.0);
        c.require(res.blp == 0.0, "blp must vanish exactly");
        c.require(res.entropy == 0.0, "entropy must vanish exactly");
      }
    }
  }
}

// 3. single-qubit super-Ohmic reference values
void criterion_3(Checker& c) {
  const auto res = run_measure(1, 3.0, 1.0, 3.0, 20.0);
  c.require(std::abs(res.blp - 0.0431) < 1e-3, "blp(N=1, s=3)");
  c.require(std::abs(res.entropy - 0.065) < 2e-3, "entropy(N=1, s=3)");
  c.require(res.intervals.size() == 1, "one interval of increase");
  if (!res.intervals.empty()) {
    c.require(std::abs(res.intervals[0].t_start - std::sqrt(3.0) / 3.0) < 1e-4,
              "interval opens at sqrt(3)/3");
  }
}

// 4. indirect interaction boosts the measure by more than a factor 10
void criterion_4(Checker& c) {
  const double blp1 = run_measure(1, 3.0, 1.0, 3.0, 20.0).blp;
  const double blp2 = run_measure(2, 3.0, 1.0, 3.0, 20.0).blp;
  c.require(blp1 > 0.0 && blp2 / blp1 > 10.0, "N=2 enhancement at s=3");
  c.require(run_measure(2, 1.0, 1.0, 3.0, 20.0).blp > 0.0,
            "N=2 backflow in an Ohmic bath");
  c.require(run_measure(1, 1.0, 1.0, 3.0, 20.0).blp == 0.0,
            "N=1 Ohmic stays Markovian");
}

// 5. both measures keep growing with the horizon at s = 3
void criterion_5(Checker& c) {
  const auto t10 = run_measure(2, 3.0, 1.0, 3.0, 10.0);
  const auto t20 = run_measure(2, 3.0, 1.0, 3.0, 20.0);
  const auto t40 = run_measure(2, 3.0, 1.0, 3.0, 40.0);
  c.require(t40.blp > t20.blp && t20.blp > t10.blp, "blp grows with T");
  c.require(t40.entropy > t20.entropy && t20.entropy > t10.entropy,
            "entropy grows with T");
}

// 6. the measure does not decrease with the number of qubits
void criterion_6(Checker& c) {
  measures::SweepSpec spec;
  spec.axis = measures::SweepAxis::QubitCount;
  spec.values = {2, 3, 4, 5, 6};
  spec.model = make_model(2, 20.0, dynamics::Variant::Paper);
  spec.bath = make_bath(1.0, 3.0, 3.0);
  const auto rows =
      measures::sweep(spec, measures::kDefaultGridPoints, 2e-8, 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    c.require(rows[i].error.empty(), "sweep row must succeed");
    if (i > 0) {
      c.require(rows[i].blp >= rows[i - 1].blp - 1e-9,
                "blp nondecreasing in N");
    }
  }
}

// 7. non-monotonic dependence on the coupling strength
void criterion_7(Checker& c) {
  measures::SweepSpec spec;
  spec.axis = measures::SweepAxis::Coupling;
  spec.values = {0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  spec.model = make_model(2, 20.0);
  spec.bath = make_bath(1.0, 3.0, 3.0);
  const auto rows =
      measures::sweep(spec, measures::kDefaultGridPoints, 2e-8, 1);
  std::size_t arg_max = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    c.require(rows[i].error.empty(), "sweep row must succeed");
    if (rows[i].blp > rows[arg_max].blp) arg_max = i;
  }
  c.require(arg_max > 0 && arg_max + 1 < rows.size(),
            "blp has an interior maximum in G");
}

// 8. brute-force oracle agreement, trace and purity preservation
void criterion_8(Checker& c) {
  // N = 1: one mode, 24 levels
  const auto p1 = make_bath(1.0, 1.0, 1.0);
  auto b1 = oracle::discretize(p1, 1, 2.0);
  b1.fock_dims = {24};
  for (double t : {0.8, std::numbers::pi, 2.5}) {
    const auto res = oracle::exact_reduced_state(1, b1, t, 1);
    const auto [gamma_k, delta_k] = oracle::discrete_kernels(b1, t);
    c.require(std::abs(std::abs(res.reduced(0, 1)) -
                       0.5 * std::exp(-gamma_k)) < 1e-8,
              "N=1 oracle matches e^{-Gamma_K}/2");
    c.require(res.norm_error < 1e-8, "trace preserved (N=1)");
    const double purity = std::pow(1.0 + res.norm_error, 2);
    c.require(std::abs(purity - 1.0) < 1e-8, "purity preserved (N=1)");
  }

  // N = 2: two modes, 16 levels each
  const auto p2 = make_bath(0.5, 1.0, 1.0);
  auto b2 = oracle::discretize(p2, 2, 4.0);
  b2.fock_dims = {16, 16};
  oracle::ExactOptions opts;
  opts.max_leakage = 1e-5;
  for (double t : {0.8, 2.0}) {
    const auto res = oracle::exact_reduced_state(2, b2, t, 1, opts);
    const auto [gamma_k, delta_k] = oracle::discrete_kernels(b2, t);
    const double expected = 0.5 * std::exp(-gamma_k) * std::abs(std::cos(delta_k));
    c.require(std::abs(std::abs(res.reduced(0, 1)) - expected) < 1e-6,
              "N=2 oracle matches the reduced coherence");
    c.require(res.norm_error < 1e-8, "trace preserved (N=2)");
    c.require(std::abs(std::pow(1.0 + res.norm_error, 2) - 1.0) < 1e-8,
              "purity preserved (N=2)");
  }
}

// 9. both measures integrate over the same intervals; rates share signs
void criterion_9(Checker& c) {
  const auto m = make_model(2, 20.0);
  const auto p = make_bath(1.0, 1.0, 3.0);
  const auto a = measures::blp_measure(m, p, measures::kDefaultGridPoints,
                                       measures::default_tol(20.0));
  const auto b = measures::entropy_measure(m, p, measures::kDefaultGridPoints,
                                           measures::default_tol(20.0));
  bool identical = a.intervals.size() == b.intervals.size();
  for (std::size_t i = 0; identical && i < a.intervals.size(); ++i) {
    identical = a.intervals[i].t_start == b.intervals[i].t_start &&
                a.intervals[i].t_end == b.intervals[i].t_end &&
                a.intervals[i].D_start == b.intervals[i].D_start &&
                a.intervals[i].D_end == b.intervals[i].D_end &&
                a.intervals[i].S_start == b.intervals[i].S_start &&
                a.intervals[i].S_end == b.intervals[i].S_end &&
                a.intervals[i].kink_start == b.intervals[i].kink_start;
  }
  c.require(identical, "interval lists identical object-for-object");

  const dynamics::CoherenceModel model(m, p);
  int checked = 0;
  for (int i = 1; i <= 10000; ++i) {
    const double t = 20.0 * i / 10000.0;
    const double D = model.trace_distance(t);
    if (!(D > 0.0 && D < 1.0)) continue;
    const auto r = model.rates(t);
    if (r.at_kink) continue;
    ++checked;
    if (std::signbit(r.dS_dt) != std::signbit(r.dD_dt)) {
      c.require(false, "sign of dS/dt must follow dD/dt");
      return;
    }
  }
  c.require(checked > 9000, "enough sample points with 0 < D < 1");
}

// 10. sweep output is byte-identical for --jobs 1 and --jobs 8
void criterion_10(Checker& c) {
  const auto dir = fs::temp_directory_path() / "dephasim_acceptance";
  fs::create_directories(dir);
  const auto serial = (dir / "serial.csv").string();
  const auto parallel = (dir / "parallel.csv").string();
  const std::vector<std::string> common = {
      "sweep", "--axis", "s", "--from", "0.5", "--to", "2.0", "--step", "0.25",
      "--N", "2", "--omega-c", "3", "--T", "10", "--grid-points", "2001"};
  auto args1 = common;
  args1.insert(args1.end(), {"--jobs", "1", "--output", serial});
  auto args8 = common;
  args8.insert(args8.end(), {"--jobs", "8", "--output", parallel});
  c.require(cli::run_command(args1) == 0, "serial sweep exits 0");
  c.require(cli::run_command(args8) == 0, "parallel sweep exits 0");
  std::ifstream f1(serial, std::ios::binary);
  std::ifstream f8(parallel, std::ios::binary);
  std::stringstream s1, s8;
  s1 << f1.rdbuf();
  s8 << f8.rdbuf();
  c.require(!s1.str().empty() && s1.str() == s8.str(),
            "byte-identical sweep output");
  fs::remove_all(dir);
}

struct Criterion {
  const char* label;
  std::function<void(Checker&)> run;
  double budget_seconds;  // 0 = no stated runtime bound
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"kernel closed forms vs quadrature", criterion_1, 60.0},
      {"exact zeros for N=1, s in {0.5, 1, 2}", criterion_2, 0.0},
      {"single-qubit super-Ohmic values", criterion_3, 10.0},
      {"N=2 enhancement over N=1", criterion_4, 0.0},
      {"unbounded growth with the horizon", criterion_5, 0.0},
      {"nondecreasing in the qubit count", criterion_6, 0.0},
      {"interior maximum along the coupling axis", criterion_7, 0.0},
      {"brute-force oracle equivalence", criterion_8, 120.0},
      {"shared intervals and rate signs", criterion_9, 0.0},
      {"deterministic parallel sweep", criterion_10, 0.0},
  };

  int total_failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(checker);
    } catch (const std::exception& e) {
      checker.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criteria[i].budget_seconds > 0.0 &&
        elapsed > criteria[i].budget_seconds) {
      checker.require(false, "runtime budget exceeded");
    }
    const bool pass = checker.failures == 0;
    std::printf("criterion %2zu [%s]: %s (%.1f s)\n", i + 1,
                criteria[i].label, pass ? "PASS" : "FAIL", elapsed);
    if (!pass) {
      for (const auto& note : checker.notes) {
        std::printf("    - %s\n", note.c_str());
      }
      ++total_failures;
    }
    std::fflush(stdout);
  }
  return total_failures;
}
