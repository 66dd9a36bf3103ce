#pragma once

#include <span>
#include <string>
#include <vector>

#include "dephasim/dynamics.hpp"

namespace dephasim::measures {

// Maximal interval on which the trace distance is nondecreasing. kink_start
// marks intervals opened at a zero of the cosine factor, where D touches 0.
struct MonotoneInterval {
  double t_start{0.0};
  double t_end{0.0};
  double D_start{0.0};
  double D_end{0.0};
  double S_start{0.0};
  double S_end{0.0};
  bool kink_start{false};
};

struct MeasureResult {
  double blp{0.0};
  double entropy{0.0};
  std::vector<MonotoneInterval> intervals;
  double horizon{0.0};
  int grid_points{0};
  double refinement_tol{0.0};
};

inline constexpr int kDefaultGridPoints = 20001;
// refinement tolerance default is 1e-9 * T
inline double default_tol(double horizon) { return 1e-9 * horizon; }

std::vector<MonotoneInterval> find_increase_intervals(
    const dynamics::ModelConfig& m, const bath::SpectralParams& p,
    int grid_points, double tol);

// Both measures are evaluated by the fundamental theorem of calculus over the
// same interval list: blp sums the rises of D, entropy the rises of S(D).
MeasureResult blp_measure(const dynamics::ModelConfig& m,
                          const bath::SpectralParams& p, int grid_points,
                          double tol);
MeasureResult entropy_measure(const dynamics::ModelConfig& m,
                              const bath::SpectralParams& p, int grid_points,
                              double tol);

// Interval finding and measure accumulation on an explicit time grid;
// grid must be sorted, start at 0 and end at the horizon of interest.
MeasureResult measure_on_grid(const dynamics::CoherenceModel& model,
                              std::span<const double> grid, double tol);

enum class SweepAxis { Ohmicity, Coupling, Cutoff, Horizon, QubitCount };

struct SweepSpec {
  SweepAxis axis{SweepAxis::Ohmicity};
  std::vector<double> values;  // nonempty, strictly increasing
  dynamics::ModelConfig model;
  bath::SpectralParams bath;

  void validate() const;
};

struct SweepRow {
  double value{0.0};
  double blp{0.0};
  double entropy{0.0};
  int interval_count{0};
  std::string error;  // empty on success; failures are recorded per row
};

// One row per axis value, in the order given. Rows are independent pure
// computations; jobs > 1 runs them on a thread pool without affecting the
// output ordering or values.
std::vector<SweepRow> sweep(const SweepSpec& spec, int grid_points, double tol,
                            int jobs = 1);

}  // namespace dephasim::measures
