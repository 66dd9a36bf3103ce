#include "dephasim/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "dephasim/errors.hpp"

namespace dephasim::measures {

namespace {

// Net rises below this are indistinguishable from rounding noise in the
// kernel evaluations and are not counted as backflow.
constexpr double kMinRise = 1e-12;
constexpr double kAuditSlack = 1e-10;

struct Sample {
  double t;
  double D;
  double c;  // signed cosine factor
  bool kink{false};
};

struct Critical {
  double t;
  double D;
  bool kink{false};
};

Sample evaluate(const dynamics::CoherenceModel& model, double t) {
  const auto fac = model.factors(t);
  Sample s;
  s.t = t;
  s.D = fac.f * fac.g;
  s.c = fac.chi == 0.0 ? fac.g : -fac.g;
  return s;
}

// Bisection root of the smooth signed cosine factor in (lo, hi).
double refine_kink(const dynamics::CoherenceModel& model, double lo, double hi,
                   double c_lo, double tol) {
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double cm = model.cosine_factor(mid);
    if (cm == 0.0) return mid;
    if ((cm > 0.0) == (c_lo > 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section refinement of a bracketed extremum of D.
Critical refine_extremum(const dynamics::CoherenceModel& model, double a,
                         double b, double tol, bool maximize) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = model.trace_distance(x1);
  double f2 = model.trace_distance(x2);
  auto better = [maximize](double u, double v) {
    return maximize ? u >= v : u <= v;
  };
  for (int it = 0; it < 300 && (b - a) > tol; ++it) {
    if (better(f1, f2)) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = model.trace_distance(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = model.trace_distance(x2);
    }
  }
  if (better(f1, f2)) return {x1, f1, false};
  return {x2, f2, false};
}

std::vector<double> uniform_grid(double horizon, int grid_points) {
  std::vector<double> grid(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    grid[i] = horizon * i / (grid_points - 1);
  }
  grid.back() = horizon;
  return grid;
}

MeasureResult measure_impl(const dynamics::ModelConfig& m,
                           const bath::SpectralParams& p, int grid_points,
                           double tol) {
  if (grid_points < 1000) {
    throw std::invalid_argument("measures: grid_points must be >= 1000");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("measures: tol must be > 0");
  }
  const dynamics::CoherenceModel model(m, p);
  const auto grid = uniform_grid(m.horizon, grid_points);
  return measure_on_grid(model, grid, tol);
}

}  // namespace

MeasureResult measure_on_grid(const dynamics::CoherenceModel& model,
                              std::span<const double> grid, double tol) {
  if (grid.size() < 2 || !std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("measure_on_grid: grid must be sorted, n >= 2");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("measure_on_grid: tol must be > 0");
  }

  // Grid samples plus every zero of the cosine factor: each zero is a kink
  // minimum of D and opens an interval of increase.
  std::vector<Sample> samples;
  samples.reserve(grid.size() + 32);
  Sample prev = evaluate(model, grid.front());
  prev.kink = prev.c == 0.0 && grid.front() > 0.0;
  samples.push_back(prev);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    Sample next = evaluate(model, grid[i]);
    next.kink = next.c == 0.0;
    if (prev.c * next.c < 0.0) {
      const double root =
          refine_kink(model, prev.t, next.t, prev.c, tol);
      Sample at_root = evaluate(model, root);
      at_root.kink = true;
      samples.push_back(at_root);
    }
    samples.push_back(next);
    prev = next;
  }

  // Locate the local extrema (plateau tolerant) and refine each one.
  const int m = static_cast<int>(samples.size());
  std::vector<Critical> critical;
  critical.push_back({samples.front().t, samples.front().D, false});
  int last_dir = 0;
  int run_end = 0;
  for (int j = 0; j + 1 < m; ++j) {
    const double d = samples[j + 1].D - samples[j].D;
    const int dir = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (dir == 0) continue;
    if (last_dir != 0 && dir != last_dir) {
      // extreme region spans samples [run_end, j]
      int kink_at = -1;
      for (int k = run_end; k <= j; ++k) {
        if (samples[k].kink) {
          kink_at = k;
          break;
        }
      }
      if (kink_at >= 0) {
        critical.push_back(
            {samples[kink_at].t, samples[kink_at].D, true});
      } else {
        const int lo = std::max(run_end - 1, 0);
        const int hi = std::min(j + 1, m - 1);
        critical.push_back(refine_extremum(model, samples[lo].t,
                                           samples[hi].t, tol,
                                           last_dir > 0));
      }
    }
    last_dir = dir;
    run_end = j + 1;
  }
  critical.push_back({samples.back().t, samples.back().D, false});
  std::stable_sort(critical.begin(), critical.end(),
                   [](const Critical& a, const Critical& b) { return a.t < b.t; });

  // Rising stretches between consecutive critical points become intervals.
  MeasureResult result;
  result.horizon = grid.back();
  result.grid_points = static_cast<int>(grid.size());
  result.refinement_tol = tol;
  for (std::size_t k = 0; k + 1 < critical.size(); ++k) {
    const auto& a = critical[k];
    const auto& b = critical[k + 1];
    if (!(b.t > a.t)) continue;
    const double rise = b.D - a.D;
    if (rise <= kMinRise) continue;
    MonotoneInterval interval;
    interval.t_start = a.t;
    interval.t_end = b.t;
    interval.D_start = a.D;
    interval.D_end = b.D;
    interval.S_start = dynamics::relative_entropy(a.D);
    interval.S_end = dynamics::relative_entropy(b.D);
    interval.kink_start = a.kink;
    result.intervals.push_back(interval);
  }

  // Post-refinement audit: the already-computed grid samples inside every
  // interval must be nondecreasing, otherwise an extremum slipped between
  // grid points and the bracketing grid was too coarse.
  for (const auto& interval : result.intervals) {
    double last = interval.D_start;
    for (const auto& s : samples) {
      if (s.t <= interval.t_start || s.t >= interval.t_end) continue;
      if (s.D < last - kAuditSlack) {
        throw NumericalError(
            "measure_on_grid: monotonicity audit failed inside an interval; "
            "increase grid_points",
            last - s.D);
      }
      last = std::max(last, s.D);
    }
  }

  for (const auto& interval : result.intervals) {
    result.blp += interval.D_end - interval.D_start;
    result.entropy += interval.S_end - interval.S_start;
  }
  return result;
}

std::vector<MonotoneInterval> find_increase_intervals(
    const dynamics::ModelConfig& m, const bath::SpectralParams& p,
    int grid_points, double tol) {
  return measure_impl(m, p, grid_points, tol).intervals;
}

MeasureResult blp_measure(const dynamics::ModelConfig& m,
                          const bath::SpectralParams& p, int grid_points,
                          double tol) {
  return measure_impl(m, p, grid_points, tol);
}

MeasureResult entropy_measure(const dynamics::ModelConfig& m,
                              const bath::SpectralParams& p, int grid_points,
                              double tol) {
  return measure_impl(m, p, grid_points, tol);
}

void SweepSpec::validate() const {
  model.validate();
  bath.validate();
  if (values.empty()) {
    throw std::invalid_argument("SweepSpec: values must be nonempty");
  }
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (!(values[i] < values[i + 1])) {
      throw std::invalid_argument("SweepSpec: values must be strictly increasing");
    }
  }
  for (double v : values) {
    switch (axis) {
      case SweepAxis::Ohmicity:
        if (!(v > 0.0)) throw std::invalid_argument("SweepSpec: s must be > 0");
        break;
      case SweepAxis::Coupling:
        if (!(v >= 0.0)) throw std::invalid_argument("SweepSpec: G must be >= 0");
        break;
      case SweepAxis::Cutoff:
        if (!(v > 0.0)) throw std::invalid_argument("SweepSpec: wc must be > 0");
        break;
      case SweepAxis::Horizon:
        if (!(v > 0.0)) throw std::invalid_argument("SweepSpec: T must be > 0");
        break;
      case SweepAxis::QubitCount:
        if (std::abs(v - std::llround(v)) > 1e-9 || std::llround(v) < 1) {
          throw std::invalid_argument(
              "SweepSpec: qubit counts must be integers >= 1");
        }
        break;
    }
  }
}

std::vector<SweepRow> sweep(const SweepSpec& spec, int grid_points, double tol,
                            int jobs) {
  spec.validate();
  if (grid_points < 1000) {
    throw std::invalid_argument("sweep: grid_points must be >= 1000");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("sweep: tol must be > 0");
  }

  const int n = static_cast<int>(spec.values.size());
  std::vector<SweepRow> rows(n);

  // Shared state reused across rows where the bath shape does not change.
  std::shared_ptr<const bath::KernelCache> shared_cache;
  std::shared_ptr<const dynamics::CoherenceModel> shared_model;
  std::vector<double> horizon_grid;
  if (spec.axis == SweepAxis::Coupling || spec.axis == SweepAxis::QubitCount) {
    shared_cache = std::make_shared<bath::KernelCache>(spec.bath);
  } else if (spec.axis == SweepAxis::Horizon) {
    // One trajectory over the largest horizon; rows use prefixes of it.
    auto model = spec.model;
    model.horizon = spec.values.back();
    shared_model = std::make_shared<dynamics::CoherenceModel>(model, spec.bath);
    horizon_grid = uniform_grid(model.horizon, grid_points);
  }

  auto run_row = [&](int i) {
    SweepRow& row = rows[i];
    row.value = spec.values[i];
    try {
      MeasureResult res;
      if (spec.axis == SweepAxis::Horizon) {
        const double T = spec.values[i];
        std::vector<double> prefix;
        prefix.reserve(horizon_grid.size());
        for (double t : horizon_grid) {
          if (t <= T) prefix.push_back(t);
        }
        if (prefix.back() < T * (1.0 - 1e-15)) prefix.push_back(T);
        res = measure_on_grid(*shared_model, prefix, tol);
      } else {
        auto model = spec.model;
        auto bath_params = spec.bath;
        switch (spec.axis) {
          case SweepAxis::Ohmicity:
            bath_params.ohmicity = spec.values[i];
            break;
          case SweepAxis::Coupling:
            bath_params.coupling = spec.values[i];
            break;
          case SweepAxis::Cutoff:
            bath_params.cutoff = spec.values[i];
            break;
          case SweepAxis::QubitCount:
            model.qubit_count = static_cast<int>(std::llround(spec.values[i]));
            break;
          case SweepAxis::Horizon:
            break;
        }
        const auto grid = uniform_grid(model.horizon, grid_points);
        if (shared_cache) {
          const dynamics::CoherenceModel m(model, bath_params, shared_cache);
          res = measure_on_grid(m, grid, tol);
        } else {
          const dynamics::CoherenceModel m(model, bath_params);
          res = measure_on_grid(m, grid, tol);
        }
      }
      row.blp = res.blp;
      row.entropy = res.entropy;
      row.interval_count = static_cast<int>(res.intervals.size());
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  if (jobs <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) run_row(i);
    return rows;
  }

  std::atomic<int> next{0};
  const int workers = std::min(jobs, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        run_row(i);
      }
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace dephasim::measures
