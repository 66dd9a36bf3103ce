#include "dephasim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <memory>

#include <CLI11.hpp>

#include "dephasim/config.hpp"
#include "dephasim/errors.hpp"
#include "dephasim/measures.hpp"
#include "dephasim/oracle.hpp"
#include "dephasim/tables.hpp"

namespace dephasim::cli {

namespace {

using tables::format_double;

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("DEPHASIM_LOG");
    if (env == nullptr) return 0;
    const std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::fprintf(stderr, "[info] %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::fprintf(stderr, "[debug] %s\n", msg.c_str());
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("expected a comma-separated number list, got '" +
                                  text + "'");
    }
    pos = comma + 1;
  }
  return values;
}

// Staged command-line values for the flag set shared by all subcommands.
// Applied on top of the config file so that flags win.
struct CommonCli {
  CLI::App* cmd{nullptr};
  RunConfig staged;
  std::string config_path;
  std::string beta_text;
  std::string variant_text;
  std::string format_text;

  void attach(CLI::App* sub) {
    cmd = sub;
    sub->add_option("--config", config_path, "flat 'key = value' config file");
    sub->add_option("--s", staged.bath.ohmicity, "bath ohmicity s (> 0)");
    sub->add_option("--G", staged.bath.coupling, "bath coupling strength G (>= 0)");
    sub->add_option("--omega-c", staged.bath.cutoff, "bath cutoff frequency (> 0)");
    sub->add_option("--beta", beta_text,
                    "inverse temperature, a number or 'inf' (zero temperature)");
    sub->add_option("--N", staged.model.qubit_count, "number of two-level systems");
    sub->add_option("--omega0", staged.model.splitting, "level splitting omega_0");
    sub->add_option("--T", staged.model.horizon, "time horizon of the run (> 0)");
    sub->add_option("--variant", variant_text,
                    "reduced-coherence convention: paper|pairwise");
    sub->add_option("--grid-points", staged.grid_points,
                    "time-grid points on [0, T] (>= 1000)");
    sub->add_option("--tol", staged.tol, "extremum refinement tolerance in t");
    sub->add_option("--output", staged.output_path,
                    "output file (default: stdout)");
    sub->add_option("--format", format_text, "output format: csv|json");
    sub->add_option("--jobs", staged.jobs, "worker threads for sweep rows");
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (cmd->count("--config")) apply_config_file(cfg, config_path);
    if (cmd->count("--s")) cfg.bath.ohmicity = staged.bath.ohmicity;
    if (cmd->count("--G")) cfg.bath.coupling = staged.bath.coupling;
    if (cmd->count("--omega-c")) cfg.bath.cutoff = staged.bath.cutoff;
    if (cmd->count("--beta")) cfg.bath.inverse_temperature = parse_beta(beta_text);
    if (cmd->count("--N")) cfg.model.qubit_count = staged.model.qubit_count;
    if (cmd->count("--omega0")) cfg.model.splitting = staged.model.splitting;
    if (cmd->count("--T")) cfg.model.horizon = staged.model.horizon;
    if (cmd->count("--variant")) cfg.model.variant = parse_variant(variant_text);
    if (cmd->count("--grid-points")) cfg.grid_points = staged.grid_points;
    if (cmd->count("--tol")) cfg.tol = staged.tol;
    if (cmd->count("--output")) cfg.output_path = staged.output_path;
    if (cmd->count("--format")) cfg.format = parse_format(format_text);
    if (cmd->count("--jobs")) cfg.jobs = staged.jobs;
    cfg.validate();
    return cfg;
  }
};

std::vector<double> uniform_grid(double horizon, int n) {
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = horizon * i / (n - 1);
  grid.back() = horizon;
  return grid;
}

int cmd_kernels(const RunConfig& cfg) {
  log_info("kernels: evaluating Gamma/Delta and their rates");
  const bath::KernelCache cache(cfg.bath);
  const auto grid = uniform_grid(cfg.model.horizon, cfg.grid_points);
  std::string out;
  if (cfg.format == OutputFormat::Csv) {
    tables::CsvWriter csv({"t", "gamma", "delta", "gamma_rate", "delta_rate"});
    for (double t : grid) {
      const auto kv = cache.at(t);
      csv.row({format_double(t), format_double(kv.gamma),
               format_double(kv.delta), format_double(kv.gamma_rate),
               format_double(kv.delta_rate)});
    }
    out = csv.take();
  } else {
    tables::JsonWriter json;
    json.begin_array();
    for (double t : grid) {
      const auto kv = cache.at(t);
      json.begin_object();
      json.key("t").number(t);
      json.key("gamma").number(kv.gamma);
      json.key("delta").number(kv.delta);
      json.key("gamma_rate").number(kv.gamma_rate);
      json.key("delta_rate").number(kv.delta_rate);
      json.end_object();
    }
    json.end_array();
    out = json.take();
  }
  tables::write_output(cfg.output_path, out);
  return 0;
}

int cmd_trajectory(const RunConfig& cfg) {
  log_info("trajectory: evaluating coherence factors and rates");
  const dynamics::CoherenceModel model(cfg.model, cfg.bath);
  const auto grid = uniform_grid(cfg.model.horizon, cfg.grid_points);
  std::string out;
  if (cfg.format == OutputFormat::Csv) {
    tables::CsvWriter csv({"t", "f", "g", "chi", "D", "S", "dDdt", "dSdt"});
    for (double t : grid) {
      const auto fac = model.factors(t);
      const auto r = model.rates(t);
      const double D = fac.f * fac.g;
      csv.row({format_double(t), format_double(fac.f), format_double(fac.g),
               format_double(fac.chi), format_double(D),
               format_double(dynamics::relative_entropy(D)),
               format_double(r.dD_dt), format_double(r.dS_dt)});
    }
    out = csv.take();
  } else {
    tables::JsonWriter json;
    json.begin_array();
    for (double t : grid) {
      const auto fac = model.factors(t);
      const auto r = model.rates(t);
      const double D = fac.f * fac.g;
      json.begin_object();
      json.key("t").number(t);
      json.key("f").number(fac.f);
      json.key("g").number(fac.g);
      json.key("chi").number(fac.chi);
      json.key("D").number(D);
      json.key("S").number(dynamics::relative_entropy(D));
      json.key("dDdt").number(r.dD_dt);
      json.key("dSdt").number(r.dS_dt);
      json.end_object();
    }
    json.end_array();
    out = json.take();
  }
  tables::write_output(cfg.output_path, out);
  return 0;
}

// The measure report is always JSON: a summary plus the interval table.
int cmd_measure(const RunConfig& cfg) {
  log_info("measure: integrating the BLP and entropy measures");
  const auto res = measures::blp_measure(cfg.model, cfg.bath, cfg.grid_points,
                                         cfg.effective_tol());
  log_debug("measure: " + std::to_string(res.intervals.size()) + " intervals");
  tables::JsonWriter json;
  json.begin_object();
  json.key("blp").number(res.blp);
  json.key("entropy").number(res.entropy);
  json.key("horizon").number(res.horizon);
  json.key("grid_points").integer(res.grid_points);
  json.key("refinement_tol").number(res.refinement_tol);
  json.key("intervals").begin_array();
  for (const auto& iv : res.intervals) {
    json.begin_object();
    json.key("t_start").number(iv.t_start);
    json.key("t_end").number(iv.t_end);
    json.key("D_start").number(iv.D_start);
    json.key("D_end").number(iv.D_end);
    json.key("S_start").number(iv.S_start);
    json.key("S_end").number(iv.S_end);
    json.key("kink_start").boolean(iv.kink_start);
    json.end_object();
  }
  json.end_array();
  json.end_object();
  tables::write_output(cfg.output_path, json.take());
  return 0;
}

struct SweepCli {
  std::string axis;
  double from{0.0};
  double to{0.0};
  double step{0.0};
  std::string values_text;
};

int cmd_sweep(const RunConfig& cfg, const SweepCli& sw, const CLI::App* cmd) {
  measures::SweepSpec spec;
  spec.model = cfg.model;
  spec.bath = cfg.bath;
  if (sw.axis == "s") {
    spec.axis = measures::SweepAxis::Ohmicity;
  } else if (sw.axis == "G") {
    spec.axis = measures::SweepAxis::Coupling;
  } else if (sw.axis == "omega-c") {
    spec.axis = measures::SweepAxis::Cutoff;
  } else if (sw.axis == "T") {
    spec.axis = measures::SweepAxis::Horizon;
  } else if (sw.axis == "N") {
    spec.axis = measures::SweepAxis::QubitCount;
  } else {
    throw std::invalid_argument("--axis must be one of s, G, omega-c, T, N");
  }
  if (cmd->count("--values")) {
    spec.values = parse_double_list(sw.values_text);
  } else {
    if (!cmd->count("--from") || !cmd->count("--to") || !cmd->count("--step")) {
      throw std::invalid_argument(
          "sweep needs either --values or --from/--to/--step");
    }
    if (!(sw.step > 0.0)) {
      throw std::invalid_argument("--step must be > 0");
    }
    for (int k = 0;; ++k) {
      const double v = sw.from + k * sw.step;
      if (v > sw.to + 0.5 * sw.step) break;
      spec.values.push_back(std::min(v, sw.to));
    }
  }
  log_info("sweep: " + std::to_string(spec.values.size()) + " rows on axis " +
           sw.axis);
  const auto rows =
      measures::sweep(spec, cfg.grid_points, cfg.effective_tol(), cfg.jobs);

  std::string out;
  if (cfg.format == OutputFormat::Csv) {
    tables::CsvWriter csv({"axis", "value", "blp", "entropy", "intervals"});
    for (const auto& row : rows) {
      const bool failed = !row.error.empty();
      if (failed) {
        std::fprintf(stderr, "sweep row %s=%s failed: %s\n", sw.axis.c_str(),
                     format_double(row.value).c_str(), row.error.c_str());
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      csv.row({sw.axis, format_double(row.value),
               format_double(failed ? nan : row.blp),
               format_double(failed ? nan : row.entropy),
               std::to_string(row.interval_count)});
    }
    out = csv.take();
  } else {
    tables::JsonWriter json;
    json.begin_array();
    for (const auto& row : rows) {
      json.begin_object();
      json.key("axis").string(sw.axis);
      json.key("value").number(row.value);
      json.key("blp").number(row.blp);
      json.key("entropy").number(row.entropy);
      json.key("intervals").integer(row.interval_count);
      if (!row.error.empty()) json.key("error").string(row.error);
      json.end_object();
    }
    json.end_array();
    out = json.take();
  }
  tables::write_output(cfg.output_path, out);
  return 0;
}

struct OracleCli {
  int modes{2};
  double omega_max{0.0};  // 0: 4 * cutoff
  int fock_dim{0};        // 0: per-mode Poisson tail rule
  std::string times_text{"1,2,3"};
  double max_leakage{1e-6};
};

int cmd_oracle_check(const RunConfig& cfg, const OracleCli& oc) {
  const auto times = parse_double_list(oc.times_text);
  const double omega_max =
      oc.omega_max > 0.0 ? oc.omega_max : 4.0 * cfg.bath.cutoff;
  auto b = oracle::discretize(cfg.bath, oc.modes, omega_max);
  if (oc.fock_dim > 0) {
    b.fock_dims.assign(b.modes.size(), oc.fock_dim);
  } else {
    oracle::assign_fock_dims(b, cfg.model.qubit_count);
  }
  oracle::ExactOptions opts;
  opts.splitting = 0.0;  // a nonzero omega_0 only rotates the phase of eta
  opts.max_leakage = oc.max_leakage;
  log_info("oracle-check: full dimension " +
           std::to_string(b.full_dimension(cfg.model.qubit_count)));
  const auto report =
      oracle::arbitrate_variants(cfg.model.qubit_count, b, times, opts);

  tables::JsonWriter json;
  json.begin_object();
  json.key("qubits").integer(report.qubit_count);
  json.key("modes").begin_array();
  for (std::size_t k = 0; k < b.modes.size(); ++k) {
    json.begin_object();
    json.key("omega").number(b.modes[k].omega);
    json.key("coupling").number(std::abs(b.modes[k].coupling));
    json.key("fock_dim").integer(b.fock_dims[k]);
    json.end_object();
  }
  json.end_array();
  json.key("rows").begin_array();
  for (const auto& row : report.rows) {
    json.begin_object();
    json.key("t").number(row.t);
    json.key("eta_exact").number(row.eta_exact);
    json.key("eta_paper").number(row.eta_paper);
    json.key("eta_pairwise").number(row.eta_pairwise);
    json.key("dev_paper").number(row.dev_paper);
    json.key("dev_pairwise").number(row.dev_pairwise);
    json.key("gamma_discrete").number(row.gamma_discrete);
    json.key("delta_discrete").number(row.delta_discrete);
    json.key("norm_error").number(row.norm_error);
    json.key("truncation_leakage").number(row.truncation_leakage);
    json.end_object();
  }
  json.end_array();
  json.end_object();
  tables::write_output(cfg.output_path, json.take());
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("dephasim");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data());
}

int run_command(int argc, const char* const* argv) {
  CLI::App app{
      "Exact reduced dynamics of N dephasing two-level systems in a common "
      "bosonic environment, with BLP and relative-entropy non-Markovianity "
      "measures"};
  app.require_subcommand(1);

  CommonCli kernels_cli, trajectory_cli, measure_cli, sweep_cli, oracle_cli;
  SweepCli sweep_extra;
  OracleCli oracle_extra;

  auto* kernels =
      app.add_subcommand("kernels", "tabulate Gamma, Delta and their rates");
  kernels_cli.attach(kernels);

  auto* trajectory = app.add_subcommand(
      "trajectory", "tabulate f, g, chi, D, S and their rates over [0, T]");
  trajectory_cli.attach(trajectory);

  auto* measure = app.add_subcommand(
      "measure", "BLP and entropy non-Markovianity measures (JSON report)");
  measure_cli.attach(measure);

  auto* sweep = app.add_subcommand(
      "sweep", "measure both non-Markovianity measures along one axis");
  sweep_cli.attach(sweep);
  sweep->add_option("--axis", sweep_extra.axis, "s|G|omega-c|T|N")->required();
  sweep->add_option("--from", sweep_extra.from, "first axis value");
  sweep->add_option("--to", sweep_extra.to, "last axis value");
  sweep->add_option("--step", sweep_extra.step, "axis increment (> 0)");
  sweep->add_option("--values", sweep_extra.values_text,
                    "explicit comma-separated axis values");

  auto* oracle_check = app.add_subcommand(
      "oracle-check",
      "brute-force finite-bath check of the reduced-coherence conventions");
  oracle_cli.attach(oracle_check);
  oracle_check->add_option("--modes", oracle_extra.modes,
                           "number of discretized bath modes");
  oracle_check->add_option("--omega-max", oracle_extra.omega_max,
                           "discretization band edge (default 4 omega_c)");
  oracle_check->add_option("--fock-dim", oracle_extra.fock_dim,
                           "uniform per-mode Fock dimension (default: auto)");
  oracle_check->add_option("--times", oracle_extra.times_text,
                           "comma-separated evaluation times");
  oracle_check->add_option("--max-leakage", oracle_extra.max_leakage,
                           "acceptable Fock truncation bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (kernels->parsed()) return cmd_kernels(kernels_cli.resolve());
    if (trajectory->parsed()) return cmd_trajectory(trajectory_cli.resolve());
    if (measure->parsed()) return cmd_measure(measure_cli.resolve());
    if (sweep->parsed())
      return cmd_sweep(sweep_cli.resolve(), sweep_extra, sweep);
    if (oracle_check->parsed())
      return cmd_oracle_check(oracle_cli.resolve(), oracle_extra);
    return 1;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s (achieved error %s)\n",
                 e.what(), format_double(e.achieved_error()).c_str());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  }
}

}  // namespace dephasim::cli
