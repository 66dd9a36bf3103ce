#pragma once

#include <string>

#include "dephasim/bath.hpp"
#include "dephasim/dynamics.hpp"
#include "dephasim/measures.hpp"

namespace dephasim::cli {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  dynamics::ModelConfig model{};     // N = 2, omega0 = 1, paper variant, T = 20
  bath::SpectralParams bath{};       // G = 1, s = 1, wc = 3, beta infinite
  int grid_points{measures::kDefaultGridPoints};
  double tol{0.0};                   // 0: use the default 1e-9 * T
  std::string output_path;           // empty: stdout
  OutputFormat format{OutputFormat::Csv};
  int jobs{1};

  double effective_tol() const {
    return tol > 0.0 ? tol : measures::default_tol(model.horizon);
  }
  void validate() const;
};

// Applies a flat dotted-key config file ("bath.s = 3", '#' comments) on top
// of cfg. Unknown keys, type mismatches and invariant violations throw
// std::invalid_argument naming the key.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Shared value parsers (also used for the matching command-line flags).
double parse_beta(const std::string& text);          // number or "inf"
dynamics::Variant parse_variant(const std::string& text);
OutputFormat parse_format(const std::string& text);

}  // namespace dephasim::cli
