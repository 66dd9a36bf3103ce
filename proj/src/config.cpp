#include "dephasim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace dephasim::cli {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  auto end = s.find_last_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "': expected a number, got '" + text + "'");
  }
}

long parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "': expected an integer, got '" + text + "'");
  }
}

}  // namespace

void RunConfig::validate() const {
  model.validate();
  bath.validate();
  if (grid_points < 1000) {
    throw std::invalid_argument("run.grid_points must be >= 1000");
  }
  if (tol < 0.0) {
    throw std::invalid_argument("run.tol must be > 0 (or omitted)");
  }
  if (jobs < 1) {
    throw std::invalid_argument("run.jobs must be >= 1");
  }
}

double parse_beta(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "infinite" || lower == "infinity") {
    return bath::kInfiniteBeta;
  }
  return parse_number("beta", text);
}

dynamics::Variant parse_variant(const std::string& text) {
  if (text == "paper") return dynamics::Variant::Paper;
  if (text == "pairwise") return dynamics::Variant::Pairwise;
  throw std::invalid_argument("variant must be 'paper' or 'pairwise', got '" +
                              text + "'");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw std::invalid_argument("format must be 'csv' or 'json', got '" + text +
                              "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "bath.G") {
      cfg.bath.coupling = parse_number(key, value);
    } else if (key == "bath.s") {
      cfg.bath.ohmicity = parse_number(key, value);
    } else if (key == "bath.omega_c") {
      cfg.bath.cutoff = parse_number(key, value);
    } else if (key == "bath.beta") {
      cfg.bath.inverse_temperature = parse_beta(value);
    } else if (key == "model.N") {
      cfg.model.qubit_count = static_cast<int>(parse_integer(key, value));
    } else if (key == "model.omega0") {
      cfg.model.splitting = parse_number(key, value);
    } else if (key == "model.T") {
      cfg.model.horizon = parse_number(key, value);
    } else if (key == "model.variant") {
      cfg.model.variant = parse_variant(value);
    } else if (key == "run.grid_points") {
      cfg.grid_points = static_cast<int>(parse_integer(key, value));
    } else if (key == "run.tol") {
      cfg.tol = parse_number(key, value);
    } else if (key == "run.output") {
      cfg.output_path = value;
    } else if (key == "run.format") {
      cfg.format = parse_format(value);
    } else if (key == "run.jobs") {
      cfg.jobs = static_cast<int>(parse_integer(key, value));
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

}  // namespace dephasim::cli
