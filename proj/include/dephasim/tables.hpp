#pragma once

#include <string>
#include <vector>

namespace dephasim::tables {

// Fixed float formatting for all emitted tables: up to 17 significant digits
// (shortest %.17g form), '.' decimal separator, locale independent.
std::string format_double(double v);

// Minimal deterministic JSON emitter: insertion-ordered keys, numbers through
// format_double, '\n' line endings.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& number(double v);
  JsonWriter& integer(long v);
  JsonWriter& string(const std::string& v);
  JsonWriter& boolean(bool v);
  JsonWriter& null();

  std::string take();

 private:
  void prefix();
  std::string out_;
  std::vector<bool> needs_comma_;
  bool pending_key_{false};
};

// CSV assembly with a fixed header; all cells pre-formatted.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  std::string take();

 private:
  std::string out_;
  std::size_t columns_;
};

// Writes to the given path, or to stdout when the path is empty.
void write_output(const std::string& path, const std::string& content);

}  // namespace dephasim::tables
