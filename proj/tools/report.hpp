#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace rieszlab::cli {

using Json = nlohmann::ordered_json;

enum class Format { csv, json };

/// A tabular experiment report with its config echo.
///
/// CSV layout: '#'-prefixed metadata lines (version, command, config, extra
/// results), the header row, the data rows, then '#' lines for the partial
/// marker and the wall-clock time. Every non-'#' line depends only on the
/// config and the data.
class Report {
 public:
  Report(std::string command, std::vector<std::string> columns);

  void config(const std::string& key, Json value);
  void result(const std::string& key, Json value);
  void row(std::vector<Json> cells);
  void mark_partial() { partial_ = true; }

  std::string render(Format format) const;
  /// Writes to `path`, or stdout when it is empty or "-".
  void write(Format format, const std::string& path) const;

 private:
  std::string command_;
  std::vector<std::string> columns_;
  Json config_ = Json::object();
  Json results_ = Json::object();
  std::vector<std::vector<Json>> rows_;
  bool partial_ = false;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Shortest round-trip decimal for doubles, plain digits for integers, raw text otherwise.
std::string format_cell(const Json& cell);

const char* version();

}  // namespace rieszlab::cli
