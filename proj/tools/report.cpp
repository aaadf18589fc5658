#include "report.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <stdexcept>

#ifndef RIESZLAB_VERSION
#define RIESZLAB_VERSION "unknown"
#endif

namespace rieszlab::cli {

const char* version() { return RIESZLAB_VERSION; }

Report::Report(std::string command, std::vector<std::string> columns)
    : command_(std::move(command)), columns_(std::move(columns)) {}

void Report::config(const std::string& key, Json value) { config_[key] = std::move(value); }

void Report::result(const std::string& key, Json value) { results_[key] = std::move(value); }

void Report::row(std::vector<Json> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("Report::row: cell count does not match the header");
  rows_.push_back(std::move(cells));
}

std::string format_cell(const Json& cell) {
  if (cell.is_number_float()) {
    const double v = cell.get<double>();
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }
  if (cell.is_string()) {
    const auto& s = cell.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (cell.is_null()) return "";
  return cell.dump();
}

std::string Report::render(Format format) const {
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  if (format == Format::json) {
    Json j;
    j["version"] = version();
    j["command"] = command_;
    j["config"] = config_;
    j["partial"] = partial_;
    j["results"] = results_;
    j["columns"] = columns_;
    Json rows = Json::array();
    for (const auto& r : rows_) rows.push_back(Json(r));
    j["rows"] = std::move(rows);
    j["wall_seconds"] = seconds;
    return j.dump(2) + "\n";
  }
  std::string out;
  out += "# rieszlab " + std::string(version()) + "\n";
  out += "# command: " + command_ + "\n";
  for (const auto& [k, v] : config_.items()) out += "# config." + k + ": " + format_cell(v) + "\n";
  for (const auto& [k, v] : results_.items()) out += "# result." + k + ": " + format_cell(v) + "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c) out += (c ? "," : "") + columns_[c];
  out += "\n";
  for (const auto& r : rows_) {
    for (std::size_t c = 0; c < r.size(); ++c) out += (c ? "," : "") + format_cell(r[c]);
    out += "\n";
  }
  out += std::string("# partial: ") + (partial_ ? "true" : "false") + "\n";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, seconds);
  out += "# wall_seconds: " + std::string(buf, res.ptr) + "\n";
  return out;
}

void Report::write(Format format, const std::string& path) const {
  const std::string text = render(format);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace rieszlab::cli
