#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gaw/config.hpp"

namespace gaw {

// Formatting used for every CSV number: 12 significant digits, '.' decimal
// separator, shortest representation ("%.12g").
std::string format_number(double v);

// RFC-4180-style CSV assembly: one header row, CRLF row endings, fields quoted
// only when they contain a comma, a quote, or a line break.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void add_row(const std::vector<std::string>& cells);
  const std::string& text() const { return buffer_; }
  void write_file(const std::string& path) const;

 private:
  void append_row(const std::vector<std::string>& cells);

  std::size_t columns_ = 0;
  std::string buffer_;
};

// Everything echoed into a run manifest: the resolved config plus purely
// informational entries collected under a "derived" block.
struct ManifestInfo {
  ScenarioConfig config;
  std::string preset;                // empty when the run is not from a preset
  std::string label;                 // run label within a preset
  std::vector<std::string> outputs;  // basenames written alongside the manifest
  std::vector<std::pair<std::string, double>> derived_numbers;
  std::vector<std::pair<std::string, std::string>> derived_strings;
};

// JSON manifest echoing the resolved configuration. The emitted file parses
// back as a config (the derived block is skipped on input), and re-running it
// reproduces the CSV byte for byte.
std::string manifest_text(const ManifestInfo& info);
void write_manifest(const ManifestInfo& info, const std::string& path);

// Density matrix serialized as JSON: dimension, basis labels, and one
// {row, col, re, im} record per entry.
std::string state_json_text(const Eigen::MatrixXcd& rho,
                            const std::vector<std::string>& basis_labels);
void write_state_json(const Eigen::MatrixXcd& rho,
                      const std::vector<std::string>& basis_labels,
                      const std::string& path);
Eigen::MatrixXcd read_state_json(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace gaw
