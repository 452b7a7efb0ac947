#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ctphs {

/// Version tag of the CSV layout written by ExperimentReport::write_csv.
inline constexpr const char* kCsvSchema = "ctphs-report/1";

/// Formats doubles so that output bytes are reproducible and round-trip
/// (shortest form, "inf"/"-inf"/"nan" for non-finite values).
std::string format_double(double v);

/// Structured experiment output: long-format rows keyed by a fixed set of
/// numeric columns plus a statistic name. JSON carries full provenance; CSV
/// is the plot-ready projection.
struct ExperimentReport {
  struct Row {
    std::vector<double> keys;
    std::string statistic;
    double value = 0.0;
  };

  std::string experiment;
  std::vector<std::string> key_columns;
  std::vector<Row> rows;
  nlohmann::json provenance = nlohmann::json::object();

  void add(std::vector<double> keys, std::string statistic, double value);
  std::optional<double> find(const std::vector<double>& keys, const std::string& statistic) const;

  /// Header comment lines (schema, experiment, provenance) then
  /// `key_columns...,statistic,value`.
  void write_csv(std::ostream& os) const;
  nlohmann::json to_json() const;
  static ExperimentReport from_json(const nlohmann::json& j);
};

}  // namespace ctphs
