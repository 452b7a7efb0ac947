#include "ctphs/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "ctphs/error.hpp"

namespace ctphs {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void ExperimentReport::add(std::vector<double> keys, std::string statistic, double value) {
  if (keys.size() != key_columns.size()) throw ParameterError("ExperimentReport: key arity mismatch");
  rows.push_back({std::move(keys), std::move(statistic), value});
}

std::optional<double> ExperimentReport::find(const std::vector<double>& keys,
                                             const std::string& statistic) const {
  for (const auto& r : rows) {
    if (r.statistic != statistic || r.keys.size() != keys.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < keys.size() && same; ++i) {
      same = r.keys[i] == keys[i] || (std::isnan(r.keys[i]) && std::isnan(keys[i]));
    }
    if (same) return r.value;
  }
  return std::nullopt;
}

void ExperimentReport::write_csv(std::ostream& os) const {
  os << "# schema: " << kCsvSchema << '\n';
  os << "# experiment: " << experiment << '\n';
  os << "# provenance: " << provenance.dump() << '\n';
  for (const auto& c : key_columns) os << c << ',';
  os << "statistic,value\n";
  for (const auto& r : rows) {
    for (double k : r.keys) os << format_double(k) << ',';
    os << r.statistic << ',' << format_double(r.value) << '\n';
  }
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double parse_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  throw ParameterError("ExperimentReport: bad number '" + s + "'");
}

}  // namespace

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["schema"] = kCsvSchema;
  j["experiment"] = experiment;
  j["key_columns"] = key_columns;
  j["provenance"] = provenance;
  auto& arr = j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json keys = nlohmann::json::array();
    for (double k : r.keys) keys.push_back(number(k));
    arr.push_back({{"keys", keys}, {"statistic", r.statistic}, {"value", number(r.value)}});
  }
  return j;
}

ExperimentReport ExperimentReport::from_json(const nlohmann::json& j) {
  ExperimentReport rep;
  rep.experiment = j.at("experiment").get<std::string>();
  rep.key_columns = j.at("key_columns").get<std::vector<std::string>>();
  rep.provenance = j.value("provenance", nlohmann::json::object());
  for (const auto& r : j.at("rows")) {
    Row row;
    for (const auto& k : r.at("keys")) row.keys.push_back(parse_number(k));
    row.statistic = r.at("statistic").get<std::string>();
    row.value = parse_number(r.at("value"));
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace ctphs
