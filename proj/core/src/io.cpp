#include "ctphs/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "ctphs/error.hpp"

namespace ctphs {
namespace {

template <class T>
T get(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParameterError(std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

std::vector<Point> points_from_json(const ManifoldSpec& spec, const nlohmann::json& arr) {
  std::vector<Point> out;
  out.reserve(arr.size());
  for (const auto& p : arr) out.push_back(point_from_json(spec, p));
  return out;
}

void check_schema(const nlohmann::json& j, const char* expected) {
  if (j.contains("schema") && j.at("schema") != expected) {
    throw ParameterError(std::string("expected schema '") + expected + "', got " + j.at("schema").dump());
  }
}

nlohmann::json points_to_json(const std::vector<Point>& pts) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  return arr;
}

}  // namespace

nlohmann::json to_json(const ManifoldSpec& spec) {
  return {{"kind", std::string(kind_name(spec.kind))},
          {"d", spec.d},
          {"a", spec.a},
          {"b", spec.b},
          {"epsilon", spec.epsilon},
          {"alpha", spec.alpha},
          {"beta", spec.beta}};
}

ManifoldSpec spec_from_json(const nlohmann::json& j) {
  const ManifoldSpec s = make_spec(parse_kind(get<std::string>(j, "kind")), get<int>(j, "d"));
  auto agree = [&](const char* key, double v) {
    if (j.contains(key) && j.at(key).get<double>() != v) {
      throw ParameterError(std::string("spec field '") + key + "' disagrees with (kind, d)");
    }
  };
  agree("a", s.a);
  agree("b", s.b);
  agree("epsilon", s.epsilon);
  agree("alpha", s.alpha);
  agree("beta", s.beta);
  return s;
}

nlohmann::json to_json(const Point& p) { return p.coords; }

Point point_from_json(const ManifoldSpec& spec, const nlohmann::json& j) {
  if (!j.is_array()) throw ParameterError("point must be a JSON array of numbers");
  Point p{j.get<std::vector<double>>()};
  validate_point(spec, p);
  return p;
}

nlohmann::json to_json(const ZonalSum& f) {
  return {{"spec", to_json(f.spec())},
          {"degree", f.degree()},
          {"centers", points_to_json(f.centers())},
          {"coeffs", f.coeffs()},
          {"spectral", f.spectral()}};
}

ZonalSum zonal_from_json(const nlohmann::json& j) {
  const ManifoldSpec spec = spec_from_json(j.at("spec"));
  return ZonalSum(spec, get<int>(j, "degree"), points_from_json(spec, j.at("centers")),
                  get<std::vector<double>>(j, "coeffs"), j.value("spectral", std::vector<double>{}));
}

nlohmann::json to_json(const Covering& c) {
  return {{"schema", kCoveringSchema},
          {"spec", to_json(c.spec)},
          {"r", c.r},
          {"separation", c.separation},
          {"multiplicity_observed", c.multiplicity_observed},
          {"seed", c.seed},
          {"proposals", c.proposals},
          {"verification",
           {{"covered", c.verification.covered},
            {"max_gap", c.verification.max_gap},
            {"multiplicity", c.verification.multiplicity},
            {"probes", c.verification.probes}}},
          {"nodes", points_to_json(c.nodes)}};
}

Covering covering_from_json(const nlohmann::json& j) {
  check_schema(j, kCoveringSchema);
  Covering c;
  c.spec = spec_from_json(j.at("spec"));
  c.r = get<double>(j, "r");
  c.separation = get<double>(j, "separation");
  c.multiplicity_observed = get<int>(j, "multiplicity_observed");
  c.seed = j.value("seed", std::uint64_t{0});
  c.proposals = j.value("proposals", std::size_t{0});
  if (j.contains("verification")) {
    const auto& v = j.at("verification");
    c.verification = {get<bool>(v, "covered"), get<double>(v, "max_gap"), get<int>(v, "multiplicity"),
                      get<int>(v, "probes")};
  }
  c.nodes = points_from_json(c.spec, j.at("nodes"));
  return c;
}

nlohmann::json to_json(const CubatureRule& r) {
  return {{"schema", kRuleSchema},
          {"spec", to_json(r.spec)},
          {"degree", r.degree},
          {"n", r.n},
          {"residual", r.residual},
          {"weight_max_scaled", r.weight_max_scaled},
          {"solver_meta",
           {{"iterations", r.iterations},
            {"tolerance", r.tolerance},
            {"converged", r.converged},
            {"seed", r.seed}}},
          {"weights", r.weights},
          {"nodes", points_to_json(r.nodes)}};
}

CubatureRule rule_from_json(const nlohmann::json& j) {
  check_schema(j, kRuleSchema);
  CubatureRule r;
  r.spec = spec_from_json(j.at("spec"));
  r.degree = get<int>(j, "degree");
  r.n = get<int>(j, "n");
  r.residual = get<double>(j, "residual");
  r.weight_max_scaled = get<double>(j, "weight_max_scaled");
  const auto& meta = j.at("solver_meta");
  r.iterations = get<int>(meta, "iterations");
  r.tolerance = get<double>(meta, "tolerance");
  r.converged = get<bool>(meta, "converged");
  r.seed = get<std::uint64_t>(meta, "seed");
  r.weights = get<std::vector<double>>(j, "weights");
  r.nodes = points_from_json(r.spec, j.at("nodes"));
  if (r.weights.size() != r.nodes.size()) throw ParameterError("rule: weights and nodes differ in length");
  for (double w : r.weights) {
    if (w < 0.0) throw ParameterError("rule: negative weight");
  }
  return r;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw NumericError("sha256: digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string dump_artifact(const nlohmann::json& j) { return j.dump() + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ParameterError("write to '" + path + "' failed");
}

}  // namespace ctphs
