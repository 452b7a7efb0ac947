#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ctphs/covering.hpp"
#include "ctphs/cubature.hpp"
#include "ctphs/kernels.hpp"
#include "ctphs/manifold.hpp"

namespace ctphs {

/// JSON schema tags embedded in persisted artifacts.
inline constexpr const char* kCoveringSchema = "ctphs-covering/1";
inline constexpr const char* kRuleSchema = "ctphs-rule/1";

nlohmann::json to_json(const ManifoldSpec& spec);
/// Rebuilds from {kind, d}; derived fields present in the input must agree.
ManifoldSpec spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Point& p);
Point point_from_json(const ManifoldSpec& spec, const nlohmann::json& j);

nlohmann::json to_json(const ZonalSum& f);
ZonalSum zonal_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Covering& c);
Covering covering_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CubatureRule& r);
CubatureRule rule_from_json(const nlohmann::json& j);

/// Lower-case hex SHA-256 of bytes.
std::string sha256_hex(std::string_view bytes);

/// Canonical text of a JSON artifact: compact dump plus newline. Doubles are
/// printed in shortest round-trip form, so load(save(x)) == x bit for bit.
std::string dump_artifact(const nlohmann::json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace ctphs
