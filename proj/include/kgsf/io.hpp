#pragma once

#include "kgsf/certifier.hpp"
#include "kgsf/ktheory.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace kgsf {

using Json = nlohmann::json;

/// Parses a graph document. Syntax errors report "line L, column C";
/// structural errors report the JSON pointer of the offending value.
TwoGraphDescription parse_description(std::string_view text);
TwoGraphDescription read_description(const std::filesystem::path& path);

/// Fixed key order, two-space indent, trailing newline. Element order is
/// preserved because vertex order fixes the matrices.
std::string serialize(const TwoGraphDescription& desc);

Json to_json(const BigInt& v);
Json to_json(const Rational& v);
Json to_json(const IntVector& v);
Json to_json(const RatVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const FgAbGroup& group);
Json to_json(const ConditionStatus& status);
Json to_json(const TwoGraph& g, const Certificate& cert);

ConditionStatus condition_status_from_json(const Json& j);
Certificate certificate_from_json(const TwoGraph& g, const Json& j);

std::string_view to_string(LatticeMode mode) noexcept;

Json validate_report(const TwoGraph& g);
Json ktheory_report(const TwoGraph& g);
Json lattice_report(const TwoGraph& g, LatticeMode mode);

/// One-line rendering such as "M: Fails x=(1) f=(-1) g=(0)".
std::string describe(const ConditionStatus& status);

}  // namespace kgsf
