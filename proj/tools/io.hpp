#pragma once

#include "qfc/branching.hpp"
#include "qfc/freeops.hpp"
#include "qfc/lln.hpp"
#include "qfc/measures.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qfc::io {

using nlohmann::json;

// Rationals travel as "p/q" strings; integers are also accepted on input.
json toJson(const Rational& q);
Rational rationalFromJson(const json& j);

json toJson(const DiscreteMeasure& m);
DiscreteMeasure measureFromJson(const json& j);

json toJson(const MomentSequence& m);
// Accepts {"moments": [...]} or {"atoms": [...]}. Moment lists longer than K are truncated;
// shorter ones are an order mismatch.
MomentSequence momentsFromJson(const json& j, int K);

json toJson(const Profile& f);
// {"pieces": [...]}, {"step": {"height", "at"}} or {"constant": c}.
Profile profileFromJson(const json& j);

json toJson(const DecompositionMeasure& rho, const Multiplicities* mult = nullptr);
DecompositionMeasure decompositionFromJson(const json& j);

json toJson(const InterlacingChain& chain);
InterlacingChain chainFromJson(const json& j);

json toJson(const InfDivParameters& c);
InfDivParameters infDivFromJson(const json& j, int K);

json toJson(const ExperimentReport& r);
ExperimentReport reportFromJson(const json& j);

std::uint64_t fnv1a64(std::string_view bytes);
// "key=value" lines in report order, then "seed=...".
std::string canonicalConfig(const ExperimentReport& r);
std::string configHash(const ExperimentReport& r); // 16 hex digits

inline constexpr int kCsvDigits = 17;
// Shortest-free fixed significant-digit rendering with '.' as the decimal mark.
std::string formatDecimal(double v, int digits = kCsvDigits);
void writeCsv(std::ostream& os, const ExperimentReport& r);

// Inline JSON when the text starts with '{' or '[', otherwise a file path.
json loadJsonArg(const std::string& arg);
// Write to a sibling temporary, then rename over the target.
void writeFileAtomically(const std::string& path, const std::string& content);

} // namespace qfc::io
