#pragma once

#include <string>

#include "json.hpp"
#include "ivp/ring.hpp"

namespace ivp {

inline constexpr int kSpecVersion = 1;

// Ring-spec files: {"version": 1, "explicit": [{"p", "elements"}], "rule"}.
// Integers may be given as JSON numbers or decimal strings. Throws
// SpecFormatError on malformed input.
nlohmann::ordered_json to_json(const ElementSpec& spec);
ElementSpec element_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const RingSpec& ring);
RingSpec ring_from_json(const nlohmann::json& j);

RingSpec load_ring(const std::string& path);
void save_ring(const RingSpec& ring, const std::string& path);

}  // namespace ivp
