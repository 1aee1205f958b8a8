#pragma once

#include <iosfwd>

#include "json.hpp"

namespace ivp::cli {

// Exit codes: 0 success or true, 1 false or mismatch, 2 error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "key: value" lines for a report; nested objects are indented.
void render_text(const nlohmann::ordered_json& report, std::ostream& out);

}  // namespace ivp::cli
