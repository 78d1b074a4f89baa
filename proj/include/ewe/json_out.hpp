#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ewe/analysis.hpp"
#include "ewe/cutgraph.hpp"
#include "ewe/feasibility.hpp"
#include "ewe/transform.hpp"
#include "json.hpp"

namespace ewe {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over the 64-bit space, rendered as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

// Wraps a command payload with the tool version and a digest of the input.
// normalized_input should be the re-serialized form of the parsed equation so
// the digest ignores comments and whitespace.
nlohmann::json envelope(const std::string& command,
                        const std::string& normalized_input,
                        nlohmann::json result);

// Equations travel inside JSON as their text serialization, so any consumer
// can feed them back to the parser.
nlohmann::json to_json(const ExtendedWordEquation& e);
nlohmann::json to_json(const LengthAssignment& L);
nlohmann::json to_json(const CutGraph& g);
nlohmann::json to_json(const Lasso& l);
nlohmann::json to_json(const RunStep& step);
nlohmann::json to_json(const Verdict& v);
nlohmann::json successors_json(const std::vector<Successor>& succ,
                               NielsenCase c);

}  // namespace ewe
