#pragma once

#include <optional>
#include <vector>

#include "ewe/core.hpp"
#include "ewe/feasibility.hpp"

// Brute-force reference implementations used as test oracles. Everything here
// is coded from the definitions, independently of the production modules —
// shared vocabulary is limited to the core value types (plus the feasibility
// solver where enumeration results are paired with a coherence status).
namespace ewe::oracle {

// Every strict weak order interleaving the two sides' boundary sequences with
// the tops sharing the final rank. Duplicate-free, deterministic order.
std::vector<BoundaryOrder> enumerate_boundary_orders(const Word& u1, const Word& u2);

// Exhaustive search over assignments with 1 <= L(x) <= max_len, checking the
// full biconditional on every boundary pair. A hit proves coherence; a miss
// proves nothing beyond the bound.
std::optional<LengthAssignment> brute_coherence(const ExtendedWordEquation& e, int max_len);

struct EnumerationSpec {
  int max_total_length = 4;
  int max_variables = 2;
  bool sides_nonempty = true;
};

struct EnumeratedEwe {
  ExtendedWordEquation e;
  bool coherent;
};

// All extended word equations within the bounds, canonically named, in a
// deterministic order, each paired with its coherence status.
std::vector<EnumeratedEwe> enumerate_ewes(const EnumerationSpec& spec);

// Successor computation by brute filtering: transform the word equation, then
// keep exactly those interleavings of the new boundaries whose restriction to
// the surviving boundaries reproduces the transported order.
std::vector<ExtendedWordEquation> successors_by_filter(const ExtendedWordEquation& e);

}  // namespace ewe::oracle
