#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ewe {

using Var = std::string;
using Word = std::vector<Var>;

struct WordEquation {
  Word u1, u2;

  const Word& side(int s) const { return s == 1 ? u1 : u2; }
  Word& side(int s) { return s == 1 ? u1 : u2; }
  int len(int s) const { return static_cast<int>(side(s).size()); }

  bool operator==(const WordEquation&) const = default;
  auto operator<=>(const WordEquation&) const = default;
};

// Boundary (s,j): the right edge of the j-th variable instance on side s
// (1-based). (s,0) is the virtual left edge: it participates in comparisons
// (one shared rank strictly below all real ranks) but is never stored.
struct Boundary {
  int side = 0;
  int index = 0;

  bool virt() const { return index == 0; }
  // Positional (side, index) order for containers and deterministic output;
  // not the boundary order.
  auto operator<=>(const Boundary&) const = default;
};

inline Boundary pred(Boundary b) { return Boundary{b.side, b.index - 1}; }

// A rank class holds boundaries sharing one rank; kept sorted. Valid orders
// never put two same-side boundaries in one class, so classes have size 1 or 2.
using RankClass = std::vector<Boundary>;
// Ordered partition of all real boundaries, bottom rank first.
using BoundaryOrder = std::vector<RankClass>;

struct ExtendedWordEquation {
  WordEquation eq;
  BoundaryOrder order;

  bool operator==(const ExtendedWordEquation&) const = default;
  auto operator<=>(const ExtendedWordEquation&) const = default;
};

// ---------------------------------------------------------------------------
// validation

struct Violation {
  enum class Kind {
    MissingBoundary,
    DuplicateBoundary,
    UnknownBoundary,  // mentions (s,j) outside 1..len on a nonempty side
    SideOrderViolated,
    TopBoundariesNotEquivalent,
    EmptySideWithNonemptyRanks,
  };
  Kind kind;
  std::string detail;
};

const char* violation_name(Violation::Kind k);

struct MakeResult {
  std::optional<ExtendedWordEquation> ewe;  // present iff violations empty
  std::vector<Violation> violations;
};

// Validates and normalizes (classes sorted, empty classes dropped).
// Collects every violation instead of stopping at the first.
MakeResult make_ewe(Word u1, Word u2, BoundaryOrder ranks);

// Shorthand for fixtures and tests: throws InternalInvariant on any violation.
ExtendedWordEquation require_ewe(Word u1, Word u2, BoundaryOrder ranks);

// ---------------------------------------------------------------------------
// operation errors

struct EweError : std::runtime_error {
  enum class Code {
    TrivialEquation,
    EmptySide,
    WrongCase,
    NotAdjacent,
    IncoherentInput,
    CyclicCutGraph,
    BoundExhausted,
    PreconditionFailed,
    ConstructionFailed,
    InternalInvariant,
  };
  Code code;
  int step = -1;  // ConstructionFailed: 1-based step that failed

  EweError(Code c, const std::string& msg);
  EweError(Code c, int at_step, const std::string& msg);
};

const char* error_name(EweError::Code c);

// ---------------------------------------------------------------------------
// order queries (virtual-boundary convention throughout)

// Rank of a real boundary, 0-based; -1 for virtual boundaries.
int rank_of(const ExtendedWordEquation& e, Boundary b);

bool ord_less(const ExtendedWordEquation& e, Boundary a, Boundary b);   // a < b
bool ord_equiv(const ExtendedWordEquation& e, Boundary a, Boundary b);  // a ~ b
bool ord_leq(const ExtendedWordEquation& e, Boundary a, Boundary b);    // a < b or a ~ b
// a < b with no rank strictly between (consecutive classes).
bool ord_consecutive(const ExtendedWordEquation& e, Boundary a, Boundary b);
// a < b and no third boundary c has a <= c <= b: both are singleton classes
// in consecutive ranks.
bool ord_adjacent(const ExtendedWordEquation& e, Boundary a, Boundary b);

// Dense rank lookup for loops over many pairs.
struct RankTable {
  std::vector<int> r1, r2;
  explicit RankTable(const ExtendedWordEquation& e);
  int rank(Boundary b) const {
    if (b.virt()) return -1;
    return (b.side == 1 ? r1 : r2)[static_cast<size_t>(b.index - 1)];
  }
};

// ---------------------------------------------------------------------------
// basic structure

std::vector<Boundary> all_boundaries(const WordEquation& eq);  // side 1 then 2
const Var& label(const WordEquation& eq, Boundary b);          // U_{s,j}

// Sides swapped; (s,j) compares in the dual as (3-s,j) did originally.
ExtendedWordEquation dual(const ExtendedWordEquation& e);

// No cross-side rank equality except the shared top (and the virtual bottom).
bool is_staggered(const ExtendedWordEquation& e);
// Both sides nonempty.
bool is_nontrivial(const ExtendedWordEquation& e);

// Variables renamed to first-occurrence order over u1 then u2 (A, B, ...,
// Z, V26, V27, ...); the rank list is untouched. Used as the memoization
// quotient for state exploration.
ExtendedWordEquation canonical_form(const ExtendedWordEquation& e);
std::string canonical_key(const ExtendedWordEquation& e);

// ---------------------------------------------------------------------------
// .ewe text format
//
//   eq: X X Y = Z W Z
//   order: (2,1) < (1,1) < (2,2) < (1,2) < (1,3)~(2,3)
//
// '#' starts a comment, blank lines are ignored, variable names match
// [A-Za-z][A-Za-z0-9_]*. An empty side has no tokens on its side of '=';
// the trivial equation is "eq: =" with an empty "order:" line.

struct ParseError {
  int line = 0;  // 1-based
  int col = 0;   // 1-based
  std::string message;
};

struct ParseResult {
  std::optional<ExtendedWordEquation> ewe;
  std::vector<ParseError> errors;     // syntax
  std::vector<Violation> violations;  // structure (from make_ewe)

  bool ok() const { return ewe.has_value(); }
};

ParseResult parse_ewe_text(const std::string& text);
std::string to_ewe_text(const ExtendedWordEquation& e);

std::string boundary_str(Boundary b);  // "(s,j)"

}  // namespace ewe
