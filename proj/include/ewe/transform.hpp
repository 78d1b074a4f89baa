#pragma once
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "ewe/core.hpp"

namespace ewe {

// The three step kinds, keyed off how the two head boundaries compare:
// CaseI when (1,1) ~ (2,1)  (identify the head variables),
// CaseII when (1,1) > (2,1) (side 2's head is a proper prefix: split U_{1,1}),
// CaseIII when (1,1) < (2,1) (mirror image of CaseII).
enum class NielsenCase { CaseI, CaseII, CaseIII };

const char* case_name(NielsenCase c);  // "I" / "II" / "III"

// Requires both sides nonempty (TrivialEquation otherwise).
NielsenCase nielsen_case(const ExtendedWordEquation& e);

// Word-level step: apply the case's substitution to both sides, then strip the
// first symbol of each. The case is the caller's choice, except that equal
// head variables admit only CaseI (WrongCase otherwise). EmptySide if either
// side is empty.
std::pair<Word, Word> word_nielsen(const Word& u1, const Word& u2, NielsenCase c);

// Index bookkeeping for a CaseII step on e = (u1, u2, <) with image (u1', u2').
//   mu: surviving old boundary (i,j) -> its position on side i of the image
//   nu: image boundary (i,j) -> position on side i of the input it tracks
//   b_minus:  old boundaries that survive (everything except (2,1))
//   bp_minus: their images under mu
//   bp_plus:  image boundaries born in the step (complement of bp_minus)
// Guarantees: nu(i, mu(i,j)) = j on b_minus; bp_plus never holds two
// consecutive same-side boundaries; each bp_plus boundary carries the old
// side-2 head variable and is immediately followed by the old side-1 head.
struct BoundaryMaps {
  std::map<Boundary, int> mu;
  std::map<Boundary, int> nu;
  std::set<Boundary> b_minus;
  std::set<Boundary> bp_minus;
  std::set<Boundary> bp_plus;
};

// WrongCase unless nielsen_case(e) == CaseII with distinct head variables
// (CaseIII callers dualize first).
BoundaryMaps boundary_maps(const ExtendedWordEquation& e);

// The input's rank classes restricted to surviving boundaries and re-indexed
// by mu ((2,1)'s class disappears when emptied). Every CaseII image order
// restricts to exactly this on bp_minus; images differ only in where the
// bp_plus boundaries land.
BoundaryOrder case2_carried_order(const ExtendedWordEquation& e,
                                  const BoundaryMaps& bm);

struct Successor {
  ExtendedWordEquation ewe;
  bool coherent = false;

  bool operator==(const Successor&) const = default;
  auto operator<=>(const Successor&) const = default;
};

// All extended Nielsen transformations of e, sorted by rank list, duplicate-
// free, each flagged coherent/incoherent. CaseI yields the single index-shifted
// successor; CaseII enumerates every interleaving that restricts to the
// nu-transported order on surviving boundaries; CaseIII goes through dual.
// Errors: TrivialEquation (either side empty), IncoherentInput.
std::vector<Successor> successors(const ExtendedWordEquation& e);

// One coherent successor, built by pushing a coherence witness through the
// step (CaseII shrinks the split variable's length by the consumed head's
// length) and reading the successor order off the updated prefix sums.
// Errors: TrivialEquation, IncoherentInput.
ExtendedWordEquation coherent_successor(const ExtendedWordEquation& e);

// Exchange b with an adjacent opposite-side boundary (both in singleton rank
// classes, consecutive ranks). The single-argument form prefers the partner
// directly above b when both neighbors qualify; the explicit form names the
// pair. NotAdjacent if the boundaries do not qualify.
ExtendedWordEquation swap(const ExtendedWordEquation& e, Boundary b);
ExtendedWordEquation swap(const ExtendedWordEquation& e, Boundary a, Boundary b);

}  // namespace ewe
