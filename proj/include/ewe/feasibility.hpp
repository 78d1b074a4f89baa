#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ewe/core.hpp"

namespace ewe {

using Int = boost::multiprecision::cpp_int;

// Element of the free commutative monoid over variables: variable -> count.
struct MonoidTerm {
  std::map<Var, Int> coeff;  // no zero entries stored

  void add(const Var& v, const Int& k = 1);
  Int count(const Var& v) const;
  bool submultiset_of(const MonoidTerm& other) const;
  bool operator==(const MonoidTerm&) const = default;
};

struct InequalitySystem {
  std::vector<std::pair<MonoidTerm, MonoidTerm>> weak;    // a <= b
  std::vector<std::pair<MonoidTerm, MonoidTerm>> strict;  // c < d
};

struct LengthAssignment {
  std::map<Var, Int> lengths;  // all >= 1
  Int eval(const MonoidTerm& t) const;
};

// Exact feasibility of the system over positive integers. Infeasible is a
// normal nullopt return. The system is homogeneous apart from positivity, so
// the rational optimum scales to an integer witness.
std::optional<LengthAssignment> solve_positive(const InequalitySystem& sys,
                                               const std::set<Var>& universe);

MonoidTerm prefix_term(const WordEquation& eq, int s, int j);          // U_{s,1..j}
MonoidTerm interval_term(const WordEquation& eq, int s, int j, int k); // U_{s,j..k}

// Length assignment realizing the boundary order via prefix sums, if any.
// Constraint generation is per consecutive rank pair (O(|B|) inequalities);
// the full pairwise biconditional is re-checked on the returned witness.
std::optional<LengthAssignment> coherence_witness(const ExtendedWordEquation& e);

// Does L reproduce the order exactly (every boundary pair, virtual included)?
bool realizes_order(const ExtendedWordEquation& e, const LengthAssignment& L);

// ---------------------------------------------------------------------------
// covers

struct Interval {
  int side = 0;
  int lo = 0;  // 1-based first index
  int hi = 0;  // last index; hi = lo-1 is the empty interval at lo
  auto operator<=>(const Interval&) const = default;
};

// b's content length-dominates a's: (b.side, lo_b - 1) stays at or below
// (a.side, lo_a - 1) and (a.side, hi_a) stays at or below (b.side, hi_b).
struct Cover {
  Interval a, b;  // a.side != b.side
  bool strict = false;
  auto operator<=>(const Cover&) const = default;
};

bool interval_valid(const WordEquation& eq, const Interval& iv);
bool is_cover(const ExtendedWordEquation& e, const Interval& a, const Interval& b,
              bool* strict = nullptr);

// Covers that stop being covers under either one-step shrink of b's interval.
std::vector<Cover> enumerate_tight_covers(const ExtendedWordEquation& e);

struct IncoherentCore {
  std::vector<Cover> covers;      // the certificate's covers (multiplier > 0)
  std::vector<Int> multipliers;   // parallel, each >= 1
};

// Multiset-inclusion certificate of incoherence assembled from tight covers
// with every multiplier <= coefficient_bound. nullopt when e is coherent;
// BoundExhausted when e is incoherent but the bounded search found nothing.
std::optional<IncoherentCore> find_incoherent_core(const ExtendedWordEquation& e,
                                                   const Int& coefficient_bound);

// Certificate arithmetic: the multiplied covering contents (b sides) are
// multiset-included in the multiplied covered contents (a sides), strictly or
// with a strict cover engaged — contradicting the length dominations.
bool core_certifies(const WordEquation& eq, const IncoherentCore& core);

}  // namespace ewe
