#pragma once
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ewe/core.hpp"
#include "ewe/feasibility.hpp"

namespace ewe {

// a cuts b: distinct boundaries whose variable instances overlap —
// pred(a) < b and pred(b) < a (virtual predecessors rank below everything).
bool cuts(const ExtendedWordEquation& e, Boundary a, Boundary b);

// a mirrors b: same variable label and the instances are not provably the
// same segment (boundaries or their predecessors differ in rank).
bool mirrors(const ExtendedWordEquation& e, Boundary a, Boundary b);

struct CutGraph {
  std::set<Boundary> vertices;
  std::set<std::pair<Boundary, Boundary>> edges;
  // per edge (a,c): one boundary w with cuts(a,w) and mirrors(w,c)
  std::map<std::pair<Boundary, Boundary>, Boundary> witnesses;
};

// Edge (a,c) iff a cuts some w that mirrors c. Loops allowed.
CutGraph cut_graph(const ExtendedWordEquation& e);

bool is_cyclic(const CutGraph& g);

struct FecundityTable {
  std::map<Boundary, Int> values;
};

// f(a) = 1 + max over cut partners w of a, of the summed fecundities of w's
// mirror targets. Requires an acyclic cut graph (CyclicCutGraph otherwise);
// every boundary of a two-sided equation has at least one cut partner, so the
// max is over a nonempty set (InternalInvariant if a degenerate order
// slipped through validation).
FecundityTable fecundity(const ExtendedWordEquation& e);

// Sum of all fecundities; 0 for the trivial equation. CyclicCutGraph when the
// cut graph has a cycle.
Int measure(const ExtendedWordEquation& e);

struct PointedCycle {
  // v1, ..., vL, v1 — minimum length, closing repeat included
  std::vector<Boundary> cycle;
  // v1, w1, v2, w2, ..., vL, wL with vk cuts wk and wk mirrors v(k+1);
  // v1 ranks no higher than anything in this sequence
  std::vector<Boundary> auxiliary;
};

// A minimum-length cycle whose first vertex is a minimal element of its
// cut/mirror witness set; such a combination always exists when the graph is
// cyclic (rotate the cycle, or walk the witnesses backwards). Deterministic:
// first hit over cycles in (side,index)-sorted DFS order, witnesses in sorted
// order. Absent iff the cut graph is acyclic.
std::optional<PointedCycle> pointed_min_cycle(const ExtendedWordEquation& e);

// Deterministic DOT listing: all vertices, then all edges, (side,index) order.
std::string to_dot(const CutGraph& g);

}  // namespace ewe
