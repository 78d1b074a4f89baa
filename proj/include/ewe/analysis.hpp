#pragma once
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ewe/core.hpp"
#include "ewe/feasibility.hpp"

namespace ewe {

// Limits for state-space walks. max_side_length == 0 means "4x the input's
// total length" — side lengths can grow step over step, so an absolute cap
// is required for the walk to be a decision at all.
struct Budget {
  std::size_t max_states = 10000;
  std::size_t max_side_length = 0;

  std::size_t side_cap(const ExtendedWordEquation& e) const;
};

struct ExplorationEdge {
  std::string source;   // canonical key
  std::size_t choice;   // index into successors() of the source state
  std::string target;   // canonical key

  bool operator==(const ExplorationEdge&) const = default;
};

// The part of the coherent-successor graph reached so far. States are kept
// up to variable renaming (canonical form); incoherent images never become
// states, and trivial states (either side empty) are leaves.
struct ExplorationGraph {
  std::string root;
  std::map<std::string, ExtendedWordEquation> states;
  std::vector<ExplorationEdge> edges;
};

// Path into and around the first cycle met during exploration. Replaying the
// stem choices from the canonicalized root reaches cycle_states.front();
// replaying the cycle choices from there returns to it. Every choice indexes
// the full successors() list of the canonical source state.
struct Lasso {
  std::vector<std::string> stem_states;   // size == stem.size(), begins at root
  std::vector<std::size_t> stem;
  std::vector<std::string> cycle_states;  // size == cycle.size()
  std::vector<std::size_t> cycle;
};

enum class ExploreOutcome { Complete, CycleFound, BudgetExceeded };
const char* explore_outcome_name(ExploreOutcome o);

struct ExploreResult {
  ExplorationGraph graph;
  ExploreOutcome outcome = ExploreOutcome::Complete;
  std::optional<Lasso> lasso;  // set iff CycleFound
  std::string budget_reason;   // set iff BudgetExceeded
};

// Depth-first expansion over coherent successors with canonical-form
// memoization, stopping at the first cycle. Errors: IncoherentInput.
ExploreResult explore(const ExtendedWordEquation& e, const Budget& budget = {});

// Edge count of the longest path from the root; the graph must be acyclic
// (as after a Complete exploration).
std::size_t longest_run(const ExplorationGraph& g);

std::string to_dot(const ExplorationGraph& g);

enum class Hereditary { No, Yes, Unknown };
const char* hereditary_name(Hereditary h);

// Membership of e in the largest set of staggered coherent equations where
// every nontrivial member has a staggered coherent successor and every
// staggered coherent successor of a member stays in the set. Computed as a
// greatest fixpoint over the region reachable through staggered coherent
// successors; Yes only when that region closes within budget and e survives
// the deletion rounds, Unknown when the frontier outgrows the budget.
Hereditary hereditarily_staggered(const ExtendedWordEquation& e,
                                  const Budget& budget = {});

// One emitted step of the non-termination run construction.
struct RunStep {
  ExtendedWordEquation ewe;
  std::string rule;       // placement used, "+swap-repair" when repaired
  bool staggered = false;
  bool coherent = false;
  bool cyclic = false;    // of ewe's cut graph
};

// Iteratively build staggered coherent successors whose cut graphs stay
// cyclic, steering each step by a pointed minimum-length cycle. Emits one
// RunStep per step with all three checks recorded; aborts with
// ConstructionFailed(step, reason) the moment any check fails (possible when
// e is not hereditarily staggered). Errors: PreconditionFailed (e not
// staggered / not coherent / cut graph acyclic), ConstructionFailed.
std::vector<RunStep> nonterminating_run(const ExtendedWordEquation& e,
                                        std::size_t steps);

// ---------------------------------------------------------------------------
// verdicts

struct MeasureCertificate {
  Int measure;  // sum of boundary fecundities, strictly decreasing per step
  Int bound;    // 2^(total length): cap on the length of any coherent run
};

struct ExhaustedGraph {
  std::size_t states = 0;
  std::size_t longest = 0;  // edges along the longest explored path
};

struct LassoWitness {
  Lasso lasso;
};

struct CyclicRunPrefix {
  std::vector<RunStep> steps;
};

struct BudgetReport {
  std::string reason;
};

enum class Status { Terminating, NonTerminating, Unknown };
const char* status_name(Status s);

using Certificate = std::variant<MeasureCertificate, ExhaustedGraph,
                                 LassoWitness, CyclicRunPrefix, BudgetReport>;

// Terminating carries MeasureCertificate or ExhaustedGraph; NonTerminating
// carries LassoWitness or CyclicRunPrefix; Unknown carries BudgetReport.
struct Verdict {
  Status status = Status::Unknown;
  Certificate certificate;
};

// Termination verdict for the coherent rewriting from e: an acyclic cut
// graph certifies termination outright (measure argument); otherwise bounded
// exploration either finds a cycle (lasso) or exhausts the reachable states;
// if the budget runs out, a hereditarily-staggered cyclic input yields a
// generated non-termination run prefix, and anything else is Unknown.
// Errors: IncoherentInput.
Verdict analyze(const ExtendedWordEquation& e, const Budget& budget = {});

}  // namespace ewe
