#include "ewe/analysis.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "ewe/cutgraph.hpp"
#include "ewe/transform.hpp"

namespace ewe {

namespace {

constexpr std::size_t kRunPrefixLen = 16;

std::size_t side_max(const ExtendedWordEquation& e) {
  return std::max(e.eq.u1.size(), e.eq.u2.size());
}

bool is_coherent(const ExtendedWordEquation& e) {
  return coherence_witness(e).has_value();
}

}  // namespace

std::size_t Budget::side_cap(const ExtendedWordEquation& e) const {
  if (max_side_length) return max_side_length;
  return 4 * (e.eq.u1.size() + e.eq.u2.size());
}

const char* explore_outcome_name(ExploreOutcome o) {
  switch (o) {
    case ExploreOutcome::Complete: return "Complete";
    case ExploreOutcome::CycleFound: return "CycleFound";
    case ExploreOutcome::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

const char* hereditary_name(Hereditary h) {
  switch (h) {
    case Hereditary::No: return "No";
    case Hereditary::Yes: return "Yes";
    case Hereditary::Unknown: return "Unknown";
  }
  return "?";
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Terminating: return "Terminating";
    case Status::NonTerminating: return "NonTerminating";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// exploration

ExploreResult explore(const ExtendedWordEquation& e, const Budget& budget) {
  if (!is_coherent(e))
    throw EweError(EweError::Code::IncoherentInput,
                   "exploration starts from a coherent equation");

  const std::size_t cap = budget.side_cap(e);

  ExploreResult res;
  ExplorationGraph& g = res.graph;

  ExtendedWordEquation root = canonical_form(e);
  const std::string root_key = canonical_key(root);
  g.root = root_key;

  if (budget.max_states == 0 || side_max(root) > cap) {
    res.outcome = ExploreOutcome::BudgetExceeded;
    res.budget_reason = "input alone exceeds the budget";
    return res;
  }
  g.states.emplace(root_key, root);

  struct Frame {
    std::string key;
    std::vector<Successor> succ;
    std::size_t next = 0;
    std::size_t entered_via = 0;  // choice taken in the parent frame
  };

  std::vector<Frame> stack;
  std::map<std::string, int> on_stack;  // 1 = open, 2 = finished

  auto open_frame = [&](const std::string& key, const ExtendedWordEquation& s,
                        std::size_t via) {
    Frame f;
    f.key = key;
    f.entered_via = via;
    if (is_nontrivial(s)) f.succ = successors(s);
    stack.push_back(std::move(f));
    on_stack[key] = 1;
  };

  open_frame(root_key, root, 0);

  while (!stack.empty()) {
    if (stack.back().next == stack.back().succ.size()) {
      on_stack[stack.back().key] = 2;
      stack.pop_back();
      continue;
    }
    const std::string skey = stack.back().key;
    const std::size_t choice = stack.back().next++;
    const Successor su = stack.back().succ[choice];
    if (!su.coherent) continue;  // incoherent images never become states

    ExtendedWordEquation t = canonical_form(su.ewe);
    const std::string tkey = canonical_key(t);

    auto it = g.states.find(tkey);
    if (it == g.states.end()) {
      if (g.states.size() + 1 > budget.max_states) {
        res.outcome = ExploreOutcome::BudgetExceeded;
        res.budget_reason = "state budget exhausted";
        return res;
      }
      if (side_max(t) > cap) {
        res.outcome = ExploreOutcome::BudgetExceeded;
        res.budget_reason = "side length over budget";
        return res;
      }
      g.edges.push_back({skey, choice, tkey});
      g.states.emplace(tkey, t);
      open_frame(tkey, t, choice);
      continue;
    }

    g.edges.push_back({skey, choice, tkey});
    if (on_stack[tkey] == 1) {
      // back edge: the first cycle in the successor graph
      std::size_t p = 0;
      while (stack[p].key != tkey) ++p;
      Lasso l;
      for (std::size_t i = 0; i < p; ++i) {
        l.stem_states.push_back(stack[i].key);
        l.stem.push_back(stack[i + 1].entered_via);
      }
      for (std::size_t i = p; i < stack.size(); ++i) {
        l.cycle_states.push_back(stack[i].key);
        l.cycle.push_back(i + 1 < stack.size() ? stack[i + 1].entered_via
                                               : choice);
      }
      res.lasso = std::move(l);
      res.outcome = ExploreOutcome::CycleFound;
      return res;
    }
    // edge into a finished state: recorded, nothing to expand
  }

  res.outcome = ExploreOutcome::Complete;
  return res;
}

std::size_t longest_run(const ExplorationGraph& g) {
  if (g.states.empty()) return 0;
  std::map<std::string, std::vector<const std::string*>> adj;
  for (const ExplorationEdge& ed : g.edges)
    adj[ed.source].push_back(&ed.target);

  std::map<std::string, std::size_t> memo;
  std::map<std::string, int> mark;
  std::function<std::size_t(const std::string&)> depth =
      [&](const std::string& v) -> std::size_t {
    auto m = memo.find(v);
    if (m != memo.end()) return m->second;
    if (mark[v] == 1)
      throw EweError(EweError::Code::InternalInvariant,
                     "longest_run needs an acyclic graph");
    mark[v] = 1;
    std::size_t best = 0;
    auto a = adj.find(v);
    if (a != adj.end())
      for (const std::string* w : a->second)
        best = std::max(best, 1 + depth(*w));
    mark[v] = 2;
    memo[v] = best;
    return best;
  };
  return depth(g.root);
}

std::string to_dot(const ExplorationGraph& g) {
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      if (c == '\n') {
        out += "\\n";
        continue;
      }
      out.push_back(c);
    }
    return out;
  };

  std::map<std::string, std::size_t> id;
  for (const auto& [key, st] : g.states) id.emplace(key, id.size());

  std::ostringstream os;
  os << "digraph exploration {\n";
  for (const auto& [key, st] : g.states) {
    os << "  s" << id.at(key) << " [label=\"" << escape(key) << '"';
    if (key == g.root) os << " peripheries=2";
    os << "];\n";
  }
  for (const ExplorationEdge& ed : g.edges)
    os << "  s" << id.at(ed.source) << " -> s" << id.at(ed.target)
       << " [label=\"" << ed.choice << "\"];\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// hereditary staggeredness

Hereditary hereditarily_staggered(const ExtendedWordEquation& e,
                                  const Budget& budget) {
  if (!is_staggered(e) || !is_coherent(e)) return Hereditary::No;

  const std::size_t cap = budget.side_cap(e);
  ExtendedWordEquation root = canonical_form(e);
  const std::string root_key = canonical_key(root);
  if (budget.max_states == 0 || side_max(root) > cap)
    return Hereditary::Unknown;

  // region reachable through staggered coherent successors
  std::map<std::string, ExtendedWordEquation> region;
  std::map<std::string, std::vector<std::string>> next;
  std::deque<std::string> frontier;
  region.emplace(root_key, std::move(root));
  frontier.push_back(root_key);

  while (!frontier.empty()) {
    const std::string key = std::move(frontier.front());
    frontier.pop_front();
    const ExtendedWordEquation& s = region.at(key);
    if (!is_nontrivial(s)) continue;  // leaf: no step applies
    for (const Successor& su : successors(s)) {
      if (!su.coherent || !is_staggered(su.ewe)) continue;
      ExtendedWordEquation t = canonical_form(su.ewe);
      std::string tkey = canonical_key(t);
      next[key].push_back(tkey);
      if (region.count(tkey)) continue;
      if (region.size() + 1 > budget.max_states) return Hereditary::Unknown;
      if (side_max(t) > cap) return Hereditary::Unknown;
      region.emplace(std::move(tkey), std::move(t));
      frontier.push_back(next[key].back());
    }
  }

  // greatest fixpoint: drop nontrivial states with no surviving staggered
  // coherent successor, and any state with such a successor already dropped
  std::set<std::string> alive;
  for (const auto& [k, s] : region) alive.insert(k);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      const ExtendedWordEquation& s = region.at(*it);
      auto n = next.find(*it);
      bool drop = is_nontrivial(s) && (n == next.end() || n->second.empty());
      if (!drop && n != next.end())
        for (const std::string& t : n->second)
          if (!alive.count(t)) {
            drop = true;
            break;
          }
      if (drop) {
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return alive.count(root_key) ? Hereditary::Yes : Hereditary::No;
}

// ---------------------------------------------------------------------------
// non-termination run construction

namespace {

int rank_in_order(const BoundaryOrder& ord, Boundary b) {
  if (b.virt()) return -1;
  for (std::size_t r = 0; r < ord.size(); ++r)
    for (const Boundary& x : ord[r])
      if (x == b) return static_cast<int>(r);
  return -2;
}

// Placement request for the distinguished fresh boundary: it goes directly
// below `upper`'s class; when `lower` is set the gap below `upper` must also
// sit strictly above `lower` (two-sided pin).
struct SpecialPlacement {
  Boundary fresh;
  Boundary upper;
  std::optional<Boundary> lower;
};

// The step's image order: carried base, every non-distinguished fresh
// boundary directly above its same-side predecessor (a fresh (i,1) opens a
// new bottom rank), then the distinguished one per `special`.
BoundaryOrder place_fresh(const ExtendedWordEquation& x, const BoundaryMaps& bm,
                          const std::optional<SpecialPlacement>& special) {
  BoundaryOrder ord = case2_carried_order(x, bm);
  for (const Boundary& f : bm.bp_plus) {
    if (special && f == special->fresh) continue;
    if (f.index == 1) {
      ord.insert(ord.begin(), RankClass{f});
      continue;
    }
    const int r = rank_in_order(ord, {f.side, f.index - 1});
    if (r < 0)
      throw EweError(EweError::Code::InternalInvariant,
                     "fresh boundary's predecessor missing from the carried order");
    ord.insert(ord.begin() + r + 1, RankClass{f});
  }
  if (special) {
    const int hi = rank_in_order(ord, special->upper);
    if (hi < 0)
      throw EweError(EweError::Code::InternalInvariant,
                     "anchor for the distinguished fresh boundary is missing");
    if (special->lower) {
      const int lo = rank_in_order(ord, *special->lower);
      if (lo == -2 || lo >= hi)
        throw EweError(EweError::Code::InternalInvariant,
                       "no gap between the distinguished anchors");
    }
    ord.insert(ord.begin() + hi, RankClass{special->fresh});
  }
  return ord;
}

// One constructed image for a coherent staggered CaseII equation with a
// cyclic cut graph, steered by a pointed minimum-length cycle:
//   - pointed vertex above the bottom: every fresh boundary goes directly
//     above its same-side predecessor;
//   - pointed vertex == (2,1): the fresh boundary spawned by the second
//     cycle vertex is pinned near that vertex's image instead — directly
//     below it, or between the second witness's image and its predecessor
//     when that witness re-enters the cycle.
std::pair<ExtendedWordEquation, std::string> case2_step(
    const ExtendedWordEquation& x, int step) {
  const std::optional<PointedCycle> pc = pointed_min_cycle(x);
  if (!pc)
    throw EweError(EweError::Code::InternalInvariant,
                   "cyclic cut graph without a pointed cycle");
  const BoundaryMaps bm = boundary_maps(x);

  std::optional<SpecialPlacement> special;
  std::string rule = "fresh-above-pred";

  if (pc->cycle.front() == Boundary{2, 1}) {
    if (pc->cycle.size() < 3)
      throw EweError(EweError::Code::InternalInvariant,
                     "bottom-pointed cycle shorter than two edges");
    const Boundary v2 = pc->cycle[1];
    const auto mv = bm.mu.find(v2);
    if (mv == bm.mu.end())
      throw EweError(EweError::Code::InternalInvariant,
                     "second cycle vertex has no image");
    const Boundary sp{v2.side, mv->second - 1};
    if (!bm.bp_plus.count(sp))
      throw EweError(EweError::Code::InternalInvariant,
                     "distinguished boundary is not fresh");

    bool witness_at_bottom = false, witness_reenters = false;
    for (std::size_t i = 1; i < pc->auxiliary.size(); i += 2) {
      if (pc->auxiliary[i] == Boundary{2, 1}) witness_at_bottom = true;
      if (pc->auxiliary[i] == v2) witness_reenters = true;
    }
    if (witness_reenters && !witness_at_bottom) {
      const Boundary w2 = pc->auxiliary[3];
      const auto mw = bm.mu.find(w2);
      if (mw == bm.mu.end())
        throw EweError(EweError::Code::InternalInvariant,
                       "second witness has no image");
      special = SpecialPlacement{sp, Boundary{w2.side, mw->second},
                                 Boundary{w2.side, mw->second - 1}};
      rule = "special-between";
    } else {
      special = SpecialPlacement{sp, Boundary{v2.side, mv->second}, {}};
      rule = "special-below-succ";
    }
  }

  BoundaryOrder ord = place_fresh(x, bm, special);
  auto [u1p, u2p] = word_nielsen(x.eq.u1, x.eq.u2, NielsenCase::CaseII);
  MakeResult mk = make_ewe(std::move(u1p), std::move(u2p), std::move(ord));
  if (!mk.ewe)
    throw EweError(EweError::Code::ConstructionFailed, step,
                   std::string("placement produced an inconsistent order: ") +
                       violation_name(mk.violations.front().kind));
  return {*std::move(mk.ewe), std::move(rule)};
}

// Repair an incoherent staggered image: walk the swap graph (a fresh
// boundary exchanged with an adjacent opposite-side boundary, both singleton
// ranks) until some image is staggered, coherent, and keeps a cyclic cut
// graph. Any two staggered images differ by such a chain, and some swap on
// every stagger-preserving chain crosses from incoherent to coherent.
ExtendedWordEquation swap_repair(const ExtendedWordEquation& cand,
                                 const BoundaryMaps& bm, int step) {
  std::set<std::string> seen{to_ewe_text(cand)};
  std::deque<ExtendedWordEquation> queue{cand};
  while (!queue.empty()) {
    const ExtendedWordEquation s = std::move(queue.front());
    queue.pop_front();
    for (std::size_t r = 0; r + 1 < s.order.size(); ++r) {
      if (s.order[r].size() != 1 || s.order[r + 1].size() != 1) continue;
      const Boundary a = s.order[r][0];
      const Boundary b = s.order[r + 1][0];
      if (a.side == b.side) continue;
      if (!bm.bp_plus.count(a) && !bm.bp_plus.count(b)) continue;
      ExtendedWordEquation t = swap(s, a, b);
      if (!seen.insert(to_ewe_text(t)).second) continue;
      if (is_staggered(t) && is_coherent(t) && is_cyclic(cut_graph(t)))
        return t;
      queue.push_back(std::move(t));
    }
  }
  throw EweError(EweError::Code::ConstructionFailed, step,
                 "no coherent staggered image with a cyclic cut graph is "
                 "reachable by swaps");
}

std::pair<ExtendedWordEquation, std::string> case2_run_step(
    const ExtendedWordEquation& x, int step) {
  auto [cand, rule] = case2_step(x, step);
  if (is_staggered(cand) && is_coherent(cand) && is_cyclic(cut_graph(cand)))
    return {std::move(cand), std::move(rule)};
  if (is_staggered(cand) && !is_coherent(cand))
    return {swap_repair(cand, boundary_maps(x), step), rule + "+swap-repair"};
  throw EweError(EweError::Code::ConstructionFailed, step,
                 std::string("constructed image fails its guarantees: ") +
                     (is_staggered(cand) ? "cut graph went acyclic"
                                         : "image is not staggered"));
}

std::pair<ExtendedWordEquation, std::string> run_step(
    const ExtendedWordEquation& cur, int step) {
  switch (nielsen_case(cur)) {
    case NielsenCase::CaseI:
      // tied heads + staggered force single-letter sides, whose cut graph is
      // acyclic — the caller's cyclic precondition rules this out
      throw EweError(EweError::Code::InternalInvariant,
                     "tied heads with a cyclic cut graph");
    case NielsenCase::CaseII:
      return case2_run_step(cur, step);
    case NielsenCase::CaseIII: {
      auto [img, rule] = case2_run_step(dual(cur), step);
      return {dual(img), "dual:" + rule};
    }
  }
  throw EweError(EweError::Code::InternalInvariant, "unreachable");
}

}  // namespace

std::vector<RunStep> nonterminating_run(const ExtendedWordEquation& e,
                                        std::size_t steps) {
  if (!is_staggered(e))
    throw EweError(EweError::Code::PreconditionFailed, "input is not staggered");
  if (!is_coherent(e))
    throw EweError(EweError::Code::PreconditionFailed, "input is not coherent");
  if (!is_cyclic(cut_graph(e)))
    throw EweError(EweError::Code::PreconditionFailed,
                   "input's cut graph is acyclic");

  std::vector<RunStep> out;
  ExtendedWordEquation cur = e;
  for (std::size_t k = 1; k <= steps; ++k) {
    auto [img, rule] = run_step(cur, static_cast<int>(k));
    RunStep st;
    st.rule = std::move(rule);
    st.staggered = is_staggered(img);
    st.coherent = is_coherent(img);
    st.cyclic = is_cyclic(cut_graph(img));
    st.ewe = std::move(img);
    if (!st.staggered)
      throw EweError(EweError::Code::ConstructionFailed, static_cast<int>(k),
                     "image is not staggered");
    if (!st.coherent)
      throw EweError(EweError::Code::ConstructionFailed, static_cast<int>(k),
                     "image is not coherent");
    if (!st.cyclic)
      throw EweError(EweError::Code::ConstructionFailed, static_cast<int>(k),
                     "image's cut graph is acyclic");
    out.push_back(std::move(st));
    cur = out.back().ewe;
  }
  return out;
}

// ---------------------------------------------------------------------------
// verdicts

Verdict analyze(const ExtendedWordEquation& e, const Budget& budget) {
  if (!is_coherent(e))
    throw EweError(EweError::Code::IncoherentInput,
                   "analysis requires a coherent equation");

  // With exactly one empty side the cut graph is edge-free but the measure
  // is undefined (no boundary cuts anything); exploration settles it as the
  // leaf it is.
  const bool one_side_empty = e.eq.u1.empty() != e.eq.u2.empty();
  const bool cyclic = is_cyclic(cut_graph(e));

  if (!cyclic && !one_side_empty) {
    const std::size_t n = e.eq.u1.size() + e.eq.u2.size();
    return {Status::Terminating,
            MeasureCertificate{measure(e), Int(1) << n}};
  }

  ExploreResult ex = explore(e, budget);
  switch (ex.outcome) {
    case ExploreOutcome::CycleFound:
      return {Status::NonTerminating, LassoWitness{*std::move(ex.lasso)}};
    case ExploreOutcome::Complete:
      return {Status::Terminating,
              ExhaustedGraph{ex.graph.states.size(), longest_run(ex.graph)}};
    case ExploreOutcome::BudgetExceeded:
      break;
  }

  if (cyclic && hereditarily_staggered(e, budget) == Hereditary::Yes) {
    try {
      return {Status::NonTerminating,
              CyclicRunPrefix{nonterminating_run(e, kRunPrefixLen)}};
    } catch (const EweError&) {
      // evidence generation failed; report the budget honestly instead
    }
  }

  return {Status::Unknown, BudgetReport{std::move(ex.budget_reason)}};
}

}  // namespace ewe
