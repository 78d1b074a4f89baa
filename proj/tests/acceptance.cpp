// Acceptance gate: ten behavioral criteria, one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "ewe/analysis.hpp"
#include "ewe/cutgraph.hpp"
#include "ewe/feasibility.hpp"
#include "ewe/json_out.hpp"
#include "ewe/oracle.hpp"
#include "ewe/transform.hpp"
#include "fixtures.hpp"

using namespace ewe;
using fx::B;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (detail.empty()) detail = what;
  }
};

template <class F>
void criterion(int idx, const std::string& name, F body) {
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& ex) {
    out.fail(std::string("unexpected exception: ") + ex.what());
  }
  std::cout << (out.ok ? "PASS" : "FAIL") << " criterion " << idx << ": "
            << name;
  if (!out.detail.empty()) std::cout << " (" << out.detail << ")";
  std::cout << "\n";
  if (!out.ok) ++failures;
}

// measure is defined when every boundary has a cut partner: two-sided
// equations and the fully empty one.
bool measurable(const ExtendedWordEquation& e) {
  return is_nontrivial(e) || (e.eq.u1.empty() && e.eq.u2.empty());
}

bool throws_incoherent(const std::function<void()>& f) {
  try {
    f();
  } catch (const EweError& err) {
    return err.code == EweError::Code::IncoherentInput;
  }
  return false;
}

}  // namespace

int main() {
  criterion(1, "successor fan of the running example", [](Outcome& out) {
    auto t0 = Clock::now();
    auto succ = successors(fx::xxy_zwz());
    double secs = seconds_since(t0);
    if (succ.size() != 3) out.fail("expected exactly 3 successors");
    std::set<ExtendedWordEquation> got;
    for (const auto& s : succ) {
      got.insert(s.ewe);
      if (!s.coherent) out.fail("a successor is flagged incoherent");
      if (s.ewe.eq != fx::xzxy_wz_equal().eq)
        out.fail("a successor changed the word equation");
    }
    // the three orders differ only in where the moved head boundary lands
    std::set<ExtendedWordEquation> want{fx::xzxy_wz_below(),
                                        fx::xzxy_wz_equal(),
                                        fx::xzxy_wz_above()};
    if (got != want) out.fail("successor orders differ from the known three");
    if (secs >= 1.0) out.fail("took longer than 1s");
    std::ostringstream d;
    d << "3 successors, all coherent, " << secs << "s";
    out.note(d.str());
  });

  criterion(2, "cut-graph edges of the running example", [](Outcome& out) {
    auto g = cut_graph(fx::xxy_zwz());
    const std::set<std::pair<Boundary, Boundary>> want{
        {B(1, 1), B(2, 3)}, {B(1, 2), B(2, 1)}, {B(1, 3), B(2, 1)},
        {B(2, 1), B(1, 2)}, {B(2, 2), B(1, 1)}, {B(2, 2), B(1, 2)},
        {B(2, 3), B(1, 1)}};
    if (g.edges != want) out.fail("edge set differs from the known seven");
    out.note("7 edges, exact match");
  });

  criterion(3, "tied-heads square: cyclic cut graph yet terminating",
            [](Outcome& out) {
    if (!is_cyclic(cut_graph(fx::xx_yy())))
      out.fail("cut graph should be cyclic");
    auto v = analyze(fx::xx_yy());
    if (v.status != Status::Terminating) out.fail("expected Terminating");
    const auto* eg = std::get_if<ExhaustedGraph>(&v.certificate);
    if (!eg) {
      out.fail("expected an exhausted-graph certificate");
    } else {
      if (eg->states != 3) out.fail("expected 3 states");
      if (eg->longest != 2) out.fail("expected longest run 2");
    }
    out.note("cyclic, exhausted graph with 3 states, longest run 2");
  });

  criterion(4, "incoherent instance yields a small certificate",
            [](Outcome& out) {
    if (coherence_witness(fx::xyz_wyv()).has_value())
      out.fail("solver should report incoherent");
    auto core = find_incoherent_core(fx::xyz_wyv(), 3);
    if (!core) {
      out.fail("no core within multiplier bound 3");
      return;
    }
    for (const Int& y : core->multipliers)
      if (y < 1 || y > 3) out.fail("multiplier outside [1,3]");
    if (!core_certifies(fx::xyz_wyv().eq, *core))
      out.fail("certificate does not check out");
    std::ostringstream d;
    d << core->covers.size() << " cover(s), certified";
    out.note(d.str());
  });

  criterion(5, "acyclic instances: exploration, run bound, descent, closure",
            [](Outcome& out) {
    auto t0 = Clock::now();
    auto all = oracle::enumerate_ewes({6, 3, true});
    std::size_t checked = 0;
    for (const auto& item : all) {
      if (!item.coherent || is_cyclic(cut_graph(item.e))) continue;
      ++checked;
      auto ex = explore(item.e);
      if (ex.outcome != ExploreOutcome::Complete) {
        out.fail("exploration did not complete on an acyclic instance");
        break;
      }
      const Int bound = Int(1)
                        << (item.e.eq.u1.size() + item.e.eq.u2.size());
      if (Int(longest_run(ex.graph)) > bound) {
        out.fail("a run exceeded two to the boundary count");
        break;
      }
      bool bad = false;
      for (const auto& ed : ex.graph.edges) {
        const auto& s = ex.graph.states.at(ed.source);
        const auto& t = ex.graph.states.at(ed.target);
        const bool sa = !is_cyclic(cut_graph(s));
        const bool ta = !is_cyclic(cut_graph(t));
        if (sa && !ta) {
          out.fail("acyclicity lost along an explored edge");
          bad = true;
          break;
        }
        if (sa && ta && measurable(s) && measurable(t) &&
            !(measure(t) < measure(s))) {
          out.fail("measure failed to decrease along an edge");
          bad = true;
          break;
        }
      }
      if (bad) break;
      for (const auto& s : successors(item.e))
        if (s.coherent && is_cyclic(cut_graph(s.ewe))) {
          out.fail("a coherent successor has a cyclic cut graph");
          bad = true;
          break;
        }
      if (bad) break;
    }
    double secs = seconds_since(t0);
    if (secs >= 300.0) out.fail("took longer than 5 minutes");
    std::ostringstream d;
    d << checked << " acyclic coherent instances, " << secs << "s";
    out.note(d.str());
  });

  criterion(6, "nontrivial coherent instances always step coherently",
            [](Outcome& out) {
    auto all = oracle::enumerate_ewes({6, 3, true});
    std::size_t checked = 0;
    for (const auto& item : all) {
      if (!item.coherent || !is_nontrivial(item.e)) continue;
      ++checked;
      auto succ = successors(item.e);
      if (std::none_of(succ.begin(), succ.end(),
                       [](const Successor& s) { return s.coherent; })) {
        out.fail("an instance has no coherent successor");
        break;
      }
      if (!coherence_witness(coherent_successor(item.e)).has_value()) {
        out.fail("coherent_successor returned an incoherent image");
        break;
      }
    }
    std::ostringstream d;
    d << checked << " instances";
    out.note(d.str());
  });

  criterion(7, "acyclic cut graph implies coherent", [](Outcome& out) {
    auto all = oracle::enumerate_ewes({6, 3, true});
    std::size_t acyclic = 0;
    for (const auto& item : all) {
      if (is_cyclic(cut_graph(item.e))) continue;
      ++acyclic;
      if (!item.coherent) {
        out.fail("an acyclic instance is incoherent");
        break;
      }
    }
    std::ostringstream d;
    d << acyclic << " acyclic instances, all coherent";
    out.note(d.str());
  });

  criterion(8, "exact solver and transform agree with brute force",
            [](Outcome& out) {
    auto t0 = Clock::now();
    auto all = oracle::enumerate_ewes({5, 5, true});
    if (all.size() != 711) out.fail("universe size changed");
    std::size_t succ_checked = 0;
    for (const auto& item : all) {
      if (item.coherent) {
        if (!oracle::brute_coherence(item.e, 8).has_value()) {
          out.fail("brute force found no witness for a coherent instance");
          break;
        }
      } else if (oracle::brute_coherence(item.e, 5).has_value()) {
        out.fail("brute force found a witness for an incoherent instance");
        break;
      }
      if (!is_nontrivial(item.e)) continue;
      // equal heads ranked apart admit no word-level step: both sides refuse
      const bool corner = item.e.eq.u1.front() == item.e.eq.u2.front() &&
                          !ord_equiv(item.e, B(1, 1), B(2, 1));
      if (corner) {
        bool t1 = false, t2 = false;
        try {
          successors(item.e);
        } catch (const EweError&) {
          t1 = true;
        }
        try {
          oracle::successors_by_filter(item.e);
        } catch (const EweError&) {
          t2 = true;
        }
        if (!t1 || !t2) out.fail("corner case accepted by one side only");
        continue;
      }
      if (!item.coherent) {
        // the transform refuses incoherent inputs; nothing to compare
        if (!throws_incoherent([&] { successors(item.e); }))
          out.fail("transform accepted an incoherent instance");
        continue;
      }
      ++succ_checked;
      std::set<ExtendedWordEquation> got;
      for (const auto& s : successors(item.e)) {
        got.insert(s.ewe);
        if (s.coherent != coherence_witness(s.ewe).has_value()) {
          out.fail("successor coherence flag disagrees with the solver");
          break;
        }
      }
      auto ref = oracle::successors_by_filter(item.e);
      if (got != std::set<ExtendedWordEquation>(ref.begin(), ref.end())) {
        out.fail("successor sets disagree");
        break;
      }
      if (!out.ok) break;
    }
    std::ostringstream d;
    d << all.size() << " instances, " << succ_checked
      << " successor comparisons, " << seconds_since(t0) << "s";
    out.note(d.str());
  });

  criterion(9, "hereditary instances: 50-step runs, never called terminating",
            [](Outcome& out) {
    auto t0 = Clock::now();
    auto all = oracle::enumerate_ewes({6, 3, true});
    std::size_t hereditary = 0;
    for (const auto& item : all) {
      if (!item.coherent || !is_staggered(item.e) ||
          !is_cyclic(cut_graph(item.e)))
        continue;
      if (hereditarily_staggered(item.e) != Hereditary::Yes) continue;
      ++hereditary;
      auto run = nonterminating_run(item.e, 50);
      if (run.size() != 50) {
        out.fail("run stopped early");
        break;
      }
      for (const auto& st : run)
        if (!st.staggered || !st.coherent || !st.cyclic) {
          out.fail("a run step failed its checks");
          break;
        }
      if (!out.ok) break;
      if (analyze(item.e).status == Status::Terminating) {
        out.fail("analyze called a hereditary instance terminating");
        break;
      }
    }
    if (hereditary == 0) out.fail("no qualifying instances found");
    std::ostringstream d;
    d << hereditary << " instances, " << seconds_since(t0) << "s";
    out.note(d.str());
  });

  criterion(10, "index bookkeeping and cover/cut laws on split steps",
            [](Outcome& out) {
    auto all = oracle::enumerate_ewes({6, 3, true});
    std::size_t split = 0;
    for (const auto& item : all) {
      if (!item.coherent || !is_nontrivial(item.e)) continue;
      const auto& e = item.e;
      if (nielsen_case(e) != NielsenCase::CaseII) continue;
      ++split;
      BoundaryMaps bm = boundary_maps(e);
      auto [u1p, u2p] = word_nielsen(e.eq.u1, e.eq.u2, NielsenCase::CaseII);
      WordEquation img{u1p, u2p};
      // surviving/fresh boundaries partition the image's boundary set
      for (int s : {1, 2})
        for (int j = 1; j <= img.len(s); ++j)
          if (bm.bp_minus.count({s, j}) + bm.bp_plus.count({s, j}) != 1)
            out.fail("image boundary not partitioned");
      // labels survive the index map, and the inverse map undoes it
      for (const Boundary& b : bm.b_minus) {
        if (label(e.eq, b) != label(img, {b.side, bm.mu.at(b)}))
          out.fail("label changed across the index map");
        if (bm.nu.at({b.side, bm.mu.at(b)}) != b.index)
          out.fail("inverse map failed to undo the index map");
      }
      // fresh boundaries carry the substituted head pair and never touch
      for (const Boundary& b : bm.bp_plus) {
        if (label(img, b) != e.eq.u2.front() ||
            label(img, {b.side, b.index + 1}) != e.eq.u1.front())
          out.fail("fresh boundary labels wrong");
        if (bm.bp_plus.count({b.side, b.index + 1}))
          out.fail("two fresh boundaries adjacent");
        if (bm.nu.at(b) != bm.nu.at({b.side, b.index + 1}))
          out.fail("fresh pair maps back to different origins");
      }
      // every cover swallows the cut partners of its covered interval
      for (int as = 1; as <= 2; ++as) {
        const int bs = 3 - as;
        for (int alo = 1; alo <= e.eq.len(as) + 1; ++alo)
          for (int ahi = alo - 1; ahi <= e.eq.len(as); ++ahi)
            for (int blo = 1; blo <= e.eq.len(bs) + 1; ++blo)
              for (int bhi = blo - 1; bhi <= e.eq.len(bs); ++bhi) {
                if (!is_cover(e, {as, alo, ahi}, {bs, blo, bhi})) continue;
                for (int j = alo; j <= ahi; ++j)
                  for (int jp = 1; jp <= e.eq.len(bs); ++jp)
                    if (cuts(e, {as, j}, {bs, jp}) &&
                        !(blo <= jp && jp <= bhi))
                      out.fail("a cut partner escaped its cover");
              }
      }
      // boundaries of a tight cover's covering interval cut back into the
      // covered interval (empty covered intervals have nothing to cut into
      // and are vacuous: the covering side collapses around the anchor)
      for (const Cover& c : enumerate_tight_covers(e)) {
        if (c.a.hi < c.a.lo) continue;
        for (int j = c.b.lo; j <= c.b.hi; ++j) {
          bool hit = false;
          for (int jp = c.a.lo; jp <= c.a.hi && !hit; ++jp)
            hit = cuts(e, {c.b.side, j}, {c.a.side, jp});
          if (!hit) out.fail("a tight cover boundary cuts nothing");
        }
      }
      if (!out.ok) break;
    }
    std::ostringstream d;
    d << split << " split instances";
    out.note(d.str());
  });

  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
