#include "ewe/transform.hpp"

#include <algorithm>
#include <functional>

#include "ewe/feasibility.hpp"

namespace ewe {

const char* case_name(NielsenCase c) {
  switch (c) {
    case NielsenCase::CaseI: return "I";
    case NielsenCase::CaseII: return "II";
    case NielsenCase::CaseIII: return "III";
  }
  return "?";
}

NielsenCase nielsen_case(const ExtendedWordEquation& e) {
  if (!is_nontrivial(e))
    throw EweError(EweError::Code::TrivialEquation,
                   "the step case needs a head boundary on each side");
  Boundary h1{1, 1}, h2{2, 1};
  if (ord_equiv(e, h1, h2)) return NielsenCase::CaseI;
  return ord_less(e, h2, h1) ? NielsenCase::CaseII : NielsenCase::CaseIII;
}

std::pair<Word, Word> word_nielsen(const Word& u1, const Word& u2, NielsenCase c) {
  if (u1.empty() || u2.empty())
    throw EweError(EweError::Code::EmptySide, "both sides must be nonempty");
  const Var h1 = u1.front(), h2 = u2.front();
  if (h1 == h2 && c != NielsenCase::CaseI)
    throw EweError(EweError::Code::WrongCase,
                   "equal head variables admit only the identify step");

  auto apply = [&](const Word& w) {
    Word out;
    out.reserve(w.size() + 2);
    for (const Var& v : w) {
      switch (c) {
        case NielsenCase::CaseI:
          out.push_back(v == h2 ? h1 : v);
          break;
        case NielsenCase::CaseII:
          if (v == h1) out.push_back(h2);
          out.push_back(v);
          break;
        case NielsenCase::CaseIII:
          if (v == h2) out.push_back(h1);
          out.push_back(v);
          break;
      }
    }
    out.erase(out.begin());  // the ⁺ strip: both images start with a common head
    return out;
  };
  return {apply(u1), apply(u2)};
}

BoundaryMaps boundary_maps(const ExtendedWordEquation& e) {
  if (nielsen_case(e) != NielsenCase::CaseII)
    throw EweError(EweError::Code::WrongCase,
                   "boundary maps describe the split step only");
  const Var h1 = e.eq.u1.front();
  auto [u1p, u2p] = word_nielsen(e.eq.u1, e.eq.u2, NielsenCase::CaseII);

  BoundaryMaps bm;
  for (int s : {1, 2}) {
    const Word& w = e.eq.side(s);
    int seen = 0;  // occurrences of the split variable up to and including j
    for (int j = 1; j <= static_cast<int>(w.size()); ++j) {
      if (w[static_cast<size_t>(j - 1)] == h1) ++seen;
      if (s == 2 && j == 1) continue;  // (2,1) is consumed by the step
      bm.b_minus.insert({s, j});
      bm.mu[{s, j}] = j + seen - 1;
      bm.bp_minus.insert({s, j + seen - 1});
    }
    const Word& wp = s == 1 ? u1p : u2p;
    seen = 0;
    for (int j = 1; j <= static_cast<int>(wp.size()); ++j) {
      if (wp[static_cast<size_t>(j - 1)] == h1) ++seen;
      bm.nu[{s, j}] = j - seen + 1;
      if (!bm.bp_minus.count({s, j})) bm.bp_plus.insert({s, j});
    }
  }
  return bm;
}

static int rank_in(const BoundaryOrder& order, Boundary b) {
  for (size_t r = 0; r < order.size(); ++r)
    for (const Boundary& x : order[r])
      if (x == b) return static_cast<int>(r);
  return -2;
}

// CaseI image order: drop the bottom class {(1,1),(2,1)} and shift indices.
static BoundaryOrder shifted_order(const BoundaryOrder& order) {
  BoundaryOrder out;
  for (size_t r = 1; r < order.size(); ++r) {
    RankClass cls;
    for (const Boundary& b : order[r]) cls.push_back({b.side, b.index - 1});
    out.push_back(std::move(cls));
  }
  return out;
}

BoundaryOrder case2_carried_order(const ExtendedWordEquation& e,
                                  const BoundaryMaps& bm) {
  BoundaryOrder base;
  for (const RankClass& cls : e.order) {
    RankClass mapped;
    for (const Boundary& b : cls)
      if (bm.b_minus.count(b)) mapped.push_back({b.side, bm.mu.at(b)});
    if (mapped.empty()) continue;
    std::sort(mapped.begin(), mapped.end());
    base.push_back(std::move(mapped));
  }
  return base;
}

// Every placement of the fresh boundaries into the carried base order.
// Each fresh (i,p) goes strictly between its same-side neighbors (i,p-1) and
// (i,p+1) — either joining a class with no side-i member or opening a new
// rank; fresh boundaries never sit consecutively on a side, so both neighbors
// are already placed when processed in ascending order.
static std::set<BoundaryOrder> case2_orders(const ExtendedWordEquation& e,
                                            const BoundaryMaps& bm) {
  const BoundaryOrder base = case2_carried_order(e, bm);
  std::vector<Boundary> fresh(bm.bp_plus.begin(), bm.bp_plus.end());
  std::set<BoundaryOrder> out;
  std::function<void(const BoundaryOrder&, size_t)> place =
      [&](const BoundaryOrder& acc, size_t idx) {
        if (idx == fresh.size()) {
          out.insert(acc);
          return;
        }
        const Boundary b = fresh[idx];
        const int lo = b.index == 1 ? -1 : rank_in(acc, {b.side, b.index - 1});
        const int hi = rank_in(acc, {b.side, b.index + 1});
        if (lo == -2 || hi == -2)
          throw EweError(EweError::Code::InternalInvariant,
                         "fresh boundary lacks placed side neighbors");
        for (int r = lo + 1; r < hi; ++r) {
          bool blocked = false;
          for (const Boundary& x : acc[static_cast<size_t>(r)])
            if (x.side == b.side) blocked = true;
          if (blocked) continue;
          BoundaryOrder next = acc;
          auto& cls = next[static_cast<size_t>(r)];
          cls.push_back(b);
          std::sort(cls.begin(), cls.end());
          place(next, idx + 1);
        }
        for (int g = lo + 1; g <= hi; ++g) {
          BoundaryOrder next = acc;
          next.insert(next.begin() + g, RankClass{b});
          place(next, idx + 1);
        }
      };
  place(base, 0);
  return out;
}

static Successor finish(Word u1, Word u2, BoundaryOrder order) {
  MakeResult mk = make_ewe(std::move(u1), std::move(u2), std::move(order));
  if (!mk.ewe)
    throw EweError(EweError::Code::InternalInvariant,
                   std::string("constructed successor failed validation: ") +
                       violation_name(mk.violations.front().kind));
  Successor s{*std::move(mk.ewe), false};
  s.coherent = coherence_witness(s.ewe).has_value();
  return s;
}

static std::vector<Successor> successors_of_coherent(const ExtendedWordEquation& e) {
  const NielsenCase c = nielsen_case(e);
  std::vector<Successor> out;
  switch (c) {
    case NielsenCase::CaseI: {
      auto [u1p, u2p] = word_nielsen(e.eq.u1, e.eq.u2, NielsenCase::CaseI);
      out.push_back(finish(u1p, u2p, shifted_order(e.order)));
      break;
    }
    case NielsenCase::CaseII: {
      auto [u1p, u2p] = word_nielsen(e.eq.u1, e.eq.u2, NielsenCase::CaseII);
      for (const BoundaryOrder& o : case2_orders(e, boundary_maps(e)))
        out.push_back(finish(u1p, u2p, o));
      break;
    }
    case NielsenCase::CaseIII: {
      const ExtendedWordEquation d = dual(e);
      auto [u1p, u2p] = word_nielsen(d.eq.u1, d.eq.u2, NielsenCase::CaseII);
      for (const BoundaryOrder& o : case2_orders(d, boundary_maps(d))) {
        ExtendedWordEquation img = require_ewe(u1p, u2p, o);
        ExtendedWordEquation back = dual(img);
        out.push_back({back, coherence_witness(back).has_value()});
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Successor& a, const Successor& b) {
                          return a.ewe == b.ewe;
                        }),
            out.end());
  return out;
}

std::vector<Successor> successors(const ExtendedWordEquation& e) {
  if (!is_nontrivial(e))
    throw EweError(EweError::Code::TrivialEquation,
                   "successors require both sides nonempty");
  if (!coherence_witness(e).has_value())
    throw EweError(EweError::Code::IncoherentInput,
                   "successors are defined on coherent inputs only");
  return successors_of_coherent(e);
}

// Rank boundaries of (u1, u2) by their prefix lengths under L.
static ExtendedWordEquation order_from_lengths(const Word& u1, const Word& u2,
                                               const LengthAssignment& L) {
  std::vector<std::pair<Int, Boundary>> pts;
  WordEquation eq{u1, u2};
  for (int s : {1, 2}) {
    Int acc = 0;
    for (int j = 1; j <= eq.len(s); ++j) {
      acc += L.lengths.at(eq.side(s)[static_cast<size_t>(j - 1)]);
      pts.push_back({acc, {s, j}});
    }
  }
  std::sort(pts.begin(), pts.end());
  BoundaryOrder order;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i == 0 || pts[i].first != pts[i - 1].first) order.push_back({});
    order.back().push_back(pts[i].second);
  }
  return require_ewe(u1, u2, order);
}

ExtendedWordEquation coherent_successor(const ExtendedWordEquation& e) {
  if (!is_nontrivial(e))
    throw EweError(EweError::Code::TrivialEquation,
                   "a successor requires both sides nonempty");
  auto L = coherence_witness(e);
  if (!L)
    throw EweError(EweError::Code::IncoherentInput,
                   "only coherent equations have coherent successors");

  switch (nielsen_case(e)) {
    case NielsenCase::CaseI: {
      auto [u1p, u2p] = word_nielsen(e.eq.u1, e.eq.u2, NielsenCase::CaseI);
      ExtendedWordEquation out = require_ewe(u1p, u2p, shifted_order(e.order));
      if (is_nontrivial(out) && !realizes_order(out, *L))
        throw EweError(EweError::Code::InternalInvariant,
                       "witness does not survive the identify step");
      return out;
    }
    case NielsenCase::CaseII: {
      auto [u1p, u2p] = word_nielsen(e.eq.u1, e.eq.u2, NielsenCase::CaseII);
      LengthAssignment Lp = *L;
      const Var h1 = e.eq.u1.front(), h2 = e.eq.u2.front();
      Lp.lengths[h1] = L->lengths.at(h1) - L->lengths.at(h2);
      if (Lp.lengths[h1] < 1)
        throw EweError(EweError::Code::InternalInvariant,
                       "split leaves a nonpositive variable length");
      return order_from_lengths(u1p, u2p, Lp);
    }
    case NielsenCase::CaseIII:
      return dual(coherent_successor(dual(e)));
  }
  throw EweError(EweError::Code::InternalInvariant, "unreachable case");
}

ExtendedWordEquation swap(const ExtendedWordEquation& e, Boundary a, Boundary b) {
  if (a.side == b.side || !(ord_adjacent(e, a, b) || ord_adjacent(e, b, a)))
    throw EweError(EweError::Code::NotAdjacent,
                   "swap needs adjacent boundaries on opposite sides");
  ExtendedWordEquation out = e;
  size_t lo = static_cast<size_t>(std::min(rank_of(e, a), rank_of(e, b)));
  std::swap(out.order[lo], out.order[lo + 1]);
  return require_ewe(out.eq.u1, out.eq.u2, out.order);
}

ExtendedWordEquation swap(const ExtendedWordEquation& e, Boundary b) {
  const int r = rank_of(e, b);
  if (r >= 0) {
    for (int rp : {r + 1, r - 1}) {  // partner above preferred
      if (rp < 0 || rp >= static_cast<int>(e.order.size())) continue;
      const RankClass& cls = e.order[static_cast<size_t>(rp)];
      if (cls.size() == 1 && cls[0].side != b.side &&
          (ord_adjacent(e, b, cls[0]) || ord_adjacent(e, cls[0], b)))
        return swap(e, b, cls[0]);
    }
  }
  throw EweError(EweError::Code::NotAdjacent,
                 "no adjacent opposite-side partner for " + boundary_str(b));
}

}  // namespace ewe
