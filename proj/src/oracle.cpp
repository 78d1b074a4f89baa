#include "ewe/oracle.hpp"

#include <map>

namespace ewe::oracle {

namespace {

// own rank lookup — the oracle does not lean on the production order helpers
std::map<Boundary, int> rank_map(const ExtendedWordEquation& e) {
  std::map<Boundary, int> rk;
  for (size_t r = 0; r < e.order.size(); ++r)
    for (Boundary b : e.order[r]) rk[b] = static_cast<int>(r);
  return rk;
}

}  // namespace

std::vector<BoundaryOrder> enumerate_boundary_orders(const Word& u1, const Word& u2) {
  const int m = static_cast<int>(u1.size());
  const int n = static_cast<int>(u2.size());
  std::vector<BoundaryOrder> out;

  if (m == 0 || n == 0) {
    // no cross-side classes are possible, so the single valid order is the
    // positional one on the nonempty side (empty order when both are empty)
    BoundaryOrder o;
    int s = m == 0 ? 2 : 1;
    for (int j = 1; j <= (m == 0 ? n : m); ++j) o.push_back({Boundary{s, j}});
    out.push_back(std::move(o));
    return out;
  }

  BoundaryOrder acc;
  // building bottom-up; r1/r2 = boundaries not yet placed per side
  auto rec = [&](auto&& self, int r1, int r2) -> void {
    if (r1 == 0 && r2 == 0) {
      out.push_back(acc);
      return;
    }
    Boundary next1{1, m - r1 + 1}, next2{2, n - r2 + 1};
    if (r1 >= 2) {  // placing (1,m) alone would strand it below the top class
      acc.push_back({next1});
      self(self, r1 - 1, r2);
      acc.pop_back();
    }
    if (r2 >= 2) {
      acc.push_back({next2});
      self(self, r1, r2 - 1);
      acc.pop_back();
    }
    if ((r1 >= 2 && r2 >= 2) || (r1 == 1 && r2 == 1)) {
      acc.push_back({next1, next2});
      self(self, r1 - 1, r2 - 1);
      acc.pop_back();
    }
  };
  rec(rec, m, n);
  return out;
}

std::optional<LengthAssignment> brute_coherence(const ExtendedWordEquation& e, int max_len) {
  std::vector<Var> vars;
  for (const Word* w : {&e.eq.u1, &e.eq.u2})
    for (const Var& v : *w)
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);

  auto rk = rank_map(e);
  auto realizes = [&](const std::map<Var, int>& L) {
    // (rank, prefix value) for every boundary, virtual bottoms included
    std::vector<std::pair<int, long long>> pts;
    for (int s = 1; s <= 2; ++s) {
      const Word& w = s == 1 ? e.eq.u1 : e.eq.u2;
      long long sum = 0;
      pts.emplace_back(-1, 0);
      for (int j = 1; j <= static_cast<int>(w.size()); ++j) {
        sum += L.at(w[static_cast<size_t>(j - 1)]);
        pts.emplace_back(rk.at(Boundary{s, j}), sum);
      }
    }
    for (auto& [ra, va] : pts)
      for (auto& [rb, vb] : pts)
        if ((ra < rb) != (va < vb)) return false;
    return true;
  };

  std::map<Var, int> L;
  for (const Var& v : vars) L[v] = 1;
  for (;;) {
    if (realizes(L)) {
      LengthAssignment out;
      for (auto& [v, len] : L) out.lengths[v] = len;
      return out;
    }
    // odometer over [1, max_len]^vars
    size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (L[vars[i]] < max_len) {
        ++L[vars[i]];
        break;
      }
      L[vars[i]] = 1;
    }
    if (i == vars.size()) return std::nullopt;
  }
}

std::vector<EnumeratedEwe> enumerate_ewes(const EnumerationSpec& spec) {
  std::vector<EnumeratedEwe> out;
  const int lo_total = spec.sides_nonempty ? 2 : 0;

  for (int total = lo_total; total <= spec.max_total_length; ++total) {
    const int lo_m = spec.sides_nonempty ? 1 : 0;
    const int hi_m = spec.sides_nonempty ? total - 1 : total;
    for (int m = lo_m; m <= hi_m; ++m) {
      // restricted-growth strings over the concatenation = canonical namings
      std::vector<int> rgs(static_cast<size_t>(total), 0);
      auto emit = [&]() {
        Word u1, u2;
        for (int i = 0; i < total; ++i) {
          Var v(1, static_cast<char>('A' + rgs[static_cast<size_t>(i)]));
          (i < m ? u1 : u2).push_back(v);
        }
        for (BoundaryOrder& o : enumerate_boundary_orders(u1, u2)) {
          ExtendedWordEquation e{WordEquation{u1, u2}, std::move(o)};
          bool coherent = coherence_witness(e).has_value();
          out.push_back(EnumeratedEwe{std::move(e), coherent});
        }
      };
      auto rec = [&](auto&& self, int i, int used) -> void {
        if (i == total) {
          emit();
          return;
        }
        int cap = std::min(used, spec.max_variables - 1);  // new symbol allowed if room
        for (int v = 0; v <= cap; ++v) {
          rgs[static_cast<size_t>(i)] = v;
          self(self, i + 1, std::max(used, v + 1));
        }
      };
      if (total == 0)
        emit();
      else
        rec(rec, 0, 0);
    }
  }
  return out;
}

namespace {

ExtendedWordEquation flip(const ExtendedWordEquation& e) {
  ExtendedWordEquation d{WordEquation{e.eq.u2, e.eq.u1}, {}};
  for (const auto& cls : e.order) {
    RankClass c;
    for (Boundary b : cls) c.push_back(Boundary{3 - b.side, b.index});
    std::sort(c.begin(), c.end());
    d.order.push_back(std::move(c));
  }
  return d;
}

// replace every occurrence of `from` in `w` by `to` followed by `from`
Word prepend_at(const Word& w, const Var& from, const Var& to) {
  Word out;
  for (const Var& v : w) {
    if (v == from) out.push_back(to);
    out.push_back(v);
  }
  return out;
}

std::vector<ExtendedWordEquation> filter_case2(const ExtendedWordEquation& e) {
  const Var head1 = e.eq.u1.front(), head2 = e.eq.u2.front();
  Word t1 = prepend_at(e.eq.u1, head1, head2);
  Word t2 = prepend_at(e.eq.u2, head1, head2);
  Word u1p(t1.begin() + 1, t1.end());
  Word u2p(t2.begin() + 1, t2.end());

  // new position of old boundary (s,j): j + #occurrences of head1 in
  // U_{s,1..j} - 1; the old (2,1) lands on the stripped symbol and dies
  std::map<Boundary, Boundary> old_of;  // surviving new boundary -> source
  for (int s = 1; s <= 2; ++s) {
    const Word& w = e.eq.side(s);
    int cnt = 0;
    for (int j = 1; j <= static_cast<int>(w.size()); ++j) {
      if (w[static_cast<size_t>(j - 1)] == head1) ++cnt;
      if (s == 2 && j == 1) continue;
      old_of[Boundary{s, j + cnt - 1}] = Boundary{s, j};
    }
  }

  auto rk = rank_map(e);
  std::vector<ExtendedWordEquation> out;
  for (BoundaryOrder& o : enumerate_boundary_orders(u1p, u2p)) {
    ExtendedWordEquation cand{WordEquation{u1p, u2p}, std::move(o)};
    auto rkp = rank_map(cand);
    bool ok = true;
    for (auto& [a, olda] : old_of)
      for (auto& [b, oldb] : old_of)
        if ((rkp.at(a) < rkp.at(b)) != (rk.at(olda) < rk.at(oldb))) {
          ok = false;
          goto done;
        }
  done:
    if (ok) out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace

std::vector<ExtendedWordEquation> successors_by_filter(const ExtendedWordEquation& e) {
  if (e.eq.u1.empty() || e.eq.u2.empty())
    throw EweError(EweError::Code::TrivialEquation, "no transformation applies");
  auto rk = rank_map(e);
  const int r1 = rk.at(Boundary{1, 1}), r2 = rk.at(Boundary{2, 1});
  const Var head1 = e.eq.u1.front(), head2 = e.eq.u2.front();
  if (head1 == head2 && r1 != r2)
    throw EweError(EweError::Code::IncoherentInput,
                   "equal heads ranked apart admit no length assignment");

  if (r1 == r2) {
    // heads identified: substitute head2 -> head1 everywhere, strip both
    Word u1p, u2p;
    for (int s = 1; s <= 2; ++s) {
      const Word& w = e.eq.side(s);
      Word& dst = s == 1 ? u1p : u2p;
      for (size_t j = 1; j < w.size(); ++j) dst.push_back(w[j] == head2 ? head1 : w[j]);
    }
    std::vector<ExtendedWordEquation> out;
    for (BoundaryOrder& o : enumerate_boundary_orders(u1p, u2p)) {
      ExtendedWordEquation cand{WordEquation{u1p, u2p}, std::move(o)};
      auto rkp = rank_map(cand);
      bool ok = true;
      for (auto& [a, ra] : rkp)
        for (auto& [b, rb] : rkp)
          if ((ra < rb) != (rk.at(Boundary{a.side, a.index + 1}) <
                            rk.at(Boundary{b.side, b.index + 1}))) {
            ok = false;
            goto done;
          }
    done:
      if (ok) out.push_back(std::move(cand));
    }
    return out;
  }

  if (r1 > r2) return filter_case2(e);

  // mirror case: flip sides, run the filter, flip back
  std::vector<ExtendedWordEquation> out;
  for (ExtendedWordEquation& d : filter_case2(flip(e))) out.push_back(flip(d));
  return out;
}

}  // namespace ewe::oracle
