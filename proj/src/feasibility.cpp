#include "ewe/feasibility.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>

namespace ewe {

using Rat = boost::multiprecision::cpp_rational;

void MonoidTerm::add(const Var& v, const Int& k) {
  if (k == 0) return;
  Int& c = coeff[v];
  c += k;
  if (c == 0) coeff.erase(v);
}

Int MonoidTerm::count(const Var& v) const {
  auto it = coeff.find(v);
  return it == coeff.end() ? Int(0) : it->second;
}

bool MonoidTerm::submultiset_of(const MonoidTerm& other) const {
  for (auto& [v, c] : coeff)
    if (c > other.count(v)) return false;
  return true;
}

Int LengthAssignment::eval(const MonoidTerm& t) const {
  Int sum = 0;
  for (auto& [v, c] : t.coeff) sum += c * lengths.at(v);
  return sum;
}

// ---------------------------------------------------------------------------
// exact simplex: maximize c.x subject to A.x <= b, x >= 0, with b >= 0 so the
// slack basis is feasible and no phase 1 is needed. Bland's rule everywhere.

namespace {

struct Simplex {
  int m, n;                            // constraints, structurals
  std::vector<std::vector<Rat>> tab;   // m+1 rows, n+m+1 cols: [A | I | b]
  std::vector<int> basis;              // size m, column of the basic variable

  Simplex(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
          const std::vector<Rat>& c)
      : m(static_cast<int>(A.size())), n(static_cast<int>(c.size())) {
    tab.assign(m + 1, std::vector<Rat>(n + m + 1, Rat(0)));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) tab[i][j] = A[i][j];
      tab[i][n + i] = 1;
      tab[i][n + m] = b[i];
    }
    for (int j = 0; j < n; ++j) tab[m][j] = -c[j];
    basis.resize(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
  }

  void pivot(int row, int col) {
    Rat p = tab[row][col];
    for (auto& x : tab[row]) x /= p;
    for (int i = 0; i <= m; ++i) {
      if (i == row || tab[i][col] == 0) continue;
      Rat f = tab[i][col];
      for (int j = 0; j <= n + m; ++j) tab[i][j] -= f * tab[row][j];
    }
    basis[row] = col;
  }

  // returns the optimum; writes the structural solution
  Rat maximize(std::vector<Rat>& x) {
    for (;;) {
      int col = -1;
      for (int j = 0; j < n + m; ++j)
        if (tab[m][j] < 0) { col = j; break; }  // Bland: smallest index
      if (col < 0) break;
      int row = -1;
      Rat best = 0;
      for (int i = 0; i < m; ++i) {
        if (tab[i][col] <= 0) continue;
        Rat ratio = tab[i][n + m] / tab[i][col];
        if (row < 0 || ratio < best || (ratio == best && basis[i] < basis[row])) {
          row = i;
          best = ratio;
        }
      }
      if (row < 0)
        throw EweError(EweError::Code::InternalInvariant,
                       "unbounded objective in a bounded feasibility program");
      pivot(row, col);
    }
    x.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) x[basis[i]] = tab[i][n + m];
    return tab[m][n + m];
  }
};

}  // namespace

std::optional<LengthAssignment> solve_positive(const InequalitySystem& sys,
                                               const std::set<Var>& universe) {
  // Structurals: one per variable, plus eps shared by all strictness and
  // positivity gaps. Maximize eps; solvable over positive integers iff the
  // optimum is positive (then exactly 1, by homogeneity and the eps <= 1 cap).
  std::vector<Var> vars(universe.begin(), universe.end());
  std::map<Var, int> col;
  for (size_t i = 0; i < vars.size(); ++i) col[vars[i]] = static_cast<int>(i);
  const int nv = static_cast<int>(vars.size());
  const int eps = nv;

  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  auto row_from = [&](const MonoidTerm& lhs, const MonoidTerm& rhs, bool with_eps) {
    std::vector<Rat> row(nv + 1, Rat(0));
    for (auto& [v, c] : lhs.coeff) row[col.at(v)] += Rat(c);
    for (auto& [v, c] : rhs.coeff) row[col.at(v)] -= Rat(c);
    if (with_eps) row[eps] = 1;
    A.push_back(std::move(row));
    b.push_back(0);
  };
  for (auto& [l, r] : sys.weak) row_from(l, r, false);
  for (auto& [l, r] : sys.strict) row_from(l, r, true);
  for (int i = 0; i < nv; ++i) {  // x_i >= eps
    std::vector<Rat> row(nv + 1, Rat(0));
    row[i] = -1;
    row[eps] = 1;
    A.push_back(std::move(row));
    b.push_back(0);
  }
  {
    std::vector<Rat> row(nv + 1, Rat(0));  // eps <= 1
    row[eps] = 1;
    A.push_back(std::move(row));
    b.push_back(1);
  }
  std::vector<Rat> c(nv + 1, Rat(0));
  c[eps] = 1;

  std::vector<Rat> x;
  Rat opt = Simplex(A, b, c).maximize(x);
  if (opt <= 0) return std::nullopt;

  Int scale = 1;
  for (int i = 0; i < nv; ++i)
    scale = boost::multiprecision::lcm(scale, Int(boost::multiprecision::denominator(x[i])));
  LengthAssignment L;
  for (int i = 0; i < nv; ++i) {
    Rat scaled = x[i] * Rat(scale);
    L.lengths[vars[i]] = Int(boost::multiprecision::numerator(scaled));
  }
  return L;
}

// ---------------------------------------------------------------------------
// coherence

MonoidTerm prefix_term(const WordEquation& eq, int s, int j) {
  MonoidTerm t;
  for (int i = 1; i <= j; ++i) t.add(label(eq, {s, i}));
  return t;
}

MonoidTerm interval_term(const WordEquation& eq, int s, int j, int k) {
  MonoidTerm t;
  for (int i = j; i <= k; ++i) t.add(label(eq, {s, i}));
  return t;
}

std::optional<LengthAssignment> coherence_witness(const ExtendedWordEquation& e) {
  std::set<Var> universe;
  for (const Word* w : {&e.eq.u1, &e.eq.u2})
    for (const Var& v : *w) universe.insert(v);

  InequalitySystem sys;
  auto prefix = [&](Boundary b) { return prefix_term(e.eq, b.side, b.index); };
  for (const auto& cls : e.order)
    for (size_t k = 1; k < cls.size(); ++k) {
      sys.weak.emplace_back(prefix(cls[0]), prefix(cls[k]));
      sys.weak.emplace_back(prefix(cls[k]), prefix(cls[0]));
    }
  for (size_t r = 0; r + 1 < e.order.size(); ++r)
    sys.strict.emplace_back(prefix(e.order[r][0]), prefix(e.order[r + 1][0]));
  // ranks sit above the virtual bottom automatically: prefixes are nonempty
  // sums of positive lengths

  auto L = solve_positive(sys, universe);
  if (L && !realizes_order(e, *L))
    throw EweError(EweError::Code::InternalInvariant,
                   "witness fails the pairwise order check; constraint generation is broken");
  return L;
}

bool realizes_order(const ExtendedWordEquation& e, const LengthAssignment& L) {
  // prefix value and rank for every boundary, virtual (s,0) included
  std::vector<std::pair<int, Int>> points;  // (rank, value)
  RankTable rt(e);
  for (int s = 1; s <= 2; ++s) {
    Int sum = 0;
    points.emplace_back(-1, sum);
    for (int j = 1; j <= e.eq.len(s); ++j) {
      sum += L.lengths.at(label(e.eq, {s, j}));
      points.emplace_back(rt.rank({s, j}), sum);
    }
  }
  for (auto& [ra, va] : points)
    for (auto& [rb, vb] : points)
      if ((ra < rb) != (va < vb)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// covers

bool interval_valid(const WordEquation& eq, const Interval& iv) {
  if (iv.side != 1 && iv.side != 2) return false;
  return iv.lo >= 1 && iv.lo <= eq.len(iv.side) + 1 && iv.hi >= iv.lo - 1 &&
         iv.hi <= eq.len(iv.side);
}

bool is_cover(const ExtendedWordEquation& e, const Interval& a, const Interval& b,
              bool* strict) {
  if (a.side == b.side) return false;
  if (!interval_valid(e.eq, a) || !interval_valid(e.eq, b)) return false;
  RankTable rt(e);
  int left_b = rt.rank({b.side, b.lo - 1});
  int left_a = rt.rank({a.side, a.lo - 1});
  int right_a = rt.rank({a.side, a.hi});
  int right_b = rt.rank({b.side, b.hi});
  if (left_b > left_a || right_a > right_b) return false;
  if (strict) *strict = left_b < left_a || right_a < right_b;
  return true;
}

std::vector<Cover> enumerate_tight_covers(const ExtendedWordEquation& e) {
  std::vector<Cover> out;
  for (int sa = 1; sa <= 2; ++sa) {
    int sb = 3 - sa;
    for (int alo = 1; alo <= e.eq.len(sa) + 1; ++alo)
      for (int ahi = alo - 1; ahi <= e.eq.len(sa); ++ahi)
        for (int blo = 1; blo <= e.eq.len(sb) + 1; ++blo)
          for (int bhi = blo - 1; bhi <= e.eq.len(sb); ++bhi) {
            Interval a{sa, alo, ahi}, b{sb, blo, bhi};
            bool strict = false;
            if (!is_cover(e, a, b, &strict)) continue;
            Interval shrink_left{sb, blo + 1, bhi};
            Interval shrink_right{sb, blo, bhi - 1};
            if (interval_valid(e.eq, shrink_left) && is_cover(e, a, shrink_left)) continue;
            if (interval_valid(e.eq, shrink_right) && is_cover(e, a, shrink_right)) continue;
            out.push_back(Cover{a, b, strict});
          }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool core_certifies(const WordEquation& eq, const IncoherentCore& core) {
  if (core.covers.size() != core.multipliers.size() || core.covers.empty()) return false;
  MonoidTerm covering, covered;
  bool strict_engaged = false;
  for (size_t i = 0; i < core.covers.size(); ++i) {
    const Cover& c = core.covers[i];
    const Int& y = core.multipliers[i];
    if (y < 1) return false;
    MonoidTerm ta = interval_term(eq, c.a.side, c.a.lo, c.a.hi);
    MonoidTerm tb = interval_term(eq, c.b.side, c.b.lo, c.b.hi);
    for (auto& [v, k] : ta.coeff) covered.add(v, k * y);
    for (auto& [v, k] : tb.coeff) covering.add(v, k * y);
    if (c.strict) strict_engaged = true;
  }
  if (!covering.submultiset_of(covered)) return false;
  return strict_engaged || covering != covered;
}

std::optional<IncoherentCore> find_incoherent_core(const ExtendedWordEquation& e,
                                                   const Int& coefficient_bound) {
  if (coherence_witness(e)) return std::nullopt;

  std::vector<Cover> tight = enumerate_tight_covers(e);
  const size_t n = tight.size();

  // Certificates are typically tiny, so deepen on the multiplier total. A hard
  // cap keeps the diagnostic search from running away on adversarial inputs.
  constexpr long kMaxChecks = 5'000'000;
  long checks = 0;
  std::vector<Int> y(n, 0);
  std::optional<IncoherentCore> found;

  auto leaf_check = [&]() -> bool {
    ++checks;
    IncoherentCore core;
    for (size_t i = 0; i < n; ++i)
      if (y[i] > 0) {
        core.covers.push_back(tight[i]);
        core.multipliers.push_back(y[i]);
      }
    if (core.covers.empty()) return false;
    if (!core_certifies(e.eq, core)) return false;
    found = std::move(core);
    return true;
  };

  // assign y[i..) summing to exactly `left`
  auto dfs = [&](auto&& self, size_t i, const Int& left) -> bool {
    if (checks > kMaxChecks) return false;
    if (i == n) return left == 0 && leaf_check();
    Int cap = std::min(coefficient_bound, left);
    // remaining covers can absorb at most (n - i - 1) * coefficient_bound
    for (Int v = 0; v <= cap; ++v) {
      if (left - v > coefficient_bound * Int(n - i - 1)) continue;
      y[i] = v;
      if (self(self, i + 1, left - v)) return true;
    }
    y[i] = 0;
    return false;
  };

  Int total_cap = coefficient_bound * Int(n);
  for (Int total = 1; total <= total_cap; ++total) {
    if (dfs(dfs, 0, total)) return found;
    if (checks > kMaxChecks) break;
  }
  throw EweError(EweError::Code::BoundExhausted,
                 "incoherent, but no certificate with multipliers <= " +
                     coefficient_bound.str() + " over " + std::to_string(n) + " tight covers");
}

}  // namespace ewe
