#include "ewe/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace ewe {

const char* violation_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::MissingBoundary: return "MissingBoundary";
    case Violation::Kind::DuplicateBoundary: return "DuplicateBoundary";
    case Violation::Kind::UnknownBoundary: return "UnknownBoundary";
    case Violation::Kind::SideOrderViolated: return "SideOrderViolated";
    case Violation::Kind::TopBoundariesNotEquivalent: return "TopBoundariesNotEquivalent";
    case Violation::Kind::EmptySideWithNonemptyRanks: return "EmptySideWithNonemptyRanks";
  }
  return "?";
}

const char* error_name(EweError::Code c) {
  switch (c) {
    case EweError::Code::TrivialEquation: return "TrivialEquation";
    case EweError::Code::EmptySide: return "EmptySide";
    case EweError::Code::WrongCase: return "WrongCase";
    case EweError::Code::NotAdjacent: return "NotAdjacent";
    case EweError::Code::IncoherentInput: return "IncoherentInput";
    case EweError::Code::CyclicCutGraph: return "CyclicCutGraph";
    case EweError::Code::BoundExhausted: return "BoundExhausted";
    case EweError::Code::PreconditionFailed: return "PreconditionFailed";
    case EweError::Code::ConstructionFailed: return "ConstructionFailed";
    case EweError::Code::InternalInvariant: return "InternalInvariant";
  }
  return "?";
}

EweError::EweError(Code c, const std::string& msg)
    : std::runtime_error(std::string(error_name(c)) + ": " + msg), code(c) {}

EweError::EweError(Code c, int at_step, const std::string& msg)
    : std::runtime_error(std::string(error_name(c)) + " at step " + std::to_string(at_step) +
                         ": " + msg),
      code(c),
      step(at_step) {}

std::string boundary_str(Boundary b) {
  return "(" + std::to_string(b.side) + "," + std::to_string(b.index) + ")";
}

// ---------------------------------------------------------------------------
// validation

MakeResult make_ewe(Word u1, Word u2, BoundaryOrder ranks) {
  MakeResult res;
  auto violate = [&](Violation::Kind k, const std::string& d) {
    res.violations.push_back(Violation{k, d});
  };

  // normalize: drop empty classes, sort members
  BoundaryOrder norm;
  for (auto& cls : ranks) {
    if (cls.empty()) continue;
    RankClass c = cls;
    std::sort(c.begin(), c.end());
    norm.push_back(std::move(c));
  }

  const int m = static_cast<int>(u1.size());
  const int n = static_cast<int>(u2.size());
  auto side_len = [&](int s) { return s == 1 ? m : n; };

  // first-mention rank per boundary; duplicate detection
  std::map<Boundary, int> rank;
  std::set<Boundary> dup_reported;
  for (size_t r = 0; r < norm.size(); ++r) {
    for (Boundary b : norm[r]) {
      bool side_ok = b.side == 1 || b.side == 2;
      bool in_range = side_ok && b.index >= 1 && b.index <= side_len(b.side);
      if (!in_range) {
        if (side_ok && side_len(b.side) == 0 && b.index >= 1)
          violate(Violation::Kind::EmptySideWithNonemptyRanks,
                  boundary_str(b) + " listed but side " + std::to_string(b.side) + " is empty");
        else
          violate(Violation::Kind::UnknownBoundary,
                  boundary_str(b) + " is not a boundary of this equation");
        continue;
      }
      auto [it, fresh] = rank.emplace(b, static_cast<int>(r));
      if (!fresh && dup_reported.insert(b).second)
        violate(Violation::Kind::DuplicateBoundary, boundary_str(b) + " listed more than once");
    }
  }

  // coverage
  for (int s = 1; s <= 2; ++s)
    for (int j = 1; j <= side_len(s); ++j)
      if (!rank.count(Boundary{s, j}))
        violate(Violation::Kind::MissingBoundary, boundary_str({s, j}) + " not ranked");

  // each side's positional order must be strictly respected
  for (int s = 1; s <= 2; ++s)
    for (int j = 1; j + 1 <= side_len(s); ++j) {
      auto a = rank.find(Boundary{s, j});
      auto b = rank.find(Boundary{s, j + 1});
      if (a != rank.end() && b != rank.end() && a->second >= b->second)
        violate(Violation::Kind::SideOrderViolated,
                boundary_str({s, j}) + " must rank strictly below " + boundary_str({s, j + 1}));
    }

  // interleaving: the two tops share the top rank (vacuous if a side is empty)
  if (m > 0 && n > 0) {
    auto a = rank.find(Boundary{1, m});
    auto b = rank.find(Boundary{2, n});
    if (a != rank.end() && b != rank.end() && a->second != b->second)
      violate(Violation::Kind::TopBoundariesNotEquivalent,
              boundary_str({1, m}) + " and " + boundary_str({2, n}) + " must share the top rank");
  }

  if (res.violations.empty())
    res.ewe = ExtendedWordEquation{WordEquation{std::move(u1), std::move(u2)}, std::move(norm)};
  return res;
}

ExtendedWordEquation require_ewe(Word u1, Word u2, BoundaryOrder ranks) {
  MakeResult r = make_ewe(std::move(u1), std::move(u2), std::move(ranks));
  if (!r.ewe) {
    std::string msg = "invalid extended word equation:";
    for (auto& v : r.violations) msg += " [" + std::string(violation_name(v.kind)) + "] " + v.detail;
    throw EweError(EweError::Code::InternalInvariant, msg);
  }
  return *std::move(r.ewe);
}

// ---------------------------------------------------------------------------
// order queries

int rank_of(const ExtendedWordEquation& e, Boundary b) {
  if (b.virt()) return -1;
  for (size_t r = 0; r < e.order.size(); ++r)
    for (Boundary x : e.order[r])
      if (x == b) return static_cast<int>(r);
  throw EweError(EweError::Code::InternalInvariant, boundary_str(b) + " not in the order");
}

bool ord_less(const ExtendedWordEquation& e, Boundary a, Boundary b) {
  return rank_of(e, a) < rank_of(e, b);
}
bool ord_equiv(const ExtendedWordEquation& e, Boundary a, Boundary b) {
  return rank_of(e, a) == rank_of(e, b);
}
bool ord_leq(const ExtendedWordEquation& e, Boundary a, Boundary b) {
  return rank_of(e, a) <= rank_of(e, b);
}

bool ord_consecutive(const ExtendedWordEquation& e, Boundary a, Boundary b) {
  return rank_of(e, b) == rank_of(e, a) + 1;
}

bool ord_adjacent(const ExtendedWordEquation& e, Boundary a, Boundary b) {
  if (a.virt() || b.virt()) return false;
  int ra = rank_of(e, a), rb = rank_of(e, b);
  return rb == ra + 1 && e.order[static_cast<size_t>(ra)].size() == 1 &&
         e.order[static_cast<size_t>(rb)].size() == 1;
}

RankTable::RankTable(const ExtendedWordEquation& e)
    : r1(e.eq.u1.size(), -2), r2(e.eq.u2.size(), -2) {
  for (size_t r = 0; r < e.order.size(); ++r)
    for (Boundary b : e.order[r]) {
      auto& v = b.side == 1 ? r1 : r2;
      v[static_cast<size_t>(b.index - 1)] = static_cast<int>(r);
    }
}

// ---------------------------------------------------------------------------
// basic structure

std::vector<Boundary> all_boundaries(const WordEquation& eq) {
  std::vector<Boundary> out;
  for (int s = 1; s <= 2; ++s)
    for (int j = 1; j <= eq.len(s); ++j) out.push_back(Boundary{s, j});
  return out;
}

const Var& label(const WordEquation& eq, Boundary b) {
  return eq.side(b.side)[static_cast<size_t>(b.index - 1)];
}

ExtendedWordEquation dual(const ExtendedWordEquation& e) {
  ExtendedWordEquation d;
  d.eq.u1 = e.eq.u2;
  d.eq.u2 = e.eq.u1;
  d.order.reserve(e.order.size());
  for (const auto& cls : e.order) {
    RankClass c;
    c.reserve(cls.size());
    for (Boundary b : cls) c.push_back(Boundary{3 - b.side, b.index});
    std::sort(c.begin(), c.end());
    d.order.push_back(std::move(c));
  }
  return d;
}

bool is_staggered(const ExtendedWordEquation& e) {
  const int m = e.eq.len(1), n = e.eq.len(2);
  for (const auto& cls : e.order) {
    if (cls.size() < 2) continue;
    // classes hold at most one boundary per side, so size 2 means cross-side
    if (!(cls[0] == Boundary{1, m} && cls[1] == Boundary{2, n})) return false;
  }
  return true;
}

bool is_nontrivial(const ExtendedWordEquation& e) {
  return !e.eq.u1.empty() && !e.eq.u2.empty();
}

static Var canonical_name(size_t idx) {
  if (idx < 26) return std::string(1, static_cast<char>('A' + idx));
  return "V" + std::to_string(idx);
}

ExtendedWordEquation canonical_form(const ExtendedWordEquation& e) {
  std::map<Var, Var> ren;
  ExtendedWordEquation out = e;
  for (Word* w : {&out.eq.u1, &out.eq.u2})
    for (Var& v : *w) {
      auto it = ren.find(v);
      if (it == ren.end()) it = ren.emplace(v, canonical_name(ren.size())).first;
      v = it->second;
    }
  return out;
}

std::string canonical_key(const ExtendedWordEquation& e) {
  return to_ewe_text(canonical_form(e));
}

// ---------------------------------------------------------------------------
// text format

std::string to_ewe_text(const ExtendedWordEquation& e) {
  std::ostringstream os;
  os << "eq:";
  for (const Var& v : e.eq.u1) os << ' ' << v;
  os << " =";
  for (const Var& v : e.eq.u2) os << ' ' << v;
  os << "\norder:";
  for (size_t r = 0; r < e.order.size(); ++r) {
    os << (r == 0 ? " " : " < ");
    for (size_t k = 0; k < e.order[r].size(); ++k) {
      if (k) os << '~';
      os << boundary_str(e.order[r][k]);
    }
  }
  os << '\n';
  return os.str();
}

namespace {

bool valid_name(const std::string& t) {
  if (t.empty() || !std::isalpha(static_cast<unsigned char>(t[0]))) return false;
  for (char c : t)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

struct OrderScanner {
  const std::string& s;
  int line;
  size_t pos = 0;
  std::vector<ParseError>& errors;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  int col() const { return static_cast<int>(pos) + 1; }
  void fail(const std::string& msg) { errors.push_back(ParseError{line, col(), msg}); }

  bool expect(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    fail(std::string("expected '") + c + "'");
    return false;
  }

  std::optional<int> number() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) {
      fail("expected a number");
      return std::nullopt;
    }
    return std::stoi(s.substr(start, pos - start));
  }

  std::optional<Boundary> boundary() {
    if (!expect('(')) return std::nullopt;
    auto side = number();
    if (!side || !expect(',')) return std::nullopt;
    auto index = number();
    if (!index || !expect(')')) return std::nullopt;
    return Boundary{*side, *index};
  }
};

}  // namespace

ParseResult parse_ewe_text(const std::string& text) {
  ParseResult res;

  // collect significant lines with their numbers
  std::vector<std::pair<int, std::string>> lines;
  {
    std::istringstream is(text);
    std::string raw;
    int ln = 0;
    while (std::getline(is, raw)) {
      ++ln;
      if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
      size_t a = raw.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      size_t b = raw.find_last_not_of(" \t\r");
      lines.emplace_back(ln, raw.substr(0, b + 1));  // keep columns: trim right only
      (void)a;
    }
  }

  if (lines.size() < 2) {
    res.errors.push_back(ParseError{lines.empty() ? 1 : lines[0].first, 1,
                                    "expected an 'eq:' line followed by an 'order:' line"});
    return res;
  }
  for (size_t i = 2; i < lines.size(); ++i)
    res.errors.push_back(ParseError{lines[i].first, 1, "unexpected extra line"});

  // eq line
  Word u1, u2;
  {
    auto [ln, s] = lines[0];
    size_t start = s.find_first_not_of(" \t");
    if (s.compare(start, 3, "eq:") != 0) {
      res.errors.push_back(ParseError{ln, static_cast<int>(start) + 1, "expected 'eq:'"});
      return res;
    }
    std::istringstream ts(s.substr(start + 3));
    std::string tok;
    bool seen_eq = false;
    size_t scan = start + 3;
    while (ts >> tok) {
      size_t at = s.find(tok, scan);
      scan = at + tok.size();
      if (tok == "=") {
        if (seen_eq)
          res.errors.push_back(ParseError{ln, static_cast<int>(at) + 1, "more than one '='"});
        seen_eq = true;
      } else if (!valid_name(tok)) {
        res.errors.push_back(
            ParseError{ln, static_cast<int>(at) + 1, "bad variable name '" + tok + "'"});
      } else {
        (seen_eq ? u2 : u1).push_back(tok);
      }
    }
    if (!seen_eq)
      res.errors.push_back(ParseError{ln, static_cast<int>(s.size()) + 1, "missing '='"});
  }

  // order line
  BoundaryOrder ranks;
  {
    auto [ln, s] = lines[1];
    size_t start = s.find_first_not_of(" \t");
    if (s.compare(start, 6, "order:") != 0) {
      res.errors.push_back(ParseError{ln, static_cast<int>(start) + 1, "expected 'order:'"});
      return res;
    }
    OrderScanner sc{s, ln, start + 6, res.errors};
    if (!sc.at_end()) {
      for (;;) {
        RankClass cls;
        for (;;) {
          auto b = sc.boundary();
          if (!b) return res;
          cls.push_back(*b);
          sc.skip_ws();
          if (sc.pos < s.size() && s[sc.pos] == '~') {
            ++sc.pos;
            continue;
          }
          break;
        }
        ranks.push_back(std::move(cls));
        if (sc.at_end()) break;
        if (!sc.expect('<')) return res;
        if (sc.at_end()) {
          sc.fail("dangling '<'");
          return res;
        }
      }
    }
  }

  if (!res.errors.empty()) return res;

  MakeResult mk = make_ewe(std::move(u1), std::move(u2), std::move(ranks));
  res.violations = std::move(mk.violations);
  res.ewe = std::move(mk.ewe);
  return res;
}

}  // namespace ewe
