#include "ewe/cutgraph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace ewe {

bool cuts(const ExtendedWordEquation& e, Boundary a, Boundary b) {
  return a != b && ord_less(e, pred(a), b) && ord_less(e, pred(b), a);
}

bool mirrors(const ExtendedWordEquation& e, Boundary a, Boundary b) {
  if (label(e.eq, a) != label(e.eq, b)) return false;
  return !ord_equiv(e, a, b) || !ord_equiv(e, pred(a), pred(b));
}

CutGraph cut_graph(const ExtendedWordEquation& e) {
  const std::vector<Boundary> bs = all_boundaries(e.eq);
  CutGraph g;
  g.vertices.insert(bs.begin(), bs.end());
  for (const Boundary& a : bs)
    for (const Boundary& w : bs) {
      if (!cuts(e, a, w)) continue;
      for (const Boundary& c : bs)
        if (mirrors(e, w, c)) g.witnesses.try_emplace({a, c}, w);
    }
  for (const auto& [edge, w] : g.witnesses) {
    if (!cuts(e, edge.first, w) || !mirrors(e, w, edge.second))
      throw EweError(EweError::Code::InternalInvariant,
                     "recorded cut/mirror witness fails re-check");
    g.edges.insert(edge);
  }
  return g;
}

bool is_cyclic(const CutGraph& g) {
  std::map<Boundary, std::vector<Boundary>> adj;
  for (const auto& [a, c] : g.edges) adj[a].push_back(c);
  std::map<Boundary, int> color;  // 0 new, 1 on stack, 2 done
  std::function<bool(const Boundary&)> visit = [&](const Boundary& v) {
    color[v] = 1;
    for (const Boundary& u : adj[v]) {
      if (color[u] == 1) return true;
      if (color[u] == 0 && visit(u)) return true;
    }
    color[v] = 2;
    return false;
  };
  for (const Boundary& v : g.vertices)
    if (color[v] == 0 && visit(v)) return true;
  return false;
}

FecundityTable fecundity(const ExtendedWordEquation& e) {
  if (is_cyclic(cut_graph(e)))
    throw EweError(EweError::Code::CyclicCutGraph,
                   "fecundity is defined for acyclic cut graphs only");
  const std::vector<Boundary> bs = all_boundaries(e.eq);
  FecundityTable t;
  std::function<Int(const Boundary&)> f = [&](const Boundary& a) -> Int {
    if (auto it = t.values.find(a); it != t.values.end()) return it->second;
    bool cut_any = false;
    Int best = 0;
    for (const Boundary& w : bs) {
      if (!cuts(e, a, w)) continue;
      cut_any = true;
      Int sum = 0;
      for (const Boundary& c : bs)
        if (mirrors(e, w, c)) sum += f(c);
      best = std::max(best, sum);
    }
    if (!cut_any)
      throw EweError(EweError::Code::InternalInvariant,
                     "boundary with no cut partner: " + boundary_str(a));
    return t.values[a] = 1 + best;
  };
  for (const Boundary& a : bs) f(a);
  return t;
}

Int measure(const ExtendedWordEquation& e) {
  Int m = 0;
  for (const auto& [b, v] : fecundity(e).values) m += v;
  return m;
}

std::optional<PointedCycle> pointed_min_cycle(const ExtendedWordEquation& e) {
  const CutGraph g = cut_graph(e);
  std::map<Boundary, std::vector<Boundary>> adj, radj;
  for (const auto& [a, c] : g.edges) {
    adj[a].push_back(c);
    radj[c].push_back(a);
  }

  // dist[x] = length of the shortest path x -> target (BFS on reverse edges)
  auto dist_to = [&](const Boundary& target) {
    std::map<Boundary, int> dist{{target, 0}};
    std::queue<Boundary> q;
    q.push(target);
    while (!q.empty()) {
      Boundary x = q.front();
      q.pop();
      for (const Boundary& p : radj[x])
        if (!dist.count(p)) {
          dist[p] = dist[x] + 1;
          q.push(p);
        }
    }
    return dist;
  };

  int min_len = -1;
  for (const Boundary& v : g.vertices) {
    auto dist = dist_to(v);
    for (const Boundary& u : adj[v])
      if (auto it = dist.find(u); it != dist.end()) {
        int len = it->second + 1;
        if (min_len < 0 || len < min_len) min_len = len;
      }
  }
  if (min_len < 0) return std::nullopt;

  const std::vector<Boundary> bs = all_boundaries(e.eq);
  // assemble cut/mirror witnesses for the cycle; nothing may rank below v1
  std::function<bool(const std::vector<Boundary>&, size_t, std::vector<Boundary>&)>
      pick = [&](const std::vector<Boundary>& vs, size_t k,
                 std::vector<Boundary>& aux) {
        if (k == vs.size()) return true;
        const Boundary vk = vs[k];
        const Boundary vnext = vs[(k + 1) % vs.size()];
        for (const Boundary& w : bs) {
          if (ord_less(e, w, vs[0])) continue;
          if (!cuts(e, vk, w) || !mirrors(e, w, vnext)) continue;
          aux.push_back(vk);
          aux.push_back(w);
          if (pick(vs, k + 1, aux)) return true;
          aux.pop_back();
          aux.pop_back();
        }
        return false;
      };

  for (const Boundary& start : g.vertices) {
    auto dist = dist_to(start);
    std::vector<Boundary> path{start};
    std::optional<PointedCycle> found;
    std::function<bool()> grow = [&]() {
      const Boundary x = path.back();
      const int depth = static_cast<int>(path.size());
      for (const Boundary& u : adj[x]) {
        if (depth == min_len) {
          if (!(u == start)) continue;
          // candidate cycle: the start must rank lowest among its vertices
          bool ok = true;
          for (const Boundary& v : path)
            if (ord_less(e, v, start)) ok = false;
          if (!ok) continue;
          std::vector<Boundary> aux;
          if (!pick(path, 0, aux)) continue;
          PointedCycle pc;
          pc.cycle = path;
          pc.cycle.push_back(start);
          pc.auxiliary = std::move(aux);
          found = std::move(pc);
          return true;
        }
        auto it = dist.find(u);
        if (it == dist.end() || depth + it->second > min_len) continue;
        path.push_back(u);
        if (grow()) return true;
        path.pop_back();
      }
      return false;
    };
    if (grow()) return found;
  }
  throw EweError(EweError::Code::InternalInvariant,
                 "cyclic cut graph without a pointed minimum cycle");
}

std::string to_dot(const CutGraph& g) {
  std::ostringstream out;
  out << "digraph cut_graph {\n";
  for (const Boundary& v : g.vertices) out << "  \"" << boundary_str(v) << "\";\n";
  for (const auto& [a, c] : g.edges)
    out << "  \"" << boundary_str(a) << "\" -> \"" << boundary_str(c) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace ewe
