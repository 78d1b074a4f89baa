#include "ewe/json_out.hpp"

#include <cstdint>

namespace ewe {

using nlohmann::json;

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json envelope(const std::string& command, const std::string& normalized_input,
              json result) {
  return json{{"tool_version", kToolVersion},
              {"command", command},
              {"input_digest", fnv1a64_hex(normalized_input)},
              {"result", std::move(result)}};
}

json to_json(const ExtendedWordEquation& e) { return to_ewe_text(e); }

json to_json(const LengthAssignment& L) {
  json out = json::object();
  for (const auto& [v, len] : L.lengths) out[v] = len.str();
  return out;
}

json to_json(const CutGraph& g) {
  json vertices = json::array();
  for (const auto& v : g.vertices) vertices.push_back(boundary_str(v));
  json edges = json::array();
  for (const auto& [a, c] : g.edges)
    edges.push_back(json{{"from", boundary_str(a)},
                         {"to", boundary_str(c)},
                         {"witness", boundary_str(g.witnesses.at({a, c}))}});
  return json{{"vertices", std::move(vertices)},
              {"edges", std::move(edges)},
              {"cyclic", is_cyclic(g)}};
}

json to_json(const Lasso& l) {
  // lasso states are already canonical equation text
  return json{{"stem_states", l.stem_states},
              {"stem_choices", l.stem},
              {"cycle_states", l.cycle_states},
              {"cycle_choices", l.cycle}};
}

json to_json(const RunStep& step) {
  return json{{"ewe", to_json(step.ewe)},
              {"rule", step.rule},
              {"staggered", step.staggered},
              {"coherent", step.coherent},
              {"cyclic", step.cyclic}};
}

json to_json(const Verdict& v) {
  json cert;
  if (const auto* mc = std::get_if<MeasureCertificate>(&v.certificate)) {
    cert = json{{"type", "measure"},
                {"measure", mc->measure.str()},
                {"bound", mc->bound.str()}};
  } else if (const auto* eg = std::get_if<ExhaustedGraph>(&v.certificate)) {
    cert = json{{"type", "exhausted-graph"},
                {"states", eg->states},
                {"longest_run", eg->longest}};
  } else if (const auto* lw = std::get_if<LassoWitness>(&v.certificate)) {
    cert = json{{"type", "lasso"}, {"lasso", to_json(lw->lasso)}};
  } else if (const auto* rp = std::get_if<CyclicRunPrefix>(&v.certificate)) {
    json steps = json::array();
    for (const auto& s : rp->steps) steps.push_back(to_json(s));
    cert = json{{"type", "cyclic-run"}, {"steps", std::move(steps)}};
  } else if (const auto* br = std::get_if<BudgetReport>(&v.certificate)) {
    cert = json{{"type", "budget"}, {"reason", br->reason}};
  }
  return json{{"status", status_name(v.status)},
              {"certificate", std::move(cert)}};
}

json successors_json(const std::vector<Successor>& succ, NielsenCase c) {
  json list = json::array();
  for (const auto& s : succ)
    list.push_back(json{{"ewe", to_json(s.ewe)}, {"coherent", s.coherent}});
  return json{{"case", case_name(c)}, {"successors", std::move(list)}};
}

}  // namespace ewe
