#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ewe/analysis.hpp"
#include "ewe/cutgraph.hpp"
#include "ewe/json_out.hpp"
#include "ewe/transform.hpp"

using namespace ewe;

namespace {

// exit codes shared by the subcommands
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIncoherent = 2;  // check: valid but incoherent; others: precondition
constexpr int kNonTerminating = 3;
constexpr int kUnknown = 4;  // analyze: no verdict; run: construction failed

struct Palette {
  const char* bold = "";
  const char* green = "";
  const char* red = "";
  const char* yellow = "";
  const char* reset = "";
};

Palette palette() {
  bool on = isatty(1);
  if (const char* env = std::getenv("EWE_COLOR")) on = std::string(env) == "1";
  if (!on) return {};
  return {"\033[1m", "\033[32m", "\033[31m", "\033[33m", "\033[0m"};
}

struct Input {
  ExtendedWordEquation e;
  std::string normalized;  // digest source: canonical key, rename-invariant
};

std::optional<Input> load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return std::nullopt;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  auto r = parse_ewe_text(ss.str());
  if (!r.ok()) {
    for (const auto& pe : r.errors)
      std::cerr << path << ":" << pe.line << ":" << pe.col << ": error: "
                << pe.message << "\n";
    for (const auto& v : r.violations)
      std::cerr << path << ": error: " << violation_name(v.kind) << ": "
                << v.detail << "\n";
    return std::nullopt;
  }
  return Input{*r.ewe, canonical_key(*r.ewe)};
}

std::string indent(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out += "  " + line + "\n";
  return out;
}

void emit_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

const char* yesno(bool b) { return b ? "yes" : "no"; }

int cmd_check(const Input& in, bool as_json) {
  auto witness = coherence_witness(in.e);
  if (as_json) {
    nlohmann::json result{{"valid", true},
                          {"staggered", is_staggered(in.e)},
                          {"nontrivial", is_nontrivial(in.e)},
                          {"coherent", witness.has_value()}};
    result["witness"] = witness ? to_json(*witness) : nlohmann::json();
    emit_json(envelope("check", in.normalized, result));
  } else {
    auto p = palette();
    std::cout << "valid: yes\n"
              << "staggered: " << yesno(is_staggered(in.e)) << "\n"
              << "nontrivial: " << yesno(is_nontrivial(in.e)) << "\n";
    if (witness) {
      std::cout << "coherent: " << p.green << "yes" << p.reset << "\n"
                << "witness:";
      for (const auto& [v, len] : witness->lengths)
        std::cout << " " << v << "=" << len;
      std::cout << "\n";
    } else {
      std::cout << "coherent: " << p.red << "no" << p.reset << "\n";
    }
  }
  return witness ? kOk : kIncoherent;
}

int cmd_successors(const Input& in, bool coherent_only, bool as_json) {
  if (!is_nontrivial(in.e)) {
    if (as_json) {
      nlohmann::json result{{"case", nullptr},
                            {"successors", nlohmann::json::array()},
                            {"note", "no transformation applies"}};
      emit_json(envelope("successors", in.normalized, result));
    } else {
      std::cout << "no transformation applies (a side is empty)\n";
    }
    return kOk;
  }
  if (!coherence_witness(in.e)) {
    std::cerr << "error: input is incoherent\n";
    return kIncoherent;
  }
  auto succ = successors(in.e);
  if (coherent_only)
    std::erase_if(succ, [](const Successor& s) { return !s.coherent; });
  const NielsenCase c = nielsen_case(in.e);
  if (as_json) {
    emit_json(envelope("successors", in.normalized, successors_json(succ, c)));
    return kOk;
  }
  auto p = palette();
  std::size_t coherent = 0;
  for (const auto& s : succ) coherent += s.coherent;
  std::cout << "case " << case_name(c) << ": " << succ.size()
            << " successors (" << coherent << " coherent)\n";
  for (std::size_t i = 0; i < succ.size(); ++i) {
    std::cout << "[" << i << "] "
              << (succ[i].coherent ? p.green : p.red)
              << (succ[i].coherent ? "coherent" : "incoherent") << p.reset
              << "\n"
              << indent(to_ewe_text(succ[i].ewe));
  }
  return kOk;
}

int cmd_cutgraph(const Input& in, const std::string& format) {
  auto g = cut_graph(in.e);
  if (format == "json")
    emit_json(envelope("cutgraph", in.normalized, to_json(g)));
  else
    std::cout << to_dot(g);
  return kOk;
}

void print_verdict(const Verdict& v) {
  auto p = palette();
  const char* color = v.status == Status::Terminating    ? p.green
                      : v.status == Status::NonTerminating ? p.red
                                                           : p.yellow;
  std::cout << "verdict: " << color << p.bold << status_name(v.status)
            << p.reset << "\n";
  if (const auto* mc = std::get_if<MeasureCertificate>(&v.certificate)) {
    std::cout << "certificate: acyclic cut graph, measure " << mc->measure
              << " (every run is shorter than " << mc->bound << " steps)\n";
  } else if (const auto* eg = std::get_if<ExhaustedGraph>(&v.certificate)) {
    std::cout << "certificate: explored the full graph — " << eg->states
              << " states, longest run " << eg->longest << "\n";
  } else if (const auto* lw = std::get_if<LassoWitness>(&v.certificate)) {
    std::cout << "certificate: lasso (" << lw->lasso.stem.size()
              << "-step stem, " << lw->lasso.cycle.size() << "-step cycle)\n";
    for (std::size_t i = 0; i < lw->lasso.stem.size(); ++i)
      std::cout << "stem state, take successor " << lw->lasso.stem[i] << ":\n"
                << indent(lw->lasso.stem_states[i]);
    for (std::size_t i = 0; i < lw->lasso.cycle.size(); ++i)
      std::cout << "cycle state, take successor " << lw->lasso.cycle[i]
                << ":\n"
                << indent(lw->lasso.cycle_states[i]);
  } else if (const auto* rp = std::get_if<CyclicRunPrefix>(&v.certificate)) {
    std::cout << "certificate: " << rp->steps.size()
              << "-step run prefix, every image staggered, coherent, and "
                 "cyclic\n";
    for (std::size_t i = 0; i < rp->steps.size(); ++i)
      std::cout << "  step " << i + 1 << " [" << rp->steps[i].rule << "]\n";
  } else if (const auto* br = std::get_if<BudgetReport>(&v.certificate)) {
    std::cout << "certificate: none — " << br->reason << "\n";
  }
}

int cmd_analyze(const Input& in, std::size_t max_states, std::size_t max_len,
                bool as_json) {
  Verdict v;
  try {
    v = analyze(in.e, Budget{max_states, max_len});
  } catch (const EweError& err) {
    if (err.code == EweError::Code::IncoherentInput) {
      std::cerr << "error: " << err.what() << "\n";
      return kIncoherent;
    }
    throw;
  }
  if (as_json)
    emit_json(envelope("analyze", in.normalized, to_json(v)));
  else
    print_verdict(v);
  switch (v.status) {
    case Status::Terminating:
      return kOk;
    case Status::NonTerminating:
      return kNonTerminating;
    case Status::Unknown:
      return kUnknown;
  }
  return kUnknown;
}

int cmd_run(const Input& in, std::size_t steps, bool as_json) {
  std::vector<RunStep> run;
  try {
    run = nonterminating_run(in.e, steps);
  } catch (const EweError& err) {
    if (err.code == EweError::Code::PreconditionFailed) {
      std::cerr << "error: " << err.what() << "\n";
      return kIncoherent;
    }
    if (err.code == EweError::Code::ConstructionFailed) {
      std::cerr << "error: step " << err.step << ": " << err.what() << "\n";
      return kUnknown;
    }
    throw;
  }
  if (as_json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& st : run) list.push_back(to_json(st));
    emit_json(envelope("run", in.normalized,
                       nlohmann::json{{"steps", std::move(list)}}));
    return kOk;
  }
  auto p = palette();
  for (std::size_t i = 0; i < run.size(); ++i) {
    std::cout << "step " << i + 1 << " [" << run[i].rule << "] " << p.green
              << "checks ok" << p.reset << "\n"
              << indent(to_ewe_text(run[i].ewe));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"termination analysis for word equations under the "
               "length-ordered transformation procedure"};
  app.require_subcommand(1);

  std::string path;
  bool as_json = false;
  bool coherent_only = false;
  std::string format = "dot";
  std::size_t max_states = 10000;
  std::size_t max_len = 0;
  std::size_t steps = 16;

  auto* check = app.add_subcommand(
      "check", "validate an equation file and test coherence");
  check->add_option("file", path, "input .ewe file")->required();
  check->add_flag("--json", as_json, "emit a JSON envelope");

  auto* succ = app.add_subcommand(
      "successors", "list the transformation images with coherence flags");
  succ->add_option("file", path, "input .ewe file")->required();
  succ->add_flag("--coherent-only", coherent_only,
                 "drop incoherent successors from the listing");
  succ->add_flag("--json", as_json, "emit a JSON envelope");

  auto* cut = app.add_subcommand("cutgraph", "emit the input's cut graph");
  cut->add_option("file", path, "input .ewe file")->required();
  cut->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"dot", "json"}))
      ->capture_default_str();

  auto* ana = app.add_subcommand(
      "analyze", "decide termination of the procedure on the input");
  ana->add_option("file", path, "input .ewe file")->required();
  ana->add_option("--max-states", max_states,
                  "state budget for exhaustive exploration")
      ->capture_default_str();
  ana->add_option("--max-len", max_len,
                  "side-length budget (0 = four times the input)")
      ->capture_default_str();
  ana->add_flag("--json", as_json, "emit a JSON envelope");

  auto* run = app.add_subcommand(
      "run", "construct a non-terminating run prefix step by step");
  run->add_option("file", path, "input .ewe file")->required();
  run->add_option("--steps", steps, "number of steps to construct")
      ->capture_default_str();
  run->add_flag("--json", as_json, "emit a JSON envelope");

  CLI11_PARSE(app, argc, argv);

  auto in = load(path);
  if (!in) return kInvalid;

  try {
    if (check->parsed()) return cmd_check(*in, as_json);
    if (succ->parsed()) return cmd_successors(*in, coherent_only, as_json);
    if (cut->parsed()) return cmd_cutgraph(*in, format);
    if (ana->parsed()) return cmd_analyze(*in, max_states, max_len, as_json);
    if (run->parsed()) return cmd_run(*in, steps, as_json);
  } catch (const EweError& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 70;  // EX_SOFTWARE
  }
  return kInvalid;
}
