// Command-line front end: combine or condition belief assignments from a
// scenario document, enumerate hyper-power sets, or run the built-in corpus.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsmfuse/document.hpp"

namespace {

using namespace dsmfuse;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(errc::invalid_argument, "cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* machine_status(FailureKind f) {
  switch (f) {
    case FailureKind::none: return "ok";
    case FailureKind::total_conflict: return "total-conflict";
    case FailureKind::paradoxical_input: return "paradoxical-input";
    case FailureKind::frame_mismatch: return "frame-mismatch";
    case FailureKind::vacuous_model: return "vacuous-model";
  }
  return "ok";
}

std::vector<std::pair<std::string, double>> sorted_lines(const MassFunction& m,
                                                         const FrameNames& frame) {
  std::vector<std::pair<std::string, double>> lines;
  lines.reserve(m.masses().size());
  for (const auto& [e, v] : m.masses()) lines.emplace_back(render(e, frame), v);
  std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return lines;
}

int print_outcome(const CombineOutcome& outcome, const FrameNames& frame, bool machine) {
  if (machine) {
    nlohmann::ordered_json out;
    out["status"] = machine_status(outcome.failure);
    if (outcome.conflict) out["conflict"] = *outcome.conflict;
    if (outcome.ok()) {
      out["masses"] = nlohmann::ordered_json::object();
      for (const auto& [expr, v] : sorted_lines(*outcome.result, frame)) out["masses"][expr] = v;
    }
    std::cout << out.dump() << "\n";
    return outcome.ok() ? 0 : 2;
  }
  if (!outcome.ok()) {
    if (outcome.failure == FailureKind::total_conflict)
      std::printf("TOTAL_CONFLICT k=%.6f\n", outcome.conflict.value_or(1.0));
    else
      std::printf("%s\n", failure_name(outcome.failure));
    return 2;
  }
  for (const auto& [expr, v] : sorted_lines(*outcome.result, frame))
    std::printf("%s %.6f\n", expr.c_str(), v);
  return 0;
}

int cmd_combine(const std::string& input, bool machine, std::optional<TransferPolicy> policy,
                bool conditioning) {
  const ScenarioDocument doc = parse_document(read_input(input));
  const TransferPolicy effective = policy.value_or(doc.policy);
  CombineOutcome outcome;
  if (conditioning) {
    if (doc.rule != RuleKind::condition_dempster && doc.rule != RuleKind::condition_dsm)
      throw Error(errc::invalid_document, "condition expects rule condition-dempster or condition-dsm");
    if (!doc.event) throw Error(errc::invalid_document, "condition needs an event expression");
    if (doc.event->is_empty())
      throw Error(errc::invalid_document, "conditioning event must be non-empty");
    if (doc.sources.size() != 1)
      throw Error(errc::invalid_document, "conditioning expects exactly one source");
    outcome = doc.rule == RuleKind::condition_dempster
                  ? dempster_condition(doc.sources[0], *doc.event)
                  : dsm_condition(doc.sources[0], *doc.event, doc.model, effective);
  } else {
    if (doc.sources.size() < 2)
      throw Error(errc::invalid_document, "combination expects at least two sources");
    switch (doc.rule) {
      case RuleKind::dempster:
        outcome = dempster_combine(doc.sources);
        break;
      case RuleKind::dsm_classic:
        outcome.result = dsm_classic_combine(doc.sources);
        break;
      case RuleKind::dsm_hybrid:
        outcome = dsm_hybrid_combine(doc.model, doc.sources, effective);
        break;
      default:
        throw Error(errc::invalid_document, "combine expects rule dempster, dsm-classic or dsm-hybrid");
    }
  }
  return print_outcome(outcome, doc.frame, machine);
}

int cmd_enumerate(unsigned n, bool machine) {
  const std::vector<Element> elements = enumerate_hyperpowerset(n, kHardEnumerationCap);
  const FrameNames frame = FrameNames::unnamed(n);
  if (machine) {
    nlohmann::ordered_json out;
    out["count"] = elements.size();
    out["elements"] = nlohmann::ordered_json::array();
    for (const Element& e : elements) out["elements"].push_back(render(e, frame));
    std::cout << out.dump() << "\n";
    return 0;
  }
  for (const Element& e : elements) std::printf("%s\n", render(e, frame).c_str());
  std::printf("count %zu\n", elements.size());
  return 0;
}

int cmd_corpus(const std::string& filter, bool machine, std::optional<TransferPolicy> policy) {
  std::vector<Scenario> scenarios = builtin_scenarios();
  if (!filter.empty()) {
    std::erase_if(scenarios,
                  [&](const Scenario& s) { return s.id.compare(0, filter.size(), filter) != 0; });
    if (scenarios.empty())
      std::cerr << "warning: no scenarios match filter '" << filter << "'\n";
  }
  const std::vector<ScenarioReport> reports = run_all(std::move(scenarios), policy);
  std::size_t passed = 0;
  for (const ScenarioReport& r : reports)
    if (r.pass) ++passed;
  if (machine) {
    nlohmann::ordered_json out;
    out["reports"] = nlohmann::ordered_json::array();
    for (const ScenarioReport& r : reports) {
      nlohmann::ordered_json jr;
      jr["id"] = r.id;
      jr["pass"] = r.pass;
      jr["max_abs_error"] = r.max_abs_error;
      if (!r.detail.empty()) jr["detail"] = r.detail;
      out["reports"].push_back(std::move(jr));
    }
    out["passed"] = passed;
    out["total"] = reports.size();
    std::cout << out.dump() << "\n";
  } else {
    for (const ScenarioReport& r : reports) {
      if (r.pass)
        std::printf("%s PASS\n", r.id.c_str());
      else
        std::printf("%s FAIL max_err=%.3e %s\n", r.id.c_str(), r.max_abs_error, r.detail.c_str());
    }
    std::printf("passed %zu/%zu\n", passed, reports.size());
  }
  return passed == reports.size() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"belief fusion over hyper-power sets"};
  app.require_subcommand(1);

  std::string input;
  std::string format = "table";
  std::string policy_name;
  std::string filter;
  unsigned enum_n = 0;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "machine"}));
  };
  auto add_policy = [&](CLI::App* cmd) {
    cmd->add_option("--policy", policy_name, "hybrid transfer policy")
        ->check(CLI::IsMember({"s3-join", "reduced-swap"}));
  };

  CLI::App* combine = app.add_subcommand("combine", "combine the document's sources");
  combine->add_option("--input", input, "scenario document (default: standard input)");
  add_format(combine);
  add_policy(combine);

  CLI::App* condition = app.add_subcommand("condition", "condition the document's source on its event");
  condition->add_option("--input", input, "scenario document (default: standard input)");
  add_format(condition);
  add_policy(condition);

  CLI::App* enumerate = app.add_subcommand("enumerate", "list the hyper-power set of a small frame");
  enumerate->add_option("n", enum_n, "frame size")->required();
  add_format(enumerate);

  CLI::App* corpus = app.add_subcommand("corpus", "run the built-in scenario corpus");
  corpus->add_option("--filter", filter, "scenario id prefix");
  add_format(corpus);
  add_policy(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const bool machine = format == "machine";
  std::optional<dsmfuse::TransferPolicy> policy;
  if (policy_name == "s3-join") policy = dsmfuse::TransferPolicy::s3_join;
  if (policy_name == "reduced-swap") policy = dsmfuse::TransferPolicy::reduced_swap;

  try {
    if (combine->parsed()) return cmd_combine(input, machine, policy, false);
    if (condition->parsed()) return cmd_combine(input, machine, policy, true);
    if (enumerate->parsed()) return cmd_enumerate(enum_n, machine);
    if (corpus->parsed()) return cmd_corpus(filter, machine, policy);
  } catch (const dsmfuse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
