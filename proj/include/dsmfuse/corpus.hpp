#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsmfuse/rules.hpp"
#include "dsmfuse/text.hpp"

namespace dsmfuse {

enum class RuleKind { dempster, dsm_classic, dsm_hybrid, condition_dempster, condition_dsm };

/// Which transfer policy a scenario's expectation certifies. `both` means
/// the two policies coincide on this input.
enum class PolicyTag { both, s3_join, reduced_swap };

inline const char* rule_name(RuleKind r) {
  switch (r) {
    case RuleKind::dempster: return "dempster";
    case RuleKind::dsm_classic: return "dsm-classic";
    case RuleKind::dsm_hybrid: return "dsm-hybrid";
    case RuleKind::condition_dempster: return "condition-dempster";
    case RuleKind::condition_dsm: return "condition-dsm";
  }
  return "dempster";
}

/// One fusion problem with its expected outcome: either a mass map or a
/// structured failure. `section` records the worked example's origin in the
/// counter-example literature this corpus encodes.
struct Scenario {
  std::string id;
  std::string section;
  unsigned n = 0;
  std::vector<std::string> atom_names;
  ModelSpec model;
  std::vector<MassFunction> sources;
  RuleKind rule = RuleKind::dempster;
  std::optional<Element> event;
  PolicyTag policy = PolicyTag::both;
  std::map<Element, double> expected_masses;
  std::optional<FailureKind> expected_failure;
  std::string note;
};

/// Pass iff the focal sets match exactly and every mass agrees within
/// kScenarioTolerance (spurious focals at or below noise level excepted).
inline constexpr double kScenarioTolerance = 1e-9;
inline constexpr double kFocalNoise = 1e-12;

struct ScenarioReport {
  std::string id;
  bool pass = false;
  double max_abs_error = 0.0;
  std::string detail;
};

namespace corpus_detail {

inline CombineOutcome run_rule(const Scenario& s, TransferPolicy policy) {
  switch (s.rule) {
    case RuleKind::dempster:
      return dempster_combine(s.sources);
    case RuleKind::dsm_classic: {
      CombineOutcome out;
      out.result = dsm_classic_combine(s.sources);
      return out;
    }
    case RuleKind::dsm_hybrid:
      return dsm_hybrid_combine(s.model, s.sources, policy);
    case RuleKind::condition_dempster:
      return dempster_condition(s.sources.at(0), s.event.value());
    case RuleKind::condition_dsm:
      return dsm_condition(s.sources.at(0), s.event.value(), s.model, policy);
  }
  throw Error(errc::invalid_argument, "unknown rule");
}

inline std::vector<TransferPolicy> policies_to_run(const Scenario& s,
                                                   std::optional<TransferPolicy> override_policy) {
  if (override_policy) return {*override_policy};
  switch (s.policy) {
    case PolicyTag::s3_join: return {TransferPolicy::s3_join};
    case PolicyTag::reduced_swap: return {TransferPolicy::reduced_swap};
    case PolicyTag::both: return {TransferPolicy::s3_join, TransferPolicy::reduced_swap};
  }
  return {TransferPolicy::s3_join};
}

inline void compare_masses(const Scenario& s, const MassFunction& got, ScenarioReport& report) {
  const FrameNames frame =
      s.atom_names.empty() ? FrameNames::unnamed(s.n) : FrameNames::named(s.n, s.atom_names);
  for (const auto& [e, v] : s.expected_masses) {
    const double actual = got.mass(e);
    const double delta = std::abs(actual - v);
    report.max_abs_error = std::max(report.max_abs_error, delta);
    if (actual == 0.0 && got.masses().find(e) == got.masses().end() && v > kFocalNoise) {
      report.pass = false;
      report.detail += "missing focal " + render(e, frame) + "; ";
    } else if (delta > kScenarioTolerance) {
      report.pass = false;
      report.detail += "mass mismatch on " + render(e, frame) + "; ";
    }
  }
  for (const auto& [e, v] : got.masses()) {
    if (s.expected_masses.find(e) == s.expected_masses.end() && v > kFocalNoise) {
      report.pass = false;
      report.max_abs_error = std::max(report.max_abs_error, v);
      report.detail += "unexpected focal " + render(e, frame) + "; ";
    }
  }
}

}  // namespace corpus_detail

/// Runs one scenario, under both policies when its tag requires both to
/// agree, or under the forced policy when one is given.
inline ScenarioReport run_scenario(const Scenario& s,
                                   std::optional<TransferPolicy> override_policy = {}) {
  ScenarioReport report;
  report.id = s.id;
  report.pass = true;
  for (TransferPolicy policy : corpus_detail::policies_to_run(s, override_policy)) {
    CombineOutcome outcome = corpus_detail::run_rule(s, policy);
    if (s.expected_failure) {
      if (outcome.failure != *s.expected_failure) {
        report.pass = false;
        report.detail += std::string("expected ") + failure_name(*s.expected_failure) + ", got " +
                         failure_name(outcome.failure) + "; ";
      }
      continue;
    }
    if (!outcome.ok()) {
      report.pass = false;
      report.detail += std::string("rule failed with ") + failure_name(outcome.failure) + "; ";
      continue;
    }
    corpus_detail::compare_masses(s, *outcome.result, report);
  }
  return report;
}

/// Reports for all scenarios, ordered by scenario id.
inline std::vector<ScenarioReport> run_all(std::vector<Scenario> scenarios,
                                           std::optional<TransferPolicy> override_policy = {}) {
  std::sort(scenarios.begin(), scenarios.end(),
            [](const Scenario& a, const Scenario& b) { return a.id < b.id; });
  std::vector<ScenarioReport> reports;
  reports.reserve(scenarios.size());
  for (const Scenario& s : scenarios) reports.push_back(run_scenario(s, override_policy));
  return reports;
}

namespace corpus_detail {

struct FrameBuilder {
  unsigned n;
  Element a(AtomIndex i) const { return Element::atom(n, i); }
  Element c(std::initializer_list<AtomIndex> atoms) const { return Element::conjunction(n, atoms); }
  Element u(std::initializer_list<AtomIndex> atoms) const {
    TermMask m = 0;
    for (AtomIndex i : atoms) m |= TermMask{1} << i;
    return Element::from_atom_set(n, m);
  }
};

}  // namespace corpus_detail

/// The embedded corpus: every concrete worked example of the four
/// counter-example families, one scenario per (input, rule, expectation).
inline std::vector<Scenario> builtin_scenarios() {
  using corpus_detail::FrameBuilder;
  std::vector<Scenario> out;

  // ---- Class 1, Bayesian total conflict -------------------------------
  {
    FrameBuilder f{2};
    auto sources = from_matrix({2, {f.a(0), f.a(1)}, {{1, 0}, {0, 1}}});
    out.push_back({.id = "C1.1-dempster",
                   .section = "3.1.1",
                   .n = 2,
                   .model = ModelSpec::shafer_model(2),
                   .sources = sources,
                   .rule = RuleKind::dempster,
                   .expected_failure = FailureKind::total_conflict,
                   .note = "two certain contradictory sources; 0/0"});
    out.push_back({.id = "C1.1-classic",
                   .section = "3.1.1",
                   .n = 2,
                   .model = ModelSpec::free_model(2),
                   .sources = sources,
                   .rule = RuleKind::dsm_classic,
                   .expected_masses = {{f.c({0, 1}), 1.0}},
                   .note = "the total paradox"});
    out.push_back({.id = "C1.1-hybrid",
                   .section = "3.1.1",
                   .n = 2,
                   .model = ModelSpec::shafer_model(2),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .expected_masses = {{f.u({0, 1}), 1.0}}});
  }
  {
    FrameBuilder f{4};
    auto sources = from_matrix(
        {4, {f.a(0), f.a(1), f.a(2), f.a(3)}, {{0.6, 0, 0.4, 0}, {0, 0.2, 0, 0.8}}});
    out.push_back({.id = "C1.2-dempster",
                   .section = "3.1.2",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dempster,
                   .expected_failure = FailureKind::total_conflict});
    out.push_back({.id = "C1.2-classic",
                   .section = "3.1.2",
                   .n = 4,
                   .model = ModelSpec::free_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_classic,
                   .expected_masses = {{f.c({0, 1}), 0.12},
                                       {f.c({0, 3}), 0.48},
                                       {f.c({1, 2}), 0.08},
                                       {f.c({2, 3}), 0.32}}});
    out.push_back({.id = "C1.2-hybrid",
                   .section = "3.1.2",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .expected_masses = {{f.u({0, 1}), 0.12},
                                       {f.u({0, 3}), 0.48},
                                       {f.u({1, 2}), 0.08},
                                       {f.u({2, 3}), 0.32}}});
  }
  {
    FrameBuilder f{4};
    auto sources = from_matrix({4,
                                {f.a(0), f.a(1), f.a(2), f.a(3)},
                                {{0.6, 0, 0.4, 0}, {0, 0.2, 0, 0.8}, {0, 0.3, 0, 0.7}}});
    out.push_back({.id = "C1.3-dempster",
                   .section = "3.1.3",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dempster,
                   .expected_failure = FailureKind::total_conflict});
    out.push_back({.id = "C1.3-classic",
                   .section = "3.1.3",
                   .n = 4,
                   .model = ModelSpec::free_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_classic,
                   .expected_masses = {{f.c({0, 1}), 0.036},
                                       {f.c({0, 3}), 0.336},
                                       {f.c({1, 2}), 0.024},
                                       {f.c({2, 3}), 0.224},
                                       {f.c({0, 1, 3}), 0.228},
                                       {f.c({1, 2, 3}), 0.152}}});
    out.push_back({.id = "C1.3-hybrid",
                   .section = "3.1.3",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .expected_masses = {{f.u({0, 1}), 0.036},
                                       {f.u({0, 3}), 0.336},
                                       {f.u({1, 2}), 0.024},
                                       {f.u({2, 3}), 0.224},
                                       {f.u({0, 1, 3}), 0.228},
                                       {f.u({1, 2, 3}), 0.152}}});
  }

  // ---- Class 1, general (non-Bayesian) sources ------------------------
  {
    FrameBuilder f{4};
    auto sources = from_matrix({4,
                                {f.a(0), f.a(1), f.a(2), f.a(3), f.u({0, 1})},
                                {{0.4, 0.5, 0, 0, 0.1}, {0, 0, 0.3, 0.7, 0}}});
    out.push_back({.id = "C1.5-dempster",
                   .section = "3.2.1",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dempster,
                   .expected_failure = FailureKind::total_conflict});
    out.push_back({.id = "C1.5-classic",
                   .section = "3.2.1",
                   .n = 4,
                   .model = ModelSpec::free_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_classic,
                   .expected_masses = {{f.c({0, 2}), 0.12},
                                       {f.c({0, 3}), 0.28},
                                       {f.c({1, 2}), 0.15},
                                       {f.c({1, 3}), 0.35},
                                       {meet(f.a(2), f.u({0, 1})), 0.03},
                                       {meet(f.a(3), f.u({0, 1})), 0.07}}});
    out.push_back({.id = "C1.5-hybrid",
                   .section = "3.2.1",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .expected_masses = {{f.u({0, 2}), 0.12},
                                       {f.u({0, 3}), 0.28},
                                       {f.u({1, 2}), 0.15},
                                       {f.u({1, 3}), 0.35},
                                       {f.u({0, 1, 2}), 0.03},
                                       {f.u({0, 1, 3}), 0.07}}});
  }
  {
    FrameBuilder f{4};
    auto sources = from_matrix({4,
                                {f.a(0), f.a(1), f.a(2), f.a(3), f.u({0, 1}), f.u({2, 3})},
                                {{0.4, 0.5, 0, 0, 0.1, 0},
                                 {0, 0, 0.3, 0.6, 0, 0.1},
                                 {0.8, 0, 0, 0, 0.2, 0}}});
    out.push_back({.id = "C1.6-dempster",
                   .section = "3.2.2",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dempster,
                   .expected_failure = FailureKind::total_conflict});
    out.push_back({.id = "C1.6-classic",
                   .section = "3.2.2",
                   .n = 4,
                   .model = ModelSpec::free_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_classic,
                   .expected_masses = {{f.c({0, 2}), 0.144},
                                       {f.c({0, 3}), 0.288},
                                       {f.c({1, 2}), 0.030},
                                       {f.c({1, 3}), 0.060},
                                       {f.c({0, 1, 2}), 0.120},
                                       {f.c({0, 1, 3}), 0.240},
                                       {meet(f.u({0, 1}), f.a(2)), 0.006},
                                       {meet(f.u({0, 1}), f.a(3)), 0.012},
                                       {meet(f.a(0), f.u({2, 3})), 0.048},
                                       {meet(f.c({0, 1}), f.u({2, 3})), 0.040},
                                       {meet(f.a(1), f.u({2, 3})), 0.010},
                                       {meet(f.u({0, 1}), f.u({2, 3})), 0.002}},
                   .note = "cumulated conjunctive masses"});
    out.push_back({.id = "C1.6-hybrid-swap",
                   .section = "3.2.2",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .policy = PolicyTag::reduced_swap,
                   .expected_masses = {{f.u({0, 2}), 0.144},
                                       {f.u({0, 3}), 0.288},
                                       {f.u({1, 2}), 0.030},
                                       {f.u({1, 3}), 0.060},
                                       {f.u({0, 1, 2}), 0.126},
                                       {f.u({0, 1, 3}), 0.252},
                                       {f.u({0, 2, 3}), 0.048},
                                       {f.u({1, 2, 3}), 0.010},
                                       {f.u({0, 1, 2, 3}), 0.042}},
                   .note = "holds under the reduced-swap transfer only"});
    out.push_back({.id = "C1.6-hybrid-join",
                   .section = "3.2.2",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .policy = PolicyTag::s3_join,
                   .expected_masses = {{f.u({0, 2}), 0.096},
                                       {f.u({0, 3}), 0.192},
                                       {f.u({0, 2, 3}), 0.032},
                                       {f.u({0, 1, 2}), 0.204},
                                       {f.u({0, 1, 3}), 0.408},
                                       {f.u({0, 1, 2, 3}), 0.068}},
                   .note = "literal transfer-to-join destinations for the same input"});
  }

  // ---- Class 2, high-conflict certainty forcing -----------------------
  {
    FrameBuilder f{3};
    std::vector<std::string> names{"M", "C", "T"};
    auto sources = from_matrix({3, {f.a(0), f.a(1), f.a(2)}, {{0.99, 0, 0.01}, {0, 0.99, 0.01}}});
    out.push_back({.id = "C2.Z-dempster",
                   .section = "4.1",
                   .n = 3,
                   .atom_names = names,
                   .model = ModelSpec::shafer_model(3),
                   .sources = sources,
                   .rule = RuleKind::dempster,
                   .expected_masses = {{f.a(2), 1.0}},
                   .note = "certainty forced on the hypothesis both sources nearly rule out"});
    out.push_back({.id = "C2.Z-classic",
                   .section = "4.1",
                   .n = 3,
                   .atom_names = names,
                   .model = ModelSpec::free_model(3),
                   .sources = sources,
                   .rule = RuleKind::dsm_classic,
                   .expected_masses = {{f.c({0, 1}), 0.9801},
                                       {f.c({0, 2}), 0.0099},
                                       {f.c({1, 2}), 0.0099},
                                       {f.a(2), 0.0001}}});
    out.push_back({.id = "C2.Z-hybrid",
                   .section = "4.1",
                   .n = 3,
                   .atom_names = names,
                   .model = ModelSpec::shafer_model(3),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .expected_masses = {{f.u({0, 1}), 0.9801},
                                       {f.u({0, 2}), 0.0099},
                                       {f.u({1, 2}), 0.0099},
                                       {f.a(2), 0.0001}}});
  }
  {
    FrameBuilder f{3};
    auto sources = from_matrix({3, {f.a(0), f.a(1), f.a(2)}, {{0.5, 0, 0.5}, {0, 0.5, 0.5}}});
    out.push_back({.id = "C2.E-dempster",
                   .section = "4.2",
                   .n = 3,
                   .model = ModelSpec::shafer_model(3),
                   .sources = sources,
                   .rule = RuleKind::dempster,
                   .expected_masses = {{f.a(2), 1.0}}});
    out.push_back({.id = "C2.E-classic",
                   .section = "4.2",
                   .n = 3,
                   .model = ModelSpec::free_model(3),
                   .sources = sources,
                   .rule = RuleKind::dsm_classic,
                   .expected_masses = {{f.c({0, 1}), 0.25},
                                       {f.c({0, 2}), 0.25},
                                       {f.c({1, 2}), 0.25},
                                       {f.a(2), 0.25}}});
    out.push_back({.id = "C2.E-hybrid",
                   .section = "4.2",
                   .n = 3,
                   .model = ModelSpec::shafer_model(3),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .expected_masses = {{f.u({0, 1}), 0.25},
                                       {f.u({0, 2}), 0.25},
                                       {f.u({1, 2}), 0.25},
                                       {f.a(2), 0.25}},
                   .note = "epsilon = 1/2 instance of the two-source family"});
  }
  {
    FrameBuilder f{4};
    auto sources =
        from_matrix({4, {f.a(0), f.a(1), f.a(2), f.a(3)}, {{0.7, 0, 0.1, 0.2}, {0, 0.7, 0, 0.3}}});
    out.push_back({.id = "C2.G-dempster",
                   .section = "4.3",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dempster,
                   .expected_masses = {{f.a(3), 1.0}}});
    out.push_back({.id = "C2.G-classic",
                   .section = "4.3",
                   .n = 4,
                   .model = ModelSpec::free_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_classic,
                   .expected_masses = {{f.c({0, 1}), 0.49},
                                       {f.c({0, 3}), 0.21},
                                       {f.c({1, 2}), 0.07},
                                       {f.c({1, 3}), 0.14},
                                       {f.c({2, 3}), 0.03},
                                       {f.a(3), 0.06}},
                   .note = "full matrix-derived masses; the printed worked table has a typo in "
                           "the theta1&theta4 factor and omits the theta2&theta4 product"});
    out.push_back({.id = "C2.G-hybrid",
                   .section = "4.3",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .expected_masses = {{f.u({0, 1}), 0.49},
                                       {f.u({0, 3}), 0.21},
                                       {f.u({1, 2}), 0.07},
                                       {f.u({1, 3}), 0.14},
                                       {f.u({2, 3}), 0.03},
                                       {f.a(3), 0.06}}});
  }

  // ---- Class 3, uncertainty columns -----------------------------------
  {
    FrameBuilder f{4};
    auto sources = from_matrix({4,
                                {f.a(0), f.a(1), f.a(2), f.a(3), f.u({2, 3})},
                                {{0.99, 0, 0, 0, 0.01}, {0, 0.98, 0, 0, 0.02}}});
    out.push_back({.id = "C3.1-dempster",
                   .section = "5.1",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dempster,
                   .expected_masses = {{f.u({2, 3}), 1.0}},
                   .note = "degenerates to the uncertainty, bringing no information"});
    out.push_back({.id = "C3.1-classic",
                   .section = "5.1",
                   .n = 4,
                   .model = ModelSpec::free_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_classic,
                   .expected_masses = {{f.c({0, 1}), 0.9702},
                                       {meet(f.a(0), f.u({2, 3})), 0.0198},
                                       {meet(f.a(1), f.u({2, 3})), 0.0098},
                                       {f.u({2, 3}), 0.0002}}});
    out.push_back({.id = "C3.1-hybrid",
                   .section = "5.1",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .expected_masses = {{f.u({0, 1}), 0.9702},
                                       {f.u({0, 2, 3}), 0.0198},
                                       {f.u({1, 2, 3}), 0.0098},
                                       {f.u({2, 3}), 0.0002}}});
  }
  {
    FrameBuilder f{5};
    auto sources = from_matrix({5,
                                {f.a(0), f.a(1), f.a(2), f.a(3), f.a(4), f.u({3, 4})},
                                {{0.99, 0, 0, 0, 0, 0.01},
                                 {0, 0.98, 0.01, 0, 0, 0.01},
                                 {0.01, 0.01, 0.97, 0, 0, 0.01}}});
    out.push_back({.id = "C3.2-dempster",
                   .section = "5.2",
                   .n = 5,
                   .model = ModelSpec::shafer_model(5),
                   .sources = sources,
                   .rule = RuleKind::dempster,
                   .expected_masses = {{f.u({3, 4}), 1.0}}});
    out.push_back({.id = "C3.2-classic",
                   .section = "5.2",
                   .n = 5,
                   .model = ModelSpec::free_model(5),
                   .sources = sources,
                   .rule = RuleKind::dsm_classic,
                   .expected_masses = {{f.c({0, 1}), 0.019404},
                                       {f.c({0, 2}), 0.009702},
                                       {f.c({0, 1, 2}), 0.941193},
                                       {meet(f.c({0, 2}), f.u({3, 4})), 0.009703},
                                       {meet(f.a(0), f.u({3, 4})), 0.000199},
                                       {meet(f.c({0, 1}), f.u({3, 4})), 0.009899},
                                       {meet(f.a(1), f.u({3, 4})), 0.000197},
                                       {meet(f.c({1, 2}), f.u({3, 4})), 0.009507},
                                       {meet(f.a(2), f.u({3, 4})), 0.000195},
                                       {f.u({3, 4}), 0.000001}},
                   .note = "ten conjunctive masses; the table sums to one exactly"});
    out.push_back({.id = "C3.2-hybrid",
                   .section = "5.2",
                   .n = 5,
                   .model = ModelSpec::shafer_model(5),
                   .sources = sources,
                   .rule = RuleKind::dsm_hybrid,
                   .expected_masses = {{f.u({0, 1}), 0.019404},
                                       {f.u({0, 2}), 0.009702},
                                       {f.u({0, 1, 2}), 0.941193},
                                       {f.u({0, 2, 3, 4}), 0.009703},
                                       {f.u({0, 3, 4}), 0.000199},
                                       {f.u({0, 1, 3, 4}), 0.009899},
                                       {f.u({1, 3, 4}), 0.000197},
                                       {f.u({1, 2, 3, 4}), 0.009507},
                                       {f.u({2, 3, 4}), 0.000195},
                                       {f.u({3, 4}), 0.000001}}});
  }

  // ---- Class 4, conditioning ------------------------------------------
  {
    FrameBuilder f{6};
    auto m1 = make_bba(
        6, {{f.a(0), 0.3}, {f.a(2), 0.4}, {f.u({3, 4}), 0.2}, {f.u({4, 5}), 0.1}});
    out.push_back({.id = "C4.1-dempster",
                   .section = "6.1",
                   .n = 6,
                   .model = ModelSpec::shafer_model(6),
                   .sources = {m1},
                   .rule = RuleKind::condition_dempster,
                   .event = f.a(1),
                   .expected_failure = FailureKind::total_conflict});
    out.push_back({.id = "C4.1-classic",
                   .section = "6.1",
                   .n = 6,
                   .model = ModelSpec::free_model(6),
                   .sources = {m1},
                   .rule = RuleKind::condition_dsm,
                   .event = f.a(1),
                   .expected_masses = {{f.c({0, 1}), 0.3},
                                       {f.c({1, 2}), 0.4},
                                       {meet(f.a(1), f.u({3, 4})), 0.2},
                                       {meet(f.a(1), f.u({4, 5})), 0.1}}});
    out.push_back({.id = "C4.1-hybrid",
                   .section = "6.1",
                   .n = 6,
                   .model = ModelSpec::shafer_model(6),
                   .sources = {m1},
                   .rule = RuleKind::condition_dsm,
                   .event = f.a(1),
                   .expected_masses = {{f.u({0, 1}), 0.3},
                                       {f.u({1, 2}), 0.4},
                                       {f.u({1, 3, 4}), 0.2},
                                       {f.u({1, 4, 5}), 0.1}}});
  }
  {
    FrameBuilder f{6};
    auto m1 = certain_bba(6, f.a(0));
    out.push_back({.id = "C4.2-dempster",
                   .section = "6.2",
                   .n = 6,
                   .model = ModelSpec::shafer_model(6),
                   .sources = {m1},
                   .rule = RuleKind::condition_dempster,
                   .event = f.a(1),
                   .expected_failure = FailureKind::total_conflict});
    out.push_back({.id = "C4.2-classic",
                   .section = "6.2",
                   .n = 6,
                   .model = ModelSpec::free_model(6),
                   .sources = {m1},
                   .rule = RuleKind::condition_dsm,
                   .event = f.a(1),
                   .expected_masses = {{f.c({0, 1}), 1.0}}});
    out.push_back({.id = "C4.2-hybrid",
                   .section = "6.2",
                   .n = 6,
                   .model = ModelSpec::shafer_model(6),
                   .sources = {m1},
                   .rule = RuleKind::condition_dsm,
                   .event = f.a(1),
                   .expected_masses = {{f.u({0, 1}), 1.0}}});
  }
  {
    FrameBuilder f{4};
    auto m1 = make_bba(4, {{f.a(0), 0.3}, {f.a(1), 0.7}});
    out.push_back({.id = "C4.4-dempster",
                   .section = "6.4",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = {m1},
                   .rule = RuleKind::condition_dempster,
                   .event = f.u({2, 3}),
                   .expected_failure = FailureKind::total_conflict});
    out.push_back({.id = "C4.4-classic",
                   .section = "6.4",
                   .n = 4,
                   .model = ModelSpec::free_model(4),
                   .sources = {m1},
                   .rule = RuleKind::condition_dsm,
                   .event = f.u({2, 3}),
                   .expected_masses = {{meet(f.a(0), f.u({2, 3})), 0.3},
                                       {meet(f.a(1), f.u({2, 3})), 0.7}}});
    out.push_back({.id = "C4.4-hybrid",
                   .section = "6.4",
                   .n = 4,
                   .model = ModelSpec::shafer_model(4),
                   .sources = {m1},
                   .rule = RuleKind::condition_dsm,
                   .event = f.u({2, 3}),
                   .expected_masses = {{f.u({0, 2, 3}), 0.3}, {f.u({1, 2, 3}), 0.7}}});
  }
  {
    FrameBuilder f{2};
    auto m1 = make_bba(
        2, {{f.a(0), 0.2}, {f.a(1), 0.1}, {f.c({0, 1}), 0.4}, {f.u({0, 1}), 0.3}});
    out.push_back({.id = "C4.6-dempster",
                   .section = "6.6",
                   .n = 2,
                   .model = ModelSpec::shafer_model(2),
                   .sources = {m1},
                   .rule = RuleKind::condition_dempster,
                   .event = f.a(1),
                   .expected_failure = FailureKind::paradoxical_input,
                   .note = "classical conditioning refuses a source with intersection mass"});
    out.push_back({.id = "C4.6-classic",
                   .section = "6.6",
                   .n = 2,
                   .model = ModelSpec::free_model(2),
                   .sources = {m1},
                   .rule = RuleKind::condition_dsm,
                   .event = f.a(1),
                   .expected_masses = {{f.c({0, 1}), 0.6}, {f.a(1), 0.4}}});
    out.push_back({.id = "C4.6-hybrid-join",
                   .section = "6.6",
                   .n = 2,
                   .model = ModelSpec::shafer_model(2),
                   .sources = {m1},
                   .rule = RuleKind::condition_dsm,
                   .event = f.a(1),
                   .policy = PolicyTag::s3_join,
                   .expected_masses = {{f.a(1), 0.8}, {f.u({0, 1}), 0.2}},
                   .note = "holds under the transfer-to-join reading only"});
  }

  return out;
}

// ---- Parametric generators --------------------------------------------

struct ConditionCheck {
  bool ok = true;
  std::string violation;
};

/// The class-1 side conditions on a mass matrix: every column carries a
/// zero; uncertainty columns are partial, pairwise disjoint, and each
/// non-null one has a row that is zero on the column itself and on all its
/// member singletons. Together these force the conflict to one.
inline ConditionCheck check_class1_conditions(const MassMatrix& mm) {
  const std::size_t cols = mm.labels.size();
  if (mm.rows.size() < 2) return {false, "needs at least two sources"};
  for (std::size_t c = 0; c < cols; ++c)
    for (TermMask t : mm.labels[c].terms())
      if (std::popcount(t) != 1)
        return {false, "labels must be singletons or unions of singletons"};
  for (std::size_t c = 0; c < cols; ++c) {
    bool has_zero = false;
    for (const auto& row : mm.rows)
      if (row[c] == 0.0) {
        has_zero = true;
        break;
      }
    if (!has_zero) return {false, "column " + std::to_string(c) + " contains no zero"};
  }
  std::vector<std::size_t> uncertain;
  for (std::size_t c = 0; c < cols; ++c)
    if (mm.labels[c].terms().size() >= 2) uncertain.push_back(c);
  for (std::size_t c : uncertain)
    if (mm.labels[c].atom_set() == Element::full_mask(mm.n))
      return {false, "uncertainty column " + std::to_string(c) + " is the total ignorance"};
  for (std::size_t i = 0; i < uncertain.size(); ++i)
    for (std::size_t j = i + 1; j < uncertain.size(); ++j)
      if (mm.labels[uncertain[i]].atom_set() & mm.labels[uncertain[j]].atom_set())
        return {false, "uncertainty columns overlap"};
  for (std::size_t c : uncertain) {
    bool non_null = false;
    for (const auto& row : mm.rows)
      if (row[c] > 0.0) non_null = true;
    if (!non_null) continue;
    const TermMask members = mm.labels[c].atom_set();
    bool found_row = false;
    for (const auto& row : mm.rows) {
      if (row[c] != 0.0) continue;
      bool members_zero = true;
      for (std::size_t c2 = 0; c2 < cols; ++c2) {
        const auto& terms = mm.labels[c2].terms();
        if (terms.size() == 1 && std::popcount(terms.front()) == 1 &&
            (terms.front() & members) && row[c2] != 0.0) {
          members_zero = false;
          break;
        }
      }
      if (members_zero) {
        found_row = true;
        break;
      }
    }
    if (!found_row)
      return {false, "uncertainty column " + std::to_string(c) +
                         " has no row zero on itself and its member singletons"};
  }
  return {};
}

/// Scenarios for a class-1 matrix: the classical rule must fail on total
/// conflict while the conjunctive rule yields the recorded mass map.
inline std::vector<Scenario> gen_class1(const MassMatrix& mm, const std::string& id_prefix = "G1") {
  ConditionCheck check = check_class1_conditions(mm);
  if (!check.ok) throw Error(errc::conditions_not_met, check.violation);
  auto sources = from_matrix(mm);
  std::vector<Scenario> out;
  out.push_back({.id = id_prefix + "-dempster",
                 .section = "3.1.4/3.2.3",
                 .n = mm.n,
                 .model = ModelSpec::shafer_model(mm.n),
                 .sources = sources,
                 .rule = RuleKind::dempster,
                 .expected_failure = FailureKind::total_conflict});
  out.push_back({.id = id_prefix + "-classic",
                 .section = "3.1.4/3.2.3",
                 .n = mm.n,
                 .model = ModelSpec::free_model(mm.n),
                 .sources = sources,
                 .rule = RuleKind::dsm_classic,
                 .expected_masses = dsm_classic_combine(sources).masses(),
                 .note = "recorded conjunctive result"});
  return out;
}

/// Two-source epsilon family on a frame of n + 1 atoms: source one spreads
/// eps[0..p-1] around atom 0, source two spreads eps[p..n-1] around atom 1,
/// and both put their last epsilon on the shared final atom. The classical
/// rule forces certainty on that atom; the conjunctive rule keeps its mass
/// at the product of the shared column.
inline std::vector<Scenario> gen_class2(unsigned n, unsigned p, const std::vector<double>& eps,
                                        const std::string& id_prefix = "G2") {
  if (n < 2 || p < 1 || p > n - 1)
    throw Error(errc::invalid_argument, "need n >= 2 and 1 <= p <= n-1");
  if (eps.size() != n) throw Error(errc::invalid_argument, "expected n epsilon values");
  double s1 = 0.0, s2 = 0.0;
  for (unsigned i = 0; i < n; ++i) {
    if (eps[i] <= 0.0 || eps[i] > 1.0)
      throw Error(errc::invalid_argument, "epsilon values must lie in (0, 1]");
    (i < p ? s1 : s2) += eps[i];
  }
  if (s1 > 1.0 + 1e-12 || s2 > 1.0 + 1e-12)
    throw Error(errc::invalid_argument, "epsilon group sums must not exceed 1");
  const unsigned frame = n + 1;
  detail::check_frame_size(frame);
  // eps[i] is epsilon_{i+1}; row one holds epsilons 1..p, row two p+1..n.
  std::vector<double> row1(frame, 0.0), row2(frame, 0.0);
  row1[0] = 1.0 - s1;
  for (unsigned i = 1; i + 1 <= p; ++i) row1[i + 1] = eps[i - 1];
  row1[n] = eps[p - 1];
  row2[1] = 1.0 - s2;
  for (unsigned j = p + 1; j + 1 <= n; ++j) row2[j] = eps[j - 1];
  row2[n] = eps[n - 1];

  std::vector<Element> labels;
  for (unsigned i = 0; i < frame; ++i) labels.push_back(Element::atom(frame, i));
  auto sources = from_matrix({frame, labels, {row1, row2}});

  std::map<Element, double> classic;
  for (unsigned c1 = 0; c1 < frame; ++c1) {
    if (row1[c1] == 0.0) continue;
    for (unsigned c2 = 0; c2 < frame; ++c2) {
      if (row2[c2] == 0.0) continue;
      Element dest = c1 == c2 ? Element::atom(frame, c1)
                              : Element::conjunction(frame, {c1, c2});
      classic[dest] += row1[c1] * row2[c2];
    }
  }

  std::vector<Scenario> out;
  out.push_back({.id = id_prefix + "-dempster",
                 .section = "4.2-4.4",
                 .n = frame,
                 .model = ModelSpec::shafer_model(frame),
                 .sources = sources,
                 .rule = RuleKind::dempster,
                 .expected_masses = {{Element::atom(frame, n), 1.0}},
                 .note = "forced certainty on the shared column"});
  out.push_back({.id = id_prefix + "-classic",
                 .section = "4.2-4.4",
                 .n = frame,
                 .model = ModelSpec::free_model(frame),
                 .sources = sources,
                 .rule = RuleKind::dsm_classic,
                 .expected_masses = classic,
                 .note = "shared-column mass stays at the epsilon product"});
  return out;
}

/// k-source variant of the epsilon family: one designated column is
/// all-positive, every other column carries a zero. `column` is the
/// 1-based atom number of the all-positive column.
inline std::vector<Scenario> gen_class2k(unsigned n, unsigned column,
                                         const std::vector<std::vector<double>>& rows,
                                         const std::string& id_prefix = "G2K") {
  detail::check_frame_size(n);
  if (column < 1 || column > n) throw Error(errc::invalid_argument, "column out of range");
  if (rows.size() < 2) throw Error(errc::invalid_argument, "need at least two sources");
  const unsigned j = column - 1;
  for (const auto& row : rows)
    if (row.size() != n) throw Error(errc::invalid_argument, "rows must have n entries");
  for (const auto& row : rows)
    if (row[j] <= 0.0) throw Error(errc::conditions_not_met, "designated column has a zero entry");
  for (unsigned c = 0; c < n; ++c) {
    if (c == j) continue;
    bool has_zero = false;
    for (const auto& row : rows)
      if (row[c] == 0.0) has_zero = true;
    if (!has_zero)
      throw Error(errc::conditions_not_met, "column " + std::to_string(c + 1) + " has no zero");
  }
  std::vector<Element> labels;
  for (unsigned i = 0; i < n; ++i) labels.push_back(Element::atom(n, i));
  auto sources = from_matrix({n, labels, rows});
  double product = 1.0;
  for (const auto& row : rows) product *= row[j];

  std::vector<Scenario> out;
  out.push_back({.id = id_prefix + "-dempster",
                 .section = "4.5",
                 .n = n,
                 .model = ModelSpec::shafer_model(n),
                 .sources = sources,
                 .rule = RuleKind::dempster,
                 .expected_masses = {{Element::atom(n, j), 1.0}}});
  out.push_back({.id = id_prefix + "-classic",
                 .section = "4.5",
                 .n = n,
                 .model = ModelSpec::free_model(n),
                 .sources = sources,
                 .rule = RuleKind::dsm_classic,
                 .expected_masses = dsm_classic_combine(sources).masses(),
                 .note = "designated-column mass is the column product " + std::to_string(product)});
  return out;
}

/// Uncertainty-column family: the member singleton columns are all zero and
/// only the uncertainty column is everywhere positive, so the classical rule
/// degenerates to full mass on the uncertainty.
inline std::vector<Scenario> gen_class3(unsigned n, unsigned k, const Element& uncertainty,
                                        const std::vector<double>& eps,
                                        const std::string& id_prefix = "G3") {
  detail::check_frame_size(n);
  if (uncertainty.frame_size() != n)
    throw Error(errc::frame_mismatch, "uncertainty belongs to a different frame");
  for (TermMask t : uncertainty.terms())
    if (std::popcount(t) != 1)
      throw Error(errc::conditions_not_met, "uncertainty must be a union of singletons");
  const unsigned members = static_cast<unsigned>(std::popcount(uncertainty.atom_set()));
  if (members < 2) throw Error(errc::conditions_not_met, "uncertainty must span several atoms");
  if (members >= n)
    throw Error(errc::conditions_not_met, "uncertainty must differ from the total ignorance");
  if (n - members < 2)
    throw Error(errc::conditions_not_met,
                "needs at least two singleton columns outside the uncertainty");
  if (k < 2 || eps.size() != k)
    throw Error(errc::invalid_argument, "need k >= 2 sources and one epsilon per source");
  for (double e : eps)
    if (e <= 0.0 || e >= 1.0)
      throw Error(errc::invalid_argument, "epsilon values must lie in (0, 1)");

  std::vector<unsigned> outside;
  for (unsigned i = 0; i < n; ++i)
    if (!(uncertainty.atom_set() >> i & 1u)) outside.push_back(i);
  std::vector<Element> labels;
  for (unsigned i = 0; i < n; ++i) labels.push_back(Element::atom(n, i));
  labels.push_back(uncertainty);
  std::vector<std::vector<double>> rows(k, std::vector<double>(n + 1, 0.0));
  for (unsigned r = 0; r < k; ++r) {
    rows[r][n] = eps[r];
    rows[r][outside[r % outside.size()]] = 1.0 - eps[r];
  }
  auto sources = from_matrix({n, labels, rows});

  std::vector<Scenario> out;
  out.push_back({.id = id_prefix + "-dempster",
                 .section = "5.3-5.4",
                 .n = n,
                 .model = ModelSpec::shafer_model(n),
                 .sources = sources,
                 .rule = RuleKind::dempster,
                 .expected_masses = {{uncertainty, 1.0}},
                 .note = "degenerates to the partial ignorance"});
  out.push_back({.id = id_prefix + "-classic",
                 .section = "5.3-5.4",
                 .n = n,
                 .model = ModelSpec::free_model(n),
                 .sources = sources,
                 .rule = RuleKind::dsm_classic,
                 .expected_masses = dsm_classic_combine(sources).masses(),
                 .note = "recorded conjunctive result"});
  return out;
}

/// Certainty-versus-certainty conditioning: a source certain of atom i
/// conditioned on a different atom j (1-based atom numbers). Classical
/// conditioning divides by zero; conjunctive conditioning keeps the paradox.
inline std::vector<Scenario> gen_class4(unsigned n, unsigned i, unsigned j,
                                        const std::string& id_prefix = "G4") {
  detail::check_frame_size(n);
  if (i < 1 || i > n || j < 1 || j > n) throw Error(errc::atom_out_of_range, "atom out of range");
  if (i == j) throw Error(errc::invalid_argument, "the two atoms must differ");
  const Element source_atom = Element::atom(n, i - 1);
  const Element event_atom = Element::atom(n, j - 1);
  std::vector<Scenario> out;
  out.push_back({.id = id_prefix + "-dempster",
                 .section = "6.2/6.3",
                 .n = n,
                 .model = ModelSpec::shafer_model(n),
                 .sources = {certain_bba(n, source_atom)},
                 .rule = RuleKind::condition_dempster,
                 .event = event_atom,
                 .expected_failure = FailureKind::total_conflict});
  out.push_back({.id = id_prefix + "-classic",
                 .section = "6.2/6.3",
                 .n = n,
                 .model = ModelSpec::free_model(n),
                 .sources = {certain_bba(n, source_atom)},
                 .rule = RuleKind::condition_dsm,
                 .event = event_atom,
                 .expected_masses = {{meet(source_atom, event_atom), 1.0}}});
  return out;
}

}  // namespace dsmfuse
