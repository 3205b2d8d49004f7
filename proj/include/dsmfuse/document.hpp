#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsmfuse/corpus.hpp"
#include "dsmfuse/text.hpp"

namespace dsmfuse {

/// A fusion problem as read from a scenario document: frame, model, sources,
/// rule selection, optional conditioning event and transfer policy.
struct ScenarioDocument {
  FrameNames frame;
  ModelSpec model;
  std::vector<MassFunction> sources;
  RuleKind rule = RuleKind::dempster;
  std::optional<Element> event;
  TransferPolicy policy = TransferPolicy::s3_join;
};

namespace doc_detail {

using json = nlohmann::json;

inline void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                                  const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known)
      throw Error(errc::invalid_document, "unknown field '" + key + "' in " + where);
  }
}

inline RuleKind parse_rule(const std::string& s) {
  if (s == "dempster") return RuleKind::dempster;
  if (s == "dsm-classic") return RuleKind::dsm_classic;
  if (s == "dsm-hybrid") return RuleKind::dsm_hybrid;
  if (s == "condition-dempster") return RuleKind::condition_dempster;
  if (s == "condition-dsm") return RuleKind::condition_dsm;
  throw Error(errc::invalid_document, "unknown rule '" + s + "'");
}

inline TransferPolicy parse_policy(const std::string& s) {
  if (s == "s3-join") return TransferPolicy::s3_join;
  if (s == "reduced-swap") return TransferPolicy::reduced_swap;
  throw Error(errc::invalid_document, "unknown policy '" + s + "'");
}

}  // namespace doc_detail

/// Parses the JSON scenario document format. Unknown fields are rejected.
inline ScenarioDocument parse_document(const std::string& text) {
  using doc_detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(errc::invalid_document, std::string("document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(errc::invalid_document, "document must be a JSON object");
  doc_detail::reject_unknown_fields(doc, {"frame", "model", "sources", "rule", "event", "policy"},
                                    "document");
  for (const char* required : {"frame", "model", "sources", "rule"})
    if (!doc.contains(required))
      throw Error(errc::invalid_document, std::string("missing field '") + required + "'");

  const json& jframe = doc["frame"];
  if (!jframe.is_object()) throw Error(errc::invalid_document, "frame must be an object");
  doc_detail::reject_unknown_fields(jframe, {"size", "atoms"}, "frame");
  if (!jframe.contains("size") || !jframe["size"].is_number_unsigned())
    throw Error(errc::invalid_document, "frame.size must be a positive integer");
  const unsigned n = jframe["size"].get<unsigned>();
  FrameNames frame = FrameNames::unnamed(n);
  if (jframe.contains("atoms")) {
    if (!jframe["atoms"].is_array())
      throw Error(errc::invalid_document, "frame.atoms must be an array of names");
    std::vector<std::string> names;
    for (const json& a : jframe["atoms"]) {
      if (!a.is_string()) throw Error(errc::invalid_document, "atom names must be strings");
      names.push_back(a.get<std::string>());
    }
    frame = FrameNames::named(n, std::move(names));
  }

  const json& jmodel = doc["model"];
  std::optional<ModelSpec> model;
  if (jmodel.is_string()) {
    const std::string kind = jmodel.get<std::string>();
    if (kind == "free")
      model = ModelSpec::free_model(n);
    else if (kind == "shafer")
      model = ModelSpec::shafer_model(n);
    else
      throw Error(errc::invalid_document, "model must be \"free\", \"shafer\" or a constraint object");
  } else if (jmodel.is_object()) {
    doc_detail::reject_unknown_fields(jmodel, {"constraints"}, "model");
    if (!jmodel.contains("constraints") || !jmodel["constraints"].is_array())
      throw Error(errc::invalid_document, "model.constraints must be an array of expressions");
    std::vector<Element> constraints;
    for (const json& c : jmodel["constraints"]) {
      if (!c.is_string()) throw Error(errc::invalid_document, "constraints must be strings");
      constraints.push_back(parse_expression(c.get<std::string>(), frame));
    }
    model = ModelSpec::hybrid_model(n, std::move(constraints));
  } else {
    throw Error(errc::invalid_document, "model must be \"free\", \"shafer\" or a constraint object");
  }

  const json& jsources = doc["sources"];
  if (!jsources.is_array() || jsources.empty())
    throw Error(errc::invalid_document, "sources must be a non-empty array");
  std::vector<MassFunction> sources;
  for (const json& s : jsources) {
    if (!s.is_object())
      throw Error(errc::invalid_document, "each source must map expressions to masses");
    std::vector<std::pair<Element, double>> assignments;
    for (const auto& [expr, value] : s.items()) {
      if (!value.is_number())
        throw Error(errc::invalid_document, "mass for '" + expr + "' must be a number");
      assignments.emplace_back(parse_expression(expr, frame), value.get<double>());
    }
    sources.push_back(make_bba(n, assignments));
  }

  if (!doc["rule"].is_string()) throw Error(errc::invalid_document, "rule must be a string");
  RuleKind rule = doc_detail::parse_rule(doc["rule"].get<std::string>());

  std::optional<Element> event;
  if (doc.contains("event")) {
    if (!doc["event"].is_string()) throw Error(errc::invalid_document, "event must be a string");
    event = parse_expression(doc["event"].get<std::string>(), frame);
  }

  TransferPolicy policy = TransferPolicy::s3_join;
  if (doc.contains("policy")) {
    if (!doc["policy"].is_string()) throw Error(errc::invalid_document, "policy must be a string");
    policy = doc_detail::parse_policy(doc["policy"].get<std::string>());
  }

  return ScenarioDocument{std::move(frame), std::move(*model), std::move(sources), rule,
                          std::move(event), policy};
}

/// Serializes a corpus scenario's inputs to the document format.
inline nlohmann::ordered_json scenario_to_document(const Scenario& s) {
  nlohmann::ordered_json doc;
  const FrameNames frame =
      s.atom_names.empty() ? FrameNames::unnamed(s.n) : FrameNames::named(s.n, s.atom_names);
  doc["frame"]["size"] = s.n;
  if (!s.atom_names.empty()) doc["frame"]["atoms"] = s.atom_names;
  if (s.model.kind() == ModelKind::free)
    doc["model"] = "free";
  else if (s.model.kind() == ModelKind::shafer)
    doc["model"] = "shafer";
  else {
    std::vector<std::string> constraints;
    for (const Element& c : s.model.constraints()) constraints.push_back(render(c, frame));
    doc["model"]["constraints"] = constraints;
  }
  doc["sources"] = nlohmann::ordered_json::array();
  for (const MassFunction& m : s.sources) {
    nlohmann::ordered_json src = nlohmann::ordered_json::object();
    for (const auto& [e, v] : m.masses()) src[render(e, frame)] = v;
    doc["sources"].push_back(std::move(src));
  }
  doc["rule"] = rule_name(s.rule);
  if (s.event) doc["event"] = render(*s.event, frame);
  if (s.policy == PolicyTag::reduced_swap) doc["policy"] = "reduced-swap";
  return doc;
}

}  // namespace dsmfuse
