#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsmfuse/bba.hpp"
#include "dsmfuse/model.hpp"

namespace dsmfuse {

/// Conflict masses within this distance of 1 count as total conflict; the
/// division-by-zero cases in the literature are exact, and normalizers this
/// small are numerically meaningless.
inline constexpr double kConflictUnityTolerance = 1e-12;

/// Tuple-product guard for the combination rules, which iterate the
/// Cartesian product of the source cores.
inline constexpr std::uint64_t kMaxTupleProduct = 10'000'000;

/// Destination of the conflicting-mass transfer of the hybrid rule.
///   s3_join      — the canonical join of the source tuple, absorption
///                  included (the transfer sum taken literally);
///   reduced_swap — the union of the atoms of the reduced intersection,
///                  i.e. canonicalize the tuple's meet first, then replace
///                  each conjunction by the union of its atoms.
/// The two coincide for Bayesian and other intersection-free sources; they
/// differ once a source carries mass on an intersection that the join
/// absorbs. Worked tables in the literature use sometimes one reading,
/// sometimes the other, so both are first-class here.
enum class TransferPolicy { s3_join, reduced_swap };

enum class FailureKind { none, total_conflict, paradoxical_input, frame_mismatch, vacuous_model };

inline const char* failure_name(FailureKind f) {
  switch (f) {
    case FailureKind::none: return "NONE";
    case FailureKind::total_conflict: return "TOTAL_CONFLICT";
    case FailureKind::paradoxical_input: return "PARADOXICAL_INPUT";
    case FailureKind::frame_mismatch: return "FRAME_MISMATCH";
    case FailureKind::vacuous_model: return "VACUOUS_MODEL";
  }
  return "NONE";
}

/// One tuple of the hybrid rule's product sum: which focal elements were
/// drawn, their product mass, and where it landed.
struct TransferRecord {
  std::vector<Element> tuple;
  double product;
  Element destination;
};

/// Result of a combination: a valid bba or a structured failure, plus the
/// conflict degree when meaningful and the transfer ledger for hybrid runs.
struct CombineOutcome {
  std::optional<MassFunction> result;
  FailureKind failure = FailureKind::none;
  std::optional<double> conflict;
  std::vector<TransferRecord> ledger;

  bool ok() const { return failure == FailureKind::none; }
};

namespace detail {

inline void check_arity(const std::vector<MassFunction>& sources) {
  if (sources.size() < 2)
    throw Error(errc::invalid_argument, "combination needs at least two sources");
}

inline bool frames_match(const std::vector<MassFunction>& sources, unsigned n) {
  for (const MassFunction& s : sources)
    if (s.frame_size() != n) return false;
  return true;
}

// Iterates the Cartesian product of the source cores in a fixed order:
// cores are canonically sorted and the first source varies slowest, so
// accumulation is reproducible.
template <typename F>
void for_each_tuple(const std::vector<MassFunction>& sources, F&& body) {
  std::vector<std::vector<std::pair<Element, double>>> cores;
  cores.reserve(sources.size());
  std::uint64_t tuples = 1;
  for (const MassFunction& s : sources) {
    cores.emplace_back(s.masses().begin(), s.masses().end());
    tuples *= cores.back().size();
    if (cores.back().empty() || tuples > kMaxTupleProduct)
      throw Error(errc::capacity_exceeded, "core tuple product exceeds the capacity guard");
  }
  std::vector<std::size_t> idx(cores.size(), 0);
  std::vector<const Element*> tuple(cores.size());
  for (;;) {
    double product = 1.0;
    for (std::size_t i = 0; i < cores.size(); ++i) {
      tuple[i] = &cores[i][idx[i]].first;
      product *= cores[i][idx[i]].second;
    }
    body(tuple, product);
    std::size_t i = cores.size();
    while (i > 0) {
      --i;
      if (++idx[i] < cores[i].size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
  }
}

inline Element meet_tuple(const std::vector<const Element*>& tuple) {
  Element r = *tuple.front();
  for (std::size_t i = 1; i < tuple.size(); ++i) r = meet(r, *tuple[i]);
  return r;
}

inline Element join_tuple(const std::vector<const Element*>& tuple) {
  Element r = *tuple.front();
  for (std::size_t i = 1; i < tuple.size(); ++i) r = join(r, *tuple[i]);
  return r;
}

}  // namespace detail

/// Total product mass the sources put on tuples whose intersection is empty
/// under the model. For the Shafer model on power-set bbas this is the
/// classical degree of conflict.
inline double conflict_degree(const std::vector<MassFunction>& sources, const ModelSpec& model) {
  detail::check_arity(sources);
  if (!detail::frames_match(sources, model.frame_size()))
    throw Error(errc::frame_mismatch, "sources and model frames differ");
  double k = 0.0;
  detail::for_each_tuple(sources, [&](const std::vector<const Element*>& tuple, double p) {
    if (model.is_empty(detail::meet_tuple(tuple))) k += p;
  });
  return k;
}

/// Dempster's rule over power-set bbas (exclusive singletons implicit):
/// conjunctive sum normalized by the surviving mass. Fails with
/// total_conflict when the conflict reaches one, and refuses sources that
/// carry mass on intersections.
inline CombineOutcome dempster_combine(const std::vector<MassFunction>& sources) {
  detail::check_arity(sources);
  CombineOutcome out;
  const unsigned n = sources.front().frame_size();
  if (!detail::frames_match(sources, n)) {
    out.failure = FailureKind::frame_mismatch;
    return out;
  }
  for (const MassFunction& s : sources)
    if (!is_powerset_bba(s)) {
      out.failure = FailureKind::paradoxical_input;
      return out;
    }
  double conflict = 0.0;
  std::map<TermMask, double> acc;
  detail::for_each_tuple(sources, [&](const std::vector<const Element*>& tuple, double p) {
    TermMask meet_set = Element::full_mask(n);
    for (const Element* e : tuple) meet_set &= e->atom_set();
    if (meet_set == 0)
      conflict += p;
    else
      acc[meet_set] += p;
  });
  out.conflict = conflict;
  if (conflict >= 1.0 - kConflictUnityTolerance) {
    out.failure = FailureKind::total_conflict;
    return out;
  }
  const double norm = 1.0 - conflict;
  std::map<Element, double> masses;
  for (const auto& [set, v] : acc) masses.emplace(Element::from_atom_set(n, set), v / norm);
  out.result = make_bba(n, masses);
  return out;
}

/// The conjunctive rule on the free model: each tuple's product mass is
/// credited to the canonical meet. No normalization; commutative and
/// associative.
inline MassFunction dsm_classic_combine(const std::vector<MassFunction>& sources) {
  detail::check_arity(sources);
  const unsigned n = sources.front().frame_size();
  if (!detail::frames_match(sources, n))
    throw Error(errc::frame_mismatch, "sources belong to different frames");
  std::map<Element, double> acc;
  detail::for_each_tuple(sources, [&](const std::vector<const Element*>& tuple, double p) {
    acc[detail::meet_tuple(tuple)] += p;
  });
  return make_bba(n, acc);
}

/// The hybrid rule, applied k-ary in one pass. Per tuple:
///   - intersection non-empty under the model: credit the canonical meet;
///   - every drawn element empty under the model: credit the union of the
///     sources' singletons, or the total ignorance when that union is
///     itself empty under the model;
///   - otherwise: credit the policy's transfer destination.
/// Every tuple is recorded in the ledger; the ledger products sum to one and
/// no destination is empty under the model.
inline CombineOutcome dsm_hybrid_combine(const ModelSpec& model,
                                         const std::vector<MassFunction>& sources,
                                         TransferPolicy policy) {
  detail::check_arity(sources);
  CombineOutcome out;
  const unsigned n = model.frame_size();
  if (!detail::frames_match(sources, n)) {
    out.failure = FailureKind::frame_mismatch;
    return out;
  }
  const Element ignorance = total_ignorance(n);
  std::map<Element, double> acc;
  detail::for_each_tuple(sources, [&](const std::vector<const Element*>& tuple, double p) {
    const Element intersection = detail::meet_tuple(tuple);
    Element destination = intersection;
    if (model.is_empty(intersection)) {
      bool all_empty = true;
      for (const Element* e : tuple)
        if (!model.is_empty(*e)) {
          all_empty = false;
          break;
        }
      if (all_empty) {
        TermMask atoms = 0;
        for (const Element* e : tuple) atoms |= e->atom_set();
        Element relative = Element::from_atom_set(n, atoms);
        destination = model.is_empty(relative) ? ignorance : relative;
      } else if (policy == TransferPolicy::s3_join) {
        destination = detail::join_tuple(tuple);
      } else {
        destination = Element::from_atom_set(n, intersection.atom_set());
      }
    }
    std::vector<Element> drawn;
    drawn.reserve(tuple.size());
    for (const Element* e : tuple) drawn.push_back(*e);
    out.ledger.push_back(TransferRecord{std::move(drawn), p, destination});
    acc[destination] += p;
  });
  for (const auto& [e, v] : acc)
    if (model.is_empty(e))
      throw std::logic_error("hybrid rule produced mass on a model-empty element");
  out.result = make_bba(n, acc);
  return out;
}

/// Conditioning by combination with the certain bba on the event. The
/// classical form accepts only power-set inputs.
inline CombineOutcome dempster_condition(const MassFunction& m, const Element& event) {
  if (event.frame_size() != m.frame_size()) {
    CombineOutcome out;
    out.failure = FailureKind::frame_mismatch;
    return out;
  }
  if (event.is_empty())
    throw Error(errc::invalid_argument, "conditioning event must be non-empty");
  for (TermMask t : event.terms())
    if (std::popcount(t) != 1) {
      CombineOutcome out;
      out.failure = FailureKind::paradoxical_input;
      return out;
    }
  return dempster_combine({m, certain_bba(m.frame_size(), event)});
}

/// Conditioning on the free model reduces to the conjunctive rule; any other
/// model routes through the hybrid rule.
inline CombineOutcome dsm_condition(const MassFunction& m, const Element& event,
                                    const ModelSpec& model, TransferPolicy policy) {
  if (event.is_empty())
    throw Error(errc::invalid_argument, "conditioning event must be non-empty");
  if (event.frame_size() != m.frame_size() || model.frame_size() != m.frame_size()) {
    CombineOutcome out;
    out.failure = FailureKind::frame_mismatch;
    return out;
  }
  const MassFunction certain = certain_bba(m.frame_size(), event);
  if (model.kind() == ModelKind::free && model.constraints().empty()) {
    CombineOutcome out;
    out.result = dsm_classic_combine({m, certain});
    return out;
  }
  return dsm_hybrid_combine(model, {m, certain}, policy);
}

/// Masses keyed by sets of Venn regions of the original frame: bit (r - 1)
/// of a key stands for region r.
struct RefinedMass {
  unsigned n = 0;
  std::map<std::uint32_t, double> masses;

  bool operator==(const RefinedMass&) const = default;
};

/// A mass function pushed through the region map, key by key.
inline RefinedMass venn_image(const MassFunction& m) {
  RefinedMass out;
  out.n = m.frame_size();
  for (const auto& [e, v] : m.masses()) out.masses[venn_region_set(e)] += v;
  return out;
}

/// Dempster's rule on the refined frame: each source is mapped through the
/// region sets and combined by set intersection there. On the refined frame
/// no intersection of images is empty, so the conflict is exactly zero and
/// no normalization happens; a non-zero conflict would be a logic error.
inline RefinedMass refine_and_dempster(const std::vector<MassFunction>& sources) {
  detail::check_arity(sources);
  const unsigned n = sources.front().frame_size();
  if (!detail::frames_match(sources, n))
    throw Error(errc::frame_mismatch, "sources belong to different frames");
  detail::check_refinement_cap(n);
  std::vector<std::vector<std::pair<std::uint32_t, double>>> cores;
  cores.reserve(sources.size());
  for (const MassFunction& s : sources) {
    std::vector<std::pair<std::uint32_t, double>> core;
    for (const auto& [e, v] : s.masses()) core.emplace_back(venn_region_set(e), v);
    cores.push_back(std::move(core));
  }
  RefinedMass out;
  out.n = n;
  std::vector<std::size_t> idx(cores.size(), 0);
  for (;;) {
    std::uint32_t set = ~std::uint32_t{0};
    double product = 1.0;
    for (std::size_t i = 0; i < cores.size(); ++i) {
      set &= cores[i][idx[i]].first;
      product *= cores[i][idx[i]].second;
    }
    if (set == 0)
      throw std::logic_error("empty region intersection on the refined frame");
    out.masses[set] += product;
    std::size_t i = cores.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++idx[i] < cores[i].size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) break;
  }
  return out;
}

}  // namespace dsmfuse
