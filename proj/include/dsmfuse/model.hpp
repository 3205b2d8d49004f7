#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dsmfuse/hyperlattice.hpp"

namespace dsmfuse {

enum class ModelKind { free, shafer, custom };

/// A fusion model: integrity constraints (elements forced empty) with their
/// emptiness closure. Emptiness is decided against the hull, the join of all
/// constraints: the closure rules make the empty set exactly the down-set of
/// the hull. Immutable after construction.
class ModelSpec {
 public:
  /// No constraints; every non-empty element stays non-empty.
  static ModelSpec free_model(unsigned n) {
    detail::check_frame_size(n);
    return ModelSpec(n, ModelKind::free, {}, Element::empty(n));
  }

  /// All distinct singletons mutually exclusive: constraints are every
  /// pairwise intersection.
  static ModelSpec shafer_model(unsigned n) {
    detail::check_frame_size(n);
    if (n < 2)
      throw Error(errc::invalid_argument, "shafer model needs a frame of at least two atoms");
    std::vector<Element> constraints;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j)
        constraints.push_back(Element::conjunction(n, {i, j}));
    Element hull = join_all(constraints.begin(), constraints.end());
    return ModelSpec(n, ModelKind::shafer, std::move(constraints), std::move(hull));
  }

  /// Arbitrary constraint set (exclusivity, non-existential or mixed
  /// elements). Duplicates and absorbed constraints are dropped silently; a
  /// model whose hull reaches the total ignorance is rejected as vacuous.
  static ModelSpec hybrid_model(unsigned n, std::vector<Element> constraints) {
    detail::check_frame_size(n);
    std::vector<Element> kept;
    for (const Element& c : constraints) {
      if (c.frame_size() != n)
        throw Error(errc::frame_mismatch, "constraint belongs to a different frame");
      if (c.is_empty())
        throw Error(errc::invalid_constraint, "the empty element cannot be a constraint");
      bool absorbed = false;
      for (const Element& other : constraints)
        if (!(other == c) && leq(c, other)) {
          absorbed = true;
          break;
        }
      if (!absorbed && std::find(kept.begin(), kept.end(), c) == kept.end()) kept.push_back(c);
    }
    Element hull = kept.empty() ? Element::empty(n) : join_all(kept.begin(), kept.end());
    if (leq(total_ignorance(n), hull))
      throw Error(errc::vacuous_model, "constraints force the total ignorance empty");
    return ModelSpec(n, ModelKind::custom, std::move(kept), std::move(hull));
  }

  unsigned frame_size() const { return n_; }
  ModelKind kind() const { return kind_; }
  const std::vector<Element>& constraints() const { return constraints_; }
  const Element& constraint_hull() const { return hull_; }

  /// True iff the element is the universal empty set or forced empty by the
  /// closure of the constraints.
  bool is_empty(const Element& a) const {
    if (a.frame_size() != n_)
      throw Error(errc::frame_mismatch, "element belongs to a different frame");
    return a.is_empty() || leq(a, hull_);
  }

  /// Characteristic emptiness function: 0 on (forced) empty elements, 1
  /// elsewhere.
  int phi(const Element& a) const { return is_empty(a) ? 0 : 1; }

  /// Model-canonical form: drops the conjunctions that are empty under the
  /// model. Not used by the combination rules themselves; the rules keep the
  /// formula's exact destinations.
  Element reduce(const Element& a) const {
    if (a.frame_size() != n_)
      throw Error(errc::frame_mismatch, "element belongs to a different frame");
    std::vector<TermMask> kept;
    for (TermMask t : a.terms())
      if (!is_empty(Element::from_terms(n_, {t}))) kept.push_back(t);
    if (kept.empty()) return Element::empty(n_);
    return Element::from_terms(n_, std::move(kept));
  }

 private:
  ModelSpec(unsigned n, ModelKind kind, std::vector<Element> constraints, Element hull)
      : n_(n), kind_(kind), constraints_(std::move(constraints)), hull_(std::move(hull)) {}

  unsigned n_;
  ModelKind kind_;
  std::vector<Element> constraints_;
  Element hull_;
};

}  // namespace dsmfuse
