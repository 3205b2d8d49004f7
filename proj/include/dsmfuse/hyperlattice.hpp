#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <vector>

#include "dsmfuse/errors.hpp"

namespace dsmfuse {

/// 0-based index of an elementary hypothesis within a frame of size n.
using AtomIndex = unsigned;

/// One conjunction of atoms, encoded as a bit set (bit i = atom i).
using TermMask = std::uint32_t;

inline constexpr unsigned kMaxFrameSize = 16;
inline constexpr unsigned kDefaultEnumerationCap = 4;
inline constexpr unsigned kHardEnumerationCap = 5;

namespace detail {

inline bool submask(TermMask a, TermMask b) { return (a & b) == a; }

// Keep only minimal masks: a conjunction over a superset of another
// conjunction's atoms is absorbed by it.
inline void antichain_reduce(std::vector<TermMask>& terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  std::vector<TermMask> kept;
  kept.reserve(terms.size());
  for (TermMask t : terms) {
    bool absorbed = false;
    for (TermMask u : terms) {
      if (u != t && submask(u, t)) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) kept.push_back(t);
  }
  terms.swap(kept);
}

inline void check_frame_size(unsigned n) {
  if (n < 1 || n > kMaxFrameSize)
    throw Error(errc::invalid_argument,
                "frame size must be in [1, " + std::to_string(kMaxFrameSize) + "], got " +
                    std::to_string(n));
}

}  // namespace detail

/// An element of the hyper-power set over a frame of n atoms: a canonical
/// union of conjunctions (antichain of atom sets), or the empty element.
/// Elements are immutable values; all operations are pure.
class Element {
 public:
  static Element empty(unsigned n) {
    detail::check_frame_size(n);
    return Element(n, {});
  }

  static Element atom(unsigned n, AtomIndex i) {
    detail::check_frame_size(n);
    check_atom(n, i);
    return Element(n, {TermMask{1} << i});
  }

  static Element conjunction(unsigned n, std::initializer_list<AtomIndex> atoms) {
    detail::check_frame_size(n);
    if (atoms.size() == 0)
      throw Error(errc::invalid_argument, "conjunction needs at least one atom");
    TermMask t = 0;
    for (AtomIndex i : atoms) {
      check_atom(n, i);
      t |= TermMask{1} << i;
    }
    return Element(n, {t});
  }

  /// Builds the canonical element with the given conjunction terms; empty or
  /// redundant terms are rejected/absorbed.
  static Element from_terms(unsigned n, std::vector<TermMask> terms) {
    detail::check_frame_size(n);
    const TermMask frame = full_mask(n);
    for (TermMask t : terms) {
      if (t == 0) throw Error(errc::invalid_argument, "conjunction term must be non-empty");
      if (!detail::submask(t, frame))
        throw Error(errc::atom_out_of_range, "conjunction uses atoms outside the frame");
    }
    detail::antichain_reduce(terms);
    return Element(n, std::move(terms));
  }

  /// The union of singletons for a set of atoms; the empty set gives the
  /// empty element.
  static Element from_atom_set(unsigned n, TermMask atoms) {
    detail::check_frame_size(n);
    if (!detail::submask(atoms, full_mask(n)))
      throw Error(errc::atom_out_of_range, "atom set outside the frame");
    std::vector<TermMask> terms;
    for (unsigned i = 0; i < n; ++i)
      if (atoms >> i & 1u) terms.push_back(TermMask{1} << i);
    return Element(n, std::move(terms));
  }

  unsigned frame_size() const { return n_; }
  bool is_empty() const { return terms_.empty(); }
  const std::vector<TermMask>& terms() const { return terms_; }

  /// Union of all atoms appearing in any conjunction.
  TermMask atom_set() const {
    TermMask u = 0;
    for (TermMask t : terms_) u |= t;
    return u;
  }

  bool operator==(const Element&) const = default;

  /// Canonical order: frame size, then term count, then term masks
  /// lexicographically. Fixes enumeration and report order.
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.terms_.size() <=> b.terms_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (auto c = a.terms_[i] <=> b.terms_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  Element operator&(const Element& rhs) const;
  Element operator|(const Element& rhs) const;

  static TermMask full_mask(unsigned n) { return (TermMask{1} << n) - 1u; }

 private:
  Element(unsigned n, std::vector<TermMask> terms) : n_(n), terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end());
  }

  static void check_atom(unsigned n, AtomIndex i) {
    if (i >= n)
      throw Error(errc::atom_out_of_range,
                  "atom index " + std::to_string(i) + " outside frame of size " + std::to_string(n));
  }

  unsigned n_;
  std::vector<TermMask> terms_;
};

namespace detail {
inline void check_same_frame(const Element& a, const Element& b) {
  if (a.frame_size() != b.frame_size())
    throw Error(errc::frame_mismatch, "elements belong to different frames");
}
}  // namespace detail

/// Greatest lower bound: distribute, then absorb. meet(a, empty) = empty.
inline Element meet(const Element& a, const Element& b) {
  detail::check_same_frame(a, b);
  if (a.is_empty() || b.is_empty()) return Element::empty(a.frame_size());
  std::vector<TermMask> terms;
  terms.reserve(a.terms().size() * b.terms().size());
  for (TermMask x : a.terms())
    for (TermMask y : b.terms()) terms.push_back(x | y);
  return Element::from_terms(a.frame_size(), std::move(terms));
}

/// Least upper bound: merge term lists, then absorb. join(a, empty) = a.
inline Element join(const Element& a, const Element& b) {
  detail::check_same_frame(a, b);
  std::vector<TermMask> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  if (terms.empty()) return Element::empty(a.frame_size());
  return Element::from_terms(a.frame_size(), std::move(terms));
}

inline Element Element::operator&(const Element& rhs) const { return meet(*this, rhs); }
inline Element Element::operator|(const Element& rhs) const { return join(*this, rhs); }

/// Partial order of the lattice: a <= b iff meet(a, b) == a, i.e. every
/// conjunction of a contains some conjunction of b.
inline bool leq(const Element& a, const Element& b) {
  detail::check_same_frame(a, b);
  if (a.is_empty()) return true;
  if (b.is_empty()) return false;
  for (TermMask ta : a.terms()) {
    bool covered = false;
    for (TermMask tb : b.terms()) {
      if (detail::submask(tb, ta)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

inline TermMask atoms_of(const Element& a) { return a.atom_set(); }

/// Top of the lattice: the union of all singletons.
inline Element total_ignorance(unsigned n) {
  detail::check_frame_size(n);
  return Element::from_atom_set(n, Element::full_mask(n));
}

template <typename Iter>
inline Element meet_all(Iter first, Iter last) {
  Element r = *first;
  for (Iter it = std::next(first); it != last; ++it) r = meet(r, *it);
  return r;
}

template <typename Iter>
inline Element join_all(Iter first, Iter last) {
  Element r = *first;
  for (Iter it = std::next(first); it != last; ++it) r = join(r, *it);
  return r;
}

/// Expression tree over atoms with meet/join nodes; input form for
/// canonicalize and for the text parser.
class Expr {
 public:
  enum class Kind { empty, atom, meet, join };

  static Expr empty() { return Expr(std::make_shared<Node>(Node{Kind::empty, 0, nullptr, nullptr})); }
  static Expr atom(AtomIndex i) {
    return Expr(std::make_shared<Node>(Node{Kind::atom, i, nullptr, nullptr}));
  }
  static Expr meet(Expr a, Expr b) {
    return Expr(std::make_shared<Node>(Node{Kind::meet, 0, std::move(a.node_), std::move(b.node_)}));
  }
  static Expr join(Expr a, Expr b) {
    return Expr(std::make_shared<Node>(Node{Kind::join, 0, std::move(a.node_), std::move(b.node_)}));
  }

  Kind kind() const { return node_->kind; }
  AtomIndex atom_index() const { return node_->index; }
  Expr left() const { return Expr(node_->left); }
  Expr right() const { return Expr(node_->right); }

 private:
  struct Node {
    Kind kind;
    AtomIndex index;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Evaluates an expression tree to its unique antichain normal form.
inline Element canonicalize(const Expr& e, unsigned n) {
  switch (e.kind()) {
    case Expr::Kind::empty:
      return Element::empty(n);
    case Expr::Kind::atom:
      return Element::atom(n, e.atom_index());
    case Expr::Kind::meet:
      return meet(canonicalize(e.left(), n), canonicalize(e.right(), n));
    case Expr::Kind::join:
      return join(canonicalize(e.left(), n), canonicalize(e.right(), n));
  }
  throw Error(errc::invalid_argument, "malformed expression tree");
}

/// Rebuilds an expression tree (union of conjunctions) from an element.
inline Expr to_expr(const Element& a) {
  if (a.is_empty()) return Expr::empty();
  bool first_term = true;
  Expr acc = Expr::empty();
  for (TermMask t : a.terms()) {
    bool first_atom = true;
    Expr conj = Expr::empty();
    for (unsigned i = 0; i < a.frame_size(); ++i) {
      if (!(t >> i & 1u)) continue;
      conj = first_atom ? Expr::atom(i) : Expr::meet(conj, Expr::atom(i));
      first_atom = false;
    }
    acc = first_term ? conj : Expr::join(acc, conj);
    first_term = false;
  }
  return acc;
}

/// All elements of the hyper-power set in canonical order. The set equals
/// the closure of {empty, singletons} under meet and join, realised here as
/// a direct walk over antichains of conjunction masks. Sizes grow with the
/// Dedekind numbers, hence the cap.
inline std::vector<Element> enumerate_hyperpowerset(unsigned n,
                                                    unsigned cap = kDefaultEnumerationCap) {
  detail::check_frame_size(n);
  if (cap > kHardEnumerationCap) cap = kHardEnumerationCap;
  if (n > cap)
    throw Error(errc::capacity_exceeded,
                "hyper-power-set enumeration capped at n <= " + std::to_string(cap));
  const TermMask full = Element::full_mask(n);
  std::vector<Element> out;
  std::vector<TermMask> chosen;
  auto incomparable = [&](TermMask t) {
    for (TermMask u : chosen)
      if (detail::submask(u, t) || detail::submask(t, u)) return false;
    return true;
  };
  std::function<void(TermMask)> walk = [&](TermMask next) {
    out.push_back(Element::from_terms(n, chosen));
    for (TermMask t = next; t <= full; ++t) {
      if (!incomparable(t)) continue;
      chosen.push_back(t);
      walk(t + 1);
      chosen.pop_back();
    }
  };
  walk(1);
  std::sort(out.begin(), out.end());
  return out;
}

/// A region of the frame's Venn diagram: the non-empty set of atoms whose
/// sets contain the region (all other atoms excluded).
using VennRegion = TermMask;

namespace detail {
inline void check_refinement_cap(unsigned n) {
  check_frame_size(n);
  if (n > kHardEnumerationCap)
    throw Error(errc::capacity_exceeded,
                "refinement capped at n <= " + std::to_string(kHardEnumerationCap));
}
}  // namespace detail

/// The regions covered by an element: region r belongs iff some conjunction
/// of the element has its atom set inside r. Injective on canonical
/// elements; turns meet/join into set intersection/union.
inline std::vector<VennRegion> venn_regions(const Element& a) {
  detail::check_refinement_cap(a.frame_size());
  std::vector<VennRegion> out;
  const TermMask full = Element::full_mask(a.frame_size());
  for (TermMask r = 1; r <= full; ++r) {
    for (TermMask t : a.terms()) {
      if (detail::submask(t, r)) {
        out.push_back(r);
        break;
      }
    }
  }
  return out;
}

/// Same region set packed as a bit set: bit (r - 1) stands for region r.
inline std::uint32_t venn_region_set(const Element& a) {
  detail::check_refinement_cap(a.frame_size());
  std::uint32_t s = 0;
  for (VennRegion r : venn_regions(a)) s |= std::uint32_t{1} << (r - 1);
  return s;
}

}  // namespace dsmfuse

template <>
struct std::hash<dsmfuse::Element> {
  std::size_t operator()(const dsmfuse::Element& e) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ e.frame_size();
    for (dsmfuse::TermMask t : e.terms()) h = h * 0x100000001b3ull ^ t;
    return h;
  }
};
