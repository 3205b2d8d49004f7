#pragma once

#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dsmfuse/hyperlattice.hpp"

namespace dsmfuse {

/// Absolute tolerance on the unit-sum check of a mass function.
inline constexpr double kMassTolerance = 1e-9;

/// A basic belief assignment over the hyper-power set: canonical elements
/// mapped to positive masses summing to one, with no mass on the empty
/// element. Immutable after construction.
class MassFunction {
 public:
  unsigned frame_size() const { return n_; }
  const std::map<Element, double>& masses() const { return masses_; }

  double mass(const Element& a) const {
    auto it = masses_.find(a);
    return it == masses_.end() ? 0.0 : it->second;
  }

  /// Focal elements in canonical order.
  std::vector<Element> core() const {
    std::vector<Element> out;
    out.reserve(masses_.size());
    for (const auto& [e, v] : masses_) out.push_back(e);
    return out;
  }

  bool operator==(const MassFunction&) const = default;

  friend MassFunction make_bba(unsigned n, const std::vector<std::pair<Element, double>>&);
  friend MassFunction make_bba(unsigned n, const std::map<Element, double>&);

 private:
  MassFunction(unsigned n, std::map<Element, double> masses)
      : n_(n), masses_(std::move(masses)) {}

  unsigned n_;
  std::map<Element, double> masses_;
};

/// Validates and canonicalizes an assignment list: duplicate keys merge by
/// addition, zero masses are dropped, and the total must be one within
/// kMassTolerance.
inline MassFunction make_bba(unsigned n, const std::vector<std::pair<Element, double>>& assignments) {
  detail::check_frame_size(n);
  std::map<Element, double> merged;
  for (const auto& [e, v] : assignments) {
    if (e.frame_size() != n)
      throw Error(errc::frame_mismatch, "assignment element belongs to a different frame");
    if (v < 0.0) throw Error(errc::negative_mass, "mass values must be non-negative");
    if (v == 0.0) continue;
    if (e.is_empty()) throw Error(errc::mass_on_empty, "no mass may rest on the empty element");
    merged[e] += v;
  }
  double sum = 0.0;
  for (const auto& [e, v] : merged) sum += v;
  if (std::abs(sum - 1.0) > kMassTolerance)
    throw Error(errc::sum_not_one, "masses sum to " + std::to_string(sum) + ", expected 1");
  return MassFunction(n, std::move(merged));
}

inline MassFunction make_bba(unsigned n, const std::map<Element, double>& masses) {
  std::vector<std::pair<Element, double>> assignments(masses.begin(), masses.end());
  return make_bba(n, assignments);
}

/// The certain body of evidence: full mass on a single non-empty element.
inline MassFunction certain_bba(unsigned n, const Element& a) {
  if (a.is_empty())
    throw Error(errc::mass_on_empty, "a certain bba needs a non-empty focal element");
  return make_bba(n, {{a, 1.0}});
}

/// True iff every focal element is a single singleton.
inline bool is_bayesian(const MassFunction& m) {
  for (const auto& [e, v] : m.masses()) {
    const auto& ts = e.terms();
    if (ts.size() != 1 || std::popcount(ts.front()) != 1) return false;
  }
  return true;
}

/// True iff every focal element is a union of singletons, i.e. lies in the
/// classical power set.
inline bool is_powerset_bba(const MassFunction& m) {
  for (const auto& [e, v] : m.masses())
    for (TermMask t : e.terms())
      if (std::popcount(t) != 1) return false;
  return true;
}

/// Row-per-source mass matrix with shared column labels.
struct MassMatrix {
  unsigned n = 0;
  std::vector<Element> labels;
  std::vector<std::vector<double>> rows;
};

/// One bba per matrix row; label/row validation errors carry the row index.
inline std::vector<MassFunction> from_matrix(const MassMatrix& mm) {
  detail::check_frame_size(mm.n);
  for (std::size_t i = 0; i < mm.labels.size(); ++i) {
    if (mm.labels[i].frame_size() != mm.n)
      throw Error(errc::frame_mismatch, "matrix label belongs to a different frame");
    for (std::size_t j = i + 1; j < mm.labels.size(); ++j)
      if (mm.labels[i] == mm.labels[j])
        throw Error(errc::invalid_argument, "matrix labels must be distinct");
  }
  std::vector<MassFunction> out;
  out.reserve(mm.rows.size());
  for (std::size_t r = 0; r < mm.rows.size(); ++r) {
    if (mm.rows[r].size() != mm.labels.size())
      throw Error(errc::invalid_argument,
                  "row " + std::to_string(r) + " has " + std::to_string(mm.rows[r].size()) +
                      " entries for " + std::to_string(mm.labels.size()) + " labels");
    std::vector<std::pair<Element, double>> assignments;
    assignments.reserve(mm.labels.size());
    for (std::size_t c = 0; c < mm.labels.size(); ++c)
      assignments.emplace_back(mm.labels[c], mm.rows[r][c]);
    try {
      out.push_back(make_bba(mm.n, assignments));
    } catch (const Error& err) {
      throw Error(err.code(), "row " + std::to_string(r) + ": " + err.what());
    }
  }
  return out;
}

}  // namespace dsmfuse
