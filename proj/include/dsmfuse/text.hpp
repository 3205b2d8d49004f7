#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsmfuse/hyperlattice.hpp"

namespace dsmfuse {

/// A frame with display names for its atoms; unnamed frames read and print
/// as t1..tn.
struct FrameNames {
  unsigned n = 0;
  std::vector<std::string> names;  // empty, or exactly n entries

  static FrameNames unnamed(unsigned n) {
    detail::check_frame_size(n);
    return FrameNames{n, {}};
  }

  static FrameNames named(unsigned n, std::vector<std::string> names) {
    detail::check_frame_size(n);
    if (names.size() != n)
      throw Error(errc::invalid_argument, "expected one name per atom");
    return FrameNames{n, std::move(names)};
  }

  std::string name_of(AtomIndex i) const {
    if (!names.empty()) return names[i];
    return "t" + std::to_string(i + 1);
  }

  std::optional<AtomIndex> index_of(std::string_view name) const {
    if (!names.empty()) {
      for (unsigned i = 0; i < n; ++i)
        if (names[i] == name) return i;
      return std::nullopt;
    }
    if (name.size() < 2 || name.front() != 't') return std::nullopt;
    unsigned value = 0;
    for (char c : name.substr(1)) {
      if (c < '0' || c > '9') return std::nullopt;
      value = value * 10 + static_cast<unsigned>(c - '0');
    }
    if (value < 1 || value > n) return std::nullopt;
    return value - 1;
  }
};

namespace detail {

struct ExprParser {
  std::string_view text;
  const FrameNames& frame;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw Error(errc::parse_error, what + " at position " + std::to_string(pos), pos);
  }

  bool eat(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Element parse_expr() {
    Element e = parse_term();
    while (eat('|')) e = join(e, parse_term());
    return e;
  }

  Element parse_term() {
    Element e = parse_factor();
    while (eat('&')) e = meet(e, parse_factor());
    return e;
  }

  Element parse_factor() {
    skip_space();
    if (pos >= text.size()) fail("unexpected end of expression");
    const char c = text[pos];
    if (c == '0') {
      ++pos;
      return Element::empty(frame.n);
    }
    if (c == '(') {
      ++pos;
      Element e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      const std::string_view name = text.substr(start, pos - start);
      if (auto i = frame.index_of(name)) return Element::atom(frame.n, *i);
      pos = start;
      fail("unknown atom '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace detail

/// Parses the surface syntax for hyper-power-set elements. Grammar:
///   expr := expr "|" term | term;  term := term "&" factor | factor;
///   factor := atom | "(" expr ")" | "0".
/// "&" binds tighter than "|"; whitespace is ignored; atom names resolve via
/// the frame's name table.
inline Element parse_expression(std::string_view text, const FrameNames& frame) {
  detail::check_frame_size(frame.n);
  detail::ExprParser p{text, frame};
  Element e = p.parse_expr();
  p.skip_space();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

/// Canonical expression string; the empty element prints as "0". Reparsing
/// the output yields the same element.
inline std::string render(const Element& a, const FrameNames& frame) {
  if (a.is_empty()) return "0";
  std::string out;
  bool first_term = true;
  for (TermMask t : a.terms()) {
    if (!first_term) out += '|';
    first_term = false;
    bool first_atom = true;
    for (unsigned i = 0; i < a.frame_size(); ++i) {
      if (!(t >> i & 1u)) continue;
      if (!first_atom) out += '&';
      first_atom = false;
      out += frame.name_of(i);
    }
  }
  return out;
}

inline std::string render(const Element& a) { return render(a, FrameNames::unnamed(a.frame_size())); }

}  // namespace dsmfuse
