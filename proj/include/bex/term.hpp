#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bex {

/// Error raised by the term / corpus parsers. `offset` is the byte position
/// in the parsed text at which the problem was detected.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

/// A ground first-order term. A constant is a Symbol with no arguments, a
/// compound is a Symbol with arguments, and a List is an argument sequence
/// in brackets. Identifiers are lowercase: [a-z][a-z0-9_]*.
///
/// Structural equality is the only equality; the canonical text form
/// round-trips through parse_term.
struct Term {
  enum class Kind { Symbol, List };

  Kind kind = Kind::Symbol;
  std::string functor;      // empty for lists
  std::vector<Term> args;

  static Term symbol(std::string f, std::vector<Term> a = {}) {
    return Term{Kind::Symbol, std::move(f), std::move(a)};
  }
  static Term list(std::vector<Term> a) {
    return Term{Kind::List, {}, std::move(a)};
  }

  bool is_constant() const { return kind == Kind::Symbol && args.empty(); }

  void print(std::string& out) const {
    if (kind == Kind::Symbol) {
      out += functor;
      if (!args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (i) out += ',';
          args[i].print(out);
        }
        out += ')';
      }
    } else {
      out += '[';
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        args[i].print(out);
      }
      out += ']';
    }
  }

  std::string str() const {
    std::string out;
    print(out);
    return out;
  }

  // hand-written: a defaulted <=> can't recurse through vector<Term>
  std::strong_ordering operator<=>(const Term& o) const {
    if (auto c = kind <=> o.kind; c != 0) return c;
    if (auto c = functor <=> o.functor; c != 0) return c;
    if (auto c = args.size() <=> o.args.size(); c != 0) return c;
    for (std::size_t i = 0; i < args.size(); ++i)
      if (auto c = args[i] <=> o.args[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
  bool operator==(const Term& o) const { return (*this <=> o) == 0; }
};

using Atom = Term;
using ActionTerm = Term;

namespace detail {

inline bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
inline bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

struct TermParser {
  std::string_view text;
  std::size_t pos = 0;

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in term '" + std::string(text) + "'", pos);
  }

  std::string ident() {
    if (!ident_start(peek())) fail("expected lowercase identifier");
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  Term arg() {
    if (peek() == '[') {
      ++pos;
      std::vector<Term> items;
      if (peek() != ']') items = arg_list();
      if (peek() != ']') fail("expected ']'");
      ++pos;
      return Term::list(std::move(items));
    }
    return term();
  }

  std::vector<Term> arg_list() {
    std::vector<Term> out;
    out.push_back(arg());
    while (peek() == ',') {
      ++pos;
      out.push_back(arg());
    }
    return out;
  }

  Term term() {
    std::string f = ident();
    std::vector<Term> a;
    if (peek() == '(') {
      ++pos;
      a = arg_list();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      if (a.empty()) fail("empty argument list");
    }
    return Term::symbol(std::move(f), std::move(a));
  }
};

}  // namespace detail

/// Parses the canonical text form of a ground term. The whole input must be
/// consumed; whitespace is not allowed.
inline Term parse_term(std::string_view text) {
  detail::TermParser p{text};
  Term t = p.term();
  if (p.pos != text.size()) p.fail("trailing characters");
  return t;
}

}  // namespace bex
