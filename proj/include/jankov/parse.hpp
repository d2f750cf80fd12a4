#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <variant>

#include "jankov/term.hpp"

namespace jankov {

// Recursive-descent parser for the ASCII surface syntax:
//
//   ident   := formula "=" formula
//   formula := impl
//   impl    := or (("->" | "<->") impl)?
//   or      := and ("|" and)*
//   and     := neg ("&" neg)*
//   neg     := "~" neg | atom
//   atom    := var | const | "(" formula ")"
//
// "<->" desugars to (a -> b) & (b -> a).  Unicode connectives are accepted as
// aliases for the ASCII ones.  "1"/"0" resolve to the 0-ary operations
// "one"/"zero" of the signature.

namespace detail {

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig) : text_(text), sig_(sig) {}

  std::variant<Term, Identity> parse_term_or_identity() {
    Term lhs = parse_formula();
    skip_ws();
    if (eat_symbol("=") || eat_symbol("\xe2\x89\x88")) {  // '=' or U+2248
      Term rhs = parse_formula();
      expect_end();
      return Identity{lhs, rhs};
    }
    expect_end();
    return lhs;
  }

  Term parse_single_term() {
    Term t = parse_formula();
    expect_end();
    return t;
  }

  Identity parse_single_identity() {
    auto v = parse_term_or_identity();
    if (std::holds_alternative<Identity>(v)) return std::get<Identity>(v);
    throw input_error("expected an identity (missing '='): " + text_);
  }

 private:
  const std::string& text_;
  const Signature& sig_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw input_error("parse error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
  }

  bool eat_symbol(const std::string& sym) {
    skip_ws();
    if (text_.compare(pos_, sym.size(), sym) == 0) {
      pos_ += sym.size();
      return true;
    }
    return false;
  }

  bool peek_symbol(const std::string& sym) {
    skip_ws();
    return text_.compare(pos_, sym.size(), sym) == 0;
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
  }

  Term parse_formula() { return parse_impl(); }

  Term parse_impl() {
    Term lhs = parse_or();
    // "<->" must be tried before "->".
    if (eat_symbol("<->") || eat_symbol("\xe2\x86\x94")) {  // U+2194
      Term rhs = parse_impl();
      check_heyting("<->");
      return mk_iff(lhs, rhs);
    }
    if (eat_symbol("->") || eat_symbol("\xe2\x86\x92")) {  // U+2192
      Term rhs = parse_impl();
      check_op("impl");
      return mk_impl(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Term parse_or() {
    Term lhs = parse_and();
    while (true) {
      // do not confuse '|' with nothing else; no '||' in grammar
      if (eat_symbol("|") || eat_symbol("\xe2\x88\xa8")) {  // U+2228
        check_op("join");
        lhs = mk_join(std::move(lhs), parse_and());
      } else {
        return lhs;
      }
    }
  }

  Term parse_and() {
    Term lhs = parse_neg();
    while (true) {
      if (eat_symbol("&") || eat_symbol("\xe2\x88\xa7")) {  // U+2227
        check_op("meet");
        lhs = mk_meet(std::move(lhs), parse_neg());
      } else {
        return lhs;
      }
    }
  }

  Term parse_neg() {
    if (eat_symbol("~") || eat_symbol("\xc2\xac")) {  // U+00AC
      check_op("neg");
      return mk_neg(parse_neg());
    }
    return parse_atom();
  }

  Term parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = parse_formula();
      if (!eat_symbol(")")) fail("expected ')'");
      return t;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
      std::string digits = text_.substr(start, pos_ - start);
      std::string opname = digits == "1" ? "one" : digits == "0" ? "zero" : "";
      if (opname.empty() || !sig_.has(opname) || sig_.arity_of(opname) != 0)
        fail("constant '" + digits + "' not available in this signature");
      return Term::op(opname);
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_' ||
              text_[pos_] == '\''))
        ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      // A name that collides with a 0-ary operation denotes that constant.
      if (sig_.has(name) && sig_.arity_of(name) == 0) return Term::op(name);
      if (sig_.has(name)) fail("'" + name + "' names a non-constant operation");
      return Term::var(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void check_op(const std::string& name) {
    if (!sig_.has(name)) fail("connective '" + name + "' missing from the signature");
  }
  void check_heyting(const std::string& sugar) {
    if (!sig_.has("impl") || !sig_.has("meet"))
      fail("'" + sugar + "' requires impl and meet in the signature");
  }
};

}  // namespace detail

inline std::variant<Term, Identity> parse(const std::string& text, const Signature& sig) {
  return detail::Parser(text, sig).parse_term_or_identity();
}

inline Term parse_term(const std::string& text, const Signature& sig) {
  return detail::Parser(text, sig).parse_single_term();
}

inline Identity parse_identity(const std::string& text, const Signature& sig) {
  return detail::Parser(text, sig).parse_single_identity();
}

}  // namespace jankov
