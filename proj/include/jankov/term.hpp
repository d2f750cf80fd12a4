#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "jankov/signature.hpp"

namespace jankov {

// A term tree: either a variable leaf or an operation node.  Constants are
// 0-ary operation nodes.
struct Term {
  enum class Kind { Var, Op };
  Kind kind = Kind::Var;
  std::string label;        // variable name or operation symbol
  std::vector<Term> args;   // empty for variables and constants

  bool operator==(const Term&) const = default;
  bool operator<(const Term& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (label != o.label) return label < o.label;
    return args < o.args;
  }

  static Term var(std::string name) { return Term{Kind::Var, std::move(name), {}}; }
  static Term op(std::string name, std::vector<Term> a = {}) {
    return Term{Kind::Op, std::move(name), std::move(a)};
  }

  bool is_var() const { return kind == Kind::Var; }

  void collect_vars(std::set<std::string>& out) const {
    if (is_var()) { out.insert(label); return; }
    for (const Term& t : args) t.collect_vars(out);
  }
  std::set<std::string> vars() const {
    std::set<std::string> out;
    collect_vars(out);
    return out;
  }

  // Distinct subterms, including the term itself.
  void collect_subterms(std::set<Term>& out) const {
    out.insert(*this);
    for (const Term& t : args) t.collect_subterms(out);
  }

  void validate(const Signature& sig) const {
    if (is_var()) {
      if (label.empty()) throw input_error("empty variable name");
      return;
    }
    int ar = sig.arity_of(label);
    if (ar != (int)args.size())
      throw input_error("operation " + label + " expects " + std::to_string(ar) +
                        " arguments, got " + std::to_string(args.size()));
    for (const Term& t : args) t.validate(sig);
  }
};

struct Identity {
  Term lhs, rhs;
  bool operator==(const Identity&) const = default;
  bool operator<(const Identity& o) const {
    if (!(lhs == o.lhs)) return lhs < o.lhs;
    return rhs < o.rhs;
  }

  std::set<std::string> vars() const {
    std::set<std::string> out;
    lhs.collect_vars(out);
    rhs.collect_vars(out);
    return out;
  }
  void validate(const Signature& sig) const {
    lhs.validate(sig);
    rhs.validate(sig);
  }
};

// Formula -> identity translation t |-> (t ~ 1).
inline Identity translate(const Term& phi, const Signature& sig) {
  if (!sig.has("one"))
    throw input_error("translate requires a constant 'one' in the signature");
  return Identity{phi, Term::op("one")};
}

using Substitution = std::map<std::string, Term>;

inline Term apply_substitution(const Substitution& sub, const Term& t) {
  if (t.is_var()) {
    auto it = sub.find(t.label);
    return it == sub.end() ? t : it->second;
  }
  Term out = Term::op(t.label);
  out.args.reserve(t.args.size());
  for (const Term& a : t.args) out.args.push_back(apply_substitution(sub, a));
  return out;
}

inline Identity apply_substitution(const Substitution& sub, const Identity& e) {
  return Identity{apply_substitution(sub, e.lhs), apply_substitution(sub, e.rhs)};
}

// ---------------------------------------------------------------------------
// Printing.  ASCII surface syntax with minimal parentheses:
//   precedence ~ (neg)  >  & (meet)  >  | (join)  >  -> (impl, right-assoc).
// Non-Heyting operation symbols print in functional notation f(a,b).
// ---------------------------------------------------------------------------

namespace detail {

inline int print_level(const Term& t) {
  // Higher level binds tighter.  Atoms are level 4.
  if (t.is_var()) return 4;
  if (t.label == "impl") return 1;
  if (t.label == "join") return 2;
  if (t.label == "meet") return 3;
  if (t.label == "neg") return 4;
  return 4;  // constants, functional notation
}

inline void print_term(const Term& t, int parent_level, std::string& out) {
  if (t.is_var()) { out += t.label; return; }
  if (t.label == "one" && t.args.empty()) { out += "1"; return; }
  if (t.label == "zero" && t.args.empty()) { out += "0"; return; }
  int lvl = print_level(t);
  bool paren = lvl < parent_level;
  if (t.label == "neg" && t.args.size() == 1) {
    out += "~";
    print_term(t.args[0], 4, out);
    return;
  }
  if ((t.label == "impl" || t.label == "join" || t.label == "meet") && t.args.size() == 2) {
    if (paren) out += "(";
    const char* sym = t.label == "impl" ? " -> " : (t.label == "join" ? " | " : " & ");
    // -> is right associative: the left argument needs a strictly tighter level.
    print_term(t.args[0], t.label == "impl" ? lvl + 1 : lvl, out);
    out += sym;
    print_term(t.args[1], t.label == "impl" ? lvl : lvl + 1, out);
    if (paren) out += ")";
    return;
  }
  out += t.label;
  if (!t.args.empty()) {
    out += "(";
    for (size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ",";
      print_term(t.args[i], 0, out);
    }
    out += ")";
  } else {
    out += "()";  // non-standard constant: keep it unambiguous
  }
}

}  // namespace detail

inline std::string print_term(const Term& t) {
  std::string out;
  detail::print_term(t, 0, out);
  return out;
}

inline std::string print_identity(const Identity& e) {
  return print_term(e.lhs) + " = " + print_term(e.rhs);
}

// Convenience builders for the Heyting connectives.
inline Term mk_meet(Term a, Term b) { return Term::op("meet", {std::move(a), std::move(b)}); }
inline Term mk_join(Term a, Term b) { return Term::op("join", {std::move(a), std::move(b)}); }
inline Term mk_impl(Term a, Term b) { return Term::op("impl", {std::move(a), std::move(b)}); }
inline Term mk_neg(Term a) { return Term::op("neg", {std::move(a)}); }
inline Term mk_one() { return Term::op("one"); }
inline Term mk_iff(const Term& a, const Term& b) {
  return mk_meet(mk_impl(a, b), mk_impl(b, a));
}

}  // namespace jankov
