#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jankov/congruence.hpp"
#include "jankov/parse.hpp"

namespace jankov {

// A ternary deductive (TD) term: td(a,a,b) = b everywhere, and td(a,b,-) is
// constant on classes of the principal congruence theta(a,b).
struct TDTerm {
  std::string name;
  Term term;  // over exactly the variables x, y, z

  void validate_shape() const {
    auto vs = term.vars();
    for (const std::string& v : vs)
      if (v != "x" && v != "y" && v != "z")
        throw input_error("TD term may only use variables x,y,z (got " + v + ")");
  }
};

inline Term td_apply(const TDTerm& td, const Term& a, const Term& b, const Term& c) {
  return apply_substitution({{"x", a}, {"y", b}, {"z", c}}, td.term);
}

// Right-nested iteration td(a1,b1, td(a2,b2, ... td(am,bm,c) ...)); empty
// lists return c.
inline Term td_iterate(const TDTerm& td, const std::vector<Term>& as,
                       const std::vector<Term>& bs, const Term& c) {
  if (as.size() != bs.size()) throw input_error("td_iterate: list length mismatch");
  Term acc = c;
  for (size_t i = as.size(); i-- > 0;) acc = td_apply(td, as[i], bs[i], acc);
  return acc;
}

struct TDCheck {
  bool ok = true;
  std::array<int, 4> counterexample{-1, -1, -1, -1};  // (a,b,c,d); d=-1 for clause 1
  explicit operator bool() const { return ok; }
};

// Exhaustive check of both TD clauses on a concrete algebra.
inline TDCheck verify_td_term(const TDTerm& td, const FiniteAlgebra& A) {
  td.validate_shape();
  td.term.validate(A.sig);
  std::vector<std::string> vars = {"x", "y", "z"};
  CompiledTerm ct = compile_term(A, td.term, vars);
  std::vector<int> stack;
  int v[3];
  // clause 1: td(a,a,b) = b
  for (int a = 0; a < A.size; ++a)
    for (int b = 0; b < A.size; ++b) {
      v[0] = a; v[1] = a; v[2] = b;
      if (eval_compiled(A, ct, v, stack) != b) return TDCheck{false, {a, a, b, -1}};
    }
  // clause 2: c = d mod theta(a,b)  =>  td(a,b,c) = td(a,b,d)
  for (int a = 0; a < A.size; ++a)
    for (int b = 0; b < A.size; ++b) {
      if (a == b) continue;
      Congruence th = principal_congruence(A, a, b);
      for (int c = 0; c < A.size; ++c)
        for (int d = c + 1; d < A.size; ++d) {
          if (!th.same(c, d)) continue;
          v[0] = a; v[1] = b; v[2] = c;
          int tc = eval_compiled(A, ct, v, stack);
          v[2] = d;
          if (tc != eval_compiled(A, ct, v, stack)) return TDCheck{false, {a, b, c, d}};
        }
    }
  return TDCheck{};
}

// ---------------------------------------------------------------------------
// Built-in registry.  td_impl / td_and are the two Heyting TD terms; the
// lettered entries (a)-(i) are the classic parametric examples (the modal and
// monoid ones need "box" / "mult" in the signature and reject otherwise at
// validate time).  Every consumer re-verifies the term on the algebras it
// touches.
// ---------------------------------------------------------------------------

namespace detail {

inline Term iff_xy() { return mk_iff(Term::var("x"), Term::var("y")); }

inline Term impl_pow(const Term& a, int k, const Term& c) {
  // a ->^k c  =  a -> (a -> ... (a -> c))
  Term acc = c;
  for (int i = 0; i < k; ++i) acc = mk_impl(a, acc);
  return acc;
}

}  // namespace detail

inline TDTerm td_registry(const std::string& name, int n = 2) {
  Term x = Term::var("x"), y = Term::var("y"), z = Term::var("z");
  Term xy = mk_impl(x, y), yx = mk_impl(y, x);
  if (name == "td_impl")  // ((x->y)&(y->x))->z
    return TDTerm{name, mk_impl(detail::iff_xy(), z)};
  if (name == "td_and")  // ((x->y)&(y->x))&z
    return TDTerm{name, mk_meet(detail::iff_xy(), z)};
  if (name == "a")  // (x->y)->((y->x)->z)
    return TDTerm{name, mk_impl(xy, mk_impl(yx, z))};
  if (name == "b")  // (x->y)&(y->x)&z
    return TDTerm{name, mk_meet(detail::iff_xy(), z)};
  if (name == "c") {  // (x->y) ->^{n-1} ((y->x) ->^{n-1} z), n-potent hoops
    if (n < 1) throw input_error("entry (c) needs n >= 1");
    return TDTerm{name, detail::impl_pow(xy, n - 1, detail::impl_pow(yx, n - 1, z))};
  }
  if (name == "d" || name == "e") {  // n-transitive modal algebras
    if (n < 1) throw input_error("entries (d)/(e) need n >= 1");
    Term conj = detail::iff_xy();
    Term boxed = detail::iff_xy();
    for (int i = 1; i < n; ++i) {
      boxed = Term::op("box", {boxed});
      conj = mk_meet(conj, boxed);
    }
    return TDTerm{name, name == "d" ? mk_impl(conj, z) : mk_meet(conj, z)};
  }
  if (name == "f")  // box(x<->y) -> z, interior algebras
    return TDTerm{name, mk_impl(Term::op("box", {detail::iff_xy()}), z)};
  if (name == "g")  // box(x<->y) & z
    return TDTerm{name, mk_meet(Term::op("box", {detail::iff_xy()}), z)};
  if (name == "h") {  // (x<->y)^n * z, BCI monoids
    if (n < 1) throw input_error("entry (h) needs n >= 1");
    Term acc = z;
    for (int i = 0; i < n; ++i) acc = Term::op("mult", {detail::iff_xy(), acc});
    return TDTerm{name, acc};
  }
  if (name == "i") {  // (x<->y) ->^n z
    if (n < 1) throw input_error("entry (i) needs n >= 1");
    return TDTerm{name, detail::impl_pow(detail::iff_xy(), n, z)};
  }
  throw input_error("unknown TD term name: " + name);
}

}  // namespace jankov
