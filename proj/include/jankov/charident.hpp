#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jankov/presentation.hpp"
#include "jankov/subalgebra.hpp"

namespace jankov {

// ---------------------------------------------------------------------------
// Jankov formulas for finite s.i. Heyting algebras
// ---------------------------------------------------------------------------

namespace detail {

inline std::string element_var(const FiniteAlgebra& A, int a) {
  if ((int)A.names.size() == A.size) return "p_" + A.names[a];
  return "p_" + std::to_string(a);
}

}  // namespace detail

// delta+(A): conjunction, in deterministic order (op in {meet,join,impl},
// then a, then b; negation entries last), of p_a op p_b <-> p_{a op b} and
// ~p_a <-> p_{~a}.  The Jankov formula is delta+(A) -> p_omega.
inline Term positive_diagram_formula(const FiniteAlgebra& A) {
  if (!is_heyting_algebra(A)) throw input_error("positive diagram formula needs a Heyting algebra");
  std::vector<Term> conjuncts;
  for (const std::string& opname : {"meet", "join", "impl"}) {
    int op = A.sig.index_of(opname);
    for (int a = 0; a < A.size; ++a)
      for (int b = 0; b < A.size; ++b) {
        Term lhs = Term::op(opname, {Term::var(detail::element_var(A, a)),
                                     Term::var(detail::element_var(A, b))});
        conjuncts.push_back(mk_iff(lhs, Term::var(detail::element_var(A, A.app2(op, a, b)))));
      }
  }
  int neg = A.sig.index_of("neg");
  for (int a = 0; a < A.size; ++a)
    conjuncts.push_back(mk_iff(mk_neg(Term::var(detail::element_var(A, a))),
                               Term::var(detail::element_var(A, A.app1(neg, a)))));
  Term d = conjuncts[0];
  for (size_t i = 1; i < conjuncts.size(); ++i) d = mk_meet(d, conjuncts[i]);
  return d;
}

inline Term jankov_formula(const FiniteAlgebra& A) {
  std::optional<int> om = opremum(A);
  if (!om) throw input_error("jankov_formula: algebra is not subdirectly irreducible");
  return mk_impl(positive_diagram_formula(A), Term::var(detail::element_var(A, *om)));
}

// ---------------------------------------------------------------------------
// Characteristic identities
// ---------------------------------------------------------------------------

struct CharacteristicIdentity {
  Identity identity;                   // raw td-iterated form
  std::optional<Identity> simplified;  // Heyting arrow form, when td is td_impl
  Term r1, r2;                         // terms naming the indistinguishable pair
  TDTerm td;
  std::string source;                  // label for reports
  Valuation refuting;                  // self-refuting valuation on the source algebra

  // The form actually used for evaluation (the simplified one when present;
  // both are asserted equipotent in the tests).
  const Identity& eval_form() const { return simplified ? *simplified : identity; }
};

namespace detail {

inline Identity heyting_arrow_form(const std::vector<Term>& lhss, const std::vector<Term>& rhss,
                                   const Term& r1) {
  // (/\ (t_i <-> t_i')) -> r1  =  1
  Term body = r1;
  if (!lhss.empty()) {
    Term conj = mk_iff(lhss[0], rhss[0]);
    for (size_t i = 1; i < lhss.size(); ++i) conj = mk_meet(conj, mk_iff(lhss[i], rhss[i]));
    body = mk_impl(conj, r1);
  }
  return Identity{body, mk_one()};
}

inline CharacteristicIdentity assemble_char_identity(
    const std::vector<Term>& lhss, const std::vector<Term>& rhss, const Term& r1,
    const Term& r2, const TDTerm& td, std::string source, const FiniteAlgebra& A,
    const Valuation& defining) {
  CharacteristicIdentity chi;
  chi.identity = Identity{td_iterate(td, lhss, rhss, r1), td_iterate(td, lhss, rhss, r2)};
  if (td.name == "td_impl" && A.sig.has("one")) {
    chi.simplified = heyting_arrow_form(lhss, rhss, r1);
    chi.simplified->lhs.validate(A.sig);
  }
  chi.r1 = r1;
  chi.r2 = r2;
  chi.td = td;
  chi.source = std::move(source);
  chi.refuting = defining;
  // self-refutation (the source algebra must refute its own identity)
  if (eval_term(A, chi.identity.lhs, defining) == eval_term(A, chi.identity.rhs, defining))
    throw internal_error("characteristic identity not refuted by its source algebra");
  if (chi.simplified &&
      eval_term(A, chi.simplified->lhs, defining) == eval_term(A, chi.simplified->rhs, defining))
    throw internal_error("simplified characteristic identity not refuted by its source");
  return chi;
}

}  // namespace detail

// Characteristic identity of a finitely presented s.i. algebra.  If r1/r2 are
// omitted, r2 is the constant 1 and r1 a witness term for the opremum
// (Heyting) or for a monolith pair (generic signatures).
inline CharacteristicIdentity characteristic_identity(
    const Presentation& P, std::optional<Term> r1 = std::nullopt,
    std::optional<Term> r2 = std::nullopt, std::optional<TDTerm> td_opt = std::nullopt,
    int cap = 4096) {
  PresentedAlgebra R = presented_algebra(P, cap);
  const FiniteAlgebra& A = R.algebra;
  if (!is_subdirectly_irreducible(A))
    throw input_error("characteristic_identity: presented algebra is not s.i.");
  TDTerm td = td_opt ? *td_opt : td_registry(P.variety.td_name);
  if (!verify_td_term(td, A).ok)
    throw input_error("characteristic_identity: td term fails on the presented algebra");

  Monolith mono = *monolith(A);
  if (!r1 || !r2) {
    if (A.sig.has("one") && is_heyting_algebra(A)) {
      r1 = R.witness[*opremum(A)];
      r2 = mk_one();
    } else {
      r1 = R.witness[mono.pair.first];
      r2 = R.witness[mono.pair.second];
    }
  }
  Valuation defining;
  for (size_t i = 0; i < R.var_names.size(); ++i) defining[R.var_names[i]] = R.gen_images[i];
  if (P.num_generators == 1) defining["x"] = R.gen_images[0];  // rank-1 alias
  int v1 = eval_term(A, *r1, defining), v2 = eval_term(A, *r2, defining);
  if (v1 == v2 || !(principal_congruence(A, v1, v2) == mono.theta))
    throw input_error("characteristic_identity: r1,r2 do not name a monolith pair");

  // normalize the rank-1 alias so relation sides and witness terms share
  // one variable set
  Substitution norm;
  if (P.num_generators == 1) norm["x"] = Term::var("x1");
  std::vector<Term> lhss, rhss;
  for (const Identity& e : P.relations) {
    lhss.push_back(norm.empty() ? e.lhs : apply_substitution(norm, e.lhs));
    rhss.push_back(norm.empty() ? e.rhs : apply_substitution(norm, e.rhs));
  }
  return detail::assemble_char_identity(lhss, rhss, *r1, *r2, td, "presentation", A,
                                        defining);
}

// Characteristic identity straight from a finite s.i. algebra: present it by
// the diagram of its operations written over witness terms of a generating
// set (default: a least basis), then iterate the td term over those
// relations.  This needs no ambient free algebra.
inline CharacteristicIdentity char_identity_from_algebra(
    const FiniteAlgebra& A, std::optional<std::vector<int>> basis_opt = std::nullopt,
    std::optional<TDTerm> td_opt = std::nullopt) {
  if (!is_subdirectly_irreducible(A))
    throw input_error("char_identity_from_algebra: algebra is not s.i.");
  TDTerm td = td_opt ? *td_opt : td_registry("td_impl");
  if (!verify_td_term(td, A).ok)
    throw input_error("char_identity_from_algebra: td term fails on the algebra");

  std::vector<int> basis = basis_opt ? *basis_opt : basis_rank(A).basis;
  GeneratedSubalgebra g = generated_subalgebra(A, basis);
  if ((int)g.carrier.size() != A.size)
    throw input_error("char_identity_from_algebra: set does not generate the algebra");

  // diagram relations f(w_u...) = w_{f(u...)} over the witness terms
  std::vector<Term> lhss, rhss;
  for (size_t op = 0; op < A.sig.ops.size(); ++op) {
    int k = A.sig.ops[op].arity;
    std::vector<int> idx(k, 0);
    while (true) {
      std::vector<Term> args;
      std::vector<int> a(k);
      for (int i = 0; i < k; ++i) {
        args.push_back(g.witness.at(idx[i]));
        a[i] = idx[i];
      }
      lhss.push_back(k == 0 ? Term::op(A.sig.ops[op].name) : Term::op(A.sig.ops[op].name, args));
      rhss.push_back(g.witness.at(A.app(op, a)));
      int i = k - 1;
      while (i >= 0 && idx[i] == A.size - 1) idx[i--] = 0;
      if (i < 0) break;
      ++idx[i];
    }
  }

  Monolith mono = *monolith(A);
  Term r1 = Term::var("?"), r2 = Term::var("?");
  if (A.sig.has("one") && is_heyting_algebra(A)) {
    r1 = g.witness.at(*opremum(A));
    r2 = mk_one();
  } else {
    r1 = g.witness.at(mono.pair.first);
    r2 = g.witness.at(mono.pair.second);
  }
  Valuation defining;
  for (size_t i = 0; i < basis.size(); ++i) defining[g.var_names[i]] = basis[i];
  return detail::assemble_char_identity(lhss, rhss, r1, r2, td, "diagram", A, defining);
}

// ---------------------------------------------------------------------------
// The SubHom quasi-order and derived checks
// ---------------------------------------------------------------------------

// A <= B iff A embeds into a quotient of B.  When a characteristic identity
// of A is supplied, the equivalent test "B refutes chi(A)" is cross-checked
// and any disagreement is an internal-consistency error.
inline bool leq(const FiniteAlgebra& A, const FiniteAlgebra& B,
                const CharacteristicIdentity* chiA = nullptr) {
  if (!is_subdirectly_irreducible(A) || !is_subdirectly_irreducible(B))
    throw input_error("leq: both algebras must be s.i.");
  bool res = in_sub_hom(A, B).has_value();
  if (chiA) {
    bool refutes = !holds_fast(B, chiA->eval_form());
    if (refutes != res)
      throw internal_error("leq: SubHom result disagrees with the characteristic identity");
  }
  return res;
}

struct AntichainResult {
  bool ok = true;
  std::pair<int, int> offending{-1, -1};
  explicit operator bool() const { return ok; }
};

inline AntichainResult antichain_check(const std::vector<FiniteAlgebra>& list) {
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = 0; j < list.size(); ++j) {
      if (i == j) continue;
      if (leq(list[i], list[j])) return AntichainResult{false, {(int)i, (int)j}};
    }
  return AntichainResult{};
}

// e is pre-true in A: refuted by A but valid in every proper subalgebra and
// every proper homomorphic image.
inline bool is_pretrue(const Identity& e, const FiniteAlgebra& A) {
  if (holds_fast(A, e)) return false;
  for (const std::vector<int>& carrier : all_subalgebra_carriers(A)) {
    if ((int)carrier.size() == A.size) continue;
    if (!holds_fast(restrict_to_carrier(A, carrier), e)) return false;
  }
  for (const Congruence& th : all_congruences(A)) {
    if (th.is_identity()) continue;
    if (!holds_fast(quotient(A, th).algebra, e)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Meet-prime decision (bound-qualified)
// ---------------------------------------------------------------------------

struct MeetPrimeVerdict {
  enum class Kind { Prime, NotPrime, ValidInAmbient };
  Kind kind;
  int bound = 0;
  std::optional<CharacteristicIdentity> chi;         // Prime
  std::optional<FiniteAlgebra> first_pretrue;        // Prime / NotPrime
  std::optional<FiniteAlgebra> second_pretrue;       // NotPrime
};

// Decide whether e is meet-prime over the ambient variety, searching algebras
// of size <= bound: find the smallest refuting algebra A (e is pre-true
// there), then look for a second non-isomorphic pre-true algebra and check
// equipotence of e with chi(A) over the pool.  All verdicts are relative to
// the bound; an inconclusive search raises bound_error.
inline MeetPrimeVerdict meet_prime_decide(const Identity& e, const VarietySpec& ambient,
                                          int bound) {
  if (!detail::heyting_rooted(ambient))
    throw input_error("meet_prime_decide: ambient must be Heyting-rooted");
  std::vector<FiniteAlgebra> pool;
  for (const FiniteAlgebra& B : enumerate_heyting(bound))
    if (membership(B, ambient)) pool.push_back(B);

  const FiniteAlgebra* first = nullptr;
  for (const FiniteAlgebra& B : pool)
    if (!holds_fast(B, e)) { first = &B; break; }
  if (!first) return MeetPrimeVerdict{MeetPrimeVerdict::Kind::ValidInAmbient, bound, {}, {}, {}};

  const FiniteAlgebra& A = *first;
  if (!is_pretrue(e, A))
    throw internal_error("meet_prime_decide: smallest refuting algebra is not pre-true");
  if (!is_subdirectly_irreducible(A))
    throw internal_error("meet_prime_decide: smallest refuting algebra is not s.i.");

  for (const FiniteAlgebra& B : pool) {
    if (B.size == A.size && is_isomorphic(B, A)) continue;
    if (!holds_fast(B, e) && is_pretrue(e, B))
      return MeetPrimeVerdict{MeetPrimeVerdict::Kind::NotPrime, bound, {}, A, B};
  }

  CharacteristicIdentity chi = char_identity_from_algebra(A, std::nullopt,
                                                          td_registry(ambient.td_name));
  if (!equipotent(e, chi.eval_form(), pool))
    throw bound_error("meet_prime_decide: inconclusive at bound " + std::to_string(bound) +
                      " (unique pre-true algebra but no equipotence)");
  return MeetPrimeVerdict{MeetPrimeVerdict::Kind::Prime, bound, chi, A, {}};
}

}  // namespace jankov
