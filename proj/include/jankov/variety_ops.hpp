#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "jankov/charident.hpp"

namespace jankov {

// ---------------------------------------------------------------------------
// Edge algebras
// ---------------------------------------------------------------------------

struct EdgeResult {
  bool is_edge = false;
  int basis_rank = 0;  // when edge: a lower bound for the axiomatic rank of V
  explicit operator bool() const { return is_edge; }
};

// A is an edge algebra of V: outside V, but every proper subalgebra and every
// proper homomorphic image lies inside.
inline EdgeResult is_edge_algebra(const FiniteAlgebra& A, const VarietySpec& V) {
  if (membership(A, V)) return EdgeResult{};
  for (const std::vector<int>& carrier : all_subalgebra_carriers(A)) {
    if ((int)carrier.size() == A.size) continue;
    if (!membership(restrict_to_carrier(A, carrier), V)) return EdgeResult{};
  }
  for (const Congruence& th : all_congruences(A)) {
    if (th.is_identity()) continue;
    if (!membership(quotient(A, th).algebra, V)) return EdgeResult{};
  }
  return EdgeResult{true, basis_rank(A).rank};
}

// ---------------------------------------------------------------------------
// Optimal axiomatization of V inside V0 by characteristic identities
// ---------------------------------------------------------------------------

struct Axiomatization {
  std::vector<CharacteristicIdentity> axioms;  // one per MSI member, r_b variables
  std::vector<FiniteAlgebra> msi;              // minimal s.i. algebras of V0 \ V
  bool certificates_ok = false;  // each source validates the others, refutes its own
  int bound = 0;
};

// Compute FSI(V0 \ V) up to max_size, take the minimal elements under the
// SubHom order, and emit one characteristic identity per minimal algebra,
// written in basis-rank many variables via the diagram presentation.
inline Axiomatization optimal_axiomatization(const VarietySpec& V, const VarietySpec& V0,
                                             int max_size, int cap = 4096) {
  TDTerm td = td_registry(V0.td_name);

  // bound requirement: enough room for the k-generated minimal algebras
  if (V.kind == VarietySpec::Kind::Generators || !V.axioms.empty()) {
    int k = 0;
    if (V.kind == VarietySpec::Kind::Generators)
      for (const FiniteAlgebra& G : V.generators) k = std::max(k, basis_rank(G).rank);
    else
      for (const Identity& e : V.axioms) k = std::max(k, (int)e.vars().size());
    long long need = -1;
    try {
      need = beta_bound(V, k, cap);
    } catch (const bound_error&) {
      // no computable bound; proceed and report the sweep bound only
    }
    if (need >= 0 && max_size < need)
      throw bound_error("optimal_axiomatization: max_size " + std::to_string(max_size) +
                        " below the required bound " + std::to_string(need));
  }

  std::vector<FiniteAlgebra> diff;
  for (const FiniteAlgebra& A : enumerate_fsi(V0, max_size, cap)) {
    if (!membership(A, V0)) throw internal_error("enumerate_fsi left the ambient variety");
    if (!membership(A, V)) diff.push_back(A);
  }

  Axiomatization ax;
  ax.bound = max_size;
  for (size_t i = 0; i < diff.size(); ++i) {
    bool minimal = true;
    for (size_t j = 0; j < diff.size(); ++j) {
      if (i == j) continue;
      if (leq(diff[j], diff[i]) && !leq(diff[i], diff[j])) { minimal = false; break; }
    }
    if (minimal) ax.msi.push_back(diff[i]);
  }
  for (const FiniteAlgebra& A : ax.msi)
    ax.axioms.push_back(char_identity_from_algebra(A, basis_rank(A).basis, td));

  // independence certificates: source i refutes its own axiom, validates the rest
  ax.certificates_ok = true;
  for (size_t i = 0; i < ax.axioms.size(); ++i) {
    if (holds_fast(ax.msi[i], ax.axioms[i].eval_form())) ax.certificates_ok = false;
    for (size_t j = 0; j < ax.axioms.size(); ++j)
      if (i != j && !holds_fast(ax.msi[i], ax.axioms[j].eval_form()))
        ax.certificates_ok = false;
  }
  if (!ax.certificates_ok)
    throw internal_error("optimal_axiomatization: independence certificates failed");

  // every axiom must be valid on every enumerated s.i. member of V
  for (const FiniteAlgebra& B : enumerate_fsi(V0, max_size, cap))
    if (membership(B, V))
      for (const CharacteristicIdentity& chi : ax.axioms)
        if (!holds_fast(B, chi.eval_form()))
          throw internal_error("optimal_axiomatization: axiom refuted inside V");
  return ax;
}

// ---------------------------------------------------------------------------
// Identity / quasi-identity decision
// ---------------------------------------------------------------------------

struct IdentityVerdict {
  bool valid = false;
  std::optional<FiniteAlgebra> witness_algebra;
  Valuation witness;
  std::optional<CharacteristicIdentity> certificate;  // chi of the minimal refuter
  std::optional<FiniteAlgebra> minimal_refuter;
  std::optional<Identity> sigma_e;  // e instantiated by witness terms of the refuter
  bool genrefute_ok = false;        // pool check: sigma(e) entails the certificate
  explicit operator bool() const { return valid; }
};

namespace detail {

inline std::vector<FiniteAlgebra> bounded_members(const VarietySpec& V, int size_cap) {
  if (!heyting_rooted(V))
    throw input_error("bounded member enumeration needs a Heyting-rooted spec");
  std::vector<FiniteAlgebra> out;
  for (const FiniteAlgebra& B : enumerate_heyting(size_cap))
    if (membership(B, V)) out.push_back(B);
  return out;
}

}  // namespace detail

// Decide validity of e in V.  Tabular specs evaluate on the generators (sound
// and complete for identities); Axioms specs sweep all members of size up to
// beta(r).  On refutation the verdict carries the characteristic identity of
// the minimal refuting s.i. algebra as a certificate.
inline IdentityVerdict decide_identity(const VarietySpec& V, const Identity& e,
                                       int enum_cap = 12, int cap = 4096) {
  IdentityVerdict verdict;
  const FiniteAlgebra* refuter = nullptr;
  HoldsResult hr;
  std::vector<FiniteAlgebra> scan;
  if (V.kind == VarietySpec::Kind::Generators) {
    scan = V.generators;
  } else {
    long long beta = beta_bound(V, (int)e.vars().size(), cap);
    if (beta > enum_cap)
      throw bound_error("decide_identity: member bound " + std::to_string(beta) +
                        " exceeds the enumeration cap");
    scan = detail::bounded_members(V, (int)beta);
  }
  for (const FiniteAlgebra& G : scan) {
    hr = holds(G, e);
    if (!hr) { refuter = &G; break; }
  }
  if (!refuter) {
    verdict.valid = true;
    return verdict;
  }
  verdict.witness_algebra = *refuter;
  verdict.witness = hr.witness;

  // minimal refuting s.i. algebra and its characteristic identity
  int msize = 0;
  for (const FiniteAlgebra& G : scan) msize = std::max(msize, G.size);
  const FiniteAlgebra* minimal = nullptr;
  std::vector<FiniteAlgebra> fsi = enumerate_fsi(V, msize, cap);
  for (const FiniteAlgebra& A : fsi)
    if (!holds_fast(A, e)) { minimal = &A; break; }
  if (!minimal) throw internal_error("decide_identity: refuted but no refuting s.i. member");
  TDTerm td = td_registry(V.td_name);
  BasisResult basis = basis_rank(*minimal);
  verdict.certificate = char_identity_from_algebra(*minimal, basis.basis, td);
  verdict.minimal_refuter = *minimal;

  // sigma(e): substitute witness terms of the refuting valuation's values
  GeneratedSubalgebra g = generated_subalgebra(*minimal, basis.basis);
  HoldsResult mh = holds(*minimal, e);
  Substitution sigma;
  for (const auto& [v, val] : mh.witness) sigma[v] = g.witness.at(val);
  verdict.sigma_e = Identity{apply_substitution(sigma, e.lhs), apply_substitution(sigma, e.rhs)};

  // pool-scale check of the refutation certificate: every pool algebra
  // satisfying sigma(e) satisfies chi(minimal)
  std::vector<FiniteAlgebra> pool =
      detail::heyting_rooted(V) ? enumerate_heyting(std::max(msize + 1, 5))
                                : scan;
  verdict.genrefute_ok = true;
  for (const FiniteAlgebra& B : pool)
    if (holds_fast(B, *verdict.sigma_e) && !holds_fast(B, verdict.certificate->eval_form()))
      verdict.genrefute_ok = false;
  return verdict;
}

struct QuasiVerdict {
  bool valid = false;
  long long member_bound = 0;
  std::optional<FiniteAlgebra> witness_algebra;
  Valuation witness;
  explicit operator bool() const { return valid; }
};

// A quasi-identity with r distinct variables holds in V iff it holds in every
// member of size at most beta(r); bounded exhaustive check.
inline QuasiVerdict decide_quasi(const std::vector<Identity>& premises, const Identity& e,
                                 const VarietySpec& V, int enum_cap = 12, int cap = 4096) {
  std::set<std::string> vars = e.vars();
  for (const Identity& p : premises) {
    std::set<std::string> pv = p.vars();
    vars.insert(pv.begin(), pv.end());
  }
  QuasiVerdict q;
  q.member_bound = beta_bound(V, (int)vars.size(), cap);
  if (q.member_bound > enum_cap)
    throw bound_error("decide_quasi: member bound " + std::to_string(q.member_bound) +
                      " exceeds the enumeration cap");
  std::vector<FiniteAlgebra> members = detail::bounded_members(V, (int)q.member_bound);
  ConsequenceResult r = semantic_consequence(premises, e, members);
  q.valid = r.ok;
  if (!r.ok) {
    q.witness_algebra = members[r.algebra_index];
    q.witness = r.witness;
  }
  return q;
}

// ---------------------------------------------------------------------------
// r-complete sets
// ---------------------------------------------------------------------------

struct RCompleteResult {
  bool ok = false;
  std::optional<FiniteAlgebra> uncovered;  // FSI member whose chi no rho covers
  explicit operator bool() const { return ok; }
};

// I is r-complete w.r.t. V at pool scale: for the characteristic identity e
// of every s.i. member of V up to m, some rho in I is entailed by e on V's
// bounded pool (every pool member of V satisfying e satisfies rho).
inline RCompleteResult is_r_complete(const std::vector<Identity>& I, const VarietySpec& V,
                                     int pool_cap, int cap = 4096) {
  TDTerm td = td_registry(V.td_name);
  std::vector<FiniteAlgebra> pool = detail::bounded_members(V, pool_cap);
  for (const FiniteAlgebra& A : enumerate_fsi(V, pool_cap, cap)) {
    CharacteristicIdentity chi = char_identity_from_algebra(A, std::nullopt, td);
    bool covered = false;
    for (const Identity& rho : I) {
      bool entails = true;
      for (const FiniteAlgebra& B : pool)
        if (holds_fast(B, chi.eval_form()) && !holds_fast(B, rho)) { entails = false; break; }
      if (entails) { covered = true; break; }
    }
    if (!covered) return RCompleteResult{false, A};
  }
  return RCompleteResult{true, {}};
}

// ---------------------------------------------------------------------------
// Splitting check
// ---------------------------------------------------------------------------

// Bounded verification that Mod(chi(A)) within V0 is the largest subvariety
// omitting A: every enumerated member of V0 refuting chi(A) must generate a
// variety containing A (A in SubHom of it).
inline bool splitting_check(const FiniteAlgebra& A, const VarietySpec& V0, int m) {
  if (!is_subdirectly_irreducible(A)) throw input_error("splitting_check: algebra not s.i.");
  if (!membership(A, V0)) throw input_error("splitting_check: algebra outside the variety");
  TDTerm td = td_registry(V0.td_name);
  CharacteristicIdentity chi = char_identity_from_algebra(A, std::nullopt, td);
  for (const FiniteAlgebra& B : detail::bounded_members(V0, m))
    if (!holds_fast(B, chi.eval_form()) && !in_sub_hom(A, B).has_value()) return false;
  return true;
}

}  // namespace jankov
