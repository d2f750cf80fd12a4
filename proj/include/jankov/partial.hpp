#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "jankov/charident.hpp"

namespace jankov {

// ---------------------------------------------------------------------------
// Partial algebras: operation tables with holes (-1 = undefined)
// ---------------------------------------------------------------------------

struct PartialAlgebra {
  Signature sig;
  int size = 0;
  std::vector<std::vector<int>> tables;  // -1 marks an undefined entry
  std::vector<std::string> names;
  std::vector<int> parent_carrier;  // provenance: original element indices, if any

  int app(int op, const std::vector<int>& args) const {
    size_t pos = 0;
    for (int a : args) pos = pos * size + a;
    return tables[op][pos];
  }

  bool total() const {
    for (const auto& t : tables)
      for (int v : t)
        if (v < 0) return false;
    return true;
  }

  int defined_entries() const {
    int n = 0;
    for (const auto& t : tables)
      for (int v : t)
        if (v >= 0) ++n;
    return n;
  }

  FiniteAlgebra as_total() const {
    if (!total()) throw input_error("partial algebra has undefined entries");
    FiniteAlgebra A;
    A.sig = sig;
    A.size = size;
    A.tables = tables;
    A.names = names;
    A.validate();
    return A;
  }

  std::string element_name(int a) const {
    if ((int)names.size() == size) return names[a];
    return std::to_string(a);
  }

  void validate() const {
    sig.validate();
    if (size < 1) throw input_error("partial algebra must be nonempty");
    if (tables.size() != sig.ops.size()) throw input_error("partial algebra table count");
    for (size_t op = 0; op < sig.ops.size(); ++op) {
      size_t want = 1;
      for (int i = 0; i < sig.ops[op].arity; ++i) want *= size;
      if (tables[op].size() != want)
        throw input_error("partial table shape for " + sig.ops[op].name);
      for (int v : tables[op])
        if (v < -1 || v >= size) throw input_error("partial table entry out of range");
    }
  }
};

// Restriction of A to a subset: an entry is defined exactly when all
// arguments and the result lie in the subset.
inline PartialAlgebra partial_subalgebra(const FiniteAlgebra& A, std::vector<int> subset) {
  if (subset.empty()) throw input_error("partial_subalgebra: empty subset");
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::vector<int> pos(A.size, -1);
  for (size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= A.size)
      throw input_error("partial_subalgebra: element out of range");
    pos[subset[i]] = (int)i;
  }
  PartialAlgebra P;
  P.sig = A.sig;
  P.size = (int)subset.size();
  P.parent_carrier = subset;
  for (int a : subset)
    P.names.push_back((int)A.names.size() == A.size ? A.names[a] : std::to_string(a));
  P.tables.resize(A.sig.ops.size());
  for (size_t op = 0; op < A.sig.ops.size(); ++op) {
    int k = A.sig.ops[op].arity;
    std::vector<int> idx(k, 0);
    while (true) {
      std::vector<int> args(k);
      for (int i = 0; i < k; ++i) args[i] = subset[idx[i]];
      int r = A.app(op, args);
      P.tables[op].push_back(pos[r]);  // -1 when the result escapes the subset
      int i = k - 1;
      while (i >= 0 && idx[i] == P.size - 1) idx[i--] = 0;
      if (i < 0) break;
      ++idx[i];
    }
  }
  return P;
}

// Closure of a subset under the named operations; those operations come out
// total on the result, the others restricted.
inline PartialAlgebra signature_closure(const FiniteAlgebra& A, std::vector<int> subset,
                                        const std::vector<std::string>& ops) {
  std::vector<int> opidx;
  for (const std::string& name : ops) {
    if (!A.sig.has(name)) throw input_error("signature_closure: unknown operation " + name);
    opidx.push_back(A.sig.index_of(name));
  }
  std::vector<bool> in(A.size, false);
  for (int a : subset) {
    if (a < 0 || a >= A.size) throw input_error("signature_closure: element out of range");
    in[a] = true;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur;
    for (int a = 0; a < A.size; ++a)
      if (in[a]) cur.push_back(a);
    for (int op : opidx) {
      int k = A.sig.ops[op].arity;
      if (k > 0 && cur.empty()) continue;
      std::vector<int> idx(k, 0);
      while (true) {
        std::vector<int> args(k);
        for (int i = 0; i < k; ++i) args[i] = cur[idx[i]];
        int r = A.app(op, args);
        if (!in[r]) { in[r] = true; grew = true; }
        int i = k - 1;
        while (i >= 0 && idx[i] == (int)cur.size() - 1) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
      }
    }
  }
  std::vector<int> closure;
  for (int a = 0; a < A.size; ++a)
    if (in[a]) closure.push_back(a);
  return partial_subalgebra(A, closure);
}

// ---------------------------------------------------------------------------
// Positive diagrams and locally characteristic identities
// ---------------------------------------------------------------------------

namespace detail {

inline std::string diagram_var(const PartialAlgebra& P, int a) {
  return "x_" + P.element_name(a);
}

}  // namespace detail

// One identity f(x_a1..x_ak) = x_{f(a1..ak)} per defined entry, ordered by
// (operation, argument tuple).
inline std::vector<Identity> positive_diagram(const PartialAlgebra& P) {
  std::vector<Identity> out;
  for (size_t op = 0; op < P.sig.ops.size(); ++op) {
    int k = P.sig.ops[op].arity;
    std::vector<int> idx(k, 0);
    size_t pos = 0;
    while (true) {
      int r = P.tables[op][pos++];
      if (r >= 0) {
        std::vector<Term> args;
        for (int i = 0; i < k; ++i) args.push_back(Term::var(detail::diagram_var(P, idx[i])));
        out.push_back(Identity{Term::op(P.sig.ops[op].name, std::move(args)),
                               Term::var(detail::diagram_var(P, r))});
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == P.size - 1) idx[i--] = 0;
      if (i < 0) break;
      ++idx[i];
    }
  }
  return out;
}

struct LocalCharIdentity {
  Identity identity;
  PartialAlgebra source;
  std::pair<int, int> pair;  // (b, c)
  TDTerm td;
};

// chi(P, x_b, x_c) = td(tbar, tbar', x_b) = td(tbar, tbar', x_c) over the
// positive diagram.  Self-refutation under x_a -> a holds by construction:
// every diagram pair evaluates equal (both sides name the same defined
// entry), so the iterated td collapses to x_b vs x_c.  For total sources we
// also evaluate the identity directly as a cross-check.
inline LocalCharIdentity local_char_identity(const PartialAlgebra& P, int b, int c,
                                             const TDTerm& td) {
  if (P.size < 2) throw input_error("local_char_identity: degenerate partial algebra");
  if (b == c) throw input_error("local_char_identity: pair must be distinct");
  if (b < 0 || b >= P.size || c < 0 || c >= P.size)
    throw input_error("local_char_identity: pair out of range");
  std::vector<Term> lhss, rhss;
  for (const Identity& e : positive_diagram(P)) {
    lhss.push_back(e.lhs);
    rhss.push_back(e.rhs);
  }
  LocalCharIdentity L;
  L.identity = Identity{td_iterate(td, lhss, rhss, Term::var(detail::diagram_var(P, b))),
                        td_iterate(td, lhss, rhss, Term::var(detail::diagram_var(P, c)))};
  L.source = P;
  L.pair = {b, c};
  L.td = td;
  if (P.total()) {
    FiniteAlgebra A = P.as_total();
    Valuation v;
    for (int a = 0; a < P.size; ++a) v[detail::diagram_var(P, a)] = a;
    if (eval_term(A, L.identity.lhs, v) == eval_term(A, L.identity.rhs, v))
      throw internal_error("local characteristic identity not refuted by its total source");
  }
  return L;
}

// ---------------------------------------------------------------------------
// Partial-algebra isomorphism and homomorphism search
// ---------------------------------------------------------------------------

namespace detail {

// does the (partial) map m respect every table entry of P against Q, both for
// definedness and values
inline bool partial_tables_agree(const PartialAlgebra& P, const PartialAlgebra& Q,
                                 const std::vector<int>& m) {
  for (size_t op = 0; op < P.sig.ops.size(); ++op) {
    int k = P.sig.ops[op].arity;
    std::vector<int> idx(k, 0);
    size_t pos = 0;
    while (true) {
      int r = P.tables[op][pos++];
      bool all_mapped = true;
      std::vector<int> args(k);
      for (int i = 0; i < k; ++i) {
        if (m[idx[i]] < 0) { all_mapped = false; break; }
        args[i] = m[idx[i]];
      }
      if (all_mapped && (r < 0 || m[r] >= 0)) {
        int qr = Q.app((int)op, args);
        if (r < 0) {
          if (qr >= 0) return false;  // Q defines what P leaves open
        } else {
          if (qr != m[r]) return false;  // undefined or wrong value in Q
        }
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == P.size - 1) idx[i--] = 0;
      if (i < 0) break;
      ++idx[i];
    }
  }
  return true;
}

inline bool partial_iso_extend(const PartialAlgebra& P, const PartialAlgebra& Q,
                               std::vector<int>& m, std::vector<bool>& used, int next,
                               const std::pair<int, int>* pairP,
                               const std::pair<int, int>* pairQ) {
  if (next == P.size) return true;
  for (int img = 0; img < Q.size; ++img) {
    if (used[img]) continue;
    if (pairP) {
      if (next == pairP->first && img != pairQ->first) continue;
      if (next == pairP->second && img != pairQ->second) continue;
      if (next != pairP->first && img == pairQ->first) continue;
      if (next != pairP->second && img == pairQ->second) continue;
    }
    m[next] = img;
    used[img] = true;
    if (partial_tables_agree(P, Q, m) &&
        partial_iso_extend(P, Q, m, used, next + 1, pairP, pairQ))
      return true;
    m[next] = -1;
    used[img] = false;
  }
  return false;
}

}  // namespace detail

// Isomorphism of partial algebras: a bijection preserving definedness and
// values in both directions.  Optional distinguished pairs must correspond.
inline bool partial_iso(const PartialAlgebra& P, const PartialAlgebra& Q,
                        const std::pair<int, int>* pairP = nullptr,
                        const std::pair<int, int>* pairQ = nullptr) {
  if (!(P.sig == Q.sig) || P.size != Q.size) return false;
  if (P.defined_entries() != Q.defined_entries()) return false;
  std::vector<int> m(P.size, -1);
  std::vector<bool> used(P.size, false);
  return detail::partial_iso_extend(P, Q, m, used, 0, pairP, pairQ);
}

// All homomorphisms of a partial algebra into a total algebra (preserving
// operations where defined).  Small sizes only; used by the property tests.
inline std::vector<std::vector<int>> find_partial_homs(const PartialAlgebra& P,
                                                       const FiniteAlgebra& B) {
  if (!(P.sig == B.sig)) throw input_error("find_partial_homs: signature mismatch");
  std::vector<std::vector<int>> out;
  std::vector<int> m(P.size, 0);
  auto respects = [&](const std::vector<int>& full) {
    for (size_t op = 0; op < P.sig.ops.size(); ++op) {
      int k = P.sig.ops[op].arity;
      std::vector<int> idx(k, 0);
      size_t pos = 0;
      while (true) {
        int r = P.tables[op][pos++];
        if (r >= 0) {
          std::vector<int> args(k);
          for (int i = 0; i < k; ++i) args[i] = full[idx[i]];
          if (B.app((int)op, args) != full[r]) return false;
        }
        int i = k - 1;
        while (i >= 0 && idx[i] == P.size - 1) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
      }
    }
    return true;
  };
  while (true) {
    if (respects(m)) out.push_back(m);
    int i = P.size - 1;
    while (i >= 0 && m[i] == B.size - 1) m[i--] = 0;
    if (i < 0) break;
    ++m[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Characteristic sets and identity decomposition
// ---------------------------------------------------------------------------

// All locally characteristic identities of nondegenerate partial subalgebras
// of A with at most cap elements, up to partial isomorphism respecting the
// distinguished pair.
inline std::vector<LocalCharIdentity> characteristic_set(const FiniteAlgebra& A,
                                                         const TDTerm& td, int cap) {
  if (A.size > 30) throw input_error("characteristic_set: algebra too large to enumerate");
  std::vector<LocalCharIdentity> out;
  std::vector<std::pair<PartialAlgebra, std::pair<int, int>>> kept;
  for (unsigned mask = 0; mask < (1u << A.size); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < A.size; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    if ((int)subset.size() < 2 || (int)subset.size() > cap) continue;
    PartialAlgebra P = partial_subalgebra(A, subset);
    for (int b = 0; b < P.size; ++b)
      for (int c = 0; c < P.size; ++c) {
        if (b == c) continue;
        std::pair<int, int> pr{b, c};
        bool dup = false;
        for (const auto& [Q, qpr] : kept)
          if (partial_iso(P, Q, &pr, &qpr)) { dup = true; break; }
        if (dup) continue;
        kept.push_back({P, pr});
        out.push_back(local_char_identity(P, b, c, td));
      }
  }
  return out;
}

struct Decomposition {
  std::vector<LocalCharIdentity> gamma;
  int subterm_count = 0;  // the size bound k used for the partial algebras
  bool pool_verified = false;
};

// Decompose a refutable identity into locally characteristic identities:
// collect every refuting valuation on the enumerated algebras, restrict to
// the values of e's subterms, and emit chi of that partial algebra with the
// pair (value of lhs, value of rhs).  The result is verified equipotent with
// e (both directions) over the pool.
inline Decomposition decompose_identity(const Identity& e, const VarietySpec& V,
                                        const TDTerm& td, int pool_bound = 6) {
  std::vector<FiniteAlgebra> pool;
  if (V.kind == VarietySpec::Kind::Generators)
    pool = V.generators;
  else
    pool = enumerate_fsi(V, pool_bound);

  // distinct subterms of both sides
  std::set<Term> sub_set;
  e.lhs.collect_subterms(sub_set);
  e.rhs.collect_subterms(sub_set);
  std::vector<Term> subs(sub_set.begin(), sub_set.end());
  Decomposition D;
  D.subterm_count = (int)subs.size();

  std::set<std::string> vset = e.vars();
  std::vector<std::string> vars(vset.begin(), vset.end());
  bool refuted = false;
  std::vector<std::pair<PartialAlgebra, std::pair<int, int>>> kept;
  for (const FiniteAlgebra& A : pool) {
    e.validate(A.sig);
    std::vector<int> vals(vars.size(), 0);
    while (true) {
      Valuation v;
      for (size_t i = 0; i < vars.size(); ++i) v[vars[i]] = vals[i];
      int lv = eval_term(A, e.lhs, v), rv = eval_term(A, e.rhs, v);
      if (lv != rv) {
        refuted = true;
        std::vector<int> values;
        for (const Term& t : subs) values.push_back(eval_term(A, t, v));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        PartialAlgebra P = partial_subalgebra(A, values);
        auto local = [&](int x) {
          return (int)(std::lower_bound(values.begin(), values.end(), x) - values.begin());
        };
        std::pair<int, int> pr{local(lv), local(rv)};
        bool dup = false;
        for (const auto& [Q, qpr] : kept)
          if (partial_iso(P, Q, &pr, &qpr)) { dup = true; break; }
        if (!dup) {
          kept.push_back({P, pr});
          D.gamma.push_back(local_char_identity(P, pr.first, pr.second, td));
        }
      }
      int i = (int)vars.size() - 1;
      while (i >= 0 && vals[i] == A.size - 1) vals[i--] = 0;
      if (i < 0) break;
      ++vals[i];
    }
  }
  if (!refuted) throw input_error("decompose_identity: identity is valid, nothing to decompose");

  // Gamma ~ e: over the verification pool, an algebra satisfies e exactly
  // when it satisfies every member of Gamma (same models both directions).
  std::vector<FiniteAlgebra> verify_pool =
      detail::heyting_rooted(V) ? enumerate_heyting(pool_bound) : pool;
  for (const FiniteAlgebra& B : verify_pool) {
    bool sat_e = (bool)holds_fast(B, e);
    bool sat_gamma = true;
    for (const LocalCharIdentity& L : D.gamma)
      if (!holds_fast(B, L.identity)) { sat_gamma = false; break; }
    if (sat_e != sat_gamma)
      throw internal_error("decompose_identity: Gamma and the identity disagree on a pool algebra");
  }
  D.pool_verified = true;
  return D;
}

}  // namespace jankov
