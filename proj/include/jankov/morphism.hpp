#pragma once

#include <optional>
#include <vector>

#include "jankov/congruence.hpp"
#include "jankov/subalgebra.hpp"

namespace jankov {

struct Homomorphism {
  std::vector<int> map;  // element of source -> element of target
  bool injective = false;
};

inline bool is_homomorphism(const FiniteAlgebra& A, const FiniteAlgebra& B,
                            const std::vector<int>& m) {
  if ((int)m.size() != A.size) return false;
  for (int v : m)
    if (v < 0 || v >= B.size) return false;
  for (size_t op = 0; op < A.sig.ops.size(); ++op) {
    int ar = A.sig.ops[op].arity;
    std::vector<int> args(ar, 0), mapped(ar);
    bool more = true;
    while (more) {
      for (int i = 0; i < ar; ++i) mapped[i] = m[args[i]];
      if (m[A.app((int)op, args)] != B.app((int)op, mapped)) return false;
      int i = ar - 1;
      while (i >= 0 && args[i] == A.size - 1) args[i--] = 0;
      if (i < 0) more = false;
      else ++args[i];
    }
  }
  return true;
}

// Injective homomorphism search: map a minimal generating set of A to tuples
// of B in lexicographic order, extend through witness terms, verify.  First
// found result is deterministic.
inline std::optional<Homomorphism> find_embedding(const FiniteAlgebra& A,
                                                  const FiniteAlgebra& B) {
  if (!(A.sig == B.sig)) throw input_error("find_embedding: signature mismatch");
  if (A.size > B.size) return std::nullopt;
  BasisResult basis = basis_rank(A);
  GeneratedSubalgebra gen = generated_subalgebra(A, basis.basis);
  int k = basis.rank;
  std::vector<int> images(k, 0);
  bool more = true;
  while (more) {
    Valuation v;
    for (int i = 0; i < k; ++i) v[gen.var_names[i]] = images[i];
    std::vector<int> m(A.size);
    for (int u = 0; u < A.size; ++u) m[u] = eval_term(B, gen.witness.at(u), v);
    bool inj = true;
    for (int u = 0; u < A.size && inj; ++u)
      for (int w = u + 1; w < A.size && inj; ++w)
        if (m[u] == m[w]) inj = false;
    if (inj && is_homomorphism(A, B, m)) return Homomorphism{m, true};
    int i = k - 1;
    while (i >= 0 && images[i] == B.size - 1) images[i--] = 0;
    if (i < 0) more = false;
    else ++images[i];
  }
  return std::nullopt;
}

inline bool is_isomorphic(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  if (!(A.sig == B.sig) || A.size != B.size) return false;
  return find_embedding(A, B).has_value();
}

struct SubHomWitness {
  Congruence theta;        // congruence of B
  FiniteAlgebra quotient;  // B/theta
  Homomorphism embedding;  // A -> B/theta
};

// A in SubHom(B): A embeds into some homomorphic image of B.  Congruences are
// scanned in the deterministic all_congruences order, so the witness is
// reproducible.
inline std::optional<SubHomWitness> in_sub_hom(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  if (!(A.sig == B.sig)) throw input_error("in_sub_hom: signature mismatch");
  for (const Congruence& theta : all_congruences(B)) {
    if (A.size > theta.num_blocks()) continue;  // quotient too small
    Quotient q = quotient(B, theta);
    if (auto emb = find_embedding(A, q.algebra))
      return SubHomWitness{theta, std::move(q.algebra), std::move(*emb)};
  }
  return std::nullopt;
}

}  // namespace jankov
