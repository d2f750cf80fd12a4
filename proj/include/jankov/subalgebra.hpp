#pragma once

#include <map>
#include <set>
#include <vector>

#include "jankov/algebra.hpp"

namespace jankov {

struct GeneratedSubalgebra {
  std::vector<int> carrier;        // sorted ascending
  std::map<int, Term> witness;     // element -> term over the generator variables
  std::vector<int> generators;
  std::vector<std::string> var_names;
};

// Least carrier containing gens and all constants, closed under every
// operation.  Witness terms: generators get variables, constants get constant
// terms, new elements the first producing term in BFS order (operations in
// signature order, argument tuples in discovery order).
inline GeneratedSubalgebra generated_subalgebra(const FiniteAlgebra& A,
                                                const std::vector<int>& gens,
                                                std::vector<std::string> var_names = {}) {
  if (var_names.empty())
    for (size_t i = 0; i < gens.size(); ++i)
      var_names.push_back("x" + std::to_string(i + 1));
  if (var_names.size() != gens.size())
    throw input_error("generated_subalgebra: one variable name per generator required");

  GeneratedSubalgebra out;
  out.generators = gens;
  out.var_names = var_names;

  std::vector<int> order;  // discovery order
  auto add = [&](int e, Term t) {
    if (out.witness.count(e)) return;
    if (e < 0 || e >= A.size) throw input_error("generator out of range");
    out.witness.emplace(e, std::move(t));
    order.push_back(e);
  };
  for (size_t i = 0; i < gens.size(); ++i) add(gens[i], Term::var(var_names[i]));
  for (size_t op = 0; op < A.sig.ops.size(); ++op)
    if (A.sig.ops[op].arity == 0) add(A.app0((int)op), Term::op(A.sig.ops[op].name));

  for (size_t next = 0; next <= order.size();) {
    size_t known = order.size();
    for (size_t op = 0; op < A.sig.ops.size(); ++op) {
      int ar = A.sig.ops[op].arity;
      if (ar == 0) continue;
      std::vector<size_t> idx(ar, 0);
      bool more = !order.empty();
      while (more) {
        std::vector<int> args(ar);
        Term t = Term::op(A.sig.ops[op].name);
        for (int i = 0; i < ar; ++i) {
          args[i] = order[idx[i]];
          t.args.push_back(out.witness.at(args[i]));
        }
        add(A.app((int)op, args), std::move(t));
        int i = ar - 1;
        while (i >= 0 && idx[i] + 1 == known) idx[i--] = 0;
        if (i < 0) more = false;
        else ++idx[i];
      }
    }
    if (order.size() == known) break;  // fixpoint
    next = known;
  }
  out.carrier.assign(order.begin(), order.end());
  std::sort(out.carrier.begin(), out.carrier.end());
  return out;
}

// Restrict A to a closed carrier (throws if not closed).  Elements renumbered
// in ascending carrier order.
inline FiniteAlgebra restrict_to_carrier(const FiniteAlgebra& A, const std::vector<int>& carrier) {
  std::vector<int> pos(A.size, -1);
  for (size_t i = 0; i < carrier.size(); ++i) pos[carrier[i]] = (int)i;
  FiniteAlgebra S;
  S.sig = A.sig;
  S.size = (int)carrier.size();
  S.tables.resize(A.sig.ops.size());
  for (size_t op = 0; op < A.sig.ops.size(); ++op) {
    int ar = A.sig.ops[op].arity;
    size_t total = 1;
    for (int i = 0; i < ar; ++i) total *= (size_t)S.size;
    S.tables[op].resize(total);
    std::vector<int> args(ar, 0);
    size_t idx = 0;
    bool more = true;
    while (more) {
      std::vector<int> lifted(ar);
      for (int i = 0; i < ar; ++i) lifted[i] = carrier[args[i]];
      int v = A.app((int)op, lifted);
      if (pos[v] < 0)
        throw input_error("restrict_to_carrier: carrier not closed under " + A.sig.ops[op].name);
      S.tables[op][idx] = pos[v];
      ++idx;
      int i = ar - 1;
      while (i >= 0 && args[i] == S.size - 1) args[i--] = 0;
      if (i < 0) more = false;
      else ++args[i];
    }
  }
  for (int c : carrier) S.names.push_back(A.name_of(c));
  return S;
}

// All distinct subalgebra carriers of A (sorted element lists), via closures of
// all subsets.  Includes the full carrier; excludes the empty one unless the
// signature has constants closing to something nonempty (a carrier is always
// nonempty when constants exist; without constants the empty closure is
// skipped).
inline std::vector<std::vector<int>> all_subalgebra_carriers(const FiniteAlgebra& A) {
  std::set<std::vector<int>> seen;
  for (unsigned mask = 0; mask < (1u << A.size); ++mask) {
    std::vector<int> gens;
    for (int i = 0; i < A.size; ++i)
      if (mask & (1u << i)) gens.push_back(i);
    GeneratedSubalgebra g = generated_subalgebra(A, gens);
    if (!g.carrier.empty()) seen.insert(g.carrier);
  }
  return {seen.begin(), seen.end()};
}

struct BasisResult {
  int rank = 0;
  std::vector<int> basis;  // lexicographically least witness
};

// Least k such that some k-subset (together with constants) generates A.
inline BasisResult basis_rank(const FiniteAlgebra& A) {
  for (int k = 0; k <= A.size; ++k) {
    std::vector<int> subset(k);
    // iterate k-subsets of {0..n-1} in lexicographic order
    for (int i = 0; i < k; ++i) subset[i] = i;
    while (true) {
      if (k == 0 || subset[k - 1] < A.size) {
        if ((int)generated_subalgebra(A, subset).carrier.size() == A.size)
          return BasisResult{k, subset};
      }
      if (k == 0) break;
      int i = k - 1;
      while (i >= 0 && subset[i] == A.size - k + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  throw internal_error("basis_rank: full subset failed to generate");
}

}  // namespace jankov
