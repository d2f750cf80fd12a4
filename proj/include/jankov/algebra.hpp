#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jankov/term.hpp"

namespace jankov {

// A finite algebra: total operation tables over universe {0..size-1}.
// Tables are flat row-major: the entry for (a1,...,ak) sits at
// ((a1*n + a2)*n + ...)*n + ak.
struct FiniteAlgebra {
  Signature sig;
  int size = 0;
  std::vector<std::vector<int>> tables;  // parallel to sig.ops
  std::vector<std::string> names;        // display only; may be empty

  bool degenerate() const { return size <= 1; }

  std::string name_of(int a) const {
    if (a >= 0 && a < (int)names.size() && !names[a].empty()) return names[a];
    return std::to_string(a);
  }

  size_t table_size(int op) const {
    size_t s = 1;
    for (int i = 0; i < sig.ops[op].arity; ++i) s *= (size_t)size;
    return s;
  }

  int app(int op, const std::vector<int>& args) const {
    size_t idx = 0;
    for (int a : args) idx = idx * size + (size_t)a;
    return tables[op][idx];
  }
  int app0(int op) const { return tables[op][0]; }
  int app1(int op, int a) const { return tables[op][a]; }
  int app2(int op, int a, int b) const { return tables[op][(size_t)a * size + b]; }

  void validate() const {
    sig.validate();
    if (size <= 0) throw input_error("algebra size must be positive");
    if (tables.size() != sig.ops.size())
      throw input_error("table count does not match signature");
    for (size_t i = 0; i < tables.size(); ++i) {
      if (tables[i].size() != table_size((int)i))
        throw input_error("table for " + sig.ops[i].name + " has wrong number of entries");
      for (int v : tables[i])
        if (v < 0 || v >= size)
          throw input_error("table entry out of range in " + sig.ops[i].name);
    }
    if (!names.empty() && (int)names.size() != size)
      throw input_error("names list length does not match size");
  }
};

// ---------------------------------------------------------------------------
// Term evaluation
// ---------------------------------------------------------------------------

using Valuation = std::map<std::string, int>;

inline int eval_term(const FiniteAlgebra& A, const Term& t, const Valuation& v) {
  if (t.is_var()) {
    auto it = v.find(t.label);
    if (it == v.end()) throw input_error("valuation misses variable " + t.label);
    if (it->second < 0 || it->second >= A.size)
      throw input_error("valuation value out of range for " + t.label);
    return it->second;
  }
  int op = A.sig.index_of(t.label);
  if (op < 0) throw input_error("operation " + t.label + " not in algebra signature");
  if ((int)t.args.size() != A.sig.ops[op].arity)
    throw input_error("arity mismatch for " + t.label);
  std::vector<int> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(eval_term(A, a, v));
  return A.app(op, args);
}

// Flattened (RPN) form of a term against a fixed variable order; used by the
// exhaustive valuation sweeps where the tree walk would dominate.
struct CompiledTerm {
  struct Instr {
    int op = -1;   // operation index, or -1 for a variable load
    int var = -1;  // variable slot when op == -1
    int arity = 0;
  };
  std::vector<Instr> code;
  int max_stack = 0;
};

namespace detail {
inline void compile_rec(const FiniteAlgebra& A, const Term& t,
                        const std::vector<std::string>& var_order, CompiledTerm& out) {
  if (t.is_var()) {
    auto it = std::find(var_order.begin(), var_order.end(), t.label);
    if (it == var_order.end()) throw input_error("unbound variable " + t.label);
    out.code.push_back({-1, (int)(it - var_order.begin()), 0});
    return;
  }
  for (const Term& a : t.args) compile_rec(A, a, var_order, out);
  int op = A.sig.index_of(t.label);
  if (op < 0) throw input_error("operation " + t.label + " not in algebra signature");
  out.code.push_back({op, -1, A.sig.ops[op].arity});
}
}  // namespace detail

inline CompiledTerm compile_term(const FiniteAlgebra& A, const Term& t,
                                 const std::vector<std::string>& var_order) {
  CompiledTerm ct;
  detail::compile_rec(A, t, var_order, ct);
  int depth = 0;
  for (const auto& ins : ct.code) {
    depth += 1 - ins.arity;
    ct.max_stack = std::max(ct.max_stack, depth);
  }
  return ct;
}

inline int eval_compiled(const FiniteAlgebra& A, const CompiledTerm& ct, const int* vals,
                         std::vector<int>& stack) {
  stack.clear();
  for (const auto& ins : ct.code) {
    if (ins.op < 0) {
      stack.push_back(vals[ins.var]);
    } else if (ins.arity == 0) {
      stack.push_back(A.tables[ins.op][0]);
    } else if (ins.arity == 1) {
      stack.back() = A.tables[ins.op][stack.back()];
    } else if (ins.arity == 2) {
      int b = stack.back();
      stack.pop_back();
      stack.back() = A.tables[ins.op][(size_t)stack.back() * A.size + b];
    } else {
      size_t idx = 0;
      for (size_t i = stack.size() - ins.arity; i < stack.size(); ++i)
        idx = idx * A.size + (size_t)stack[i];
      stack.resize(stack.size() - ins.arity);
      stack.push_back(A.tables[ins.op][idx]);
    }
  }
  return stack.back();
}

// ---------------------------------------------------------------------------
// Identity validity
// ---------------------------------------------------------------------------

struct HoldsResult {
  bool ok = false;
  Valuation witness;  // a refuting valuation when !ok (lexicographically least
                      // over sorted variable names)
  explicit operator bool() const { return ok; }
};

// Exhaustive sweep over all |A|^k valuations in lexicographic order.
inline HoldsResult holds(const FiniteAlgebra& A, const Identity& e) {
  e.validate(A.sig);
  std::set<std::string> vset = e.vars();
  std::vector<std::string> vars(vset.begin(), vset.end());
  CompiledTerm cl = compile_term(A, e.lhs, vars);
  CompiledTerm cr = compile_term(A, e.rhs, vars);
  std::vector<int> vals(vars.size(), 0), stack;
  while (true) {
    if (eval_compiled(A, cl, vals.data(), stack) != eval_compiled(A, cr, vals.data(), stack)) {
      HoldsResult r;
      r.ok = false;
      for (size_t i = 0; i < vars.size(); ++i) r.witness[vars[i]] = vals[i];
      return r;
    }
    int i = (int)vals.size() - 1;
    while (i >= 0 && vals[i] == A.size - 1) vals[i--] = 0;
    if (i < 0) break;
    ++vals[i];
  }
  return HoldsResult{true, {}};
}

namespace detail {
// True iff   x meet y = 1  <=>  x = 1 and y = 1   holds in A.  When it does,
// an identity (s & t) = 1 may be checked conjunct-by-conjunct.
inline bool meet_top_splits(const FiniteAlgebra& A) {
  int m = A.sig.index_of("meet"), one = A.sig.index_of("one");
  if (m < 0 || one < 0 || A.sig.ops[m].arity != 2 || A.sig.ops[one].arity != 0)
    return false;
  int top = A.tables[one][0];
  for (int x = 0; x < A.size; ++x)
    for (int y = 0; y < A.size; ++y) {
      bool is_top = A.app2(m, x, y) == top;
      if (is_top != (x == top && y == top)) return false;
    }
  return true;
}

inline void split_conjuncts(const Term& t, std::vector<const Term*>& out) {
  if (!t.is_var() && t.label == "meet" && t.args.size() == 2) {
    split_conjuncts(t.args[0], out);
    split_conjuncts(t.args[1], out);
  } else {
    out.push_back(&t);
  }
}
}  // namespace detail

// Validity check without a witness.  Sound shortcut: when the identity has the
// shape (c1 & ... & cm) = 1 and meets against 1 split in A, each conjunct is
// checked separately (far fewer valuations when conjuncts share few
// variables).  Falls back to the plain sweep otherwise.
inline bool holds_fast(const FiniteAlgebra& A, const Identity& e) {
  bool rhs_is_one = !e.rhs.is_var() && e.rhs.label == "one" && e.rhs.args.empty();
  if (rhs_is_one && detail::meet_top_splits(A)) {
    std::vector<const Term*> cs;
    detail::split_conjuncts(e.lhs, cs);
    if (cs.size() > 1) {
      for (const Term* c : cs)
        if (!holds(A, Identity{*c, e.rhs}).ok) return false;
      return true;
    }
  }
  return holds(A, e).ok;
}

// ---------------------------------------------------------------------------
// Semantic consequence and equipotence over listed algebras
// ---------------------------------------------------------------------------

struct ConsequenceResult {
  bool ok = false;
  int algebra_index = -1;  // witness when !ok
  Valuation witness;
  explicit operator bool() const { return ok; }
};

// Quasi-identity validity on the listed algebras: in every A in K, every
// valuation satisfying all premises satisfies e.
inline ConsequenceResult semantic_consequence(const std::vector<Identity>& premises,
                                              const Identity& e,
                                              const std::vector<FiniteAlgebra>& K) {
  for (int ai = 0; ai < (int)K.size(); ++ai) {
    const FiniteAlgebra& A = K[ai];
    e.validate(A.sig);
    std::set<std::string> vs = e.vars();
    for (const Identity& p : premises) {
      p.validate(A.sig);
      auto pv = p.vars();
      vs.insert(pv.begin(), pv.end());
    }
    std::vector<std::string> vars(vs.begin(), vs.end());
    std::vector<CompiledTerm> pl, pr;
    for (const Identity& p : premises) {
      pl.push_back(compile_term(A, p.lhs, vars));
      pr.push_back(compile_term(A, p.rhs, vars));
    }
    CompiledTerm cl = compile_term(A, e.lhs, vars);
    CompiledTerm cr = compile_term(A, e.rhs, vars);
    std::vector<int> vals(vars.size(), 0), stack;
    bool more = true;
    while (more) {
      bool prem_ok = true;
      for (size_t i = 0; i < pl.size() && prem_ok; ++i)
        prem_ok = eval_compiled(A, pl[i], vals.data(), stack) ==
                  eval_compiled(A, pr[i], vals.data(), stack);
      if (prem_ok && eval_compiled(A, cl, vals.data(), stack) !=
                         eval_compiled(A, cr, vals.data(), stack)) {
        ConsequenceResult r;
        r.ok = false;
        r.algebra_index = ai;
        for (size_t i = 0; i < vars.size(); ++i) r.witness[vars[i]] = vals[i];
        return r;
      }
      int i = (int)vals.size() - 1;
      while (i >= 0 && vals[i] == A.size - 1) vals[i--] = 0;
      if (i < 0) more = false;
      else ++vals[i];
    }
  }
  return ConsequenceResult{true, -1, {}};
}

// K-equipotence restricted to the pool: same validity status everywhere.
inline bool equipotent(const Identity& e1, const Identity& e2,
                       const std::vector<FiniteAlgebra>& pool) {
  for (const FiniteAlgebra& A : pool)
    if (holds_fast(A, e1) != holds_fast(A, e2)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Direct products (used by tests and the 1-1-homomorphism construction)
// ---------------------------------------------------------------------------

inline FiniteAlgebra direct_product(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  if (!(A.sig == B.sig)) throw input_error("direct_product: signature mismatch");
  FiniteAlgebra P;
  P.sig = A.sig;
  P.size = A.size * B.size;
  auto pack = [&](int a, int b) { return a * B.size + b; };
  P.tables.resize(A.sig.ops.size());
  for (size_t op = 0; op < A.sig.ops.size(); ++op) {
    int ar = A.sig.ops[op].arity;
    size_t total = 1;
    for (int i = 0; i < ar; ++i) total *= (size_t)P.size;
    P.tables[op].resize(total);
    std::vector<int> args(ar, 0), aa(ar), ba(ar);
    size_t idx = 0;
    bool more = true;
    while (more) {
      for (int i = 0; i < ar; ++i) {
        aa[i] = args[i] / B.size;
        ba[i] = args[i] % B.size;
      }
      P.tables[op][idx] = pack(A.app(op, aa), B.app(op, ba));
      ++idx;
      int i = ar - 1;
      while (i >= 0 && args[i] == P.size - 1) args[i--] = 0;
      if (i < 0) more = false;
      else ++args[i];
    }
  }
  for (int a = 0; a < A.size; ++a)
    for (int b = 0; b < B.size; ++b)
      P.names.push_back("(" + A.name_of(a) + "," + B.name_of(b) + ")");
  return P;
}

}  // namespace jankov
