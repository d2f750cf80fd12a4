#pragma once

#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "jankov/algebra.hpp"

namespace jankov {

// A congruence stored as a partition: block[x] = least element of x's class.
struct Congruence {
  std::vector<int> block;

  bool operator==(const Congruence&) const = default;
  bool operator<(const Congruence& o) const { return block < o.block; }

  int size() const { return (int)block.size(); }
  bool same(int a, int b) const { return block[a] == block[b]; }

  int num_blocks() const {
    int n = 0;
    for (int i = 0; i < (int)block.size(); ++i)
      if (block[i] == i) ++n;
    return n;
  }

  bool is_identity() const {
    for (int i = 0; i < (int)block.size(); ++i)
      if (block[i] != i) return false;
    return true;
  }

  bool is_full() const {
    for (int b : block)
      if (b != 0) return false;
    return !block.empty();
  }

  // Refinement order: this <= other iff every block of this is inside a block
  // of other.
  bool finer_or_equal(const Congruence& o) const {
    for (int i = 0; i < (int)block.size(); ++i)
      if (!o.same(i, block[i])) return false;
    return true;
  }

  static Congruence identity(int n) {
    Congruence c;
    c.block.resize(n);
    std::iota(c.block.begin(), c.block.end(), 0);
    return c;
  }

  static Congruence full(int n) {
    Congruence c;
    c.block.assign(n, 0);
    return c;
  }

  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out;
    for (int r = 0; r < (int)block.size(); ++r) {
      if (block[r] != r) continue;
      std::vector<int> cls;
      for (int i = 0; i < (int)block.size(); ++i)
        if (block[i] == r) cls.push_back(i);
      out.push_back(std::move(cls));
    }
    return out;
  }
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep least element as root
    parent[b] = a;
    return true;
  }
  Congruence to_congruence() {
    Congruence c;
    c.block.resize(parent.size());
    for (int i = 0; i < (int)parent.size(); ++i) c.block[i] = find(i);
    return c;
  }
};

// Close a union-find under compatibility with all operations of A: whenever
// two tuples are blockwise merged, their images must be merged.  Plain
// fixpoint iteration; universes here are tiny.
inline void close_compatible(const FiniteAlgebra& A, UnionFind& uf) {
  bool changed = true;
  std::vector<int> t1, t2;
  while (changed) {
    changed = false;
    for (size_t op = 0; op < A.sig.ops.size(); ++op) {
      int ar = A.sig.ops[op].arity;
      if (ar == 0) continue;
      if (ar == 1) {
        for (int x = 0; x < A.size; ++x)
          for (int y = x + 1; y < A.size; ++y)
            if (uf.find(x) == uf.find(y))
              changed |= uf.unite(A.app1((int)op, x), A.app1((int)op, y));
        continue;
      }
      if (ar == 2) {
        for (int x1 = 0; x1 < A.size; ++x1)
          for (int x2 = 0; x2 < A.size; ++x2) {
            if (uf.find(x1) != uf.find(x2)) continue;
            for (int y1 = 0; y1 < A.size; ++y1)
              for (int y2 = 0; y2 < A.size; ++y2) {
                if (uf.find(y1) != uf.find(y2)) continue;
                changed |= uf.unite(A.app2((int)op, x1, y1), A.app2((int)op, x2, y2));
              }
          }
        continue;
      }
      // General arity: iterate over all pairs of blockwise-equal tuples.
      t1.assign(ar, 0);
      bool more1 = true;
      while (more1) {
        t2.assign(ar, 0);
        bool more2 = true;
        while (more2) {
          bool rel = true;
          for (int i = 0; i < ar && rel; ++i) rel = uf.find(t1[i]) == uf.find(t2[i]);
          if (rel) changed |= uf.unite(A.app((int)op, t1), A.app((int)op, t2));
          int i = ar - 1;
          while (i >= 0 && t2[i] == A.size - 1) t2[i--] = 0;
          if (i < 0) more2 = false;
          else ++t2[i];
        }
        int i = ar - 1;
        while (i >= 0 && t1[i] == A.size - 1) t1[i--] = 0;
        if (i < 0) more1 = false;
        else ++t1[i];
      }
    }
  }
}

}  // namespace detail

inline Congruence compact_congruence(const FiniteAlgebra& A,
                                     const std::vector<std::pair<int, int>>& pairs) {
  detail::UnionFind uf(A.size);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= A.size || b < 0 || b >= A.size)
      throw input_error("congruence generator pair out of range");
    uf.unite(a, b);
  }
  detail::close_compatible(A, uf);
  return uf.to_congruence();
}

inline Congruence principal_congruence(const FiniteAlgebra& A, int a, int b) {
  return compact_congruence(A, {{a, b}});
}

inline Congruence congruence_join(const FiniteAlgebra& A, const Congruence& t1,
                                  const Congruence& t2) {
  detail::UnionFind uf(A.size);
  for (int i = 0; i < A.size; ++i) {
    uf.unite(i, t1.block[i]);
    uf.unite(i, t2.block[i]);
  }
  detail::close_compatible(A, uf);
  return uf.to_congruence();
}

inline Congruence congruence_meet(const Congruence& t1, const Congruence& t2) {
  // Common refinement; always a congruence when both arguments are.
  int n = (int)t1.block.size();
  Congruence c;
  c.block.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (c.block[i] >= 0) continue;
    for (int j = i; j < n; ++j)
      if (t1.same(i, j) && t2.same(i, j)) c.block[j] = i;
  }
  return c;
}

inline bool is_congruence(const FiniteAlgebra& A, const Congruence& c) {
  if ((int)c.block.size() != A.size) return false;
  for (int i = 0; i < A.size; ++i) {
    if (c.block[i] < 0 || c.block[i] > i) return false;
    if (c.block[c.block[i]] != c.block[i]) return false;
  }
  detail::UnionFind uf(A.size);
  for (int i = 0; i < A.size; ++i) uf.unite(i, c.block[i]);
  detail::close_compatible(A, uf);
  return uf.to_congruence() == c;
}

// All congruences of A: close {identity} + all principals under join.
// Deterministic order: by number of blocks descending (identity first, full
// last), then lexicographic partition vector.
inline std::vector<Congruence> all_congruences(const FiniteAlgebra& A) {
  std::set<Congruence> seen;
  std::vector<Congruence> work;
  auto push = [&](Congruence c) {
    if (seen.insert(c).second) work.push_back(std::move(c));
  };
  push(Congruence::identity(A.size));
  for (int a = 0; a < A.size; ++a)
    for (int b = a + 1; b < A.size; ++b) push(principal_congruence(A, a, b));
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t j = 0; j < i; ++j) push(congruence_join(A, work[i], work[j]));
  std::vector<Congruence> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const Congruence& x, const Congruence& y) {
    int bx = x.num_blocks(), by = y.num_blocks();
    if (bx != by) return bx > by;
    return x.block < y.block;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

struct Quotient {
  FiniteAlgebra algebra;
  std::vector<int> projection;  // element of A -> element of quotient
};

inline Quotient quotient(const FiniteAlgebra& A, const Congruence& theta) {
  if (!is_congruence(A, theta))
    throw input_error("quotient: partition is not a congruence of the algebra");
  // Blocks renumbered 0..m-1 by least member.
  std::vector<int> reps;
  for (int i = 0; i < A.size; ++i)
    if (theta.block[i] == i) reps.push_back(i);
  std::vector<int> proj(A.size);
  for (int i = 0; i < A.size; ++i)
    proj[i] = (int)(std::lower_bound(reps.begin(), reps.end(), theta.block[i]) - reps.begin());

  FiniteAlgebra Q;
  Q.sig = A.sig;
  Q.size = (int)reps.size();
  Q.tables.resize(A.sig.ops.size());
  std::vector<int> args;
  for (size_t op = 0; op < A.sig.ops.size(); ++op) {
    int ar = A.sig.ops[op].arity;
    size_t total = 1;
    for (int i = 0; i < ar; ++i) total *= (size_t)Q.size;
    Q.tables[op].resize(total);
    args.assign(ar, 0);
    size_t idx = 0;
    bool more = true;
    while (more) {
      std::vector<int> lifted(ar);
      for (int i = 0; i < ar; ++i) lifted[i] = reps[args[i]];
      Q.tables[op][idx] = proj[A.app((int)op, lifted)];
      ++idx;
      int i = ar - 1;
      while (i >= 0 && args[i] == Q.size - 1) args[i--] = 0;
      if (i < 0) more = false;
      else ++args[i];
    }
  }
  for (int r : reps) {
    // Name a block by its least member's name; brackets mark proper blocks.
    bool proper = false;
    for (int i = 0; i < A.size; ++i)
      if (theta.block[i] == r && i != r) proper = true;
    Q.names.push_back(proper ? "[" + A.name_of(r) + "]" : A.name_of(r));
  }
  return Quotient{std::move(Q), std::move(proj)};
}

// ---------------------------------------------------------------------------
// Monolith / subdirect irreducibility
// ---------------------------------------------------------------------------

struct Monolith {
  Congruence theta;
  std::pair<int, int> pair;  // an indistinguishable pair generating it
};

// Meet of all principal congruences theta(a,b), a != b; this is the least
// non-identity congruence when it is non-identity, and then A is s.i.
inline std::optional<Monolith> monolith(const FiniteAlgebra& A) {
  if (A.size < 2) throw input_error("monolith: degenerate algebra");
  Congruence m = Congruence::full(A.size);
  for (int a = 0; a < A.size; ++a)
    for (int b = a + 1; b < A.size; ++b)
      m = congruence_meet(m, principal_congruence(A, a, b));
  if (m.is_identity()) return std::nullopt;
  for (int a = 0; a < A.size; ++a)
    for (int b = a + 1; b < A.size; ++b)
      if (m.same(a, b)) return Monolith{m, {a, b}};
  return std::nullopt;  // unreachable
}

inline bool is_subdirectly_irreducible(const FiniteAlgebra& A) {
  return A.size >= 2 && monolith(A).has_value();
}

// Subdirect decomposition: quotients by an irredundant set of meet-irreducible
// congruences (unique upper cover in Con(A)) whose meet is the identity.
inline std::vector<Congruence> meet_irreducible_congruences(const FiniteAlgebra& A) {
  std::vector<Congruence> all = all_congruences(A);
  std::vector<Congruence> out;
  for (const Congruence& c : all) {
    // Find upper covers of c.
    std::vector<const Congruence*> above;
    for (const Congruence& d : all)
      if (!(d == c) && c.finer_or_equal(d)) above.push_back(&d);
    std::vector<const Congruence*> covers;
    for (const Congruence* d : above) {
      bool is_cover = true;
      for (const Congruence* m : above)
        if (m != d && m->finer_or_equal(*d) && !(*m == *d)) { is_cover = false; break; }
      if (is_cover) covers.push_back(d);
    }
    if (covers.size() == 1) out.push_back(c);
  }
  return out;
}

inline std::vector<FiniteAlgebra> subdirect_factors(const FiniteAlgebra& A) {
  if (A.size < 2) throw input_error("subdirect_factors: degenerate algebra");
  std::vector<Congruence> mi = meet_irreducible_congruences(A);
  // Greedy irredundancy: try to drop coarser congruences first.
  std::sort(mi.begin(), mi.end(), [](const Congruence& x, const Congruence& y) {
    int bx = x.num_blocks(), by = y.num_blocks();
    if (bx != by) return bx < by;  // fewest blocks (coarsest) first
    return x.block < y.block;
  });
  std::vector<bool> keep(mi.size(), true);
  auto meet_of_kept = [&](int skip) {
    Congruence m = Congruence::full(A.size);
    for (size_t i = 0; i < mi.size(); ++i)
      if (keep[i] && (int)i != skip) m = congruence_meet(m, mi[i]);
    return m;
  };
  for (size_t i = 0; i < mi.size(); ++i)
    if (meet_of_kept((int)i).is_identity()) keep[i] = false;
  if (!meet_of_kept(-1).is_identity())
    throw internal_error("subdirect_factors: meet of meet-irreducibles is not the identity");
  std::vector<FiniteAlgebra> factors;
  for (size_t i = 0; i < mi.size(); ++i)
    if (keep[i]) factors.push_back(quotient(A, mi[i]).algebra);
  std::sort(factors.begin(), factors.end(), [](const FiniteAlgebra& x, const FiniteAlgebra& y) {
    if (x.size != y.size) return x.size < y.size;
    return x.tables < y.tables;
  });
  return factors;
}

}  // namespace jankov
