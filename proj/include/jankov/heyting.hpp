#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "jankov/morphism.hpp"

namespace jankov {

struct Poset {
  int size = 0;
  std::vector<std::pair<int, int>> covers;  // (lower, upper)
  std::vector<std::string> names;

  // Reflexive-transitive closure of the cover relation; throws on cycles.
  std::vector<std::vector<bool>> leq_matrix() const {
    std::vector<std::vector<bool>> leq(size, std::vector<bool>(size, false));
    for (int i = 0; i < size; ++i) leq[i][i] = true;
    for (auto [a, b] : covers) {
      if (a < 0 || a >= size || b < 0 || b >= size)
        throw input_error("poset cover out of range");
      leq[a][b] = true;
    }
    for (int k = 0; k < size; ++k)
      for (int i = 0; i < size; ++i)
        if (leq[i][k])
          for (int j = 0; j < size; ++j)
            if (leq[k][j]) leq[i][j] = true;
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        if (i != j && leq[i][j] && leq[j][i])
          throw input_error("poset covers contain a cycle");
    return leq;
  }
};

namespace detail {

// Build Heyting tables from a <= matrix.  Throws if the order is not a
// bounded distributive lattice with all relative pseudo-complements.
inline FiniteAlgebra heyting_from_leq(const std::vector<std::vector<bool>>& leq,
                                      std::vector<std::string> names) {
  int n = (int)leq.size();
  if (n == 0) throw input_error("empty poset");
  auto meet_of = [&](int x, int y) {
    int best = -1;
    for (int z = 0; z < n; ++z)
      if (leq[z][x] && leq[z][y] && (best < 0 || leq[best][z])) best = z;
    // verify greatest lower bound
    if (best < 0) throw input_error("not a lattice: no lower bound");
    for (int z = 0; z < n; ++z)
      if (leq[z][x] && leq[z][y] && !leq[z][best])
        throw input_error("not a lattice: meet does not exist");
    return best;
  };
  auto join_of = [&](int x, int y) {
    int best = -1;
    for (int z = 0; z < n; ++z)
      if (leq[x][z] && leq[y][z] && (best < 0 || leq[z][best])) best = z;
    if (best < 0) throw input_error("not a lattice: no upper bound");
    for (int z = 0; z < n; ++z)
      if (leq[x][z] && leq[y][z] && !leq[best][z])
        throw input_error("not a lattice: join does not exist");
    return best;
  };

  FiniteAlgebra A;
  A.sig = Signature::heyting();
  A.size = n;
  A.tables.assign(5, {});
  A.tables[0].resize((size_t)n * n);  // meet
  A.tables[1].resize((size_t)n * n);  // join
  A.tables[2].resize((size_t)n * n);  // impl
  A.tables[3].resize(n);              // neg
  A.tables[4].resize(1);              // one
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      A.tables[0][(size_t)x * n + y] = meet_of(x, y);
      A.tables[1][(size_t)x * n + y] = join_of(x, y);
    }
  // bottom & top must exist
  int bot = 0, top = 0;
  for (int x = 0; x < n; ++x) {
    if (leq[x][bot]) bot = x;
    if (leq[top][x]) top = x;
  }
  for (int x = 0; x < n; ++x)
    if (!leq[bot][x] || !leq[x][top]) throw input_error("lattice is not bounded");
  A.tables[4][0] = top;

  // distributivity
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        int l = A.tables[0][(size_t)x * n + A.tables[1][(size_t)y * n + z]];
        int r = A.tables[1][(size_t)A.tables[0][(size_t)x * n + y] * n +
                            A.tables[0][(size_t)x * n + z]];
        if (l != r) throw input_error("lattice is not distributive");
      }

  // relative pseudo-complement: x->y = max { z : z & x <= y }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int best = -1;
      for (int z = 0; z < n; ++z) {
        if (!leq[A.tables[0][(size_t)z * n + x]][y]) continue;
        if (best < 0 || leq[best][z]) best = z;
      }
      for (int z = 0; z < n; ++z)
        if (leq[A.tables[0][(size_t)z * n + x]][y] && !leq[z][best])
          throw input_error("relative pseudo-complement missing");
      A.tables[2][(size_t)x * n + y] = best;
    }
  for (int x = 0; x < n; ++x) A.tables[3][x] = A.tables[2][(size_t)x * n + bot];
  A.names = std::move(names);
  return A;
}

}  // namespace detail

inline FiniteAlgebra heyting_from_poset(const Poset& P) {
  return detail::heyting_from_leq(P.leq_matrix(), P.names);
}

// Structural check: does this table set describe a Heyting algebra?
inline bool is_heyting_algebra(const FiniteAlgebra& A) {
  if (!(A.sig == Signature::heyting()) && !(A.sig == Signature::heyting_constant_free()))
    return false;
  int n = A.size;
  int m = A.sig.index_of("meet"), j = A.sig.index_of("join"), im = A.sig.index_of("impl"),
      ng = A.sig.index_of("neg");
  auto leq = [&](int x, int y) { return A.app2(m, x, y) == x; };
  // partial order from meet; join must agree; residuation; neg = ->bottom
  for (int x = 0; x < n; ++x)
    if (A.app2(m, x, x) != x || A.app2(j, x, x) != x) return false;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (A.app2(m, x, y) != A.app2(m, y, x)) return false;
      if (A.app2(j, x, y) != A.app2(j, y, x)) return false;
      if (A.app2(j, A.app2(m, x, y), y) != y) return false;  // absorption
      if (A.app2(m, A.app2(j, x, y), y) != y) return false;
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (A.app2(m, x, A.app2(m, y, z)) != A.app2(m, A.app2(m, x, y), z)) return false;
        if (A.app2(m, x, A.app2(j, y, z)) != A.app2(j, A.app2(m, x, y), A.app2(m, x, z)))
          return false;
        // residuation law: z & x <= y  <=>  z <= x -> y
        bool lhs = leq(A.app2(m, z, x), y);
        bool rhs = leq(z, A.app2(im, x, y));
        if (lhs != rhs) return false;
      }
  // bottom and top
  int bot = 0, top = 0;
  for (int x = 0; x < n; ++x) {
    if (leq(x, bot)) bot = x;
    if (leq(top, x)) top = x;
  }
  for (int x = 0; x < n; ++x)
    if (!leq(bot, x) || !leq(x, top)) return false;
  for (int x = 0; x < n; ++x)
    if (A.app1(ng, x) != A.app2(im, x, bot)) return false;
  if (A.sig.has("one") && A.app0(A.sig.index_of("one")) != top) return false;
  return true;
}

inline int heyting_top(const FiniteAlgebra& A) {
  int m = A.sig.index_of("meet");
  int top = 0;
  for (int x = 0; x < A.size; ++x)
    if (A.app2(m, top, x) == top) top = x;
  return top;
}

inline int heyting_bottom(const FiniteAlgebra& A) {
  int m = A.sig.index_of("meet");
  int bot = 0;
  for (int x = 0; x < A.size; ++x)
    if (A.app2(m, x, bot) == x) bot = x;
  return bot;
}

// n-element chain 0 < ... < n-1 as a Heyting algebra.  The middle element of
// chain(3) is named "w" to match the usual picture of Z3; longer chains use
// a, b, c, ...
inline FiniteAlgebra chain(int n) {
  if (n < 2) throw input_error("chain requires n >= 2");
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) leq[i][j] = true;
  std::vector<std::string> names(n);
  names[0] = "0";
  names[n - 1] = "1";
  if (n == 3) {
    names[1] = "w";
  } else {
    for (int i = 1; i < n - 1; ++i) names[i] = std::string(1, (char)('a' + i - 1));
  }
  return detail::heyting_from_leq(leq, names);
}

// Stack B above A, identifying top(A) with bottom(B).
inline FiniteAlgebra ordinal_sum(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  if (!is_heyting_algebra(A) || !is_heyting_algebra(B))
    throw input_error("ordinal_sum requires Heyting algebras");
  int topA = heyting_top(A), botB = heyting_bottom(B);
  int n = A.size + B.size - 1;
  // index map: A elements keep ids; B elements (except bottom) appended.
  std::vector<int> bmap(B.size);
  int next = A.size;
  for (int b = 0; b < B.size; ++b) bmap[b] = (b == botB) ? topA : next++;
  int mA = A.sig.index_of("meet"), mB = B.sig.index_of("meet");
  auto leqA = [&](int x, int y) { return A.app2(mA, x, y) == x; };
  auto leqB = [&](int x, int y) { return B.app2(mB, x, y) == x; };
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int x = 0; x < A.size; ++x)
    for (int y = 0; y < A.size; ++y)
      if (leqA(x, y)) leq[x][y] = true;
  for (int x = 0; x < B.size; ++x)
    for (int y = 0; y < B.size; ++y)
      if (leqB(x, y)) leq[bmap[x]][bmap[y]] = true;
  // every element of A sits below every element strictly inside B
  for (int x = 0; x < A.size; ++x)
    for (int y = 0; y < B.size; ++y)
      if (bmap[y] >= A.size) leq[x][bmap[y]] = true;
  std::vector<std::string> names(n);
  for (int x = 0; x < A.size; ++x) names[x] = A.name_of(x);
  for (int b = 0; b < B.size; ++b)
    if (bmap[b] >= A.size) names[bmap[b]] = A.name_of(topA) + "+" + B.name_of(b);
  return detail::heyting_from_leq(leq, names);
}

// Greatest element among those != 1, when it exists; exists iff A is s.i.
inline std::optional<int> opremum(const FiniteAlgebra& A) {
  if (!is_heyting_algebra(A)) throw input_error("opremum: not a Heyting algebra");
  if (A.degenerate()) return std::nullopt;
  int m = A.sig.index_of("meet");
  int top = heyting_top(A);
  int cand = -1;
  for (int x = 0; x < A.size; ++x) {
    if (x == top) continue;
    if (cand < 0 || A.app2(m, cand, x) == cand) cand = x;
  }
  for (int x = 0; x < A.size; ++x)
    if (x != top && A.app2(m, x, cand) != x) return std::nullopt;
  return cand;
}

// The n with chain(n) embeddable but chain(n+1) not.
inline int slice_index(const FiniteAlgebra& A) {
  if (!is_heyting_algebra(A) || A.degenerate())
    throw input_error("slice_index: nondegenerate Heyting algebra required");
  int n = 2;
  while (n + 1 <= A.size && find_embedding(chain(n + 1), A).has_value()) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Canonical keys and bounded enumeration
// ---------------------------------------------------------------------------

// Lexicographically least table serialization over all element relabelings.
// Feasible at the supported scale (<= ~8 elements, and only applied to the
// handful of algebras that survive isomorphism rejection).
inline std::vector<int> canonical_key(const FiniteAlgebra& A) {
  std::vector<int> perm(A.size), best;
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> cur;
  do {
    std::vector<int> inv(A.size);
    for (int i = 0; i < A.size; ++i) inv[perm[i]] = i;
    cur.clear();
    for (size_t op = 0; op < A.sig.ops.size(); ++op) {
      int ar = A.sig.ops[op].arity;
      std::vector<int> args(ar, 0);
      bool more = true;
      while (more) {
        std::vector<int> pre(ar);
        for (int i = 0; i < ar; ++i) pre[i] = perm[args[i]];
        cur.push_back(inv[A.app((int)op, pre)]);
        int i = ar - 1;
        while (i >= 0 && args[i] == A.size - 1) args[i--] = 0;
        if (i < 0) more = false;
        else ++args[i];
      }
    }
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// All nondegenerate Heyting algebras with at most max_size elements, up to
// isomorphism, ordered by (size, canonical key).  Enumerates posets of
// join-irreducibles (Birkhoff duality): every finite distributive lattice is
// the lattice of down-sets of a finite poset, and every finite distributive
// lattice carries a unique Heyting structure.
inline std::vector<FiniteAlgebra> enumerate_heyting(int max_size);

inline std::vector<FiniteAlgebra> enumerate_si_heyting(int max_size) {
  std::vector<FiniteAlgebra> out;
  for (const FiniteAlgebra& A : enumerate_heyting(max_size))
    if (opremum(A).has_value()) out.push_back(A);
  return out;
}

namespace detail {

inline FiniteAlgebra downset_lattice(int k, const std::vector<unsigned>& below) {
  // below[p] = bitmask of elements <= p (within the join-irreducible poset)
  std::vector<unsigned> downsets;
  for (unsigned s = 0; s < (1u << k); ++s) {
    bool ok = true;
    for (int p = 0; p < k && ok; ++p)
      if (s & (1u << p)) ok = (below[p] & ~s) == 0;
    if (ok) downsets.push_back(s);
  }
  std::sort(downsets.begin(), downsets.end(), [](unsigned a, unsigned b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  std::map<unsigned, int> idx;
  for (size_t i = 0; i < downsets.size(); ++i) idx[downsets[i]] = (int)i;
  int n = (int)downsets.size();
  FiniteAlgebra A;
  A.sig = Signature::heyting();
  A.size = n;
  A.tables.assign(5, {});
  A.tables[0].resize((size_t)n * n);
  A.tables[1].resize((size_t)n * n);
  A.tables[2].resize((size_t)n * n);
  A.tables[3].resize(n);
  A.tables[4] = {n - 1};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      A.tables[0][(size_t)x * n + y] = idx.at(downsets[x] & downsets[y]);
      A.tables[1][(size_t)x * n + y] = idx.at(downsets[x] | downsets[y]);
      // x -> y = { p : below(p) & x  subset of  y }
      unsigned r = 0;
      for (int p = 0; p < k; ++p)
        if ((below[p] & downsets[x] & ~downsets[y]) == 0) r |= (1u << p);
      A.tables[2][(size_t)x * n + y] = idx.at(r);
    }
  for (int x = 0; x < n; ++x) A.tables[3][x] = A.tables[2][(size_t)x * n + 0];
  return A;
}

}  // namespace detail

inline std::vector<FiniteAlgebra> enumerate_heyting(int max_size) {
  static std::map<int, std::vector<FiniteAlgebra>> cache;
  auto it = cache.find(max_size);
  if (it != cache.end()) return it->second;
  if (max_size < 2) return {};

  std::vector<FiniteAlgebra> found;
  // k join-irreducibles give at least k+1 down-sets, so k < max_size.
  for (int k = 0; k < max_size; ++k) {
    int bits = k * (k - 1) / 2;
    // Upper-triangular strict-order candidates: relation i<j only for i<j
    // numerically; every poset admits such a labeling.
    for (unsigned long long mask = 0; mask < (1ull << bits); ++mask) {
      // decode
      std::vector<unsigned> lt(k, 0);  // lt[i] bit j set => i < j
      int bit = 0;
      bool ok = true;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++bit)
          if (mask & (1ull << bit)) lt[i] |= (1u << j);
      // transitivity: i<j and j<l => i<l
      for (int i = 0; i < k && ok; ++i)
        for (int j = i + 1; j < k && ok; ++j)
          if (lt[i] & (1u << j))
            if ((lt[j] & ~lt[i]) != 0) ok = false;
      if (!ok) continue;
      std::vector<unsigned> below(k);
      for (int p = 0; p < k; ++p) {
        below[p] = 1u << p;
        for (int q = 0; q < p; ++q)
          if (lt[q] & (1u << p)) below[p] |= (1u << q);
      }
      // count down-sets with early abort
      int count = 0;
      bool small = true;
      for (unsigned s = 0; s < (1u << k) && small; ++s) {
        bool ds = true;
        for (int p = 0; p < k && ds; ++p)
          if (s & (1u << p)) ds = (below[p] & ~s) == 0;
        if (ds && ++count > max_size) small = false;
      }
      if (!small || count < 2) continue;
      FiniteAlgebra A = detail::downset_lattice(k, below);
      bool dup = false;
      for (const FiniteAlgebra& B : found)
        if (B.size == A.size && is_isomorphic(A, B)) { dup = true; break; }
      if (!dup) found.push_back(std::move(A));
    }
  }
  std::vector<std::pair<std::vector<int>, size_t>> keyed;
  for (size_t i = 0; i < found.size(); ++i) keyed.push_back({canonical_key(found[i]), i});
  std::sort(keyed.begin(), keyed.end(),
            [&](const auto& a, const auto& b) {
              int sa = found[a.second].size, sb = found[b.second].size;
              if (sa != sb) return sa < sb;
              return a.first < b.first;
            });
  std::vector<FiniteAlgebra> out;
  for (const auto& [key, i] : keyed) out.push_back(std::move(found[i]));
  cache[max_size] = out;
  return out;
}

}  // namespace jankov
