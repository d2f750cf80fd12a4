#pragma once

#include <map>
#include <string>
#include <vector>

#include "jankov/variety_spec.hpp"

namespace jankov {

// A finitely presented algebra: n generators x1..xn and a list of defining
// relations between terms in those generators.
struct Presentation {
  VarietySpec variety;
  int num_generators = 0;
  std::vector<Identity> relations;

  void validate() const {
    if (num_generators < 0) throw input_error("presentation: negative generator count");
    std::set<std::string> allowed;
    for (int i = 1; i <= num_generators; ++i) allowed.insert("x" + std::to_string(i));
    // also accept plain "x" as an alias for x1 in rank-1 presentations
    if (num_generators == 1) allowed.insert("x");
    for (const Identity& e : relations) {
      e.lhs.validate(variety.sig);
      e.rhs.validate(variety.sig);
      std::set<std::string> vs = e.lhs.vars();
      std::set<std::string> vs2 = e.rhs.vars();
      vs.insert(vs2.begin(), vs2.end());
      for (const std::string& v : vs)
        if (!allowed.count(v))
          throw input_error("relation variable " + v + " outside x1..x" +
                            std::to_string(num_generators));
    }
  }
};

struct PresentedAlgebra {
  FiniteAlgebra algebra;
  std::vector<int> gen_images;        // image of each generator x1..xn
  std::vector<Term> witness;          // a defining term per element
  std::vector<std::string> var_names;
  FreeAlgebra free_alg;               // the rank-n free algebra we quotiented
  Congruence rel_congruence;          // congruence generated by the relations
};

// F_V(n) modulo the congruence generated by the relation pairs.  Relation
// variables may be written x1..xn (or x for rank 1).
inline PresentedAlgebra presented_algebra(const Presentation& P, int cap = 4096) {
  P.validate();
  FreeAlgebra F = free_algebra(P.variety, P.num_generators, cap);

  // evaluate a relation side inside the free algebra
  Valuation env;
  for (int i = 0; i < P.num_generators; ++i) env["x" + std::to_string(i + 1)] = F.generators[i];
  if (P.num_generators == 1) env["x"] = F.generators[0];

  std::vector<std::pair<int, int>> pairs;
  for (const Identity& e : P.relations)
    pairs.push_back({eval_term(F.algebra, e.lhs, env), eval_term(F.algebra, e.rhs, env)});
  Congruence theta = compact_congruence(F.algebra, pairs);
  Quotient Q = quotient(F.algebra, theta);

  PresentedAlgebra R;
  R.algebra = Q.algebra;
  R.free_alg = std::move(F);
  R.rel_congruence = theta;
  R.var_names = R.free_alg.var_names;
  for (int g : R.free_alg.generators) R.gen_images.push_back(Q.projection[g]);
  // witness per quotient element: term of the least free-algebra preimage
  R.witness.assign(R.algebra.size, Term::var("?"));
  std::vector<bool> seen(R.algebra.size, false);
  for (int a = 0; a < R.free_alg.algebra.size; ++a) {
    int q = Q.projection[a];
    if (!seen[q]) { seen[q] = true; R.witness[q] = R.free_alg.terms[a]; }
  }
  R.algebra.names.clear();
  for (const Term& t : R.witness) R.algebra.names.push_back(print_term(t));

  // sanity: the relations hold at the generator images
  Valuation img;
  for (const auto& [k, v] : env) img[k] = Q.projection[v];
  for (const Identity& e : P.relations)
    if (eval_term(R.algebra, e.lhs, img) != eval_term(R.algebra, e.rhs, img))
      throw internal_error("presented algebra does not satisfy its relations");
  return R;
}

// Universal property: any assignment of the generators into B in V that
// satisfies the relations extends to a homomorphism.  Used as a post-check.
inline bool extends_to_homomorphism(const PresentedAlgebra& R, const FiniteAlgebra& B,
                                    const std::vector<int>& images) {
  if ((int)images.size() != (int)R.gen_images.size())
    throw input_error("extends_to_homomorphism: wrong image count");
  Valuation v;
  for (size_t i = 0; i < images.size(); ++i) v[R.var_names[i]] = images[i];
  // candidate map: element (with witness term t) goes to t evaluated at images
  std::vector<int> map(R.algebra.size);
  for (int q = 0; q < R.algebra.size; ++q) map[q] = eval_term(B, R.witness[q], v);
  return is_homomorphism(R.algebra, B, map);
}

}  // namespace jankov
