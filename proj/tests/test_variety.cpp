// Variety specifications: membership, free algebras, FSI enumeration,
// axiomatization, and the bounded decision procedures.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jankov/variety_ops.hpp"

using namespace jankov;

namespace {
const Signature kSig = Signature::heyting();

VarietySpec vC2() { return VarietySpec::var({chain(2)}, "var(C2)"); }
VarietySpec vZ3() { return VarietySpec::var({chain(3)}, "var(Z3)"); }
}  // namespace

TEST_CASE("membership") {
  VarietySpec H = VarietySpec::heyting(), s3 = VarietySpec::slice(3);
  CHECK(membership(chain(2), vZ3()));
  CHECK(membership(chain(3), vZ3()));
  CHECK(!membership(chain(4), vZ3()));
  CHECK(membership(direct_product(chain(2), chain(3)), vZ3()));
  CHECK(!membership(chain(3), vC2()));
  CHECK(membership(chain(3), H));
  // slices: algebras with no (n+1)-chain in SubHom; chain(n+1) itself is the
  // edge algebra, sitting just outside
  CHECK(membership(chain(3), s3));
  CHECK(!membership(chain(4), s3));
  CHECK(!membership(chain(5), s3));
  CHECK(membership(chain(2), VarietySpec::slice(2)));
  CHECK(!membership(chain(3), VarietySpec::slice(2)));
  // axioms over an ambient
  VarietySpec boole = VarietySpec::by_axioms({parse_identity("x | ~x = 1", kSig)}, H);
  CHECK(membership(chain(2), boole));
  CHECK(membership(direct_product(chain(2), chain(2)), boole));
  CHECK(!membership(chain(3), boole));
}

TEST_CASE("free algebras: both constructions agree") {
  FreeAlgebra d = free_algebra_direct(vZ3(), 1);
  FreeAlgebra t = free_algebra_terms(vZ3(), 1);
  CHECK(d.algebra.size == 6);
  CHECK(t.algebra.size == 6);
  CHECK(is_isomorphic(d.algebra, t.algebra));

  FreeAlgebra d2 = free_algebra_direct(vC2(), 2);
  FreeAlgebra t2 = free_algebra_terms(vC2(), 2);
  CHECK(d2.algebra.size == 16);
  CHECK(is_isomorphic(d2.algebra, t2.algebra));

  // representative terms evaluate to their elements under the generator
  // valuation, in each generator algebra via every assignment (universal
  // property at rank 1)
  FreeAlgebra f = free_algebra(vZ3(), 1);
  CHECK(f.rank == 1);
  CHECK(f.terms[f.generators[0]] == Term::var(f.var_names[0]));
  FiniteAlgebra Z3 = chain(3);
  for (int a = 0; a < 3; ++a) {
    // x -> a induces a homomorphism F -> Z3 via term evaluation
    Valuation v{{f.var_names[0], a}};
    std::vector<int> img(f.algebra.size);
    for (int u = 0; u < f.algebra.size; ++u) img[u] = eval_term(Z3, f.terms[u], v);
    CHECK(is_homomorphism(f.algebra, Z3, img));
  }
}

TEST_CASE("free spectra and beta bounds") {
  CHECK(free_spectrum(vC2(), 1) == 4);
  CHECK(free_spectrum(vC2(), 2) == 16);
  CHECK(free_spectrum(vZ3(), 1) == 6);
  CHECK(beta_bound(vZ3(), 1) == 6);
  // axioms spec inherits the ambient's bound
  VarietySpec sub = VarietySpec::by_axioms({parse_identity("~~x -> x = 1", kSig)}, vZ3());
  CHECK(beta_bound(sub, 1) == 6);
  // explicit table wins
  VarietySpec tab = sub;
  tab.beta_table = {1, 4};
  CHECK(beta_bound(tab, 1) == 4);
  // no bound available for the unrestricted Heyting variety
  CHECK_THROWS_AS(beta_bound(VarietySpec::heyting(), 1), bound_error);
}

TEST_CASE("FSI enumeration") {
  std::vector<FiniteAlgebra> a = enumerate_fsi(vZ3(), 5);
  REQUIRE(a.size() == 2);
  CHECK(a[0].size == 2);
  CHECK(a[1].size == 3);
  std::vector<FiniteAlgebra> b = enumerate_fsi(vC2(), 4);
  REQUIRE(b.size() == 1);
  CHECK(b[0].size == 2);
  // slice(3) up to 6: C2, Z3, and the 5-element diamond-plus-top
  std::vector<int> sizes;
  for (const FiniteAlgebra& A : enumerate_fsi(VarietySpec::slice(3), 6))
    sizes.push_back(A.size);
  CHECK(sizes == std::vector<int>{2, 3, 5});
  // everything returned is s.i. and a member
  for (const FiniteAlgebra& A : enumerate_fsi(VarietySpec::heyting(), 5)) {
    CHECK(is_subdirectly_irreducible(A));
    CHECK(is_heyting_algebra(A));
  }
}

TEST_CASE("edge algebras") {
  EdgeResult e = is_edge_algebra(chain(4), VarietySpec::slice(3));
  CHECK(e.is_edge);
  CHECK(e.basis_rank == 2);
  CHECK(!is_edge_algebra(chain(3), vZ3()));  // already a member
  CHECK(!is_edge_algebra(chain(5), VarietySpec::slice(3)));  // a quotient is outside too
  // the 5-element diamond-plus-top is an edge algebra of var(Z3)
  FiniteAlgebra D5 = chain(2);
  for (const FiniteAlgebra& A : enumerate_fsi(VarietySpec::slice(3), 6))
    if (A.size == 5) D5 = A;
  REQUIRE(D5.size == 5);
  CHECK((bool)is_edge_algebra(D5, vZ3()));
}

TEST_CASE("optimal axiomatization") {
  // var(C2) inside var(Z3): one axiom, from the minimal excluded algebra Z3
  Axiomatization a1 = optimal_axiomatization(vC2(), vZ3(), 6);
  REQUIRE(a1.axioms.size() == 1);
  REQUIRE(a1.msi.size() == 1);
  CHECK(a1.msi[0].size == 3);
  CHECK(a1.certificates_ok);
  CHECK(equipotent(a1.axioms[0].eval_form(), parse_identity("~~x -> x = 1", kSig),
                   enumerate_heyting(6)));

  // var(Z3) inside slice(3): excluded minimal algebra is the diamond-plus-top
  Axiomatization a2 = optimal_axiomatization(vZ3(), VarietySpec::slice(3), 6);
  REQUIRE(a2.axioms.size() == 1);
  CHECK(a2.msi[0].size == 5);
  CHECK(a2.certificates_ok);

  // V = V0 gives the empty axiomatization
  CHECK(optimal_axiomatization(vZ3(), vZ3(), 6).axioms.empty());
  // insufficient bound is reported, not silently accepted
  CHECK_THROWS_AS(optimal_axiomatization(vZ3(), VarietySpec::slice(3), 5), bound_error);
}

TEST_CASE("identity decision") {
  Identity wem = parse_identity("x | ~x = 1", kSig);
  Identity dne = parse_identity("~~x -> x = 1", kSig);

  IdentityVerdict v = decide_identity(vZ3(), wem);
  CHECK(!v.valid);
  REQUIRE(v.witness_algebra.has_value());
  CHECK(v.witness_algebra->size == 3);
  CHECK(v.witness.at("x") == 1);
  REQUIRE(v.minimal_refuter.has_value());
  CHECK(v.minimal_refuter->size == 3);
  REQUIRE(v.certificate.has_value());
  CHECK(!holds_fast(*v.minimal_refuter, v.certificate->eval_form()));
  REQUIRE(v.sigma_e.has_value());
  CHECK(!holds_fast(*v.minimal_refuter, *v.sigma_e));
  CHECK(v.genrefute_ok);

  CHECK((bool)decide_identity(vC2(), wem));
  CHECK(!decide_identity(vZ3(), dne));
  CHECK((bool)decide_identity(vZ3(), parse_identity("(x -> y) | (y -> x) = 1", kSig)));

  // axioms spec: bounded sweep via the inherited beta bound
  VarietySpec sub = VarietySpec::by_axioms({dne}, vZ3());
  CHECK((bool)decide_identity(sub, wem));
  // the unrestricted variety has no bound
  CHECK_THROWS_AS(
      decide_identity(VarietySpec::by_axioms({dne}, VarietySpec::heyting()), wem),
      bound_error);
}

TEST_CASE("quasi-identity decision") {
  Identity wem = parse_identity("x | ~x = 1", kSig);
  Identity dne = parse_identity("~~x -> x = 1", kSig);
  QuasiVerdict q = decide_quasi({wem}, dne, vZ3());
  CHECK(q.valid);
  CHECK(q.member_bound == 6);
  QuasiVerdict q2 = decide_quasi({parse_identity("~~x = 1", kSig)},
                                 parse_identity("x = 1", kSig), vC2());
  CHECK(q2.valid);
  // and a failing one: nothing forces dne in var(Z3)
  QuasiVerdict q3 = decide_quasi({}, dne, vZ3());
  CHECK(!q3.valid);
  REQUIRE(q3.witness_algebra.has_value());
  CHECK(!holds_fast(*q3.witness_algebra, dne));
}

TEST_CASE("r-complete sets") {
  CharacteristicIdentity chi = char_identity_from_algebra(chain(3));
  RCompleteResult r = is_r_complete({chi.eval_form()}, vZ3(), 5);
  CHECK(r.ok);
  RCompleteResult r2 = is_r_complete({}, vZ3(), 5);
  CHECK(!r2.ok);
  REQUIRE(r2.uncovered.has_value());
  CHECK(is_subdirectly_irreducible(*r2.uncovered));
}

TEST_CASE("splitting check") {
  CHECK(splitting_check(chain(3), VarietySpec::slice(3), 6));
  CHECK(splitting_check(chain(2), vZ3(), 5));
  CHECK_THROWS_AS(splitting_check(direct_product(chain(2), chain(2)),
                                  VarietySpec::heyting(), 4),
                  input_error);
  CHECK_THROWS_AS(splitting_check(chain(4), vZ3(), 5), input_error);  // not a member
}

TEST_CASE("variety specs from json") {
  VarietySpec H = variety_from_json(json("heyting"));
  CHECK(H.kind == VarietySpec::Kind::Heyting);
  VarietySpec s = variety_from_json(json("slice:3"));
  CHECK(s.kind == VarietySpec::Kind::Slice);
  CHECK(s.slice_n == 3);
  CHECK_THROWS_AS(variety_from_json(json("slice:zero")), input_error);
  CHECK_THROWS_AS(variety_from_json(json("nonsense")), input_error);

  json g = {{"kind", "generators"}, {"algebras", json::array({algebra_to_json(chain(3))})}};
  VarietySpec vg = variety_from_json(g);
  CHECK(vg.kind == VarietySpec::Kind::Generators);
  CHECK(membership(chain(2), vg));
  CHECK(!membership(chain(4), vg));

  json ax = {{"kind", "axioms"},
             {"ambient", "heyting"},
             {"identities", json::array({"x | ~x", "~~x -> x = 1"})},
             {"beta", json::array({1, 4})}};
  VarietySpec va = variety_from_json(ax);
  CHECK(va.axioms.size() == 2);
  CHECK(membership(chain(2), va));
  CHECK(!membership(chain(3), va));
  CHECK(beta_bound(va, 1) == 4);

  json sl = {{"kind", "slice"}, {"n", 2}, {"td", "td_and"}};
  VarietySpec vs = variety_from_json(sl);
  CHECK(vs.slice_n == 2);
  CHECK(vs.td_name == "td_and");
}
