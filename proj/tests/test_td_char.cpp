// TD terms, presentations, Jankov formulas, and characteristic identities.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jankov/charident.hpp"
#include "jankov/heyting.hpp"

using namespace jankov;

namespace {
const Signature kSig = Signature::heyting();
}

TEST_CASE("td registry shapes") {
  TDTerm ti = td_registry("td_impl");
  CHECK(print_term(ti.term) == print_term(parse_term("((x -> y) & (y -> x)) -> z", kSig)));
  TDTerm ta = td_registry("td_and");
  CHECK(ta.term == parse_term("((x -> y) & (y -> x)) & z", kSig));
  CHECK(td_registry("a").term == parse_term("(x -> y) -> ((y -> x) -> z)", kSig));
  CHECK(td_registry("b").term == ta.term);
  // (c) with n = 1 degenerates to z; with n = 3 stacks two implications each
  CHECK(td_registry("c", 1).term == Term::var("z"));
  CHECK(td_registry("c", 2).term ==
        parse_term("(x -> y) -> ((y -> x) -> z)", kSig));
  // (i) with n = 1 is one implication from the biconditional
  CHECK(td_registry("i", 1).term == parse_term("((x -> y) & (y -> x)) -> z", kSig));
  // modal entries need "box" in the signature; Heyting validation rejects them
  CHECK_THROWS_AS(td_registry("f").term.validate(kSig), input_error);
  CHECK_THROWS_AS(td_registry("h", 2).term.validate(kSig), input_error);
  CHECK_THROWS_AS(td_registry("nope"), input_error);
  CHECK_THROWS_AS(td_registry("c", 0), input_error);
  // shape validation rejects stray variables
  TDTerm bad{"bad", parse_term("w -> z", kSig)};
  CHECK_THROWS_AS(bad.validate_shape(), input_error);
}

TEST_CASE("verify_td_term on Heyting algebras") {
  for (const FiniteAlgebra& A : enumerate_heyting(5)) {
    CHECK((bool)verify_td_term(td_registry("td_impl"), A));
    CHECK((bool)verify_td_term(td_registry("td_and"), A));
    CHECK((bool)verify_td_term(td_registry("a"), A));
    CHECK((bool)verify_td_term(td_registry("i", 1), A));
    CHECK((bool)verify_td_term(td_registry("i", 2), A));
  }
  // td(x,y,z) = x -> z breaks clause 1: it forces x -> z = z, false on chains
  TDTerm broken{"broken", parse_term("x -> z", kSig)};
  TDCheck chk = verify_td_term(broken, chain(3));
  CHECK(!chk.ok);
  CHECK(chk.counterexample[3] == -1);  // clause 1 violation
  // td(x,y,z) = z passes clause 1 but never collapses congruent arguments,
  // so clause 2 fails as soon as some theta(a,b) merges two elements
  TDTerm proj{"proj", Term::var("z")};
  TDCheck chk2 = verify_td_term(proj, chain(3));
  CHECK(!chk2.ok);
  CHECK(chk2.counterexample[3] != -1);  // clause 2 violation
}

TEST_CASE("td_apply and td_iterate") {
  TDTerm td = td_registry("td_impl");
  Term a = Term::var("a"), b = Term::var("b"), c = Term::var("c");
  CHECK(td_apply(td, a, b, c) == parse_term("((a -> b) & (b -> a)) -> c", kSig));
  CHECK(td_iterate(td, {}, {}, c) == c);
  // right nesting: the first pair ends up outermost
  Term two = td_iterate(td, {Term::var("a1"), Term::var("a2")},
                        {Term::var("b1"), Term::var("b2")}, c);
  CHECK(two == td_apply(td, Term::var("a1"), Term::var("b1"),
                        td_apply(td, Term::var("a2"), Term::var("b2"), c)));
  CHECK_THROWS_AS(td_iterate(td, {a}, {}, c), input_error);

  // semantic collapse at m = 2 on chain(4): whenever both iterated pairs are
  // congruent mod the joined principal congruences, the iterate equals its
  // variant with the tail replaced by a congruent element
  FiniteAlgebra C4 = chain(4);
  std::vector<std::string> vars = {"a1", "b1", "a2", "b2", "c", "d"};
  Term lhs = td_iterate(td, {Term::var("a1"), Term::var("a2")},
                        {Term::var("b1"), Term::var("b2")}, Term::var("c"));
  Term rhs = td_iterate(td, {Term::var("a1"), Term::var("a2")},
                        {Term::var("b1"), Term::var("b2")}, Term::var("d"));
  for (int a1 = 0; a1 < 4; ++a1)
    for (int b1 = 0; b1 < 4; ++b1)
      for (int a2 = 0; a2 < 4; ++a2)
        for (int b2 = 0; b2 < 4; ++b2) {
          Congruence th = congruence_join(C4, principal_congruence(C4, a1, b1),
                                          principal_congruence(C4, a2, b2));
          for (int cc = 0; cc < 4; ++cc)
            for (int dd = 0; dd < 4; ++dd) {
              if (!th.same(cc, dd)) continue;
              Valuation v{{"a1", a1}, {"b1", b1}, {"a2", a2}, {"b2", b2},
                          {"c", cc}, {"d", dd}};
              CHECK(eval_term(C4, lhs, v) == eval_term(C4, rhs, v));
            }
        }
}

TEST_CASE("presented algebras") {
  FiniteAlgebra Z3 = chain(3), C2 = chain(2);
  VarietySpec vZ3 = VarietySpec::var({Z3}, "var(Z3)");

  // one generator, relation ~~x = 1: the three-element chain, x naming its
  // middle element
  Presentation P{vZ3, 1, {parse_identity("~~x = 1", kSig)}};
  PresentedAlgebra R = presented_algebra(P);
  CHECK(R.algebra.size == 3);
  CHECK(is_isomorphic(R.algebra, Z3));
  CHECK(R.gen_images[0] != heyting_top(R.algebra));
  CHECK(R.gen_images[0] != heyting_bottom(R.algebra));
  // witnesses really name their elements under the generator valuation
  Valuation v{{R.var_names[0], R.gen_images[0]}};
  for (int u = 0; u < R.algebra.size; ++u)
    CHECK(eval_term(R.algebra, R.witness[u], v) == u);

  // collapsing relation x = 1 gives the two-element algebra
  CHECK(presented_algebra({vZ3, 1, {parse_identity("x = 1", kSig)}}).algebra.size == 2);
  // no relations: the free algebra itself
  CHECK(presented_algebra({VarietySpec::var({C2}, "var(C2)"), 1, {}}).algebra.size == 4);
  CHECK(presented_algebra({vZ3, 1, {}}).algebra.size == 6);

  // universal property against Z3: x -> a extends iff a satisfies ~~x = 1
  for (int a = 0; a < 3; ++a) {
    bool sat = eval_term(Z3, parse_term("~~x", kSig), {{"x", a}}) == 2;
    CHECK(extends_to_homomorphism(R, Z3, {a}) == sat);
  }
  // variable hygiene
  CHECK_THROWS_AS(presented_algebra({vZ3, 1, {parse_identity("y = 1", kSig)}}),
                  input_error);
}

TEST_CASE("jankov formulas") {
  FiniteAlgebra Z3 = chain(3), C2 = chain(2);
  Term J = jankov_formula(Z3);
  // 3 binary ops x 9 pairs + 3 negation entries = 30 diagram conjuncts;
  // counting meets in the left-folded conjunction gives 29
  int meets = 0;
  std::function<void(const Term&)> count = [&](const Term& t) {
    if (t.kind == Term::Kind::Op && t.label == "meet") ++meets;
    for (const Term& s : t.args) count(s);
  };
  REQUIRE(J.kind == Term::Kind::Op);
  REQUIRE(J.label == "impl");
  count(J.args[0]);
  // 30 diagram conjuncts joined by 29 meets; each conjunct is an expanded
  // <-> (one meet), and the 9 meet-table rows mention p_a & p_b twice more
  CHECK(meets == 29 + 30 + 9 * 2);
  // variables are p_<element name>
  std::set<std::string> vs = J.vars();
  CHECK(vs.count("p_0") == 1);
  CHECK(vs.count("p_1") == 1);
  CHECK(vs.size() == 3);

  Identity Jid = translate(J, kSig);
  CHECK(!holds_fast(Z3, Jid));  // self-refutation
  CHECK((bool)holds_fast(C2, Jid));
  CHECK_THROWS_AS(jankov_formula(direct_product(C2, C2)), input_error);

  // ordering theorem at small scale: B refutes J(A) iff A <= B
  std::vector<FiniteAlgebra> si = enumerate_si_heyting(5);
  for (const FiniteAlgebra& A : si) {
    Identity JA = translate(jankov_formula(A), kSig);
    for (const FiniteAlgebra& B : si)
      CHECK(!holds_fast(B, JA) == in_sub_hom(A, B).has_value());
  }
}

TEST_CASE("characteristic identity from a presentation") {
  FiniteAlgebra Z3 = chain(3);
  VarietySpec vZ3 = VarietySpec::var({Z3}, "var(Z3)");
  Presentation P{vZ3, 1, {parse_identity("~~x = 1", kSig)}};
  CharacteristicIdentity chi = characteristic_identity(P);
  CHECK(chi.td.name == "td_impl");
  REQUIRE(chi.simplified.has_value());
  // self-refuted on the source, valid on algebras not above Z3
  CHECK(!holds_fast(Z3, chi.identity));
  CHECK(!holds_fast(Z3, *chi.simplified));
  CHECK((bool)holds_fast(chain(2), chi.eval_form()));
  // raw and simplified forms agree everywhere at pool scale
  CHECK(equipotent(chi.identity, *chi.simplified, enumerate_heyting(6)));
  // equipotent with the double-negation law
  Identity dne = parse_identity("~~x -> x = 1", kSig);
  CHECK(equipotent(chi.eval_form(), dne, enumerate_heyting(6)));
  // identity uses a single variable
  std::set<std::string> vs = chi.identity.vars();
  CHECK(vs.size() == 1);

  // not s.i. after presenting: x | ~x = 1 in var(Z3) yields chain(2)? that is
  // s.i.; an empty presentation of rank 1 is the free algebra, not s.i.
  CHECK_THROWS_AS(characteristic_identity({vZ3, 1, {}}), input_error);
}

TEST_CASE("characteristic identity from the diagram presentation") {
  FiniteAlgebra Z3 = chain(3), C2 = chain(2);
  CharacteristicIdentity chi = char_identity_from_algebra(Z3);
  Identity dne = parse_identity("~~x -> x = 1", kSig);
  Term J = jankov_formula(Z3);
  CHECK(equipotent(chi.eval_form(), dne, enumerate_heyting(6)));
  CHECK(equipotent(chi.eval_form(), translate(J, kSig), enumerate_heyting(6)));
  CHECK(!holds_fast(Z3, chi.eval_form()));
  CHECK((bool)holds_fast(C2, chi.eval_form()));

  // diagram chi of every s.i. algebra <= 5 matches its Jankov formula
  for (const FiniteAlgebra& A : enumerate_si_heyting(5)) {
    CharacteristicIdentity c = char_identity_from_algebra(A);
    CHECK(equipotent(c.eval_form(), translate(jankov_formula(A), kSig),
                     enumerate_heyting(5)));
  }
  CHECK_THROWS_AS(char_identity_from_algebra(direct_product(C2, C2)), input_error);
  // an explicit non-generating set is rejected
  CHECK_THROWS_AS(char_identity_from_algebra(chain(4), std::vector<int>{0}), input_error);
}

TEST_CASE("leq, antichains, pretrue") {
  FiniteAlgebra Z3 = chain(3), C4 = chain(4);
  CHECK(leq(Z3, C4));
  CHECK(!leq(C4, Z3));
  CharacteristicIdentity chi = char_identity_from_algebra(Z3);
  CHECK(leq(Z3, C4, &chi));  // cross-checked variant
  CHECK_THROWS_AS(leq(Z3, direct_product(chain(2), chain(2))), input_error);

  // the two 5-element s.i. algebras are incomparable, chains are not
  std::vector<FiniteAlgebra> si5;
  for (const FiniteAlgebra& A : enumerate_si_heyting(5))
    if (A.size == 5) si5.push_back(A);
  REQUIRE(si5.size() == 2);
  CHECK((bool)antichain_check(si5));
  AntichainResult bad = antichain_check({Z3, C4});
  CHECK(!bad.ok);
  CHECK(bad.offending == std::pair<int, int>{0, 1});

  Identity dne = parse_identity("~~x -> x = 1", kSig);
  CHECK(is_pretrue(dne, Z3));
  CHECK(!is_pretrue(dne, C4));                                  // Z3 is a quotient
  CHECK(!is_pretrue(parse_identity("x = x", kSig), Z3));        // not refuted
  CHECK(!is_pretrue(parse_identity("x | ~x = 1", kSig), C4));   // quotient Z3 refutes
}

TEST_CASE("meet-prime decision at small bounds") {
  Identity dne = parse_identity("~~x -> x = 1", kSig);
  VarietySpec H = VarietySpec::heyting();
  MeetPrimeVerdict v = meet_prime_decide(dne, H, 6);
  CHECK(v.kind == MeetPrimeVerdict::Kind::Prime);
  REQUIRE(v.first_pretrue.has_value());
  CHECK(v.first_pretrue->size == 3);
  REQUIRE(v.chi.has_value());
  CHECK(!holds_fast(chain(3), v.chi->eval_form()));

  MeetPrimeVerdict t = meet_prime_decide(parse_identity("x = x", kSig), H, 4);
  CHECK(t.kind == MeetPrimeVerdict::Kind::ValidInAmbient);

  // weak excluded middle: first refuted by the 5-element diamond-plus-top
  MeetPrimeVerdict w = meet_prime_decide(parse_identity("~x | ~~x = 1", kSig), H, 5);
  CHECK(w.kind == MeetPrimeVerdict::Kind::Prime);
  REQUIRE(w.first_pretrue.has_value());
  CHECK(w.first_pretrue->size == 5);
  CHECK(!is_isomorphic(*w.first_pretrue, chain(5)));
}
