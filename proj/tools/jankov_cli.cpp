// Command-line front end for the jankov library.
//
// Verbs:
//   alg info|jankov|chi|leq|antichain|pretrue
//   ident decide|decompose|prime
//   variety axiomatize|free|rcomplete|split
//   --check   run the bundled self-test
//
// Exit codes: 0 success/true, 1 boolean-query false, 2 input error,
// 3 bound exhausted.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jankov/charident.hpp"
#include "jankov/partial.hpp"
#include "jankov/variety_ops.hpp"

using namespace jankov;

namespace {

Signature signature_by_name(const std::string& name) {
  if (name == "heyting") return Signature::heyting();
  if (name == "heyting_constant_free") return Signature::heyting_constant_free();
  throw input_error("unknown signature: " + name);
}

VarietySpec variety_arg(const std::string& spec) {
  if (spec == "heyting" || spec.rfind("slice:", 0) == 0 || spec.rfind("gen:", 0) == 0)
    return detail::variety_from_string(spec, ".");
  return load_variety(spec);
}

Identity identity_arg(const std::string& text, const Signature& sig) {
  auto v = parse(text, sig);
  if (std::holds_alternative<Term>(v)) return translate(std::get<Term>(v), sig);
  return std::get<Identity>(v);
}

std::string element_label(const FiniteAlgebra& A, int a) {
  if ((int)A.names.size() == A.size) return A.names[a];
  return std::to_string(a);
}

json valuation_json(const FiniteAlgebra& A, const Valuation& v) {
  json j = json::object();
  for (const auto& [var, val] : v) j[var] = element_label(A, val);
  return j;
}

std::string valuation_text(const FiniteAlgebra& A, const Valuation& v) {
  std::string out;
  for (const auto& [var, val] : v) {
    if (!out.empty()) out += ", ";
    out += var + "->" + element_label(A, val);
  }
  return out;
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// ---------------------------------------------------------------------------
// --check: invariant suites on bundled data
// ---------------------------------------------------------------------------

int run_check() {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };
  Signature sig = Signature::heyting();

  TDTerm ti = td_registry("td_impl"), ta = td_registry("td_and");
  bool td_ok = true;
  for (const FiniteAlgebra& A : enumerate_heyting(4))
    if (!verify_td_term(ti, A).ok || !verify_td_term(ta, A).ok) td_ok = false;
  report("td terms verify on Heyting algebras <= 4", td_ok);

  bool ord = true;
  std::vector<FiniteAlgebra> si = enumerate_si_heyting(4);
  for (const FiniteAlgebra& A : si) {
    Identity J = translate(jankov_formula(A), sig);
    for (const FiniteAlgebra& B : si)
      if ((bool)holds_fast(B, J) == in_sub_hom(A, B).has_value()) ord = false;
  }
  report("ordering theorem on s.i. algebras <= 4", ord);

  bool anti = true;
  try {
    std::vector<FiniteAlgebra> fam;
    for (int k = 0; k < fig2_family_size(); ++k) fam.push_back(fig2_family(k));
    anti = (bool)antichain_check(fam);
  } catch (const input_error&) {
    anti = false;  // data files missing
  }
  report("bundled antichain family is pairwise incomparable", anti);

  FiniteAlgebra Z3 = chain(3);
  VarietySpec vZ3 = VarietySpec::var({Z3}, "var(Z3)");
  Presentation P{vZ3, 1, {parse_identity("~~x = 1", sig)}};
  CharacteristicIdentity chi = characteristic_identity(P);
  bool eq = equipotent(chi.eval_form(), parse_identity("~~x -> x = 1", sig),
                       enumerate_heyting(5));
  report("chi(Z3) equipotent with ~~x -> x = 1 on pool <= 5", eq);

  bool pc_ok = true;
  for (const FiniteAlgebra& A : enumerate_heyting(4)) {
    std::optional<Monolith> m = monolith(A);
    if (is_subdirectly_irreducible(A) != m.has_value()) pc_ok = false;
  }
  report("monolith agrees with subdirect irreducibility on pool <= 4", pc_ok);

  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"characteristic formulas for finite algebras"};
  app.require_subcommand(0, 1);

  bool as_json = false;
  bool do_check = false;
  int bound = 6;
  std::string td_name = "td_impl";
  std::string sig_name = "heyting";
  app.add_flag("--json", as_json, "emit JSON reports");
  app.add_flag("--check", do_check, "run the bundled self-test suite");
  app.add_option("--bound", bound, "size cap for bounded sweeps");
  app.add_option("--td", td_name, "td term name from the registry");
  app.add_option("--signature", sig_name, "term signature (heyting, heyting_constant_free)");

  // ---- alg ----
  auto* alg = app.add_subcommand("alg", "operations on a single algebra");
  alg->require_subcommand(1);

  std::string file_a, file_b, formula;
  std::vector<std::string> files;
  std::vector<std::string> relations;
  std::string variety_str, ambient_str, sub_str, set_file;
  int rank = 1;

  auto* info = alg->add_subcommand("info", "size, s.i., opremum, monolith, basis, slice");
  info->add_option("file", file_a, "algebra or poset JSON")->required();

  auto* jank = alg->add_subcommand("jankov", "Jankov formula of a s.i. Heyting algebra");
  jank->add_option("file", file_a)->required();

  auto* chi_cmd = alg->add_subcommand("chi", "characteristic identity");
  chi_cmd->add_option("file", file_a)->required();
  chi_cmd->add_option("--relations", relations, "present by relations instead of the diagram");
  chi_cmd->add_option("--variety", variety_str, "ambient variety for --relations");

  auto* leq_cmd = alg->add_subcommand("leq", "SubHom order between two s.i. algebras");
  leq_cmd->add_option("A", file_a)->required();
  leq_cmd->add_option("B", file_b)->required();

  auto* anti_cmd = alg->add_subcommand("antichain", "pairwise incomparability");
  anti_cmd->add_option("files", files)->required()->expected(-1);

  auto* pre_cmd = alg->add_subcommand("pretrue", "is the identity pre-true in the algebra");
  pre_cmd->add_option("file", file_a)->required();
  pre_cmd->add_option("identity", formula)->required();

  // ---- ident ----
  auto* ident = app.add_subcommand("ident", "identity-level decisions");
  ident->require_subcommand(1);

  auto* dec = ident->add_subcommand("decide", "validity in a variety");
  dec->add_option("--variety", variety_str)->required();
  dec->add_option("identity", formula)->required();

  auto* decomp = ident->add_subcommand("decompose", "locally characteristic decomposition");
  decomp->add_option("--variety", variety_str)->required();
  decomp->add_option("identity", formula)->required();

  auto* prime = ident->add_subcommand("prime", "meet-prime decision");
  prime->add_option("--ambient", ambient_str)->required();
  prime->add_option("identity", formula)->required();

  // ---- variety ----
  auto* var_cmd = app.add_subcommand("variety", "variety-level computations");
  var_cmd->require_subcommand(1);

  auto* axio = var_cmd->add_subcommand("axiomatize", "optimal axiomatization inside an ambient");
  axio->add_option("--sub", sub_str)->required();
  axio->add_option("--ambient", ambient_str)->required();

  auto* fre = var_cmd->add_subcommand("free", "free algebra of a given rank");
  fre->add_option("--spec", variety_str)->required();
  fre->add_option("-n,--rank", rank)->required();

  auto* rcomp = var_cmd->add_subcommand("rcomplete", "r-completeness of an identity set");
  rcomp->add_option("--spec", variety_str)->required();
  rcomp->add_option("--set", set_file, "JSON array of identities")->required();

  auto* split = var_cmd->add_subcommand("split", "splitting check for a s.i. algebra");
  split->add_option("--algebra", file_a)->required();
  split->add_option("--ambient", ambient_str)->required();

  // let --json/--bound/--td/--signature be given after any subcommand
  for (CLI::App* s1 : app.get_subcommands({})) {
    s1->fallthrough();
    for (CLI::App* s2 : s1->get_subcommands({})) s2->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Signature sig = signature_by_name(sig_name);

    if (do_check) return run_check();
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 2;
    }

    if (info->parsed()) {
      FiniteAlgebra A = load_algebra_or_poset(file_a);
      json j;
      std::string text;
      j["size"] = A.size;
      text += "size: " + std::to_string(A.size) + "\n";
      bool si = is_subdirectly_irreducible(A);
      j["subdirectly_irreducible"] = si;
      text += std::string("subdirectly irreducible: ") + (si ? "yes" : "no") + "\n";
      if (si) {
        Monolith m = *monolith(A);
        j["monolith"] = {element_label(A, m.pair.first), element_label(A, m.pair.second)};
        text += "monolith pair: (" + element_label(A, m.pair.first) + ", " +
                element_label(A, m.pair.second) + ")\n";
      }
      if (A.sig == Signature::heyting() && is_heyting_algebra(A)) {
        std::optional<int> om = opremum(A);
        j["opremum"] = om ? json(element_label(A, *om)) : json(nullptr);
        text += "opremum: " + (om ? element_label(A, *om) : std::string("none")) + "\n";
        int sl = slice_index(A);
        j["slice"] = sl;
        text += "slice: " + std::to_string(sl) + "\n";
      }
      BasisResult br = basis_rank(A);
      j["basis_rank"] = br.rank;
      text += "basis rank: " + std::to_string(br.rank) + "\n";
      emit(as_json, j, text);
      return 0;
    }

    if (jank->parsed()) {
      FiniteAlgebra A = load_algebra_or_poset(file_a);
      Term J = jankov_formula(A);
      emit(as_json, json{{"formula", print_term(J)}}, print_term(J) + "\n");
      return 0;
    }

    if (chi_cmd->parsed()) {
      CharacteristicIdentity chi = [&] {
        TDTerm td = td_registry(td_name);
        if (!relations.empty()) {
          if (variety_str.empty())
            throw input_error("--relations requires --variety");
          VarietySpec V = variety_arg(variety_str);
          std::vector<Identity> rels;
          int ngen = 0;
          for (const std::string& r : relations) {
            Identity e = identity_arg(r, sig);
            std::set<std::string> vs = e.vars();
            for (const std::string& v : vs) {
              if (v == "x") ngen = std::max(ngen, 1);
              if (v.size() > 1 && v[0] == 'x') ngen = std::max(ngen, std::stoi(v.substr(1)));
            }
            rels.push_back(e);
          }
          Presentation P{V, std::max(ngen, 1), rels};
          return characteristic_identity(P, std::nullopt, std::nullopt, td);
        }
        return char_identity_from_algebra(load_algebra_or_poset(file_a), std::nullopt, td);
      }();
      json j;
      j["raw"] = print_identity(chi.identity);
      j["simplified"] = chi.simplified ? json(print_identity(*chi.simplified)) : json(nullptr);
      j["td"] = chi.td.name;
      std::string text = "raw: " + print_identity(chi.identity) + "\n";
      if (chi.simplified) text += "simplified: " + print_identity(*chi.simplified) + "\n";
      emit(as_json, j, text);
      return 0;
    }

    if (leq_cmd->parsed()) {
      bool r = leq(load_algebra_or_poset(file_a), load_algebra_or_poset(file_b));
      emit(as_json, json{{"leq", r}}, std::string(r ? "true" : "false") + "\n");
      return r ? 0 : 1;
    }

    if (anti_cmd->parsed()) {
      std::vector<FiniteAlgebra> list;
      for (const std::string& f : files) list.push_back(load_algebra_or_poset(f));
      AntichainResult r = antichain_check(list);
      json j{{"antichain", r.ok}};
      std::string text = r.ok ? "antichain\n" : "not an antichain\n";
      if (!r.ok) {
        j["offending"] = {r.offending.first, r.offending.second};
        text += "offending pair: " + std::to_string(r.offending.first) + " <= " +
                std::to_string(r.offending.second) + "\n";
      }
      emit(as_json, j, text);
      return r.ok ? 0 : 1;
    }

    if (pre_cmd->parsed()) {
      FiniteAlgebra A = load_algebra_or_poset(file_a);
      bool r = is_pretrue(identity_arg(formula, sig), A);
      emit(as_json, json{{"pretrue", r}}, std::string(r ? "pre-true" : "not pre-true") + "\n");
      return r ? 0 : 1;
    }

    if (dec->parsed()) {
      VarietySpec V = variety_arg(variety_str);
      IdentityVerdict v = decide_identity(V, identity_arg(formula, V.sig));
      if (v.valid) {
        emit(as_json, json{{"verdict", "valid"}}, "valid\n");
        return 0;
      }
      json j;
      j["verdict"] = "refuted";
      j["witness_algebra_size"] = v.witness_algebra->size;
      j["witness"] = valuation_json(*v.witness_algebra, v.witness);
      j["certificate"] = print_identity(v.certificate->eval_form());
      j["certificate_checked"] = v.genrefute_ok;
      j["minimal_refuter_size"] = v.minimal_refuter->size;
      std::string text = "refuted; witness " + valuation_text(*v.witness_algebra, v.witness) +
                         " on " + std::to_string(v.witness_algebra->size) +
                         "-element algebra; certificate chi of " +
                         std::to_string(v.minimal_refuter->size) + "-element s.i. algebra\n" +
                         "certificate: " + print_identity(v.certificate->eval_form()) + "\n";
      emit(as_json, j, text);
      return 1;
    }

    if (decomp->parsed()) {
      VarietySpec V = variety_arg(variety_str);
      TDTerm td = td_registry(td_name);
      Decomposition D = decompose_identity(identity_arg(formula, V.sig), V, td, bound);
      json j;
      j["members"] = json::array();
      std::string text = std::to_string(D.gamma.size()) +
                         " locally characteristic identities (subterm bound " +
                         std::to_string(D.subterm_count) + ", pool verified)\n";
      for (const LocalCharIdentity& L : D.gamma) {
        j["members"].push_back({{"identity", print_identity(L.identity)},
                                {"source_size", L.source.size},
                                {"pair", {L.source.element_name(L.pair.first),
                                          L.source.element_name(L.pair.second)}}});
        text += "- source size " + std::to_string(L.source.size) + ", pair (" +
                L.source.element_name(L.pair.first) + ", " +
                L.source.element_name(L.pair.second) + ")\n";
      }
      j["subterm_bound"] = D.subterm_count;
      j["pool_verified"] = D.pool_verified;
      emit(as_json, j, text);
      return 0;
    }

    if (prime->parsed()) {
      VarietySpec V0 = variety_arg(ambient_str);
      MeetPrimeVerdict v = meet_prime_decide(identity_arg(formula, V0.sig), V0, bound);
      json j;
      j["bound"] = v.bound;
      std::string text;
      int code = 0;
      switch (v.kind) {
        case MeetPrimeVerdict::Kind::Prime:
          j["verdict"] = "prime";
          j["chi"] = print_identity(v.chi->eval_form());
          j["source_size"] = v.first_pretrue->size;
          text = "prime (bound " + std::to_string(v.bound) + "); chi of " +
                 std::to_string(v.first_pretrue->size) + "-element algebra:\n" +
                 print_identity(v.chi->eval_form()) + "\n";
          break;
        case MeetPrimeVerdict::Kind::NotPrime:
          j["verdict"] = "not-prime";
          j["pretrue_sizes"] = {v.first_pretrue->size, v.second_pretrue->size};
          text = "not prime (bound " + std::to_string(v.bound) + "); pre-true in " +
                 std::to_string(v.first_pretrue->size) + "- and " +
                 std::to_string(v.second_pretrue->size) + "-element algebras\n";
          code = 1;
          break;
        case MeetPrimeVerdict::Kind::ValidInAmbient:
          j["verdict"] = "valid-in-ambient";
          text = "valid in the ambient up to bound " + std::to_string(v.bound) + "\n";
          break;
      }
      emit(as_json, j, text);
      return code;
    }

    if (axio->parsed()) {
      Axiomatization ax = optimal_axiomatization(variety_arg(sub_str), variety_arg(ambient_str),
                                                 bound);
      json j;
      j["bound"] = ax.bound;
      j["certificates_ok"] = ax.certificates_ok;
      j["axioms"] = json::array();
      std::string text = std::to_string(ax.axioms.size()) + " axioms (bound " +
                         std::to_string(ax.bound) + ", certificates verified)\n";
      for (size_t i = 0; i < ax.axioms.size(); ++i) {
        j["axioms"].push_back({{"identity", print_identity(ax.axioms[i].eval_form())},
                               {"source_size", ax.msi[i].size}});
        text += "- source size " + std::to_string(ax.msi[i].size) + ": " +
                print_identity(ax.axioms[i].eval_form()) + "\n";
      }
      emit(as_json, j, text);
      return 0;
    }

    if (fre->parsed()) {
      FreeAlgebra F = free_algebra(variety_arg(variety_str), rank);
      json j;
      j["size"] = F.algebra.size;
      j["rank"] = F.rank;
      j["elements"] = json::array();
      std::string text = "free algebra of rank " + std::to_string(F.rank) + ": " +
                         std::to_string(F.algebra.size) + " elements\n";
      for (const Term& t : F.terms) {
        j["elements"].push_back(print_term(t));
        text += "  " + print_term(t) + "\n";
      }
      emit(as_json, j, text);
      return 0;
    }

    if (rcomp->parsed()) {
      VarietySpec V = variety_arg(variety_str);
      json set = detail::read_json_file(set_file);
      std::vector<Identity> I;
      for (const json& s : set) I.push_back(identity_arg(s.get<std::string>(), V.sig));
      RCompleteResult r = is_r_complete(I, V, bound);
      json j{{"r_complete", r.ok}, {"bound", bound}};
      std::string text = r.ok ? "r-complete\n" : "not r-complete\n";
      if (!r.ok) {
        j["uncovered_size"] = r.uncovered->size;
        text += "uncovered: chi of " + std::to_string(r.uncovered->size) +
                "-element s.i. member\n";
      }
      emit(as_json, j, text);
      return r.ok ? 0 : 1;
    }

    if (split->parsed()) {
      bool r = splitting_check(load_algebra_or_poset(file_a), variety_arg(ambient_str), bound);
      emit(as_json, json{{"splitting", r}, {"bound", bound}},
           std::string(r ? "splitting confirmed" : "splitting refuted") + " (bound " +
               std::to_string(bound) + ")\n");
      return r ? 0 : 1;
    }

    std::cerr << app.help();
    return 2;
  } catch (const bound_error& ex) {
    std::cerr << "bound exhausted: " << ex.what() << "\n";
    return 3;
  } catch (const input_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return 2;
  }
}
