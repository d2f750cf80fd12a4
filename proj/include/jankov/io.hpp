#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jankov/heyting.hpp"

namespace jankov {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Algebra files:
// {"signature":[["meet",2],...], "size":N, "tables":{"meet":[[..],..],...},
//  "names":[...]}   -- tables for arity-k ops are k-nested row-major arrays.
// ---------------------------------------------------------------------------

namespace detail {

inline void flatten_table(const json& j, int arity, int size, std::vector<int>& out,
                          const std::string& opname) {
  if (arity == 0) {
    if (!j.is_number_integer())
      throw input_error("table for constant " + opname + " must be an integer");
    out.push_back(j.get<int>());
    return;
  }
  if (!j.is_array() || (int)j.size() != size)
    throw input_error("table for " + opname + " has wrong shape");
  for (const json& sub : j) flatten_table(sub, arity - 1, size, out, opname);
}

inline json nest_table(const std::vector<int>& flat, int arity, int size, size_t& pos) {
  if (arity == 0) return flat[pos++];
  json arr = json::array();
  for (int i = 0; i < size; ++i) arr.push_back(nest_table(flat, arity - 1, size, pos));
  return arr;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw input_error("bad JSON in " + path + ": " + ex.what());
  }
  return j;
}

}  // namespace detail

inline FiniteAlgebra algebra_from_json(const json& j) {
  FiniteAlgebra A;
  if (!j.contains("signature") || !j.contains("size") || !j.contains("tables"))
    throw input_error("algebra JSON needs signature, size, tables");
  for (const json& op : j.at("signature"))
    A.sig.ops.push_back({op.at(0).get<std::string>(), op.at(1).get<int>()});
  A.size = j.at("size").get<int>();
  A.tables.resize(A.sig.ops.size());
  for (size_t i = 0; i < A.sig.ops.size(); ++i) {
    const std::string& name = A.sig.ops[i].name;
    if (!j.at("tables").contains(name))
      throw input_error("missing table for operation " + name);
    detail::flatten_table(j.at("tables").at(name), A.sig.ops[i].arity, A.size, A.tables[i],
                          name);
  }
  if (j.contains("names"))
    for (const json& n : j.at("names")) A.names.push_back(n.get<std::string>());
  A.validate();
  return A;
}

inline json algebra_to_json(const FiniteAlgebra& A) {
  json j;
  j["signature"] = json::array();
  for (const OpSym& op : A.sig.ops) j["signature"].push_back({op.name, op.arity});
  j["size"] = A.size;
  j["tables"] = json::object();
  for (size_t i = 0; i < A.sig.ops.size(); ++i) {
    size_t pos = 0;
    j["tables"][A.sig.ops[i].name] =
        detail::nest_table(A.tables[i], A.sig.ops[i].arity, A.size, pos);
  }
  if (!A.names.empty()) j["names"] = A.names;
  return j;
}

inline FiniteAlgebra load_algebra(const std::string& path) {
  return algebra_from_json(detail::read_json_file(path));
}

// ---------------------------------------------------------------------------
// Poset files: {"size":N, "covers":[[i,j],...], "names":[...]}
// ---------------------------------------------------------------------------

inline Poset poset_from_json(const json& j) {
  Poset P;
  P.size = j.at("size").get<int>();
  for (const json& c : j.at("covers"))
    P.covers.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  if (j.contains("names"))
    for (const json& n : j.at("names")) P.names.push_back(n.get<std::string>());
  return P;
}

inline Poset load_poset(const std::string& path) {
  return poset_from_json(detail::read_json_file(path));
}

// Either an algebra file or a poset file (distinguished by keys).
inline FiniteAlgebra load_algebra_or_poset(const std::string& path) {
  json j = detail::read_json_file(path);
  if (j.contains("covers")) return heyting_from_poset(poset_from_json(j));
  return algebra_from_json(j);
}

// ---------------------------------------------------------------------------
// Bundled Fig.-2-style antichain family
// ---------------------------------------------------------------------------

inline std::string data_dir() {
  if (const char* env = std::getenv("JANKOV_DATA_DIR")) return env;
#ifdef JANKOV_DATA_DIR_DEFAULT
  return JANKOV_DATA_DIR_DEFAULT;
#else
  return "data";
#endif
}

inline int fig2_family_size() { return 3; }

// k-th member of the bundled antichain family (Z7+Z2, Z9+Z2, Z11+Z2),
// loaded from the packaged poset files.  Each load re-checks that the poset
// really is a s.i. Heyting algebra; the pairwise antichain property is
// enforced by the test suite and `--check`.
inline FiniteAlgebra fig2_family(int k) {
  static const char* files[] = {"z7p2.json", "z9p2.json", "z11p2.json"};
  if (k < 0 || k >= fig2_family_size())
    throw input_error("fig2_family: index out of bundled range (0..2)");
  FiniteAlgebra A = heyting_from_poset(load_poset(data_dir() + "/fig2/" + files[k]));
  if (!opremum(A).has_value())
    throw internal_error("bundled fig2 member is not subdirectly irreducible");
  return A;
}

}  // namespace jankov
