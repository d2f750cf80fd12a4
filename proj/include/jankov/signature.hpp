#pragma once

#include <string>
#include <vector>

#include "jankov/base.hpp"

namespace jankov {

struct OpSym {
  std::string name;
  int arity = 0;
  bool operator==(const OpSym&) const = default;
};

// An algebraic signature: a nonempty list of named operations with fixed
// arities.  Constants are 0-ary operations.
struct Signature {
  std::vector<OpSym> ops;

  bool operator==(const Signature&) const = default;

  int index_of(const std::string& name) const {
    for (int i = 0; i < (int)ops.size(); ++i)
      if (ops[i].name == name) return i;
    return -1;
  }

  bool has(const std::string& name) const { return index_of(name) >= 0; }

  int arity_of(const std::string& name) const {
    int i = index_of(name);
    if (i < 0) throw input_error("unknown operation symbol: " + name);
    return ops[i].arity;
  }

  void validate() const {
    if (ops.empty()) throw input_error("signature must declare at least one operation");
    for (size_t i = 0; i < ops.size(); ++i) {
      if (ops[i].name.empty()) throw input_error("operation name must be nonempty");
      if (ops[i].arity < 0) throw input_error("negative arity");
      for (size_t j = i + 1; j < ops.size(); ++j)
        if (ops[i].name == ops[j].name)
          throw input_error("duplicate operation name: " + ops[i].name);
    }
  }

  // The default Heyting signature {meet, join, impl, neg, one}.
  static Signature heyting() {
    return Signature{{{"meet", 2}, {"join", 2}, {"impl", 2}, {"neg", 1}, {"one", 0}}};
  }

  // Constant-free Heyting variant {meet, join, impl, neg}.
  static Signature heyting_constant_free() {
    return Signature{{{"meet", 2}, {"join", 2}, {"impl", 2}, {"neg", 1}}};
  }
};

}  // namespace jankov
