#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radix/spec.hpp"

namespace radix {

struct Builtin {
  std::string name;
  RadicalSpec spec;
  /// Constant added to every rendered approximant.
  Rational offset{0};
  std::string description;
};

/// Named radicals: golden, sqrt2plus, constant(a,b,r), ex-nested-n,
/// ex-weighted-n, ramanujan. Throws ParseError for malformed constant(...)
/// arguments; returns nullopt for unknown names.
std::optional<Builtin> find_builtin(std::string_view name);

/// Names usable with find_builtin; constant(a,b,r) is listed as constant(2,1,2).
std::vector<std::string> builtin_names();

}  // namespace radix
