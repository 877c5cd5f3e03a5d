#include "radix/catalog.hpp"

#include "radix/error.hpp"

namespace radix {
namespace {

Builtin make(std::string name, RadicalSpec spec, std::string description) {
  spec.label = name;
  return Builtin{std::move(name), std::move(spec), Rational(0), std::move(description)};
}

std::vector<std::string> split_arguments(std::string_view body) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    std::string_view piece = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::optional<Builtin> find_builtin(std::string_view name) {
  if (name == "golden") return make("golden", make_radical("1", "2"), "sqrt(1 + sqrt(1 + ...)), limit (1+sqrt 5)/2");
  if (name == "sqrt2plus") return make("sqrt2plus", make_radical("2", "2"), "sqrt(2 + sqrt(2 + ...)), limit 2");
  if (name == "ex-nested-n") {
    // r_1 = 1 already supplies the leading "1 +".
    return make("ex-nested-n", make_radical("n", "n"), "1 + sqrt(2 + cbrt(3 + ...)), a_n = r_n = n");
  }
  if (name == "ex-weighted-n") {
    return make("ex-weighted-n", make_radical("n", "n", "n"), "1 + 2 sqrt(2 + 3 cbrt(3 + ...)), a_n = b_n = r_n = n");
  }
  if (name == "ramanujan") return make("ramanujan", make_radical("1", "2", "n"), "sqrt(1 + 2 sqrt(1 + 3 sqrt(1 + ...))) = 3");
  const std::string_view prefix = "constant(";
  if (name.substr(0, prefix.size()) == prefix) {
    if (name.back() != ')') throw ParseError("expected ')' in " + std::string(name), name.size());
    const auto args = split_arguments(name.substr(prefix.size(), name.size() - prefix.size() - 1));
    if (args.size() != 3) throw ParseError("constant(a,b,r) takes three arguments", prefix.size());
    for (const auto& arg : args) parse_rational(arg);
    std::string label(name);
    return make(label, make_radical(args[0], args[2], args[1]), "b (a + b (a + ...)^(1/r))^(1/r)");
  }
  return std::nullopt;
}

std::vector<std::string> builtin_names() {
  return {"golden", "sqrt2plus", "constant(2,1,2)", "ex-nested-n", "ex-weighted-n", "ramanujan"};
}

}  // namespace radix
