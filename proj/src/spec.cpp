#include "radix/spec.hpp"

#include <limits>

#include "radix/error.hpp"

namespace radix {
namespace {

std::uint64_t checked_root_index(const Rational& value, std::uint64_t n) {
  if (value.get_den() != 1 || sgn(value) <= 0) {
    throw DomainError("root index r_" + std::to_string(n) + " = " + value.get_str() + " is not a positive integer");
  }
  if (!value.get_num().fits_ulong_p()) throw OverflowError("root index r_" + std::to_string(n) + " exceeds 64 bits");
  return value.get_num().get_ui();
}

std::uint64_t checked_product(std::uint64_t lhs, std::uint64_t rhs) {
  if (rhs != 0 && lhs > std::numeric_limits<std::uint64_t>::max() / rhs) {
    throw OverflowError("merged root index exceeds 64 bits");
  }
  return lhs * rhs;
}

struct RawTerms {
  std::vector<Magnitude> a;
  std::vector<Magnitude> b;
  std::vector<std::uint64_t> r;
  std::vector<Rational> p;
};

RawTerms materialize(const RadicalSpec& spec, std::size_t horizon, const TermOptions& options) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  RawTerms raw;
  const bool weighted = spec.has_weights();
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    Magnitude a = spec.a.magnitude(n, options);
    if (a.sign() < 0) throw DomainError("radicand a_" + std::to_string(n) + " is negative");
    raw.a.push_back(std::move(a));
    if (weighted) {
      Magnitude b = spec.b.magnitude(n, options);
      if (b.sign() <= 0) throw DomainError("weight b_" + std::to_string(n) + " is not positive");
      raw.b.push_back(std::move(b));
    }
    const Rational e = spec.exponent.term(n, options);
    if (spec.kind == RadicalKind::integer_root) {
      raw.r.push_back(checked_root_index(e, n));
    } else {
      if (sgn(e) <= 0) throw DomainError("exponent p_" + std::to_string(n) + " must be positive");
      raw.p.push_back(e);
    }
  }
  return raw;
}

SequenceRule rule_from_json(const nlohmann::json& node, const char* field) {
  if (node.is_string()) return SequenceRule::parse(node.get<std::string>());
  if (node.is_number_integer()) return SequenceRule::constant(Rational(node.dump()));
  if (node.is_number()) return SequenceRule::constant(parse_rational(node.dump()));
  if (node.is_object() && node.contains("list")) {
    const auto& list = node.at("list");
    if (!list.is_array()) throw ParseError(std::string("'") + field + ".list' must be an array", 0);
    std::vector<Rational> values;
    for (const auto& item : list) {
      values.push_back(parse_rational(item.is_string() ? item.get<std::string>() : item.dump()));
    }
    ExprPtr then;
    if (node.contains("then") && !node.at("then").is_null()) then = parse_expr(node.at("then").get<std::string>());
    return SequenceRule::list(std::move(values), std::move(then));
  }
  throw ParseError(std::string("field '") + field + "' must be an expression string or a list object", 0);
}

nlohmann::json rule_to_json(const SequenceRule& rule) {
  if (!rule.is_list()) return to_string(*rule.expr());
  nlohmann::json node;
  node["list"] = nlohmann::json::array();
  for (const auto& v : rule.list_values()) node["list"].push_back(v.get_str());
  if (rule.continuation()) node["then"] = to_string(*rule.continuation());
  return node;
}

}  // namespace

RadicalSpec make_radical(std::string_view a, std::string_view r, std::string_view b) {
  RadicalSpec spec;
  spec.kind = RadicalKind::integer_root;
  spec.a = SequenceRule::parse(a);
  spec.exponent = SequenceRule::parse(r);
  spec.b = SequenceRule::parse(b);
  return spec;
}

RadicalSpec make_power_form(std::string_view a, std::string_view p, std::string_view b) {
  RadicalSpec spec = make_radical(a, p, b);
  spec.kind = RadicalKind::power_form;
  return spec;
}

RadicalSpec spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("spec document must be a JSON object", 0);
  RadicalSpec spec;
  const std::string kind = doc.value("kind", std::string("radical"));
  if (kind == "radical") {
    spec.kind = RadicalKind::integer_root;
  } else if (kind == "power") {
    spec.kind = RadicalKind::power_form;
  } else {
    throw ParseError("unknown kind '" + kind + "'", 0);
  }
  if (!doc.contains("a")) throw ParseError("spec is missing field 'a'", 0);
  spec.a = rule_from_json(doc.at("a"), "a");
  if (doc.contains("b") && !doc.at("b").is_null()) spec.b = rule_from_json(doc.at("b"), "b");
  if (spec.kind == RadicalKind::integer_root) {
    if (doc.contains("p")) throw ParseError("field 'p' belongs to power forms", 0);
    spec.exponent = doc.contains("r") ? rule_from_json(doc.at("r"), "r") : SequenceRule::constant(2);
  } else {
    if (!doc.contains("p")) throw ParseError("power form is missing field 'p'", 0);
    if (doc.contains("r")) throw ParseError("field 'r' belongs to radicals", 0);
    spec.exponent = rule_from_json(doc.at("p"), "p");
  }
  if (doc.contains("label") && doc.at("label").is_string()) spec.label = doc.at("label").get<std::string>();
  return spec;
}

nlohmann::json spec_to_json(const RadicalSpec& spec) {
  nlohmann::json doc;
  doc["kind"] = spec.kind == RadicalKind::integer_root ? "radical" : "power";
  doc["a"] = rule_to_json(spec.a);
  if (spec.has_weights()) doc["b"] = rule_to_json(spec.b);
  doc[spec.kind == RadicalKind::integer_root ? "r" : "p"] = rule_to_json(spec.exponent);
  if (spec.label) doc["label"] = *spec.label;
  return doc;
}

NormalizedSpec eliminate_zeros(const RadicalSpec& spec, std::size_t horizon, const TermOptions& options) {
  RawTerms raw = materialize(spec, horizon, options);
  const bool power = spec.kind == RadicalKind::power_form;
  if (power && spec.has_weights()) throw DomainError("continued power forms take no weights");
  NormalizedSpec out;
  out.kind = power ? SpecKind::power : (spec.has_weights() ? SpecKind::weighted : SpecKind::plain);
  out.label = spec.label;

  std::uint64_t pending_root = 1;
  Rational pending_exponent = 1;
  bool in_zero_run = false;
  for (std::size_t i = 0; i < horizon; ++i) {
    if (raw.a[i].is_zero()) {
      if (out.kind == SpecKind::weighted) {
        throw DomainError("weighted radicals must have positive radicands (a_" + std::to_string(i + 1) + " = 0)");
      }
      if (power) {
        pending_exponent *= raw.p[i];
      } else {
        pending_root = checked_product(pending_root, raw.r[i]);
      }
      in_zero_run = true;
      continue;
    }
    out.a.push_back(raw.a[i]);
    if (power) {
      out.p.push_back(pending_exponent * raw.p[i]);
    } else {
      out.r.push_back(checked_product(pending_root, raw.r[i]));
    }
    if (out.kind == SpecKind::weighted) out.b.push_back(raw.b[i]);
    out.index_map.push_back(i + 1);
    pending_root = 1;
    pending_exponent = 1;
    in_zero_run = false;
  }
  if (in_zero_run) {
    throw HorizonError("horizon " + std::to_string(horizon) + " ends in zero radicands; no positive term certifies the merge");
  }
  return out;
}

NormalizedSpec normalize(const RadicalSpec& spec, std::size_t horizon, const TermOptions& options) {
  return eliminate_zeros(spec, horizon, options);
}

NormalizedSpec fold_weights(const RadicalSpec& spec, std::size_t horizon, const TermOptions& options) {
  if (spec.kind != RadicalKind::integer_root) throw DomainError("weight folding applies to integer-root radicals");
  RawTerms raw = materialize(spec, horizon, options);
  NormalizedSpec out;
  out.kind = SpecKind::plain;
  out.label = spec.label;
  out.r = raw.r;
  out.fold = spec.has_weights() ? FoldState::exact : FoldState::none;
  for (std::size_t i = 0; i < horizon; ++i) {
    if (raw.a[i].sign() <= 0) throw DomainError("weight folding needs positive radicands (a_" + std::to_string(i + 1) + ")");
    out.index_map.push_back(i + 1);
  }
  if (!spec.has_weights()) {
    out.a = std::move(raw.a);
    return out;
  }
  Magnitude previous_c;  // c_0 = 1
  Magnitude previous_a;  // a_0 = 1
  for (std::size_t i = 0; i < horizon; ++i) {
    const Magnitude ratio = divide(multiply(previous_c, raw.b[i], options), previous_a, options);
    Magnitude c = multiply(raw.a[i], power(ratio, Integer(static_cast<unsigned long>(raw.r[i])), options), options);
    if (!c.is_exact()) out.fold = FoldState::approximate;
    previous_c = c;
    previous_a = raw.a[i];
    out.a.push_back(std::move(c));
  }
  return out;
}

const char* to_string(SpecKind kind) {
  switch (kind) {
    case SpecKind::plain:
      return "plain";
    case SpecKind::weighted:
      return "weighted";
    case SpecKind::power:
      return "power";
  }
  return "plain";
}

}  // namespace radix
