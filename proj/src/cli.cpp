#include "radix/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "radix/bounds.hpp"
#include "radix/catalog.hpp"
#include "radix/convergence.hpp"
#include "radix/error.hpp"
#include "radix/limit.hpp"

namespace radix::cli {
namespace {

using nlohmann::json;

enum class Format { plain, csv, json };

struct SpecSource {
  std::string file;
  std::string builtin;
  std::string a;
  std::string b = "1";
  std::string r;
  std::string p;
  std::string offset;
};

struct Common {
  SpecSource source;
  unsigned precision_bits = kDefaultPrecisionBits;
  std::string format;
};

struct Loaded {
  RadicalSpec spec;
  Rational offset{0};
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  return Format::plain;
}

Loaded load(const SpecSource& source) {
  const int given = !source.file.empty() + !source.builtin.empty() + !source.a.empty();
  if (given == 0) throw UsageError("no spec given: use --spec, --builtin or --a");
  if (given > 1) throw UsageError("--spec, --builtin and --a are mutually exclusive");
  Loaded out;
  if (!source.file.empty()) {
    std::ifstream in(source.file);
    if (!in) throw UsageError("cannot read spec file " + source.file);
    out.spec = spec_from_json(json::parse(in));
  } else if (!source.builtin.empty()) {
    auto entry = find_builtin(source.builtin);
    if (!entry) throw UsageError("unknown builtin '" + source.builtin + "'");
    out.spec = std::move(entry->spec);
    out.offset = entry->offset;
  } else if (!source.p.empty()) {
    if (!source.r.empty()) throw UsageError("--r and --p are mutually exclusive");
    out.spec = make_power_form(source.a, source.p, source.b);
  } else {
    out.spec = make_radical(source.a, source.r.empty() ? "2" : source.r, source.b);
  }
  if (!source.offset.empty()) out.offset = parse_rational(source.offset);
  return out;
}

/// Normalized prefix that covers original depth `depth`, reading past zeros.
NormalizedSpec normalize_through(const RadicalSpec& spec, std::size_t depth) {
  std::size_t horizon = depth;
  while (true) {
    try {
      return normalize(spec, horizon);
    } catch (const HorizonError&) {
      if (horizon > 4 * depth + 256) throw;
      horizon = 2 * horizon + 8;
    }
  }
}

std::string text(const Real& x) {
  if (x.is_inf()) return x.sign() > 0 ? "inf" : "-inf";
  if (x.is_nan()) return "nan";
  return x.to_string();
}

json real_json(const Real& x) { return json{{"decimal", text(x)}, {"precision_bits", x.precision()}}; }

std::string csv_join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

void emit_record(std::ostream& out, Format format, const std::vector<std::pair<std::string, json>>& fields) {
  auto cell = [](const json& v) { return v.is_object() ? v["decimal"].get<std::string>() : (v.is_string() ? v.get<std::string>() : v.dump()); };
  switch (format) {
    case Format::json: {
      json doc = json::object();
      for (const auto& [k, v] : fields) doc[k] = v;
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::csv: {
      std::vector<std::string> header;
      std::vector<std::string> row;
      for (const auto& [k, v] : fields) {
        header.push_back(k);
        row.push_back(cell(v));
      }
      out << csv_join(header) << '\n' << csv_join(row) << '\n';
      break;
    }
    case Format::plain:
      for (const auto& [k, v] : fields) out << k << ": " << cell(v) << '\n';
      break;
  }
}

Real with_offset(const Real& x, const Rational& offset) {
  if (offset == 0) return x;
  return x + Real(offset, x.precision());
}

int cmd_eval(const Common& common, std::size_t n, std::ostream& out) {
  const Loaded loaded = load(common.source);
  if (n < 1) throw DomainError("depth must be >= 1");
  check_precision(common.precision_bits);
  const NormalizedSpec spec = normalize_through(loaded.spec, n);
  std::size_t m = 0;
  while (m < spec.horizon() && spec.original_depth(m + 1) <= n) ++m;
  Approximant result;
  result.depth = n;
  result.precision_bits = common.precision_bits;
  result.value = Real(common.precision_bits);
  result.rounding_bound = Real(common.precision_bits);
  if (m > 0) {
    result = approximant(spec, m, common.precision_bits);
    result.depth = n;
  }
  emit_record(out, parse_format(common.format),
              {{"depth", result.depth},
               {"value", real_json(with_offset(result.value, loaded.offset))},
               {"precision_bits", result.precision_bits},
               {"rounding_bound", real_json(result.rounding_bound)}});
  return kExitOk;
}

std::vector<GapMethod> parse_methods(const std::string& list, const NormalizedSpec& spec) {
  if (list.empty() || list == "all") return applicable_methods(spec);
  std::vector<GapMethod> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto method = parse_gap_method(item);
    if (!method) throw UsageError("unknown gap method '" + item + "'");
    out.push_back(*method);
  }
  return out;
}

int cmd_gaps(const Common& common, std::size_t n_max, const std::string& methods_text, std::ostream& out) {
  const Loaded loaded = load(common.source);
  if (n_max < 1) throw DomainError("--n-max must be >= 1");
  check_precision(common.precision_bits);
  const NormalizedSpec spec = normalize_through(loaded.spec, n_max + 1);
  const std::vector<GapMethod> methods = parse_methods(methods_text, spec);
  RowCache cache(spec, common.precision_bits);

  std::vector<std::string> header{"n", "approximant", "true_gap"};
  for (GapMethod m : methods) header.emplace_back(to_string(m));
  for (GapMethod m : methods) header.push_back(std::string(to_string(m)) + "/true_gap");

  const Format format = parse_format(common.format);
  json rows = json::array();
  std::vector<std::vector<std::string>> table;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Gap gap = true_gap(cache, n);
    const Real value = with_offset(cache.row(n).approximant(), loaded.offset);
    std::vector<Real> bounds;
    for (GapMethod m : methods) bounds.push_back(gap_bound(cache, n, m).value);
    std::vector<std::string> cells{std::to_string(n), text(value), text(gap.value)};
    json row{{"n", n}, {"approximant", real_json(value)}, {"true_gap", real_json(gap.value)}};
    for (std::size_t i = 0; i < methods.size(); ++i) {
      cells.push_back(text(bounds[i]));
      row[to_string(methods[i])] = real_json(bounds[i]);
    }
    for (std::size_t i = 0; i < methods.size(); ++i) {
      const Real ratio = bounds[i] / gap.value;
      cells.push_back(text(ratio));
      row[std::string(to_string(methods[i])) + "/true_gap"] = real_json(ratio);
    }
    rows.push_back(std::move(row));
    table.push_back(std::move(cells));
  }

  switch (format) {
    case Format::json:
      out << json{{"spec_kind", to_string(spec.kind)}, {"rows", rows}}.dump(2) << '\n';
      break;
    case Format::csv:
      out << csv_join(header) << '\n';
      for (const auto& cells : table) out << csv_join(cells) << '\n';
      break;
    case Format::plain: {
      std::vector<std::size_t> width(header.size());
      for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
      for (const auto& cells : table) {
        for (std::size_t c = 0; c < cells.size(); ++c) width[c] = std::max(width[c], cells[c].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
          out << cells[c] << std::string(width[c] - cells[c].size() + 2, ' ');
        }
        out << '\n';
      };
      line(header);
      for (const auto& cells : table) line(cells);
      break;
    }
  }
  return kExitOk;
}

int cmd_limit(const Common& common, double tol, const LimitOptions& options, bool require_certified,
              std::ostream& out) {
  const Loaded loaded = load(common.source);
  const LimitEstimate estimate = limit_estimate(loaded.spec, tol, options);
  std::vector<std::pair<std::string, json>> fields{
      {"value", real_json(with_offset(estimate.value, loaded.offset))},
      {"n_used", estimate.n_used},
      {"certified", estimate.certified},
      {"tol", tol},
      {"tail_bound", estimate.tail ? real_json(estimate.tail->value) : json("none")},
      {"strategy", to_string(options.strategy)},
      {"ratio_witness",
       estimate.tail && estimate.tail->ratio_witness ? real_json(*estimate.tail->ratio_witness) : json("none")},
      {"precision_bits", estimate.precision_bits},
      {"rounding_bound", real_json(estimate.rounding_bound)},
  };
  if (!estimate.reason.empty()) fields.emplace_back("reason", estimate.reason);
  emit_record(out, parse_format(common.format), fields);
  return estimate.certified || !require_certified ? kExitOk : kExitUncertified;
}

int cmd_diagnose(const Common& common, std::size_t horizon, const DiagnosticOptions& options, std::ostream& out) {
  const Loaded loaded = load(common.source);
  const ConvergenceReport report = diagnose(loaded.spec, horizon, options);
  const Format format = parse_format(common.format);

  auto at = [](const std::vector<Real>& v, std::size_t i) { return i < v.size() ? text(v[i]) : std::string(); };
  const std::vector<std::string> header{"n", "indicator", "running_sup", "alpha", "ps_series_partial",
                                        "exponent_series_partial", "series_S_partial"};
  std::vector<std::vector<std::string>> table;
  for (std::size_t i = 0; i < report.horizon; ++i) {
    table.push_back({std::to_string(i + 1), i < report.indicator.size() ? text(report.indicator[i].value) : "",
                     at(report.running_sup, i), at(report.alpha, i), at(report.ps_series_partial, i),
                     at(report.exponent_series_partial, i), at(report.series_S_partial, i)});
  }

  if (format == Format::json) {
    auto seq = [](const std::vector<Real>& v) {
      json a = json::array();
      for (const auto& x : v) a.push_back(real_json(x));
      return a;
    };
    json indicator = json::array();
    for (const auto& term : report.indicator) {
      json t = real_json(term.value);
      if (term.exact) t["exact"] = term.exact->get_str();
      indicator.push_back(std::move(t));
    }
    json doc{{"horizon", report.horizon},
             {"criterion", report.criterion},
             {"indicator", indicator},
             {"running_sup", seq(report.running_sup)},
             {"sup_stabilized", report.sup_stabilized},
             {"alpha", seq(report.alpha)},
             {"ps_series_partial", seq(report.ps_series_partial)},
             {"ps_series_flat", report.ps_series_flat},
             {"exponent_series_partial", seq(report.exponent_series_partial)},
             {"exponent_series_flat", report.exponent_series_flat},
             {"series_S_partial", seq(report.series_S_partial)},
             {"series_S_flat", report.series_S_flat},
             {"verdict", to_string(report.verdict)},
             {"caveat", report.caveat},
             {"notes", report.notes}};
    if (!report.alpha.empty()) doc["alpha_limsup_estimate"] = real_json(report.alpha_limsup_estimate);
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  const char* prefix = format == Format::csv ? "# " : "";
  out << csv_join(header) << '\n';
  for (const auto& cells : table) out << csv_join(cells) << '\n';
  out << prefix << "criterion: " << report.criterion << '\n';
  if (!report.alpha.empty()) out << prefix << "alpha_limsup_estimate: " << text(report.alpha_limsup_estimate) << '\n';
  out << prefix << "verdict: " << to_string(report.verdict) << '\n';
  for (const auto& note : report.notes) out << prefix << "note: " << note << '\n';
  out << prefix << "caveat: " << report.caveat << '\n';
  return kExitOk;
}

unsigned default_precision() {
  const char* env = std::getenv("RADIX_PRECISION_BITS");
  if (!env || !*env) return kDefaultPrecisionBits;
  char* end = nullptr;
  const unsigned long bits = std::strtoul(env, &end, 10);
  if (*end != '\0' || bits == 0 || bits > (1ul << 24)) throw UsageError("RADIX_PRECISION_BITS must be a positive integer");
  return static_cast<unsigned>(bits);
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--spec", common.source.file, "JSON spec file");
  sub->add_option("--builtin", common.source.builtin, "named radical");
  sub->add_option("--a", common.source.a, "radicand rule a_n");
  sub->add_option("--b", common.source.b, "weight rule b_n");
  sub->add_option("--r", common.source.r, "root index rule r_n (default 2)");
  sub->add_option("--p", common.source.p, "exponent rule p_n (power form)");
  sub->add_option("--offset", common.source.offset, "constant added to rendered approximants");
  sub->add_option("--precision", common.precision_bits, "working precision in bits");
  sub->add_option("--format", common.format, "csv, json or plain")->check(CLI::IsMember({"csv", "json", "plain"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Common common;
  try {
    common.precision_bits = default_precision();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  CLI::App app{"Right continued radicals: evaluation, gap bounds, limits and convergence diagnostics", "radix"};
  app.require_subcommand(1);
  app.footer("builtins: golden, sqrt2plus, constant(a,b,r), ex-nested-n, ex-weighted-n, ramanujan");

  std::size_t eval_n = 10;
  auto* eval = app.add_subcommand("eval", "evaluate the n-th approximant");
  add_common(eval, common);
  eval->add_option("-n", eval_n, "depth");

  std::size_t gaps_n = 10;
  std::string methods;
  auto* gaps = app.add_subcommand("gaps", "true gaps and gap bounds for n = 1..n-max");
  add_common(gaps, common);
  gaps->add_option("--n-max,-n", gaps_n, "last row");
  gaps->add_option("--methods", methods, "comma-separated gap methods (default: all applicable)");

  double tol = 1e-9;
  LimitOptions limit_options;
  std::string strategy = "geometric_majorization";
  bool allow_uncertified = false;
  auto* limit = app.add_subcommand("limit", "limit with a certified tail bound");
  add_common(limit, common);
  limit->add_option("--tol", tol, "target absolute error");
  limit->add_option("--n-max", limit_options.n_max, "largest depth tried");
  limit->add_option("--window", limit_options.window, "gap bounds summed per tail bound");
  limit->add_option("--strategy", strategy, "geometric_majorization, series_S or summed_partial");
  limit->add_flag("--require-certified", "exit 4 unless certified (default)");
  limit->add_flag("--allow-uncertified", allow_uncertified, "exit 0 even when not certified");

  std::size_t horizon = 40;
  DiagnosticOptions diag_options;
  auto* diag = app.add_subcommand("diagnose", "finite-horizon convergence diagnostics");
  add_common(diag, common);
  diag->add_option("--horizon,-N", horizon, "number of terms inspected");
  diag->add_option("--flatness", diag_options.flatness, "relative flatness threshold");
  diag->add_option("--window-fraction", diag_options.window_fraction, "stabilization window as a fraction of N");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  // subcommands share one option struct, so the per-command default lands after parsing
  if (common.format.empty()) common.format = gaps->parsed() ? "csv" : "plain";

  try {
    if (eval->parsed()) return cmd_eval(common, eval_n, out);
    if (gaps->parsed()) return cmd_gaps(common, gaps_n, methods, out);
    if (limit->parsed()) {
      auto parsed = parse_tail_strategy(strategy);
      if (!parsed) throw UsageError("unknown strategy '" + strategy + "'");
      limit_options.strategy = *parsed;
      limit_options.precision_bits = common.precision_bits;
      return cmd_limit(common, tol, limit_options, !allow_uncertified, out);
    }
    if (diag->parsed()) {
      diag_options.precision_bits = common.precision_bits;
      return cmd_diagnose(common, horizon, diag_options, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const json::exception& e) {
    err << "spec error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "evaluation error: " << e.what() << '\n';
    return kExitEval;
  }
  return kExitParse;
}

}  // namespace radix::cli
