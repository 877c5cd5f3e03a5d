#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "radix/sequence.hpp"

namespace radix {

enum class RadicalKind { integer_root, power_form };

/// A right continued radical
///   b_1 (a_1 + b_2 (a_2 + ...)^(1/r_2))^(1/r_1)
/// or a continued power form
///   b_1 (a_1 + b_2 (a_2 + ...)^(p_2))^(p_1).
struct RadicalSpec {
  RadicalKind kind = RadicalKind::integer_root;
  SequenceRule a;
  SequenceRule b;         // weights, default constant 1
  SequenceRule exponent;  // r_n for integer roots, p_n for power forms
  std::optional<std::string> label;

  bool has_weights() const { return !b.is_literal_one(); }
};

RadicalSpec make_radical(std::string_view a, std::string_view r, std::string_view b = "1");
RadicalSpec make_power_form(std::string_view a, std::string_view p, std::string_view b = "1");

/// Parses `{"kind":"radical"|"power","a":..,"b":..,"r":..,"p":..,"label":..}`.
/// Rules are expression strings or `{"list":[..],"then":".."}` objects.
RadicalSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const RadicalSpec& spec);

enum class SpecKind { plain, weighted, power };

enum class FoldState { none, exact, approximate };

/// Finite prefix of a radical with every radicand strictly positive. Vectors
/// are 0-based: a[0] holds a_1.
struct NormalizedSpec {
  SpecKind kind = SpecKind::plain;
  std::vector<Magnitude> a;
  std::vector<Magnitude> b;        // weighted only
  std::vector<std::uint64_t> r;    // plain and weighted
  std::vector<Rational> p;         // power only
  std::vector<std::uint64_t> index_map;  // normalized position -> original 1-based index
  FoldState fold = FoldState::none;
  std::optional<std::string> label;

  std::size_t horizon() const { return a.size(); }
  /// Original depth matching normalized depth n.
  std::uint64_t original_depth(std::size_t n) const { return index_map.at(n - 1); }
};

/// Materializes the first `horizon` terms and removes zero radicands. Weighted
/// specs stay weighted (see fold_weights); weighted specs may not contain zero
/// radicands.
NormalizedSpec normalize(const RadicalSpec& spec, std::size_t horizon, const TermOptions& options = {});

/// Drops each zero radicand and multiplies the adjacent root indices
/// (exponents for power forms): a zero at a_k merges layer k into layer k+1.
/// Throws HorizonError when the horizon ends inside a run of zeros and
/// OverflowError when a merged root index exceeds 64 bits.
NormalizedSpec eliminate_zeros(const RadicalSpec& spec, std::size_t horizon, const TermOptions& options = {});

/// Rewrites a weighted integer-root radical as a plain one with radicands
///   c_i = a_i (c_{i-1} b_i / a_{i-1})^{r_i},  a_0 = c_0 = 1.
/// Values stay exact while they fit options.max_digits and switch to
/// logarithmic approximations afterwards (fold = approximate).
NormalizedSpec fold_weights(const RadicalSpec& spec, std::size_t horizon, const TermOptions& options = {});

const char* to_string(SpecKind kind);

}  // namespace radix
