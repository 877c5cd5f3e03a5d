#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radix/bounds.hpp"

namespace radix {

enum class Verdict { looks_convergent, looks_divergent, inconclusive };

const char* to_string(Verdict verdict);

struct DiagnosticOptions {
  /// Relative flatness demanded of running sups and series partials.
  double flatness = 1e-3;
  /// Fraction of the horizon forming the stabilization window.
  double window_fraction = 0.25;
  unsigned precision_bits = kDefaultPrecisionBits;
};

struct IndicatorTerm {
  Real value;
  std::optional<Rational> exact;  // set when a_n^{e_n} is an exact rational
};

/// Finite-horizon evidence about convergence. Every sequence is indexed from
/// n = 1; empty sequences were not computed for this criterion.
struct ConvergenceReport {
  std::size_t horizon = 0;
  std::string criterion;  // herschfeld, power_form, polya_szego, series_S
  /// a_n^{e_n} with e_n = 2^-n, 1/(r_1...r_n) or p_1...p_n.
  std::vector<IndicatorTerm> indicator;
  std::vector<Real> running_sup;
  bool sup_stabilized = false;
  /// ln ln a_n / n, -inf when a_n <= 1.
  std::vector<Real> alpha;
  Real alpha_limsup_estimate;
  /// Partial sums of 2^-n a_n (a_1...a_n)^{-1/2}.
  std::vector<Real> ps_series_partial;
  bool ps_series_flat = false;
  /// Partial sums of e_n.
  std::vector<Real> exponent_series_partial;
  bool exponent_series_flat = false;
  /// Partial sums of the general gap bounds (the series S).
  std::vector<Real> series_S_partial;
  bool series_S_flat = false;
  Verdict verdict = Verdict::inconclusive;
  std::string caveat;
  std::vector<std::string> notes;
};

/// Term n (n >= 1) of a radicand sequence.
using MagnitudeSource = std::function<Magnitude(std::uint64_t)>;

/// Boundedness of a_n^{e_n}: square roots use e_n = 2^-n, general integer
/// roots and power forms with p_n in (0,1] use e_n = p_1...p_n (p_n = 1/r_n).
/// Weighted radicals are folded first. Requires N >= 8.
ConvergenceReport herschfeld_diagnostic(const RadicalSpec& spec, std::size_t N, const DiagnosticOptions& options = {});
/// Square-root radical with radicands from `a`.
ConvergenceReport herschfeld_diagnostic(const MagnitudeSource& a, std::size_t N, const DiagnosticOptions& options = {});

/// Growth exponent alpha = limsup ln ln a_n / n and the series
/// sum 2^-n a_n (a_1...a_n)^{-1/2} for square-root radicals. The growth test
/// compares alpha against ln 2.
ConvergenceReport polya_szego_diagnostic(const RadicalSpec& spec, std::size_t N, const DiagnosticOptions& options = {});
ConvergenceReport polya_szego_diagnostic(const MagnitudeSource& a, std::size_t N,
                                         const DiagnosticOptions& options = {});

/// Partial sums S_1..S_N of the general gap bounds g_1..g_N.
std::vector<Real> series_S_partial(const NormalizedSpec& spec, std::size_t N,
                                   unsigned precision_bits = kDefaultPrecisionBits);

/// Runs every applicable test and merges them into one report.
ConvergenceReport diagnose(const RadicalSpec& spec, std::size_t N, const DiagnosticOptions& options = {});

/// Partials are flat when the last window adds at most `flatness` of the total.
bool is_flat(const std::vector<Real>& partials, std::size_t window, double flatness);

}  // namespace radix
