#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "radix/eval.hpp"

namespace radix {

/// Which inequality produced a gap bound.
enum class GapMethod {
  identity,            // exact gap via the telescoped difference-of-powers identity
  herschfeld_general,  // a_{n+1}^{1/r_{n+1}} / prod r_i f_{i-1}(v_n)^{r_i-1}
  polya_szego,         // a_{n+1}^{1/r_{n+1}} / prod r_i a_i^{(r_i-1)/r_i}
  weighted_general,    // weighted analogue of herschfeld_general
  weighted_ps,         // weighted analogue of polya_szego
  power_form,          // power-form bound, split on p_i <= 1 / p_i > 1
  power_ps,            // a_{n+1}^{p_{n+1}} prod p_i a_i^{p_i-1}, all p_i in (0,1]
};

const char* to_string(GapMethod method);
std::optional<GapMethod> parse_gap_method(std::string_view name);
/// Methods whose preconditions hold for a spec kind (identity first).
std::vector<GapMethod> applicable_methods(const NormalizedSpec& spec);

struct GapBound {
  std::size_t n = 0;
  Real value;
  GapMethod method = GapMethod::identity;
  unsigned inputs_precision_bits = kDefaultPrecisionBits;
  Real rounding_bound;               // absolute
  std::optional<Rational> exact;     // set when the bound is an exact rational
  bool advisory = false;             // depends on v_{n+1} (some p_i > 1)
  std::vector<std::string> notes;
};

/// The true gap v_{n+1} - v_n by subtraction.
struct Gap {
  std::size_t n = 0;
  Real value;
  Real rounding_bound;
};

/// Lazily built rows of the triangular array at one precision; shared by
/// every bound at that precision.
class RowCache {
 public:
  RowCache(const NormalizedSpec& spec, unsigned precision_bits);

  const NormalizedSpec& spec() const { return *spec_; }
  unsigned precision_bits() const { return precision_bits_; }
  const TailTable& row(std::size_t n);
  /// Terms converted through index `upto` (1-based).
  const RealTerms& terms(std::size_t upto);

 private:
  const NormalizedSpec* spec_;
  unsigned precision_bits_;
  RealTerms terms_;
  std::deque<std::optional<TailTable>> rows_;  // stable references across growth
};

Gap true_gap(RowCache& cache, std::size_t n);
Gap true_gap(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits = kDefaultPrecisionBits);

GapBound gap_bound(RowCache& cache, std::size_t n, GapMethod method);
GapBound gap_bound(const NormalizedSpec& spec, std::size_t n, GapMethod method,
                   unsigned precision_bits = kDefaultPrecisionBits);

GapBound gap_identity(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits = kDefaultPrecisionBits);
GapBound gap_bound_herschfeld_general(const NormalizedSpec& spec, std::size_t n,
                                      unsigned precision_bits = kDefaultPrecisionBits);
GapBound gap_bound_polya_szego(const NormalizedSpec& spec, std::size_t n,
                               unsigned precision_bits = kDefaultPrecisionBits);
GapBound gap_bound_weighted(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits = kDefaultPrecisionBits);
GapBound gap_bound_weighted_ps(const NormalizedSpec& spec, std::size_t n,
                               unsigned precision_bits = kDefaultPrecisionBits);
GapBound gap_bound_powerform(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits = kDefaultPrecisionBits);
GapBound gap_bound_powerform_ps(const NormalizedSpec& spec, std::size_t n,
                                unsigned precision_bits = kDefaultPrecisionBits);

enum class TailStrategy { geometric_majorization, summed_partial, series_S };

const char* to_string(TailStrategy strategy);
std::optional<TailStrategy> parse_tail_strategy(std::string_view name);

/// Upper bound on v - v_{from_n}.
struct TailBound {
  std::size_t from_n = 0;
  Real value;
  TailStrategy strategy = TailStrategy::geometric_majorization;
  std::optional<Real> ratio_witness;  // largest successive gap-bound ratio over the window
  bool certified = false;
  std::size_t window = 0;
  unsigned precision_bits = kDefaultPrecisionBits;
  std::string note;
};

/// Sums gap bounds g_k for k = from_n .. from_n + budget and majorizes the
/// remainder geometrically by the largest observed ratio s:
///   tail <= sum g_k + g_last * s / (1 - s),
/// certified only when s < 1. geometric_majorization takes the tightest
/// inequality at each k; series_S uses the general (tail-table) inequality
/// only, i.e. the partial sums of the convergence series S; summed_partial is
/// the plain sum of true gaps over the window and is never certified.
TailBound tail_bound(RowCache& cache, std::size_t from_n, TailStrategy strategy, std::size_t budget = 8);
TailBound tail_bound(const NormalizedSpec& spec, std::size_t from_n, TailStrategy strategy,
                     unsigned precision_bits = kDefaultPrecisionBits, std::size_t budget = 8);

}  // namespace radix
