#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "radix/bounds.hpp"

namespace radix {

struct LimitOptions {
  std::size_t n_max = 200;
  unsigned precision_bits = kDefaultPrecisionBits;
  TailStrategy strategy = TailStrategy::geometric_majorization;
  std::size_t window = 8;
  /// Precision is never raised past this.
  unsigned max_precision_bits = 1u << 16;
};

struct LimitEstimate {
  Real value;
  std::size_t n_used = 0;
  bool certified = false;
  std::optional<TailBound> tail;
  unsigned precision_bits = kDefaultPrecisionBits;
  Real rounding_bound;
  std::string reason;  // why certification failed, empty otherwise
};

/// Walks n upward until the tail bound plus the rounding bound of v_n is at
/// most tol, doubling the precision whenever the rounding bound exceeds tol/10.
/// Running out of n, precision or exponent range yields certified = false.
LimitEstimate limit_estimate(const NormalizedSpec& spec, double tol, const LimitOptions& options = {});
/// Normalizes through n_max + window + 2 first.
LimitEstimate limit_estimate(const RadicalSpec& spec, double tol, const LimitOptions& options = {});

}  // namespace radix
