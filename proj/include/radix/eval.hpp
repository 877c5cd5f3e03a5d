#pragma once

#include <cstddef>
#include <vector>

#include "radix/real.hpp"
#include "radix/spec.hpp"

namespace radix {

/// Row n of the triangular array of partial tails:
///   t_{1,n} = b_n a_n^{1/r_n},   t_{i,n} = b_k (a_k + t_{i-1,n})^{1/r_k},  k = n+1-i.
/// The last entry t_{n,n} is the n-th approximant.
struct TailTable {
  std::size_t depth = 0;
  std::vector<Real> values;          // values[i-1] = t_{i,n}
  std::vector<double> error_units;   // relative error of each entry, units of 2^-precision
  unsigned precision_bits = kDefaultPrecisionBits;
  SpecKind kind = SpecKind::plain;

  const Real& at(std::size_t i) const { return values.at(i - 1); }
  /// Tail that starts at term k, i.e. t_{n+1-k,n}. Equals f_{k-1}(t_{n,n}).
  const Real& layer(std::size_t k) const { return values.at(depth - k); }
  double layer_error_units(std::size_t k) const { return error_units.at(depth - k); }
  const Real& approximant() const { return values.back(); }
  /// Certified absolute rounding error of t_{i,n}.
  Real rounding_bound(std::size_t i) const;
};

struct Approximant {
  std::size_t depth = 0;
  Real value;
  unsigned precision_bits = kDefaultPrecisionBits;
  Real rounding_bound;  // absolute
};

/// Terms of a normalized spec rounded to a working precision, with their
/// conversion errors (units of 2^-precision).
struct RealTerms {
  unsigned precision_bits = kDefaultPrecisionBits;
  std::vector<Real> a;
  std::vector<double> a_error;
  std::vector<Real> b;  // weighted only
  std::vector<double> b_error;
  std::vector<Real> p;  // power only
  /// For power forms: p_i = 1/m exactly gives m, else 0.
  std::vector<std::uint64_t> reciprocal;
};

void check_precision(unsigned precision_bits);

RealTerms real_terms(const NormalizedSpec& spec, std::size_t upto, unsigned precision_bits);
/// Converts further terms so that `terms` covers indices 1..upto.
void extend_real_terms(RealTerms& terms, const NormalizedSpec& spec, std::size_t upto);

TailTable tail_table(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits = kDefaultPrecisionBits);
TailTable tail_table(const NormalizedSpec& spec, const RealTerms& terms, std::size_t n);

/// n-th approximant, evaluated tail first.
Approximant approximant(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits = kDefaultPrecisionBits);

/// n-th approximant of a continued power form (a_1 + (a_2 + ... + a_n^{p_n})^{p_2})^{p_1}.
Approximant power_form_approximant(const NormalizedSpec& spec, std::size_t n,
                                   unsigned precision_bits = kDefaultPrecisionBits);

Approximant to_approximant(const TailTable& table);

/// Absolute value of error_units * 2^-precision * |value|.
Real error_bound(const Real& value, double error_units, unsigned precision_bits);

}  // namespace radix
