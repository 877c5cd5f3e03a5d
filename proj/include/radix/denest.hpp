#pragma once

#include <cstddef>

#include "radix/eval.hpp"

namespace radix {

/// The denesting maps f_0(y) = y and
///   plain     f_k(y) = f_{k-1}(y)^{r_k} - a_k
///   weighted  f_k(y) = (f_{k-1}(y) / b_k)^{r_k} - a_k
///   power     f_k(y) = f_{k-1}(y)^{1/p_k} - a_k
/// which peel k layers off an approximant: f_j(t_{n,n}) = t_{n-j,n}.
class DenestFamily {
 public:
  explicit DenestFamily(const NormalizedSpec& spec) : spec_(&spec) {}

  const NormalizedSpec& spec() const { return *spec_; }
  SpecKind kind() const { return spec_->kind; }

 private:
  const NormalizedSpec* spec_;
};

struct DenestValue {
  Real value;
  Real error_bound;  // absolute, includes the propagated input error
  double error_units = 0;
  /// Cancellation in the subtractions has cost more than half of the working precision.
  bool cancellation_warning = false;
};

/// f_k(y) by direct recursion. `input_error_units` is the relative error of y
/// in units of 2^-precision_bits. Requires y > v_{k-1}, where v_0 = 0.
DenestValue denest_forward(const DenestFamily& family, std::size_t k, const Real& y, unsigned precision_bits,
                           double input_error_units = 0);

/// f_j(t_{n,n}) = t_{n-j,n} read straight from the stored row.
const Real& denest_from_tail(const TailTable& table, std::size_t j);

}  // namespace radix
