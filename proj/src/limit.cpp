#include "radix/limit.hpp"

#include <algorithm>
#include <memory>

#include "radix/error.hpp"

namespace radix {

LimitEstimate limit_estimate(const NormalizedSpec& spec, double tol, const LimitOptions& options) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  check_precision(options.precision_bits);
  LimitEstimate out;
  unsigned P = options.precision_bits;
  const std::size_t usable = spec.horizon() > options.window + 1 ? spec.horizon() - options.window - 1 : 0;
  const std::size_t n_max = std::min(options.n_max, usable);
  if (n_max < 1) throw HorizonError("horizon too short for a tail bound window of " + std::to_string(options.window));

  auto cache = std::make_unique<RowCache>(spec, P);
  std::size_t n = 1;
  try {
    while (n <= n_max) {
      const TailTable& row = cache->row(n);
      const Real rounding = row.rounding_bound(n);
      out.value = row.approximant();
      out.n_used = n;
      out.precision_bits = P;
      out.rounding_bound = rounding;
      if (rounding.to_double() > tol / 10) {
        if (2 * P > options.max_precision_bits) {
          out.reason = "rounding bound above tol/10 at the precision cap";
          return out;
        }
        P *= 2;
        cache = std::make_unique<RowCache>(spec, P);
        continue;
      }
      TailBound tail = tail_bound(*cache, n, options.strategy, options.window);
      const bool done = tail.certified && (tail.value + rounding).to_double() <= tol;
      out.tail = std::move(tail);
      if (done) {
        out.certified = true;
        out.reason.clear();
        return out;
      }
      ++n;
    }
    out.reason = out.tail && out.tail->certified ? "tail bound above tol at n_max" : "no certified tail bound up to n_max";
  } catch (const OverflowError& e) {
    out.reason = std::string("stopped at n = ") + std::to_string(n) + ": " + e.what();
  }
  return out;
}

LimitEstimate limit_estimate(const RadicalSpec& spec, double tol, const LimitOptions& options) {
  const NormalizedSpec normalized = normalize(spec, options.n_max + options.window + 2);
  return limit_estimate(normalized, tol, options);
}

}  // namespace radix
