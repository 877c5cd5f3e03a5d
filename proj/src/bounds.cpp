#include "radix/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "radix/error.hpp"

namespace radix {
namespace {

constexpr double kSlack = 1.0 + 1e-6;
constexpr std::size_t kExactDigits = 20000;

struct MethodName {
  GapMethod method;
  const char* name;
};

constexpr MethodName kMethodNames[] = {
    {GapMethod::identity, "identity"},
    {GapMethod::herschfeld_general, "herschfeld_general"},
    {GapMethod::polya_szego, "polya_szego"},
    {GapMethod::weighted_general, "weighted_general"},
    {GapMethod::weighted_ps, "weighted_ps"},
    {GapMethod::power_form, "power_form"},
    {GapMethod::power_ps, "power_ps"},
};

double ln_estimate(const Real& x) {
  long e = 0;
  const double mantissa = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log(std::fabs(mantissa)) + static_cast<double>(e) * 0.69314718055994531;
}

Real integer_real(std::uint64_t v, unsigned precision_bits) {
  return Real(Integer(static_cast<unsigned long>(v)), precision_bits);
}

// Exact r-th root of a rational, if it is one.
std::optional<Rational> exact_root(const Magnitude& m, std::uint64_t r) {
  auto v = m.collapse(kExactDigits);
  if (!v) return std::nullopt;
  if (r == 1) return v;
  if (!Integer(static_cast<unsigned long>(r)).fits_ulong_p()) return std::nullopt;
  Integer num;
  Integer den;
  if (mpz_root(num.get_mpz_t(), v->get_num_mpz_t(), r) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), v->get_den_mpz_t(), r) == 0) return std::nullopt;
  return Rational(num, den);
}

Rational exact_power(const Rational& q, std::uint64_t e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return out;
}

void require_radical(const NormalizedSpec& spec, const char* what) {
  if (spec.kind == SpecKind::power) throw DomainError(std::string(what) + " applies to integer-root radicals");
}

void require_depth(const NormalizedSpec& spec, std::size_t n) {
  if (n < 1) throw DomainError("gap index must be >= 1");
  if (n + 1 > spec.horizon()) {
    throw HorizonError("gap " + std::to_string(n) + " needs term " + std::to_string(n + 1) +
                       " beyond the normalized horizon " + std::to_string(spec.horizon()));
  }
}

GapBound finish(std::size_t n, GapMethod method, unsigned precision_bits, Real value, double err) {
  GapBound out;
  out.n = n;
  out.method = method;
  out.inputs_precision_bits = precision_bits;
  out.rounding_bound = error_bound(value, err * kSlack, precision_bits);
  out.value = std::move(value);
  return out;
}

GapBound identity_bound(RowCache& cache, std::size_t n) {
  const NormalizedSpec& spec = cache.spec();
  require_radical(spec, "the gap identity");
  require_depth(spec, n);
  const unsigned P = cache.precision_bits();
  const RealTerms& terms = cache.terms(n + 1);
  const TailTable& row = cache.row(n);
  const TailTable& next = cache.row(n + 1);
  const bool weighted = spec.kind == SpecKind::weighted;

  Real num = root(terms.a[n], spec.r[n]);
  double err = terms.a_error[n] / static_cast<double>(spec.r[n]) + 1.0;
  if (weighted) {
    num = num * terms.b[n];
    err += terms.b_error[n] + 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
      num = num * terms.b[i - 1];
      err += terms.b_error[i - 1] + 1.0;
    }
  }
  Real den(1L, P);
  for (std::size_t i = 1; i <= n; ++i) {
    Real x = next.layer(i);
    Real y = row.layer(i);
    double input = std::max(next.layer_error_units(i), row.layer_error_units(i));
    if (weighted) {
      x = x / terms.b[i - 1];
      y = y / terms.b[i - 1];
      input += terms.b_error[i - 1] + 1.0;
    }
    // sum_{j<r} x^j y^{r-1-j}, Horner in x.
    const std::uint64_t r = spec.r[i - 1];
    Real acc(1L, P);
    Real y_power(1L, P);
    for (std::uint64_t k = 1; k < r; ++k) {
      y_power = y_power * y;
      acc = acc * x + y_power;
    }
    den = den * acc;
    err += static_cast<double>(r - 1) * (input + 2.0) + 1.0;
  }
  Real value = num / den;
  return finish(n, GapMethod::identity, P, std::move(value), err + 1.0);
}

GapBound general_bound(RowCache& cache, std::size_t n, bool weighted_method) {
  const NormalizedSpec& spec = cache.spec();
  require_radical(spec, "this inequality");
  if (!weighted_method && spec.kind == SpecKind::weighted) {
    throw DomainError("herschfeld_general needs an unweighted radical; use weighted_general");
  }
  require_depth(spec, n);
  const unsigned P = cache.precision_bits();
  const RealTerms& terms = cache.terms(n + 1);
  const TailTable& row = cache.row(n);
  const bool has_b = spec.kind == SpecKind::weighted;

  Real num = root(terms.a[n], spec.r[n]);
  double err = terms.a_error[n] / static_cast<double>(spec.r[n]) + 1.0;
  if (weighted_method) {
    const Real one(1L, P);
    num = num * (has_b ? terms.b[n] : one);
    err += (has_b ? terms.b_error[n] : 0.0) + 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
      num = num * pow(has_b ? terms.b[i - 1] : one, spec.r[i - 1]);
      err += static_cast<double>(spec.r[i - 1]) * ((has_b ? terms.b_error[i - 1] : 0.0) + 1.0) + 2.0;
    }
  }
  Real den(1L, P);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint64_t r = spec.r[i - 1];
    den = den * integer_real(r, P);
    den = den * pow(row.layer(i), r - 1);
    err += static_cast<double>(r - 1) * row.layer_error_units(i) + 3.0;
  }
  Real value = num / den;
  return finish(n, weighted_method ? GapMethod::weighted_general : GapMethod::herschfeld_general, P, std::move(value),
                err + 1.0);
}

GapBound sequence_bound(RowCache& cache, std::size_t n, bool weighted_method) {
  const NormalizedSpec& spec = cache.spec();
  require_radical(spec, "this inequality");
  if (!weighted_method && spec.kind == SpecKind::weighted) {
    throw DomainError("polya_szego needs an unweighted radical; use weighted_ps");
  }
  require_depth(spec, n);
  const unsigned P = cache.precision_bits();
  const bool has_b = spec.kind == SpecKind::weighted;
  const GapMethod method = weighted_method ? GapMethod::weighted_ps : GapMethod::polya_szego;

  // Exact path: every root involved is rational.
  std::optional<Rational> exact = exact_root(spec.a[n], spec.r[n]);
  for (std::size_t i = 1; exact && i <= n; ++i) {
    auto root_i = exact_root(spec.a[i - 1], spec.r[i - 1]);
    if (!root_i) {
      exact.reset();
      break;
    }
    *exact /= Rational(Integer(static_cast<unsigned long>(spec.r[i - 1]))) * exact_power(*root_i, spec.r[i - 1] - 1);
  }
  if (exact && has_b) {
    for (std::size_t i = 0; exact && i <= n; ++i) {
      auto b = spec.b[i].collapse(kExactDigits);
      if (b) {
        *exact *= *b;
      } else {
        exact.reset();
      }
    }
  }
  if (exact) {
    exact->canonicalize();
    GapBound out = finish(n, method, P, Real(*exact, P), 1.0);
    out.exact = std::move(exact);
    return out;
  }

  const RealTerms& terms = cache.terms(n + 1);
  Real num = root(terms.a[n], spec.r[n]);
  double err = terms.a_error[n] / static_cast<double>(spec.r[n]) + 1.0;
  if (weighted_method && has_b) {
    for (std::size_t i = 0; i <= n; ++i) {
      num = num * terms.b[i];
      err += terms.b_error[i] + 1.0;
    }
  }
  Real den(1L, P);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint64_t r = spec.r[i - 1];
    den = den * integer_real(r, P);
    den = den * pow(root(terms.a[i - 1], r), r - 1);
    err += static_cast<double>(r) * (terms.a_error[i - 1] + 2.0) + 2.0;
  }
  Real value = num / den;
  return finish(n, method, P, std::move(value), err + 1.0);
}

// x^p for a power-form exponent, with its error in units.
Real power_term(const Real& x, const RealTerms& terms, std::size_t index, double input, double& err) {
  const std::uint64_t m = terms.reciprocal[index];
  if (m == 1) {
    err += input;
    return x;
  }
  if (m > 1) {
    err += input / static_cast<double>(m) + 1.0;
    return root(x, m);
  }
  const double p = terms.p[index].to_double();
  err += p * input + p * std::fabs(ln_estimate(x)) + 1.0;
  return pow(x, terms.p[index]);
}

GapBound power_bound(RowCache& cache, std::size_t n) {
  const NormalizedSpec& spec = cache.spec();
  if (spec.kind != SpecKind::power) throw DomainError("power_form applies to continued power forms");
  require_depth(spec, n);
  const unsigned P = cache.precision_bits();
  const RealTerms& terms = cache.terms(n + 1);
  const TailTable& row = cache.row(n);

  double err = 0;
  Real num = power_term(terms.a[n], terms, n, terms.a_error[n], err);
  Real den(1L, P);
  bool uses_next_row = false;
  for (std::size_t i = 1; i <= n; ++i) {
    const Rational& p = spec.p[i - 1];
    const bool above_one = p > 1;
    const TailTable& source = above_one ? cache.row(n + 1) : row;
    uses_next_row = uses_next_row || above_one;
    const Real& f = source.layer(i);
    const double f_err = source.layer_error_units(i);
    const std::uint64_t m = terms.reciprocal[i - 1];
    if (m >= 1) {
      // p f^{(p-1)/p} = 1 / (m f^{m-1}) for p = 1/m.
      den = den * integer_real(m, P);
      den = den * pow(f, m - 1);
      err += static_cast<double>(m - 1) * f_err + 3.0;
    } else {
      const Rational e = (p - 1) / p;
      const double e_abs = std::fabs(e.get_d());
      num = num * terms.p[i - 1];
      num = num * pow(f, Real(e, P));
      err += e_abs * f_err + e_abs * std::fabs(ln_estimate(f)) + 4.0;
    }
  }
  Real value = num / den;
  GapBound out = finish(n, GapMethod::power_form, P, std::move(value), err + 1.0);
  if (uses_next_row) {
    out.advisory = true;
    out.notes.push_back("some p_i > 1: bound depends on t_{n+1}");
  }
  return out;
}

GapBound power_sequence_bound(RowCache& cache, std::size_t n) {
  const NormalizedSpec& spec = cache.spec();
  if (spec.kind != SpecKind::power) throw DomainError("power_ps applies to continued power forms");
  require_depth(spec, n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (spec.p[i] > 1) throw DomainError("power_ps needs every p_i in (0,1]; p_" + std::to_string(i + 1) + " > 1");
  }
  const unsigned P = cache.precision_bits();
  const RealTerms& terms = cache.terms(n + 1);

  double err = 0;
  Real num = power_term(terms.a[n], terms, n, terms.a_error[n], err);
  Real den(1L, P);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint64_t m = terms.reciprocal[i - 1];
    const Real& a = terms.a[i - 1];
    if (m >= 1) {
      den = den * integer_real(m, P);
      den = den * pow(root(a, m), m - 1);
      err += static_cast<double>(m) * (terms.a_error[i - 1] + 2.0) + 2.0;
    } else {
      const Rational e = spec.p[i - 1] - 1;
      num = num * terms.p[i - 1];
      num = num * pow(a, Real(e, P));
      err += std::fabs(e.get_d()) * (terms.a_error[i - 1] + std::fabs(ln_estimate(a))) + 4.0;
    }
  }
  Real value = num / den;
  return finish(n, GapMethod::power_ps, P, std::move(value), err + 1.0);
}

GapMethod general_method(SpecKind kind) {
  switch (kind) {
    case SpecKind::plain:
      return GapMethod::herschfeld_general;
    case SpecKind::weighted:
      return GapMethod::weighted_general;
    case SpecKind::power:
      return GapMethod::power_form;
  }
  return GapMethod::herschfeld_general;
}

}  // namespace

const char* to_string(GapMethod method) {
  for (const auto& entry : kMethodNames) {
    if (entry.method == method) return entry.name;
  }
  return "unknown";
}

std::optional<GapMethod> parse_gap_method(std::string_view name) {
  for (const auto& entry : kMethodNames) {
    if (name == entry.name) return entry.method;
  }
  return std::nullopt;
}

std::vector<GapMethod> applicable_methods(const NormalizedSpec& spec) {
  switch (spec.kind) {
    case SpecKind::plain:
      return {GapMethod::identity, GapMethod::herschfeld_general, GapMethod::polya_szego};
    case SpecKind::weighted:
      return {GapMethod::identity, GapMethod::weighted_general, GapMethod::weighted_ps};
    case SpecKind::power: {
      const bool all_at_most_one = std::all_of(spec.p.begin(), spec.p.end(), [](const Rational& p) { return p <= 1; });
      if (all_at_most_one) return {GapMethod::power_form, GapMethod::power_ps};
      return {GapMethod::power_form};
    }
  }
  return {};
}

RowCache::RowCache(const NormalizedSpec& spec, unsigned precision_bits)
    : spec_(&spec), precision_bits_(precision_bits) {
  check_precision(precision_bits);
  terms_.precision_bits = precision_bits;
}

const RealTerms& RowCache::terms(std::size_t upto) {
  if (terms_.a.size() < upto) extend_real_terms(terms_, *spec_, upto);
  return terms_;
}

const TailTable& RowCache::row(std::size_t n) {
  if (rows_.size() < n) rows_.resize(n);
  auto& slot = rows_[n - 1];
  if (!slot) slot = tail_table(*spec_, terms(n), n);
  return *slot;
}

Gap true_gap(RowCache& cache, std::size_t n) {
  require_depth(cache.spec(), n);
  const TailTable& row = cache.row(n);
  const TailTable& next = cache.row(n + 1);
  Gap gap;
  gap.n = n;
  gap.value = next.approximant() - row.approximant();
  gap.rounding_bound = next.rounding_bound(n + 1) + row.rounding_bound(n) + gap.value.ulp();
  return gap;
}

Gap true_gap(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  RowCache cache(spec, precision_bits);
  return true_gap(cache, n);
}

GapBound gap_bound(RowCache& cache, std::size_t n, GapMethod method) {
  switch (method) {
    case GapMethod::identity:
      return identity_bound(cache, n);
    case GapMethod::herschfeld_general:
      return general_bound(cache, n, false);
    case GapMethod::polya_szego:
      return sequence_bound(cache, n, false);
    case GapMethod::weighted_general:
      return general_bound(cache, n, true);
    case GapMethod::weighted_ps:
      return sequence_bound(cache, n, true);
    case GapMethod::power_form:
      return power_bound(cache, n);
    case GapMethod::power_ps:
      return power_sequence_bound(cache, n);
  }
  throw DomainError("unknown gap method");
}

GapBound gap_bound(const NormalizedSpec& spec, std::size_t n, GapMethod method, unsigned precision_bits) {
  RowCache cache(spec, precision_bits);
  return gap_bound(cache, n, method);
}

GapBound gap_identity(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  return gap_bound(spec, n, GapMethod::identity, precision_bits);
}
GapBound gap_bound_herschfeld_general(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  return gap_bound(spec, n, GapMethod::herschfeld_general, precision_bits);
}
GapBound gap_bound_polya_szego(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  return gap_bound(spec, n, GapMethod::polya_szego, precision_bits);
}
GapBound gap_bound_weighted(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  return gap_bound(spec, n, GapMethod::weighted_general, precision_bits);
}
GapBound gap_bound_weighted_ps(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  return gap_bound(spec, n, GapMethod::weighted_ps, precision_bits);
}
GapBound gap_bound_powerform(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  return gap_bound(spec, n, GapMethod::power_form, precision_bits);
}
GapBound gap_bound_powerform_ps(const NormalizedSpec& spec, std::size_t n, unsigned precision_bits) {
  return gap_bound(spec, n, GapMethod::power_ps, precision_bits);
}

const char* to_string(TailStrategy strategy) {
  switch (strategy) {
    case TailStrategy::geometric_majorization:
      return "geometric_majorization";
    case TailStrategy::summed_partial:
      return "summed_partial";
    case TailStrategy::series_S:
      return "series_S";
  }
  return "unknown";
}

std::optional<TailStrategy> parse_tail_strategy(std::string_view name) {
  if (name == "geometric_majorization" || name == "geometric") return TailStrategy::geometric_majorization;
  if (name == "summed_partial" || name == "partial") return TailStrategy::summed_partial;
  if (name == "series_S" || name == "series") return TailStrategy::series_S;
  return std::nullopt;
}

TailBound tail_bound(RowCache& cache, std::size_t from_n, TailStrategy strategy, std::size_t budget) {
  if (from_n < 1) throw DomainError("tail bound needs from_n >= 1");
  const NormalizedSpec& spec = cache.spec();
  const unsigned P = cache.precision_bits();
  const std::size_t last = from_n + budget;
  TailBound out;
  out.from_n = from_n;
  out.strategy = strategy;
  out.window = budget;
  out.precision_bits = P;

  if (strategy == TailStrategy::summed_partial) {
    require_depth(spec, last);
    out.value = cache.row(last + 1).approximant() - cache.row(from_n).approximant();
    out.certified = false;
    out.note = "plain partial sum of true gaps; not a bound";
    return out;
  }

  std::vector<GapMethod> methods;
  if (strategy == TailStrategy::series_S) {
    methods = {general_method(spec.kind)};
  } else {
    for (GapMethod m : applicable_methods(spec)) {
      if (m != GapMethod::identity) methods.push_back(m);
    }
  }

  std::vector<Real> bounds;
  for (std::size_t k = from_n; k <= last; ++k) {
    std::optional<Real> best;
    for (GapMethod m : methods) {
      GapBound g = gap_bound(cache, k, m);
      Real upper = g.value + g.rounding_bound;
      if (!best || upper < *best) best = std::move(upper);
    }
    bounds.push_back(std::move(*best));
  }

  Real sum(P);
  for (const auto& g : bounds) sum = sum + g;
  Real ratio(P);
  for (std::size_t k = 1; k < bounds.size(); ++k) ratio = max(ratio, bounds[k] / bounds[k - 1]);
  out.ratio_witness = ratio;
  const Real one(1L, P);
  if (bounds.size() < 2 || !(ratio < one)) {
    out.value = sum;
    out.certified = false;
    out.note = "no ratio witness below 1 over the window";
    return out;
  }
  Real value = sum + bounds.back() * ratio / (one - ratio);
  // Summation rounding: one unit per addition.
  value = value * (one + Real::pow2(-static_cast<long>(P) + 4, P) * integer_real(bounds.size() + 4, P));
  out.value = std::move(value);
  out.certified = true;
  return out;
}

TailBound tail_bound(const NormalizedSpec& spec, std::size_t from_n, TailStrategy strategy, unsigned precision_bits,
                     std::size_t budget) {
  RowCache cache(spec, precision_bits);
  return tail_bound(cache, from_n, strategy, budget);
}

}  // namespace radix
