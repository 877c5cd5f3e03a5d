#include "radix/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "radix/error.hpp"

namespace radix {
namespace {

constexpr std::size_t kExactDigits = 100000;

const char* const kCaveat =
    "finite-horizon heuristic: limsup criteria cannot be decided from finitely many terms; "
    "only certified tail bounds prove convergence";

std::size_t window_of(std::size_t N, double fraction) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(N) * fraction));
}

IndicatorTerm indicator_term(const Magnitude& m, const Rational& e, unsigned P) {
  IndicatorTerm out{Real(P), std::nullopt};
  if (m.is_zero()) {
    out.exact = Rational(0);
    return out;
  }
  if (m.is_exact()) {
    Rational k = Rational(m.exponent()) * e;
    k.canonicalize();
    if (k.get_den() == 1) {
      const Magnitude v = Magnitude::power(m.base(), k.get_num());
      if (auto q = v.collapse(kExactDigits)) {
        out.exact = *q;
        out.value = Real(*q, P);
        return out;
      }
    }
  }
  const unsigned work = P + 64;
  out.value = exp(m.log(work) * Real(e, work)).with_precision(P);
  return out;
}

struct Radicands {
  std::vector<Magnitude> a;
  std::vector<Rational> e;  // cumulative exponent p_1...p_n
  bool square_roots = true;
};

Radicands radicands_from(const MagnitudeSource& source, std::size_t N) {
  Radicands out;
  Rational e(1);
  for (std::size_t n = 1; n <= N; ++n) {
    out.a.push_back(source(n));
    e /= 2;
    out.e.push_back(e);
  }
  return out;
}

Radicands radicands_from(const RadicalSpec& spec, std::size_t N) {
  Radicands out;
  Rational e(1);
  if (spec.kind == RadicalKind::power_form) {
    if (spec.has_weights()) throw DomainError("no convergence criterion for weighted power forms");
    out.square_roots = false;
    for (std::size_t n = 1; n <= N; ++n) {
      const Rational p = spec.exponent.term(n);
      if (sgn(p) <= 0 || p > 1) {
        throw DomainError("no applicable criterion: p_" + std::to_string(n) + " lies outside (0,1]");
      }
      const Magnitude a = spec.a.magnitude(n);
      if (a.sign() < 0) throw DomainError("negative radicand at n=" + std::to_string(n));
      out.a.push_back(a);
      e *= p;
      out.e.push_back(e);
    }
    return out;
  }
  std::vector<Magnitude> terms;
  if (spec.has_weights()) {
    terms = fold_weights(spec, N).a;
  } else {
    for (std::size_t n = 1; n <= N; ++n) {
      terms.push_back(spec.a.magnitude(n));
      if (terms.back().sign() < 0) throw DomainError("negative radicand at n=" + std::to_string(n));
    }
  }
  for (std::size_t n = 1; n <= N; ++n) {
    const Rational r = spec.exponent.term(n);
    if (r.get_den() != 1 || sgn(r) <= 0) throw DomainError("root index must be a positive integer");
    out.square_roots = out.square_roots && r == 2;
    e /= r;
    out.e.push_back(e);
  }
  out.a = std::move(terms);
  return out;
}

void fill_herschfeld(ConvergenceReport& report, const Radicands& radicands, const DiagnosticOptions& options) {
  const std::size_t N = radicands.a.size();
  if (N < 8) throw DomainError("horizon must be at least 8");
  const unsigned P = options.precision_bits;
  check_precision(P);
  const std::size_t w = window_of(N, options.window_fraction);
  report.horizon = N;
  report.criterion = radicands.square_roots ? "herschfeld" : "power_form";
  report.caveat = kCaveat;

  Real sup = Real::infinity(-1, P);
  Real exponent_sum(P);
  for (std::size_t n = 1; n <= N; ++n) {
    report.indicator.push_back(indicator_term(radicands.a[n - 1], radicands.e[n - 1], P));
    sup = max(sup, report.indicator.back().value);
    report.running_sup.push_back(sup);
    exponent_sum = exponent_sum + Real(radicands.e[n - 1], P);
    report.exponent_series_partial.push_back(exponent_sum);
  }
  const Real slack = Real::from_double(1 + options.flatness, P);
  const Real& sup_end = report.running_sup[N - 1];
  const Real& sup_start = report.running_sup[N - 1 - w];
  report.sup_stabilized = sup_end.is_finite() && sup_end <= sup_start * slack;
  report.exponent_series_flat = is_flat(report.exponent_series_partial, w, options.flatness);

  const bool applicable = radicands.square_roots || report.exponent_series_flat;
  if (!applicable) {
    report.verdict = Verdict::inconclusive;
    report.notes.push_back("exponent series not flat over the last " + std::to_string(w) + " terms");
    return;
  }
  if (report.sup_stabilized) {
    report.verdict = Verdict::looks_convergent;
    return;
  }
  const Real& end = report.indicator[N - 1].value;
  const Real& start = report.indicator[N - 1 - w].value;
  bool rising = !(end <= start * slack);
  for (std::size_t n = N - w; rising && n < N; ++n) {
    rising = report.indicator[n - 1].value < report.indicator[n].value;
  }
  report.verdict = rising ? Verdict::looks_divergent : Verdict::inconclusive;
  if (!rising) report.notes.push_back("running sup still moving but the indicator is not rising");
}

void fill_polya_szego(ConvergenceReport& report, const Radicands& radicands, const DiagnosticOptions& options) {
  if (!radicands.square_roots) throw DomainError("the growth exponent test needs square roots (r_n = 2)");
  const std::size_t N = radicands.a.size();
  if (N < 1) throw DomainError("horizon must be positive");
  const unsigned P = options.precision_bits;
  check_precision(P);
  const unsigned work = P + 64;
  const std::size_t w = window_of(N, options.window_fraction);
  report.horizon = N;
  report.caveat = kCaveat;

  const Real ln2 = log(Real(2L, work));
  Real log_product(work);
  Real partial(work);
  Real estimate = Real::infinity(-1, P);
  for (std::size_t n = 1; n <= N; ++n) {
    const Magnitude& a = radicands.a[n - 1];
    if (!(a.sign() > 0)) throw DomainError("the growth exponent test needs a_n > 0 (a_" + std::to_string(n) + " = 0)");
    const Real ln_a = a.log(work);
    const Real nn(static_cast<long>(n), work);
    if (ln_a.sign() <= 0) {
      report.alpha.push_back(Real::infinity(-1, P));
    } else {
      report.alpha.push_back((log(ln_a) / nn).with_precision(P));
    }
    if (n + w > N) estimate = max(estimate, report.alpha.back());
    log_product = log_product + ln_a;
    partial = partial + exp(ln_a - nn * ln2 - log_product / Real(2L, work));
    report.ps_series_partial.push_back(partial.with_precision(P));
  }
  report.alpha_limsup_estimate = estimate;
  report.ps_series_flat = is_flat(report.ps_series_partial, w, options.flatness);

  const double threshold = ln2.to_double();
  const bool alpha_small = estimate.is_inf() || estimate.to_double() < threshold - options.flatness;
  const bool alpha_large = !estimate.is_inf() && estimate.to_double() > threshold + options.flatness;
  if (alpha_large) {
    report.verdict = report.ps_series_flat ? Verdict::inconclusive : Verdict::looks_divergent;
  } else if (alpha_small || report.ps_series_flat) {
    report.verdict = Verdict::looks_convergent;
  } else {
    report.verdict = Verdict::inconclusive;
  }
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::looks_convergent:
      return "looks_convergent";
    case Verdict::looks_divergent:
      return "looks_divergent";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

bool is_flat(const std::vector<Real>& partials, std::size_t window, double flatness) {
  if (partials.size() <= window) return false;
  const Real& end = partials.back();
  const Real& start = partials[partials.size() - 1 - window];
  if (!end.is_finite() || !start.is_finite()) return false;
  const Real added = abs(end - start);
  return added <= abs(end) * Real::from_double(flatness, end.precision());
}

ConvergenceReport herschfeld_diagnostic(const RadicalSpec& spec, std::size_t N, const DiagnosticOptions& options) {
  ConvergenceReport report;
  fill_herschfeld(report, radicands_from(spec, N), options);
  return report;
}

ConvergenceReport herschfeld_diagnostic(const MagnitudeSource& a, std::size_t N, const DiagnosticOptions& options) {
  ConvergenceReport report;
  fill_herschfeld(report, radicands_from(a, N), options);
  return report;
}

ConvergenceReport polya_szego_diagnostic(const RadicalSpec& spec, std::size_t N, const DiagnosticOptions& options) {
  ConvergenceReport report;
  report.criterion = "polya_szego";
  fill_polya_szego(report, radicands_from(spec, N), options);
  return report;
}

ConvergenceReport polya_szego_diagnostic(const MagnitudeSource& a, std::size_t N, const DiagnosticOptions& options) {
  ConvergenceReport report;
  report.criterion = "polya_szego";
  fill_polya_szego(report, radicands_from(a, N), options);
  return report;
}

std::vector<Real> series_S_partial(const NormalizedSpec& spec, std::size_t N, unsigned precision_bits) {
  RowCache cache(spec, precision_bits);
  GapMethod method = GapMethod::herschfeld_general;
  if (spec.kind == SpecKind::weighted) method = GapMethod::weighted_general;
  if (spec.kind == SpecKind::power) method = GapMethod::power_form;
  std::vector<Real> out;
  Real sum(precision_bits);
  for (std::size_t n = 1; n <= N; ++n) {
    sum = sum + gap_bound(cache, n, method).value;
    out.push_back(sum);
  }
  return out;
}

ConvergenceReport diagnose(const RadicalSpec& spec, std::size_t N, const DiagnosticOptions& options) {
  ConvergenceReport report;
  std::optional<Radicands> radicands;
  try {
    radicands = radicands_from(spec, N);
    fill_herschfeld(report, *radicands, options);
  } catch (const DomainError& e) {
    if (N < 8) throw;
    report = ConvergenceReport();
    report.horizon = N;
    report.caveat = kCaveat;
    report.notes.push_back(e.what());
  }

  if (radicands && radicands->square_roots && !radicands->a.empty() &&
      std::all_of(radicands->a.begin(), radicands->a.end(), [](const Magnitude& m) { return m.sign() > 0; })) {
    ConvergenceReport ps;
    fill_polya_szego(ps, *radicands, options);
    report.alpha = std::move(ps.alpha);
    report.alpha_limsup_estimate = ps.alpha_limsup_estimate;
    report.ps_series_partial = std::move(ps.ps_series_partial);
    report.ps_series_flat = ps.ps_series_flat;
    if (ps.verdict != Verdict::inconclusive && report.verdict != Verdict::inconclusive &&
        ps.verdict != report.verdict) {
      report.notes.push_back(std::string("growth exponent test says ") + to_string(ps.verdict));
      report.verdict = Verdict::inconclusive;
    }
  }

  if (report.verdict == Verdict::inconclusive) {
    try {
      const NormalizedSpec normalized = normalize(spec, N + 1);
      report.series_S_partial = series_S_partial(normalized, N, options.precision_bits);
      report.series_S_flat = is_flat(report.series_S_partial, window_of(N, options.window_fraction), options.flatness);
      if (report.series_S_flat) {
        report.criterion = "series_S";
        report.verdict = Verdict::looks_convergent;
      }
    } catch (const Error& e) {
      report.notes.push_back(std::string("series S unavailable: ") + e.what());
    }
  }
  if (report.criterion.empty()) report.criterion = "none";
  return report;
}

}  // namespace radix
