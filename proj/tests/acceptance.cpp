// Acceptance checks 1-9. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "radix/catalog.hpp"
#include "radix/convergence.hpp"
#include "radix/denest.hpp"
#include "radix/limit.hpp"
#include "support.hpp"

using namespace radix;
using testsupport::ListSpec;

namespace {

constexpr std::uint64_t kSeed = 20261015;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void fail(const std::string& what) {
    ++failures_;
    if (first_.empty()) first_ = what;
  }
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) fail(what);
  }
  long checks() const { return checks_; }
  long failures() const { return failures_; }
  const std::string& first() const { return first_; }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::string first_;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome summarize(const Tally& t, double seconds, double limit_seconds, const std::string& extra = "") {
  Outcome o;
  o.pass = t.failures() == 0 && seconds < limit_seconds;
  std::ostringstream s;
  s << t.checks() << " checks, " << t.failures() << " failed";
  if (!extra.empty()) s << ", " << extra;
  s << ", " << fmt(seconds) << " s (limit " << limit_seconds << " s)";
  if (!t.first().empty()) s << "; first failure: " << t.first();
  o.detail = s.str();
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Real margin_of(const Gap& g, const GapBound& a, const GapBound& b) {
  return g.rounding_bound + a.rounding_bound + b.rounding_bound;
}

Outcome identity_exactness() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed);
  Tally t;
  double worst = 0;
  for (int s = 0; s < 1000; ++s) {
    const ListSpec ls = testsupport::random_radical(rng, 26);
    const NormalizedSpec spec = ls.normalized();
    RowCache cache(spec, 256);
    for (std::size_t n = 1; n <= 25; ++n) {
      const Gap g = true_gap(cache, n);
      const GapBound id = gap_bound(cache, n, GapMethod::identity);
      const Real combined = g.rounding_bound + id.rounding_bound;
      const Real residual = abs(id.value - g.value);
      worst = std::max(worst, (residual / combined).to_double());
      t.check(residual <= Real(4L, 64) * combined, "spec " + std::to_string(s) + " n=" + std::to_string(n));
    }
  }
  return summarize(t, seconds_since(start), 60, "worst residual/combined bound " + fmt(worst));
}

Outcome dominance_chain() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed);
  Tally t;
  for (int s = 0; s < 1000; ++s) {
    const NormalizedSpec spec = testsupport::random_radical(rng, 26).normalized();
    RowCache cache(spec, 256);
    for (std::size_t n = 1; n <= 25; ++n) {
      const Gap g = true_gap(cache, n);
      const GapBound hg = gap_bound(cache, n, GapMethod::herschfeld_general);
      const GapBound ps = gap_bound(cache, n, GapMethod::polya_szego);
      const Real m = margin_of(g, hg, ps);
      const std::string where = "plain spec " + std::to_string(s) + " n=" + std::to_string(n);
      t.check(g.value <= hg.value + m, where + " gap > herschfeld_general");
      t.check(hg.value <= ps.value + m, where + " herschfeld_general > polya_szego");
    }
  }
  std::mt19937_64 wrng(kSeed + 1);
  for (int s = 0; s < 1000; ++s) {
    const NormalizedSpec spec = testsupport::random_radical(wrng, 26, true).normalized();
    RowCache cache(spec, 256);
    for (std::size_t n = 1; n <= 25; ++n) {
      const Gap g = true_gap(cache, n);
      const GapBound wg = gap_bound(cache, n, GapMethod::weighted_general);
      const GapBound wps = gap_bound(cache, n, GapMethod::weighted_ps);
      const Real m = margin_of(g, wg, wps);
      const std::string where = "weighted spec " + std::to_string(s) + " n=" + std::to_string(n);
      t.check(g.value <= wg.value + m, where + " gap > weighted_general");
      t.check(wg.value <= wps.value + m, where + " weighted_general > weighted_ps");
    }
  }
  return summarize(t, seconds_since(start), 60);
}

Outcome degenerate_collapse() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed + 2);
  Tally t;
  for (int s = 0; s < 100; ++s) {
    ListSpec ls = testsupport::random_radical(rng, 21);
    // r_i = 1: the sequence bound is exactly a_{n+1}.
    ListSpec ones = ls;
    for (auto& r : ones.e) r = 1;
    const NormalizedSpec flat = ones.normalized();
    // b_i = 1 given as an explicit list keeps the weighted code path.
    ListSpec unit = ls;
    unit.b.assign(ls.a.size(), Rational(1));
    const NormalizedSpec plain = ls.normalized();
    const NormalizedSpec weighted = unit.normalized();
    // p_i = 1/r_i.
    ListSpec pw = ls;
    pw.power = true;
    for (auto& e : pw.e) e = 1 / e;
    const NormalizedSpec power = pw.normalized();
    t.check(weighted.kind == SpecKind::weighted && power.kind == SpecKind::power, "spec kinds");

    RowCache c_flat(flat, 128), c_plain(plain, 128), c_weighted(weighted, 128), c_power(power, 128);
    for (std::size_t n = 1; n <= 20; ++n) {
      const std::string where = "spec " + std::to_string(s) + " n=" + std::to_string(n);
      const GapBound ps1 = gap_bound(c_flat, n, GapMethod::polya_szego);
      t.check(ps1.exact.has_value() && *ps1.exact == ones.a[n], where + " r=1 bound is not exactly a_{n+1}");

      const GapBound hg = gap_bound(c_plain, n, GapMethod::herschfeld_general);
      const GapBound ps = gap_bound(c_plain, n, GapMethod::polya_szego);
      t.check(identical(gap_bound(c_weighted, n, GapMethod::weighted_general).value, hg.value),
              where + " weighted_general differs from herschfeld_general");
      t.check(identical(gap_bound(c_weighted, n, GapMethod::weighted_ps).value, ps.value),
              where + " weighted_ps differs from polya_szego");
      t.check(identical(c_weighted.row(n).approximant(), c_plain.row(n).approximant()),
              where + " weighted approximant differs");

      t.check(ulp_distance(gap_bound(c_power, n, GapMethod::power_form).value, hg.value) <= 2,
              where + " power_form differs from herschfeld_general");
      t.check(ulp_distance(gap_bound(c_power, n, GapMethod::power_ps).value, ps.value) <= 2,
              where + " power_ps differs from polya_szego");
    }
  }
  return summarize(t, seconds_since(start), 60);
}

Outcome ramanujan() {
  const auto start = std::chrono::steady_clock::now();
  Tally t;
  const RadicalSpec spec = find_builtin("ramanujan")->spec;
  const NormalizedSpec ns = normalize(spec, 50);
  const Real three(3L, 512);
  const Real oracle = testsupport::oracle_approximant(spec, 50, 512);
  const Approximant w50 = approximant(ns, 50, kDefaultPrecisionBits);
  const Real err50 = abs(three - oracle);
  t.check(err50 < Real::from_double(1e-9, 64), "oracle |3 - w_50| = " + fmt(err50.to_double()));
  t.check(abs(w50.value - oracle) <= w50.rounding_bound + Real::pow2(-500, 64), "engine w_50 disagrees with oracle");
  double worst = 0;
  for (std::size_t n = 4; n <= 40; ++n) {
    const Approximant w = approximant(ns, n, kDefaultPrecisionBits);
    const Real gap = abs(three - w.value);
    const double nn = static_cast<double>(n);
    const Real envelope = Real::from_double(2 * nn * nn * nn, 128) * Real::pow2(-static_cast<long>(n - 1), 128);
    worst = std::max(worst, (gap / envelope).to_double());
    t.check(gap <= envelope, "n=" + std::to_string(n) + " outside 2 n^3 / 2^(n-1)");
  }
  return summarize(t, seconds_since(start), 5, "|3 - w_50| = " + fmt(err50.to_double()) + ", worst ratio " + fmt(worst));
}

Outcome geometric_rate() {
  const auto start = std::chrono::steady_clock::now();
  Tally t;
  const NormalizedSpec golden = normalize(find_builtin("golden")->spec, 40);
  const Real phi = (Real(1L, 256) + sqrt(Real(5L, 256))) / Real(2L, 256);
  for (std::size_t n = 1; n <= 40; ++n) {
    const Approximant w = approximant(golden, n, 256);
    const Real bound = Real::pow2(1 - static_cast<long>(n), 256);  // c s^n / (1 - s), c = 1, s = 1/2
    t.check(abs(phi - w.value) <= bound, "golden n=" + std::to_string(n));
  }
  const LimitEstimate limit = limit_estimate(find_builtin("sqrt2plus")->spec, 1e-12);
  const Real err = abs(limit.value - Real(2L, limit.value.precision()));
  t.check(limit.certified, "sqrt2plus limit not certified: " + limit.reason);
  t.check(err <= Real::from_double(1e-12, 64), "sqrt2plus limit off by " + fmt(err.to_double()));
  return summarize(t, seconds_since(start), 60,
                   "sqrt2plus limit error " + fmt(err.to_double()) + " at n=" + std::to_string(limit.n_used));
}

Outcome factorial_rate() {
  const auto start = std::chrono::steady_clock::now();
  Tally t;
  const RadicalSpec nested = find_builtin("ex-nested-n")->spec;
  const NormalizedSpec ns = normalize(nested, 20);
  const Real v = testsupport::oracle_approximant(nested, 60, 512);
  const Real cbrt3 = root(Real(3L, 256), 3);
  Real factorial(1L, 256);  // (n-1)!
  for (std::size_t n = 2; n <= 20; ++n) {
    factorial = factorial * Real(static_cast<long>(n - 1), 256);
    const Approximant a = approximant(ns, n, 256);
    const Real diff = v - a.value;
    const Real bound = cbrt3 / (Real(static_cast<long>(n - 1), 256) * factorial);
    const std::string where = "nested n=" + std::to_string(n);
    t.check(diff >= -a.rounding_bound, where + " below the limit");
    t.check(diff <= bound + a.rounding_bound, where + " outside 3^(1/3)/((n-1)(n-1)!)");
  }

  const RadicalSpec weighted = find_builtin("ex-weighted-n")->spec;
  const NormalizedSpec ws = normalize(weighted, 20);
  const Real w = testsupport::oracle_approximant(weighted, 60, 512);
  const Real s = cbrt3 / Real(2L, 256);
  const Real one(1L, 256);
  for (std::size_t n = 4; n <= 20; ++n) {
    const Approximant a = approximant(ws, n, 256);
    const Real diff = w - a.value;
    const Real nn(static_cast<long>(n), 256);
    const Real bound = Real(2L, 256) * pow(s, static_cast<std::uint64_t>(n + 1)) * (one + nn * (one - s)) /
                       ((one - s) * (one - s));
    const std::string where = "weighted n=" + std::to_string(n);
    t.check(diff >= -a.rounding_bound, where + " below the limit");
    t.check(diff <= bound + a.rounding_bound, where + " outside 2 s^(n+1)(1+n(1-s))/(1-s)^2");
  }
  return summarize(t, seconds_since(start), 60);
}

Outcome power_bound() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed + 3);
  Tally t;
  for (int s = 0; s < 500; ++s) {
    const NormalizedSpec spec = testsupport::random_power(rng, 21).normalized();
    RowCache cache(spec, 256);
    for (std::size_t n = 1; n <= 20; ++n) {
      const Gap g = true_gap(cache, n);
      const GapBound b = gap_bound(cache, n, GapMethod::power_ps);
      t.check(g.value <= b.value + g.rounding_bound + b.rounding_bound,
              "spec " + std::to_string(s) + " n=" + std::to_string(n));
    }
  }
  return summarize(t, seconds_since(start), 60);
}

Outcome diagnostics() {
  const auto start = std::chrono::steady_clock::now();
  Tally t;
  std::ostringstream extra;

  const ConvergenceReport c3 = herschfeld_diagnostic(make_radical("3^(2^n)", "2"), 40);
  bool constant = true;
  for (const auto& term : c3.indicator) constant = constant && term.exact && *term.exact == 3;
  t.check(constant, "c^(2^n) indicator is not exactly c");
  t.check(c3.verdict == Verdict::looks_convergent, std::string("c^(2^n) verdict ") + to_string(c3.verdict));

  const ConvergenceReport big = herschfeld_diagnostic(make_radical("2^(2^n*n)", "2"), 40);
  t.check(big.verdict == Verdict::looks_divergent, std::string("2^(2^n n) verdict ") + to_string(big.verdict));

  // a_n = e^(e^(3n)) is not a rational rule; it is supplied through its logarithm.
  const MagnitudeSource ee3 = [](std::uint64_t n) {
    return Magnitude::from_log(exp(Real(static_cast<long>(3 * n), 1024)));
  };
  const ConvergenceReport growth = polya_szego_diagnostic(ee3, 40);
  bool alpha_three = true;
  for (const auto& a : growth.alpha) alpha_three = alpha_three && abs(a - Real(3L, 128)) < Real::pow2(-100, 64);
  t.check(alpha_three, "alpha of e^(e^(3n)) is not 3");
  t.check(growth.verdict == Verdict::looks_convergent,
          std::string("e^(e^(3n)) verdict ") + to_string(growth.verdict) + " (alpha estimate " +
              growth.alpha_limsup_estimate.to_string(6) + ")");
  extra << "e^(e^(3n)) alpha " << growth.alpha_limsup_estimate.to_string(6) << " verdict "
        << to_string(growth.verdict);

  for (const char* rule : {"1", "1/n", "1/2^n"}) {
    const ConvergenceReport small = polya_szego_diagnostic(make_radical(rule, "2"), 40);
    bool markers = small.alpha.size() == 40;
    for (const auto& a : small.alpha) markers = markers && a.is_inf() && a.sign() < 0 && !a.is_nan();
    t.check(markers, std::string("a_n = ") + rule + " does not give -inf alpha markers");
  }
  return summarize(t, seconds_since(start), 60, extra.str());
}

Outcome denesting_identity() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed + 4);
  Tally t;
  for (int s = 0; s < 200; ++s) {
    const int shape = s % 3;
    const ListSpec ls = shape == 2 ? testsupport::random_power(rng, 20) : testsupport::random_radical(rng, 20, shape == 1);
    const NormalizedSpec spec = ls.normalized();
    const DenestFamily family(spec);
    for (std::size_t n = 1; n <= 20; ++n) {
      const TailTable row = tail_table(spec, n, 256);
      const double input = row.error_units.back();
      for (std::size_t j = 0; j < n; ++j) {
        const DenestValue f = denest_forward(family, j, row.approximant(), 256, input);
        const Real& tab = denest_from_tail(row, j);
        const Real tolerance = f.error_bound + row.rounding_bound(n - j);
        t.check(abs(f.value - tab) <= tolerance, "spec " + std::to_string(s) + " n=" + std::to_string(n) +
                                                     " j=" + std::to_string(j));
      }
    }
  }
  return summarize(t, seconds_since(start), 60);
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"identity exactness", identity_exactness},
      {"dominance chain", dominance_chain},
      {"degenerate collapse", degenerate_collapse},
      {"ramanujan value and rate", ramanujan},
      {"geometric rate", geometric_rate},
      {"factorial rate", factorial_rate},
      {"power-form sequence bound", power_bound},
      {"convergence diagnostics", diagnostics},
      {"denesting identity", denesting_identity},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, body] : criteria) {
    ++index;
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << "criterion " << index << " " << (o.pass ? "PASS" : "FAIL") << " " << name << ": " << o.detail
              << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
