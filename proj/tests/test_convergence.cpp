#include <doctest.h>

#include "radix/catalog.hpp"
#include "radix/convergence.hpp"
#include "radix/error.hpp"
#include "radix/limit.hpp"

using namespace radix;

TEST_CASE("constant indicator for c^(2^n)") {
  const ConvergenceReport r = herschfeld_diagnostic(make_radical("3^(2^n)", "2"), 40);
  CHECK(r.criterion == "herschfeld");
  for (const auto& term : r.indicator) {
    REQUIRE(term.exact.has_value());
    CHECK(*term.exact == 3);
  }
  CHECK(r.sup_stabilized);
  CHECK(r.verdict == Verdict::looks_convergent);
  CHECK_FALSE(r.caveat.empty());
}

TEST_CASE("indicator of a_n = n tends to 1") {
  const ConvergenceReport r = herschfeld_diagnostic(make_radical("n", "2"), 40);
  for (std::size_t n = 3; n < 40; ++n) CHECK(r.indicator[n].value < r.indicator[n - 1].value);
  CHECK(abs(r.indicator.back().value - Real(1L, 128)) < Real::from_double(1e-9, 64));
  CHECK(r.verdict == Verdict::looks_convergent);
}

TEST_CASE("exact indicator 2^n for a_n = 2^(2^n n)") {
  const ConvergenceReport r = herschfeld_diagnostic(make_radical("2^(2^n*n)", "2"), 40);
  for (std::size_t n = 1; n <= 40; ++n) {
    REQUIRE(r.indicator[n - 1].exact.has_value());
    CHECK(*r.indicator[n - 1].exact == Rational(Integer(1) << static_cast<unsigned>(n)));
  }
  CHECK(r.verdict == Verdict::looks_divergent);
}

TEST_CASE("running sup is nondecreasing") {
  for (const char* rule : {"n", "3^(2^n)", "1/n", "n^3+2"}) {
    const ConvergenceReport r = herschfeld_diagnostic(make_radical(rule, "2"), 30);
    for (std::size_t i = 1; i < r.running_sup.size(); ++i) CHECK(r.running_sup[i - 1] <= r.running_sup[i]);
  }
}

TEST_CASE("growth exponent") {
  const ConvergenceReport ones = polya_szego_diagnostic(make_radical("1", "2"), 40);
  for (const auto& a : ones.alpha) CHECK((a.is_inf() && a.sign() < 0));
  CHECK(abs(ones.ps_series_partial.back() - Real(1L, 128)) < Real::from_double(1e-11, 64));
  CHECK(ones.verdict == Verdict::looks_convergent);

  const MagnitudeSource ee = [](std::uint64_t n) {
    return Magnitude::from_log(exp(Real(static_cast<long>(n), 1024)));
  };
  const ConvergenceReport r = polya_szego_diagnostic(ee, 40);
  CHECK(abs(r.alpha_limsup_estimate - Real(1L, 128)) < Real::pow2(-100, 64));
  CHECK(r.verdict == Verdict::looks_divergent);

  const MagnitudeSource slow = [](std::uint64_t n) {
    return Magnitude::from_log(exp(Real::from_double(0.5 * static_cast<double>(n), 1024)));
  };
  CHECK(polya_szego_diagnostic(slow, 40).verdict == Verdict::looks_convergent);

  CHECK_THROWS_AS(polya_szego_diagnostic(make_radical("n", "3"), 20), DomainError);
  CHECK_THROWS_AS(polya_szego_diagnostic(make_radical("n-1", "2"), 20), DomainError);
}

TEST_CASE("power forms and general roots") {
  const ConvergenceReport p = herschfeld_diagnostic(make_power_form("n", "1/2"), 32);
  CHECK(p.criterion == "power_form");
  CHECK(p.exponent_series_flat);
  CHECK(p.verdict == Verdict::looks_convergent);

  const ConvergenceReport r = herschfeld_diagnostic(make_radical("n", "n"), 32);
  CHECK(r.exponent_series_flat);
  CHECK(r.verdict == Verdict::looks_convergent);

  const ConvergenceReport flat = herschfeld_diagnostic(make_radical("1/2^n", "1"), 32);
  CHECK_FALSE(flat.exponent_series_flat);
  CHECK(flat.verdict == Verdict::inconclusive);

  CHECK_THROWS_AS(herschfeld_diagnostic(make_power_form("n", "2"), 32), DomainError);
  CHECK_THROWS_AS(herschfeld_diagnostic(make_radical("n", "2"), 7), DomainError);
}

TEST_CASE("series S partial sums") {
  const std::vector<Real> golden = series_S_partial(normalize(make_radical("1", "2"), 41), 40);
  const Real first = golden.front();
  CHECK(golden.back() <= Real(2L, 128) * first / Real::from_double(0.5, 128));
  CHECK(is_flat(golden, 10, 1e-3));

  const std::vector<Real> sum = series_S_partial(normalize(make_radical("1/2^n", "1"), 61), 60);
  CHECK(abs(sum.back() - Real::from_double(0.5, 128)) < Real::from_double(1e-17, 64));

  const std::vector<Real> nested = series_S_partial(normalize(make_radical("n", "n"), 16), 15);
  CHECK(is_flat(nested, 4, 1e-12));
}

TEST_CASE("diagnose falls back to the series S test") {
  const ConvergenceReport r = diagnose(make_radical("1/2^n", "1"), 40);
  CHECK(r.criterion == "series_S");
  CHECK(r.series_S_flat);
  CHECK(r.verdict == Verdict::looks_convergent);

  const ConvergenceReport power = diagnose(make_power_form("1/3^n", "n/2"), 20);
  CHECK_FALSE(power.notes.empty());
}

TEST_CASE("tail-certified builtins are never called divergent") {
  for (const auto& name : builtin_names()) {
    const RadicalSpec spec = find_builtin(name)->spec;
    LimitOptions options;
    options.n_max = 40;
    const LimitEstimate limit = limit_estimate(spec, 1e-6, options);
    const ConvergenceReport report = diagnose(spec, 40);
    INFO(name);
    if (limit.certified) CHECK(report.verdict != Verdict::looks_divergent);
  }
}

TEST_CASE("limit estimates") {
  const LimitEstimate golden = limit_estimate(make_radical("1", "2"), 1e-12);
  CHECK(golden.certified);
  const Real phi = (Real(1L, 256) + sqrt(Real(5L, 256))) / Real(2L, 256);
  CHECK(abs(golden.value - phi) <= Real::from_double(1e-12, 64));

  const LimitEstimate ramanujan = limit_estimate(find_builtin("ramanujan")->spec, 1e-9);
  CHECK(ramanujan.certified);
  CHECK(abs(ramanujan.value - Real(3L, 128)) <= Real::from_double(1e-9, 64));

  LimitOptions series;
  series.strategy = TailStrategy::series_S;
  CHECK(limit_estimate(make_radical("1", "2"), 1e-10, series).certified);

  LimitOptions partial;
  partial.strategy = TailStrategy::summed_partial;
  CHECK_FALSE(limit_estimate(make_radical("1", "2"), 1e-10, partial).certified);

  const LimitEstimate divergent = limit_estimate(make_radical("2^(2^n*n)", "2"), 1e-3);
  CHECK_FALSE(divergent.certified);
  CHECK_FALSE(divergent.reason.empty());

  LimitOptions fine;
  fine.precision_bits = 64;
  const LimitEstimate tight = limit_estimate(make_radical("1", "2"), 1e-30, fine);
  CHECK(tight.certified);
  CHECK(tight.precision_bits > 64);
  CHECK(abs(tight.value - phi) <= Real::from_double(1e-30, 64));
  CHECK_THROWS_AS(limit_estimate(make_radical("1", "2"), 0), DomainError);
}
