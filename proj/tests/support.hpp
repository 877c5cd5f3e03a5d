#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "radix/bounds.hpp"
#include "radix/spec.hpp"

namespace testsupport {

using radix::Rational;
using radix::Real;

/// Finite radical given by explicit term lists (1-based in meaning, 0-based storage).
struct ListSpec {
  std::vector<Rational> a;
  std::vector<Rational> b;  // empty: unweighted
  std::vector<Rational> e;  // root indices, or exponents for power forms
  bool power = false;

  radix::RadicalSpec radical() const {
    radix::RadicalSpec spec;
    spec.kind = power ? radix::RadicalKind::power_form : radix::RadicalKind::integer_root;
    spec.a = radix::SequenceRule::list(a);
    spec.exponent = radix::SequenceRule::list(e);
    if (!b.empty()) spec.b = radix::SequenceRule::list(b);
    return spec;
  }
  radix::NormalizedSpec normalized() const { return radix::normalize(radical(), a.size()); }
};

/// k/1000 with k uniform in [lo*1000, hi*1000].
inline Rational random_rational(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_int_distribution<long> pick(static_cast<long>(lo * 1000), static_cast<long>(hi * 1000));
  Rational q(pick(rng), 1000);
  q.canonicalize();
  return q;
}

/// a_i in (0,10], r_i in {1..5}, optional weights b_i in (0,5].
inline ListSpec random_radical(std::mt19937_64& rng, std::size_t depth, bool weighted = false) {
  ListSpec s;
  std::uniform_int_distribution<int> root(1, 5);
  for (std::size_t i = 0; i < depth; ++i) {
    s.a.push_back(random_rational(rng, 0.001, 10));
    s.e.push_back(Rational(root(rng)));
    if (weighted) s.b.push_back(random_rational(rng, 0.001, 5));
  }
  return s;
}

/// a_i in (0,10], p_i in (0,1].
inline ListSpec random_power(std::mt19937_64& rng, std::size_t depth) {
  ListSpec s;
  s.power = true;
  for (std::size_t i = 0; i < depth; ++i) {
    s.a.push_back(random_rational(rng, 0.001, 10));
    s.e.push_back(random_rational(rng, 0.001, 1));
  }
  return s;
}

/// Independent evaluation: innermost-out with x^(1/r) = exp(log(x)/r) at `bits`,
/// straight from the exact term lists.
inline Real oracle_approximant(const ListSpec& s, std::size_t n, unsigned bits = 1024) {
  mpfr_t x, t, q;
  mpfr_inits2(bits, x, t, q, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(x, 1);
  for (std::size_t k = n; k >= 1; --k) {
    mpfr_set_q(t, s.a[k - 1].get_mpq_t(), MPFR_RNDN);
    mpfr_add(x, x, t, MPFR_RNDN);
    Rational exponent = s.power ? s.e[k - 1] : Rational(1) / s.e[k - 1];
    if (mpfr_zero_p(x) == 0) {
      mpfr_log(x, x, MPFR_RNDN);
      mpfr_set_q(q, exponent.get_mpq_t(), MPFR_RNDN);
      mpfr_mul(x, x, q, MPFR_RNDN);
      mpfr_exp(x, x, MPFR_RNDN);
    }
    if (!s.b.empty()) {
      mpfr_set_q(t, s.b[k - 1].get_mpq_t(), MPFR_RNDN);
      mpfr_mul(x, x, t, MPFR_RNDN);
    }
  }
  Real out(bits);
  mpfr_set(out.get(), x, MPFR_RNDN);
  mpfr_clears(x, t, q, static_cast<mpfr_ptr>(nullptr));
  return out;
}

/// Same oracle for a rule-defined radical, materializing terms 1..n.
inline Real oracle_approximant(const radix::RadicalSpec& spec, std::size_t n, unsigned bits = 1024) {
  ListSpec s;
  s.power = spec.kind == radix::RadicalKind::power_form;
  for (std::size_t k = 1; k <= n; ++k) {
    s.a.push_back(spec.a.term(k));
    s.e.push_back(spec.exponent.term(k));
    if (spec.has_weights()) s.b.push_back(spec.b.term(k));
  }
  return oracle_approximant(s, n, bits);
}

inline double to_d(const Real& x) { return x.to_double(); }

}  // namespace testsupport
