#pragma once

#include <gmpxx.h>

#include <random>

#include "qhat/laurent.hpp"
#include "qhat/ratfunc.hpp"

namespace qhat::testing {

// Direct power-sum evaluation, independent of qhat::evaluate.
inline mpq_class eval_q(const LaurentPoly& f, const mpq_class& x) {
  mpq_class s = 0;
  for (int e = f.low(); !f.is_zero() && e <= f.high(); ++e) {
    mpz_class c = f.coefficient(e);
    if (c == 0) continue;
    mpq_class p = 1;
    const mpq_class base = e >= 0 ? x : mpq_class(1) / x;
    for (int k = 0; k < (e >= 0 ? e : -e); ++k) p *= base;
    s += mpq_class(c) * p;
  }
  return s;
}

inline mpq_class eval_q(const RatFunc& f, const mpq_class& x) { return eval_q(f.num(), x) / eval_q(f.den(), x); }

inline LaurentPoly random_laurent(std::mt19937& rng, int span = 4, int coef = 5) {
  std::uniform_int_distribution<int> low(-span, span), len(0, 4), c(-coef, coef);
  std::vector<mpz_class> cs;
  const int n = len(rng);
  for (int k = 0; k < n; ++k) cs.emplace_back(c(rng));
  return LaurentPoly::from_coefficients(low(rng), std::move(cs));
}

inline RatFunc random_ratfunc(std::mt19937& rng) {
  LaurentPoly d;
  while (d.is_zero()) d = random_laurent(rng, 3, 3);
  return RatFunc(random_laurent(rng), d);
}

}  // namespace qhat::testing
