#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <deque>
#include <vector>

#include "qhat/linalg.hpp"

// Brute-force rank of the specialized A1 algebra over Q(i), built from the
// closed-form divided-power actions on the bases F^(k) m.
namespace qhat::testing {

// Q(i), enough to hold 1 and the primitive 4th root.
struct Gauss {
  mpq_class re = 0, im = 0;
  Gauss operator+(const Gauss& o) const { return {re + o.re, im + o.im}; }
  Gauss operator*(const Gauss& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  bool zero() const { return re == 0 && im == 0; }
};

inline Gauss power(const Gauss& x, const Gauss& xinv, int e) {
  Gauss r{1, 0};
  for (int k = 0; k < (e >= 0 ? e : -e); ++k) r = r * (e >= 0 ? x : xinv);
  return r;
}

// [a choose t] at xi by the Pascal recurrence, with no division.
inline Gauss binom_at(int a, int t, const Gauss& x, const Gauss& xinv) {
  if (t < 0 || t > a) return {};
  if (t == 0 || t == a) return {1, 0};
  return power(x, xinv, t) * binom_at(a - 1, t, x, xinv) + power(x, xinv, -(a - t)) * binom_at(a - 1, t - 1, x, xinv);
}

// Block-diagonal elements for A1, pi a list of highest weights, each
// Delta(n) in the basis F^(k) m, k = 0..n.
using Elem = std::vector<std::vector<std::vector<Gauss>>>;

inline Elem mul(const Elem& a, const Elem& b) {
  Elem c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::size_t n = a[k].size();
    c[k].assign(n, std::vector<Gauss>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) c[k][i][j] = c[k][i][j] + a[k][i][l] * b[k][l][j];
  }
  return c;
}

inline std::vector<mpq_class> realify(const Elem& x, bool times_i) {
  std::vector<mpq_class> out;
  for (const auto& blk : x)
    for (const auto& row : blk)
      for (const auto& g : row) {
        out.push_back(times_i ? mpq_class(-g.im) : g.re);
        out.push_back(times_i ? g.re : g.im);
      }
  return out;
}

// Rank over Q(xi) of the algebra generated by all divided powers and
// idempotents, by left closure of the identity.
inline std::size_t a1_specialized_rank(const std::vector<int>& pi, const Gauss& x, const Gauss& xinv) {
  const int top = *std::max_element(pi.begin(), pi.end());
  auto blank = [&] {
    Elem e;
    for (int n : pi) e.push_back(std::vector<std::vector<Gauss>>(n + 1, std::vector<Gauss>(n + 1)));
    return e;
  };
  std::vector<Elem> gens;
  for (int a = 1; a <= top; ++a) {
    Elem e = blank(), f = blank();
    for (std::size_t b = 0; b < pi.size(); ++b) {
      const int n = pi[b];
      for (int k = 0; k <= n; ++k) {
        if (k >= a) e[b][k - a][k] = binom_at(n - k + a, a, x, xinv);
        if (k + a <= n) f[b][k + a][k] = binom_at(k + a, a, x, xinv);
      }
    }
    gens.push_back(e);
    gens.push_back(f);
  }
  for (int lam = -top; lam <= top; ++lam) {
    Elem p = blank();
    for (std::size_t b = 0; b < pi.size(); ++b) {
      const int n = pi[b];
      if ((n - lam) % 2 == 0 && (n - lam) / 2 >= 0 && (n - lam) / 2 <= n) p[b][(n - lam) / 2][(n - lam) / 2] = {1, 0};
    }
    gens.push_back(p);
  }
  Elem id = blank();
  for (auto& blk : id)
    for (std::size_t i = 0; i < blk.size(); ++i) blk[i][i] = {1, 0};
  const std::size_t width = realify(id, false).size();
  Echelon<mpq_class> span(width);
  std::deque<Elem> todo;
  auto add = [&](const Elem& y) {
    if (span.contains(realify(y, false))) return;
    span.insert(realify(y, false));
    span.insert(realify(y, true));
    todo.push_back(y);
  };
  add(id);
  while (!todo.empty()) {
    Elem y = todo.front();
    todo.pop_front();
    for (const auto& g : gens) add(mul(g, y));
  }
  return span.rank() / 2;
}

inline const Gauss kOne{1, 0}, kI{0, 1}, kMinusI{0, -1};

}  // namespace qhat::testing
