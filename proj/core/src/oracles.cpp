#include "qhat/oracles.hpp"

#include <algorithm>

#include "qhat/errors.hpp"
#include "qhat/saturated.hpp"

namespace qhat {

namespace {

std::vector<mpq_class> rho(const RootDatum& d) {
  std::vector<mpq_class> out(d.rank_x(), 0);
  for (const auto& pr : d.positive_roots()) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += mpq_class(pr.root[k], 2);
  }
  return out;
}

mpq_class pair_q(const RootDatum& d, const Coweight& h, const std::vector<mpq_class>& x) {
  mpq_class s = 0;
  for (std::size_t a = 0; a < d.rank_y(); ++a) {
    if (h[a] == 0) continue;
    for (std::size_t b = 0; b < d.rank_x(); ++b) s += h[a] * d.pairing()[a][b] * x[b];
  }
  return s;
}

std::vector<mpq_class> plus(const Weight& w, const std::vector<mpq_class>& x) {
  std::vector<mpq_class> out(x);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += w[k];
  return out;
}

}  // namespace

mpz_class weyl_dim_oracle(const RootDatum& d, const Weight& lambda) {
  if (!d.is_dominant(lambda)) {
    throw InvalidArgument("weyl_dim_oracle: weight " + weight_str(lambda) + " is not dominant");
  }
  const auto r = rho(d);
  const auto lr = plus(lambda, r);
  mpq_class prod = 1;
  for (const auto& pr : d.positive_roots()) {
    prod *= pair_q(d, pr.coroot, lr) / pair_q(d, pr.coroot, r);
  }
  if (prod.get_den() != 1) throw InternalError("weyl_dim_oracle: non-integral dimension");
  return prod.get_num();
}

std::map<Weight, int> freudenthal_oracle(const RootDatum& d, const Weight& lambda) {
  const std::vector<Weight> dominant = dominant_below(d, lambda);
  const auto r = rho(d);
  const auto lr = plus(lambda, r);
  const mpq_class top = d.invariant_form_q(lr, lr);

  std::map<Weight, int> dom_mult;
  auto mult = [&](const Weight& x) -> int {
    // Weights of the module satisfy x <= lambda; W-invariance reduces to dominant ones.
    Weight rep = d.dominant_representative(x);
    auto it = dom_mult.find(rep);
    return it == dom_mult.end() ? 0 : it->second;
  };
  // Descending height: every mu + k beta lies strictly higher.
  for (auto it = dominant.rbegin(); it != dominant.rend(); ++it) {
    const Weight& mu = *it;
    if (mu == lambda) {
      dom_mult[mu] = 1;
      continue;
    }
    mpq_class sum = 0;
    for (const auto& pr : d.positive_roots()) {
      Weight x = mu;
      for (int k = 1;; ++k) {
        x = d.add(x, pr.root);
        auto c = d.integral_alpha_coords(d.sub(lambda, x));
        if (!c || std::any_of(c->begin(), c->end(), [](int t) { return t < 0; })) break;
        int m = mult(x);
        if (m == 0) continue;
        sum += m * d.invariant_form(x, pr.root);
      }
    }
    const auto mr = plus(mu, r);
    mpq_class denom = top - d.invariant_form_q(mr, mr);
    if (denom <= 0) throw InternalError("freudenthal_oracle: nonpositive denominator");
    mpq_class m = 2 * sum / denom;
    if (m.get_den() != 1 || m < 0) throw InternalError("freudenthal_oracle: non-integral value");
    if (m > 0) dom_mult[mu] = static_cast<int>(m.get_num().get_si());
  }
  std::map<Weight, int> out;
  for (const auto& [mu, m] : dom_mult) {
    for (const auto& w : d.weyl_orbit(mu)) out[w] = m;
  }
  return out;
}

}  // namespace qhat
