#include "qhat/lattice.hpp"

#include <algorithm>

#include "qhat/errors.hpp"
#include "qhat/expr.hpp"

namespace qhat {

std::string dword_str(const DWord& w) {
  std::string s;
  for (const auto& [i, a] : w) {
    s += "F" + std::to_string(i + 1);
    if (a != 1) s += "^(" + std::to_string(a) + ")";
    s += " ";
  }
  return s + "m";
}

bool LatticeBasis::determinant_is_unit() const {
  return det_.is_laurent() && det_.num().is_unit();
}

std::shared_ptr<const LatticeBasis> LatticeBasis::build(ModulePtr module) {
  const WeylModule& m = *module;
  const RootDatum& d = *m.datum();
  const std::size_t n = m.dim();
  std::shared_ptr<LatticeBasis> lb(new LatticeBasis());
  lb->module_ = module;

  struct Vec {
    DWord word;
    std::vector<RatFunc> coords;
  };
  std::map<Weight, std::vector<Vec>> chosen;
  std::vector<Vec> all;
  for (const auto& sp : m.spaces()) {
    std::vector<Vec> picked;
    if (sp.weight == m.highest_weight()) {
      std::vector<RatFunc> top(n, RatFunc(0));
      top[sp.offset] = 1;
      picked.push_back({{}, std::move(top)});
    } else {
      std::vector<Vec> cands;
      for (std::size_t i = 0; i < d.rank(); ++i) {
        for (int a = 1;; ++a) {
          Weight src = d.add_alpha(sp.weight, i, a);
          if (!m.space(src)) break;
          const RMatrix& f = m.divided_power(Sign::Minus, i, a);
          for (const auto& v : chosen[src]) {
            Vec c;
            c.word = {{static_cast<int>(i), a}};
            c.word.insert(c.word.end(), v.word.begin(), v.word.end());
            c.coords.assign(n, RatFunc(0));
            for (std::size_t r = sp.offset; r < sp.offset + sp.dim(); ++r) {
              for (std::size_t k = 0; k < n; ++k) {
                if (!v.coords[k].is_zero() && !f(r, k).is_zero()) c.coords[r] += f(r, k) * v.coords[k];
              }
            }
            cands.push_back(std::move(c));
          }
        }
      }
      std::sort(cands.begin(), cands.end(), [](const Vec& x, const Vec& y) {
        if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
        return x.word < y.word;
      });
      Echelon<RatFunc> e(sp.dim());
      for (auto& c : cands) {
        if (picked.size() == sp.dim()) break;
        std::vector<RatFunc> local(c.coords.begin() + static_cast<std::ptrdiff_t>(sp.offset),
                                   c.coords.begin() + static_cast<std::ptrdiff_t>(sp.offset + sp.dim()));
        if (e.insert(local)) picked.push_back(std::move(c));
      }
      if (picked.size() != sp.dim()) {
        throw InternalError("lattice_basis: monomials do not span weight " + weight_str(sp.weight));
      }
    }
    for (const auto& v : picked) all.push_back(v);
    chosen[sp.weight] = std::move(picked);
  }

  lb->transition_ = RMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    lb->words_.push_back(all[c].word);
    for (std::size_t r = 0; r < n; ++r) lb->transition_(r, c) = all[c].coords[r];
  }
  lb->det_ = qhat::determinant(lb->transition_);
  auto inv = inverse(lb->transition_);
  if (!inv) throw InternalError("lattice_basis: singular transition matrix");

  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const int top = m.nilpotency_degree(s, i);
      lb->max_power_[{sign_value(s), i}] = top - 1;
      for (int k = 0; k < top; ++k) {
        RMatrix x = *inv * m.divided_power(s, i, k) * lb->transition_;
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t c = 0; c < n; ++c) {
            if (!x(r, c).is_laurent()) {
              throw UnsupportedLattice("lattice_basis: " + Letter::e(s, i, k).str() + " on Delta" +
                                       weight_str(m.highest_weight()) + " has entry (" +
                                       std::to_string(r) + "," + std::to_string(c) + ") = " +
                                       x(r, c).str() + " outside Z[v,v^-1]");
            }
          }
        }
        lb->powers_.emplace(std::make_tuple(sign_value(s), i, k), std::move(x));
      }
    }
  }
  return lb;
}

const RMatrix& LatticeBasis::divided_power(Sign s, std::size_t i, int k) const {
  auto it = powers_.find({sign_value(s), i, k});
  if (it != powers_.end()) return it->second;
  if (k < 0) throw InvalidArgument("lattice divided_power: negative exponent");
  if (i >= module_->datum()->rank()) throw InvalidArgument("lattice divided_power: index out of range");
  // Beyond the nilpotency degree the power vanishes.
  static std::mutex mu;
  static std::map<std::size_t, RMatrix> zeros;
  std::lock_guard lock(mu);
  auto z = zeros.find(dim());
  if (z == zeros.end()) z = zeros.emplace(dim(), RMatrix(dim(), dim())).first;
  return z->second;
}

int LatticeBasis::max_power(Sign s, std::size_t i) const {
  auto it = max_power_.find({sign_value(s), i});
  return it == max_power_.end() ? 0 : it->second;
}

LatticePtr LatticeCache::get(const Weight& lambda) {
  {
    std::lock_guard lock(mu_);
    auto it = lattices_.find(lambda);
    if (it != lattices_.end()) return it->second;
  }
  LatticePtr l = LatticeBasis::build(modules_.get(lambda));
  std::lock_guard lock(mu_);
  return lattices_.emplace(lambda, std::move(l)).first->second;
}

}  // namespace qhat
