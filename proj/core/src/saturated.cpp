#include "qhat/saturated.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "qhat/errors.hpp"

namespace qhat {

SaturatedSet::SaturatedSet(DatumPtr datum, std::vector<Weight> elements)
    : datum_(std::move(datum)), elements_(std::move(elements)) {
  if (!datum_) throw InvalidArgument("SaturatedSet: null datum");
  if (elements_.empty()) throw InvalidArgument("SaturatedSet: must be nonempty");
  for (const auto& w : elements_) {
    if (w.size() != datum_->rank_x()) {
      throw InvalidArgument("SaturatedSet: weight " + weight_str(w) + " has wrong rank");
    }
    if (!datum_->is_dominant(w)) {
      throw InvalidArgument("SaturatedSet: weight " + weight_str(w) + " is not dominant");
    }
  }
  datum_->sort_weights(elements_);
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (const auto& mu : elements_) {
    for (const auto& lambda : dominant_below(*datum_, mu)) {
      if (!contains(lambda)) {
        throw InvalidArgument("SaturatedSet: not saturated, " + weight_str(lambda) +
                              " <= " + weight_str(mu) + " is missing");
      }
    }
  }
  close();
}

SaturatedSet::SaturatedSet(Trusted, DatumPtr datum, std::vector<Weight> elements)
    : datum_(std::move(datum)), elements_(std::move(elements)) {
  close();
}

void SaturatedSet::close() {
  for (const auto& w : elements_) {
    auto orbit = datum_->weyl_orbit(w);
    closure_.insert(orbit.begin(), orbit.end());
  }
}

bool SaturatedSet::contains(const Weight& w) const {
  return std::find(elements_.begin(), elements_.end(), w) != elements_.end();
}

bool SaturatedSet::is_subset_of(const SaturatedSet& other) const {
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](const Weight& w) { return other.contains(w); });
}

int SaturatedSet::height() const {
  int h = 0;
  for (const auto& w : elements_) h = std::max(h, datum_->height(w));
  return h;
}

std::string SaturatedSet::key() const {
  std::string s;
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    if (k) s += ';';
    s += weight_str(elements_[k]);
  }
  return s;
}

std::vector<Weight> dominant_below(const RootDatum& datum, const Weight& mu) {
  if (!datum.is_dominant(mu)) {
    throw InvalidArgument("dominant_below: weight " + weight_str(mu) + " is not dominant");
  }
  auto bounds = datum.integral_alpha_coords(datum.sub(mu, datum.lowest_in_orbit(mu)));
  if (!bounds) throw InternalError("dominant_below: orbit span left the root lattice");
  const std::size_t r = datum.rank();
  std::vector<Weight> out;
  std::vector<int> n(r, 0);
  std::function<void(std::size_t, Weight)> rec = [&](std::size_t pos, Weight w) {
    if (pos == r) {
      if (datum.is_dominant(w)) out.push_back(std::move(w));
      return;
    }
    for (int t = 0; t <= (*bounds)[pos]; ++t) {
      rec(pos + 1, w);
      w = datum.add_alpha(w, pos, -1);
    }
  };
  rec(0, mu);
  datum.sort_weights(out);
  return out;
}

SaturatedSet saturate(const DatumPtr& datum, const std::vector<Weight>& generators) {
  if (generators.empty()) throw InvalidArgument("saturate: no generators");
  std::vector<Weight> all;
  for (const auto& g : generators) {
    if (g.size() != datum->rank_x()) {
      throw InvalidArgument("saturate: weight " + weight_str(g) + " has wrong rank");
    }
    if (!datum->is_dominant(g)) {
      throw InvalidArgument("saturate: generator " + weight_str(g) + " is not dominant");
    }
    auto below = dominant_below(*datum, g);
    all.insert(all.end(), below.begin(), below.end());
  }
  return SaturatedSet(datum, std::move(all));
}

void for_each_saturated_set(const DatumPtr& datum, int h,
                            const std::function<void(const SaturatedSet&)>& visit) {
  // Elements in (height, lex) order; an element may join only when every
  // dominant weight strictly below it is already present.
  const std::vector<Weight> poset = datum->dominant_weights_up_to(h);
  std::vector<std::vector<std::size_t>> below(poset.size());
  for (std::size_t k = 0; k < poset.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (datum->dominance_leq(poset[j], poset[k])) below[k].push_back(j);
    }
  }
  std::vector<char> in(poset.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == poset.size()) {
      std::vector<Weight> el;
      for (std::size_t j = 0; j < poset.size(); ++j) {
        if (in[j]) el.push_back(poset[j]);
      }
      if (!el.empty()) visit(SaturatedSet(SaturatedSet::Trusted{}, datum, std::move(el)));
      return;
    }
    rec(k + 1);
    bool ok = std::all_of(below[k].begin(), below[k].end(), [&](std::size_t j) { return in[j]; });
    if (ok) {
      in[k] = 1;
      rec(k + 1);
      in[k] = 0;
    }
  };
  rec(0);
}

std::vector<SaturatedSet> all_saturated_sets(const DatumPtr& datum, int h) {
  std::vector<SaturatedSet> out;
  for_each_saturated_set(datum, h, [&](const SaturatedSet& s) { out.push_back(s); });
  return out;
}

}  // namespace qhat
