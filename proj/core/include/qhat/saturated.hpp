#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qhat/root_datum.hpp"

namespace qhat {

/// A finite saturated subset of X+, kept sorted by (height, lexicographic).
class SaturatedSet {
 public:
  /// Checks every invariant and throws InvalidArgument on failure.
  SaturatedSet(DatumPtr datum, std::vector<Weight> elements);

  const DatumPtr& datum() const { return datum_; }
  const std::vector<Weight>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(const Weight& w) const;
  bool is_subset_of(const SaturatedSet& other) const;
  /// Maximum height of an element.
  int height() const;

  /// W pi: the union of the Weyl orbits of the elements.
  const std::set<Weight>& weyl_closure() const { return closure_; }

  /// Canonical key "(a,b);(c,d);..." in element order.
  std::string key() const;

  friend bool operator==(const SaturatedSet& a, const SaturatedSet& b) {
    return a.elements_ == b.elements_;
  }

 private:
  struct Trusted {};
  SaturatedSet(Trusted, DatumPtr datum, std::vector<Weight> elements);
  void close();
  friend void for_each_saturated_set(const DatumPtr&, int,
                                     const std::function<void(const SaturatedSet&)>&);

  DatumPtr datum_;
  std::vector<Weight> elements_;
  std::set<Weight> closure_;
};

/// The dominant weights lambda <= mu, for a dominant mu.
std::vector<Weight> dominant_below(const RootDatum& datum, const Weight& mu);

/// Union of X+[<= mu] over the generators. Throws InvalidArgument naming a
/// non-dominant generator.
SaturatedSet saturate(const DatumPtr& datum, const std::vector<Weight>& generators);

/// Visits every saturated set all of whose elements have height at most h,
/// in a deterministic order.
void for_each_saturated_set(const DatumPtr& datum, int h,
                            const std::function<void(const SaturatedSet&)>& visit);

/// Every saturated set all of whose elements have height at most h.
std::vector<SaturatedSet> all_saturated_sets(const DatumPtr& datum, int h);

}  // namespace qhat
