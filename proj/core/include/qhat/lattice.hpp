#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qhat/weyl_module.hpp"

namespace qhat {

/// F_{i1}^{(a1)} ... F_{ik}^{(ak)} as (index, power) pairs, leftmost first.
using DWord = std::vector<std::pair<int, int>>;

std::string dword_str(const DWord& w);

/// A basis of the A-lattice spanned by divided-power monomials applied to
/// the highest-weight vector, with every generator matrix checked to have
/// entries in Z[v, v^-1]. Monomials are chosen greedily per weight space,
/// fewest letters first, then lexicographically.
class LatticeBasis {
 public:
  /// Throws UnsupportedLattice naming the first non-integral entry.
  static std::shared_ptr<const LatticeBasis> build(ModulePtr module);

  const ModulePtr& module() const { return module_; }
  std::size_t dim() const { return words_.size(); }
  const std::vector<DWord>& words() const { return words_; }
  /// Columns are the lattice vectors in the module basis.
  const RMatrix& transition() const { return transition_; }
  const RatFunc& determinant() const { return det_; }
  bool determinant_is_unit() const;

  /// E_{+-i}^{(k)} in the lattice basis; entries lie in Z[v, v^-1].
  const RMatrix& divided_power(Sign s, std::size_t i, int k) const;
  /// Largest k with a nonzero divided power, per generator.
  int max_power(Sign s, std::size_t i) const;

 private:
  LatticeBasis() = default;

  ModulePtr module_;
  std::vector<DWord> words_;
  RMatrix transition_;
  RatFunc det_;
  std::map<std::tuple<int, std::size_t, int>, RMatrix> powers_;
  std::map<std::pair<int, std::size_t>, int> max_power_;
};

using LatticePtr = std::shared_ptr<const LatticeBasis>;

/// Thread-safe map lambda -> lattice basis of Delta(lambda).
class LatticeCache {
 public:
  explicit LatticeCache(DatumPtr datum) : modules_(std::move(datum)) {}
  ModuleCache& modules() { return modules_; }
  LatticePtr get(const Weight& lambda);

 private:
  ModuleCache modules_;
  std::mutex mu_;
  std::map<Weight, LatticePtr> lattices_;
};

}  // namespace qhat
