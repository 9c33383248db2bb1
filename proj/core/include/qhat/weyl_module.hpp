#pragma once

#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "qhat/linalg.hpp"
#include "qhat/ratfunc.hpp"
#include "qhat/root_datum.hpp"

namespace qhat {

/// F_{i1} ... F_{ik} applied to the highest-weight vector.
using FWord = std::vector<int>;

enum class Sign { Plus, Minus };

inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }

using RMatrix = Matrix<RatFunc>;

struct RelationCheck {
  std::string relation;
  bool pass = true;
  /// First failing instance, empty on success.
  std::string witness;
};

/// "RxC e11 e12 ..." with serialized entries.
std::string matrix_text(const RMatrix& m);
/// Reads the output of matrix_text.
RMatrix parse_matrix(std::istream& is);

/// A nonzero weight space of a Weyl module.
struct WeightSpace {
  Weight weight;
  /// lambda - weight = sum depth[i] alpha_i.
  std::vector<int> depth;
  /// FWords whose images form the basis, lexicographically ordered.
  std::vector<FWord> words;
  /// Contravariant form on the basis.
  RMatrix gram;
  std::size_t offset = 0;
  std::size_t dim() const { return words.size(); }
};

/// The simple module of highest weight lambda over Q(v), realized as the
/// quotient of a truncated Verma module by the radical of its contravariant
/// form. Immutable once built.
class WeylModule {
 public:
  /// Throws InvalidArgument for a non-dominant lambda and InternalError when
  /// a consistency check on the construction fails.
  static std::shared_ptr<const WeylModule> build(DatumPtr datum, const Weight& lambda);

  /// Rebuilds a module from serialize() output and re-checks relation (c).
  static std::shared_ptr<const WeylModule> deserialize(DatumPtr datum, const std::string& text);

  const DatumPtr& datum() const { return datum_; }
  const Weight& highest_weight() const { return lambda_; }
  std::size_t dim() const { return dim_; }
  /// Nonzero weight spaces ordered by depth, then by depth vector descending.
  const std::vector<WeightSpace>& spaces() const { return spaces_; }
  const WeightSpace* space(const Weight& w) const;
  std::map<Weight, int> multiplicities() const;

  /// Full matrix of E_{+i} or E_{-i} on the module.
  const RMatrix& generator(Sign s, std::size_t i) const;
  /// E_{+-i}^k / [k]!_{d_i}; cached.
  const RMatrix& divided_power(Sign s, std::size_t i, int k) const;
  /// Diagonal matrix with v^{<h, nu>} on the nu-weight block.
  RMatrix k_matrix(const Coweight& h) const;
  /// Projector onto the w-weight space (zero when w is not a weight).
  RMatrix weight_projector(const Weight& w) const;
  /// Smallest N with E_{+-i}^N = 0.
  int nilpotency_degree(Sign s, std::size_t i) const;

  /// check_module_relations on this module, computed once.
  const std::vector<RelationCheck>& relation_checks() const;

  /// Canonical text form of every structural field.
  std::string serialize() const;

 private:
  WeylModule() = default;
  void assemble_weight_index();

  DatumPtr datum_;
  Weight lambda_;
  std::size_t dim_ = 0;
  std::vector<WeightSpace> spaces_;
  std::map<Weight, std::size_t> index_;
  std::vector<RMatrix> e_plus_;
  std::vector<RMatrix> e_minus_;

  mutable std::mutex cache_mu_;
  mutable std::map<std::tuple<int, std::size_t, int>, std::unique_ptr<RMatrix>> powers_;
  mutable std::once_flag relations_once_;
  mutable std::vector<RelationCheck> relations_;
};

using ModulePtr = std::shared_ptr<const WeylModule>;

/// Thread-safe map lambda -> Delta(lambda) for one datum.
class ModuleCache {
 public:
  explicit ModuleCache(DatumPtr datum) : datum_(std::move(datum)) {}
  const DatumPtr& datum() const { return datum_; }
  ModulePtr get(const Weight& lambda);
  void put(ModulePtr m);

 private:
  DatumPtr datum_;
  std::mutex mu_;
  std::map<Weight, ModulePtr> modules_;
};

/// Checks relations (a), (b), (b'), (c), (d) of the presentation by weight
/// projectors as matrix identities on one module.
std::vector<RelationCheck> check_module_relations(const WeylModule& m);

}  // namespace qhat
