#pragma once

#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "qhat/block_algebra.hpp"
#include "qhat/expr.hpp"
#include "qhat/saturated.hpp"
#include "qhat/weyl_module.hpp"

namespace qhat {

using SchurElement = BlockElement<RatFunc>;

struct ReportRow {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct Report {
  std::vector<ReportRow> rows;
  bool pass() const;
  /// Adds a row, or folds a failure into an existing row with that name.
  void record(const std::string& name, bool ok, const std::string& witness = "");
};

std::vector<BlockShape> block_shapes(const std::vector<ModulePtr>& modules);

/// The image of U in End(sum over lambda in pi of Delta(lambda)), one block
/// per element of pi in the order of pi.
class SchurAlgebra {
 public:
  static std::shared_ptr<const SchurAlgebra> build(const SaturatedSet& pi, ModuleCache& cache);
  static std::shared_ptr<const SchurAlgebra> build(const SaturatedSet& pi);

  const SaturatedSet& pi() const { return pi_; }
  const DatumPtr& datum() const { return pi_.datum(); }
  const std::vector<ModulePtr>& modules() const { return modules_; }
  const std::vector<BlockShape>& shapes() const { return shapes_; }
  /// W pi in weight order.
  const std::vector<Weight>& weights() const { return weights_; }

  /// Sum of squared block dimensions.
  std::size_t expected_dimension() const;
  /// Rank of the span closure; throws InternalError when it differs from
  /// expected_dimension().
  std::size_t dimension() const;
  /// Echelon basis of the algebra, pivots in row-major block order.
  const std::vector<SchurElement>& basis() const;

  SchurElement zero() const;
  SchurElement identity() const;
  SchurElement generator(Sign s, std::size_t i) const { return divided_power(s, i, 1); }
  SchurElement divided_power(Sign s, std::size_t i, int k) const;
  /// Zero when lambda is not in W pi.
  SchurElement one(const Weight& lambda) const;
  SchurElement k_element(const Coweight& h) const;
  /// Throws InvalidArgument on a shape mismatch.
  SchurElement from_blocks(std::vector<RMatrix> blocks) const;

  /// Image of an expression by matrix substitution.
  SchurElement evaluate(const Expr& e) const;

  /// Relations (a), (b), (b'), (c), (d) as exact matrix identities.
  Report verify_presentation() const;

  std::string describe(const SchurElement& x) const;

  /// Canonical text of pi, the modules and the basis.
  std::string serialize() const;
  static std::shared_ptr<const SchurAlgebra> deserialize(DatumPtr datum, const std::string& text);

  friend bool operator==(const SchurAlgebra& a, const SchurAlgebra& b);

 private:
  SchurAlgebra(SaturatedSet pi, std::vector<ModulePtr> modules);
  void compute_basis() const;

  SaturatedSet pi_;
  std::vector<ModulePtr> modules_;
  std::vector<BlockShape> shapes_;
  std::vector<Weight> weights_;

  mutable std::once_flag basis_once_;
  mutable std::vector<SchurElement> basis_;
};

using SchurPtr = std::shared_ptr<const SchurAlgebra>;

/// f_{pi, pi'}: restriction to the blocks indexed by pi, for pi inside pi'.
class TruncationMap {
 public:
  /// Throws InvalidArgument unless target->pi() is a subset of source->pi().
  TruncationMap(SchurPtr source, SchurPtr target);

  const SchurPtr& source() const { return source_; }
  const SchurPtr& target() const { return target_; }
  SchurElement apply(const SchurElement& x) const;

  /// Generators and idempotents map correctly, multiplicativity on the
  /// source basis times generators, surjectivity by rank.
  Report verify() const;

 private:
  SchurPtr source_;
  SchurPtr target_;
  std::vector<std::size_t> blocks_;
};

/// f_{pi,pi'} f_{pi',pi''} = f_{pi,pi''} on the basis of S(pi''), and
/// f_{pi,pi} = id on the basis of S(pi).
Report verify_chain(const SchurPtr& a, const SchurPtr& b, const SchurPtr& c);

}  // namespace qhat
