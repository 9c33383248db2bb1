#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qhat/expr.hpp"
#include "qhat/schur.hpp"

namespace qhat {

/// Shared S(pi) instances for one datum, keyed by pi.
class Tower {
 public:
  explicit Tower(DatumPtr datum) : datum_(datum), modules_(std::move(datum)) {}

  const DatumPtr& datum() const { return datum_; }
  ModuleCache& modules() { return modules_; }
  SchurPtr get(const SaturatedSet& pi);
  SchurPtr get(const std::vector<Weight>& generators) { return get(saturate(datum_, generators)); }

 private:
  DatumPtr datum_;
  ModuleCache modules_;
  std::mutex mu_;
  std::map<std::string, SchurPtr> algebras_;
};

/// An element of the inverse limit, given by its value on each S(pi).
///
/// Most elements are products over simple modules: their value on S(pi) is
/// the tuple of their values on the blocks Delta(mu), mu in pi. Such
/// elements carry a block evaluator and are coherent by construction. A
/// general pi-evaluator is also accepted; its coherence is what
/// verify_coherence tests.
class LimitElement {
 public:
  using BlockFn = std::function<RMatrix(const WeylModule&)>;
  using PiFn = std::function<SchurElement(const SchurAlgebra&)>;

  static LimitElement blockwise(DatumPtr datum, BlockFn f, std::string label);
  static LimitElement from_pi(DatumPtr datum, PiFn f, std::string label);

  const DatumPtr& datum() const;
  const std::string& label() const;
  bool is_blockwise() const;

  /// Value on one simple module; throws InvalidArgument for pi-evaluators.
  RMatrix at_block(const WeylModule& m, bool use_memo = true) const;
  /// Value in S(pi).
  SchurElement at(const SchurAlgebra& s, bool use_memo = true) const;

  friend LimitElement operator+(const LimitElement& a, const LimitElement& b);
  friend LimitElement operator-(const LimitElement& a, const LimitElement& b);
  friend LimitElement operator*(const LimitElement& a, const LimitElement& b);
  friend LimitElement operator*(const RatFunc& c, const LimitElement& a);

 private:
  struct Impl;
  explicit LimitElement(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

LimitElement limit_add(const LimitElement& a, const LimitElement& b);
LimitElement limit_mul(const LimitElement& a, const LimitElement& b);

LimitElement limit_zero(const DatumPtr& datum);
LimitElement limit_identity(const DatumPtr& datum);
/// The family (E_{+-i}^{(k)})_pi.
LimitElement hat_E(const DatumPtr& datum, Sign s, std::size_t i, int k = 1);
/// The family (1_lambda)_pi, zero wherever lambda is not in W pi.
LimitElement hat_one(const DatumPtr& datum, const Weight& lambda);
LimitElement hat_K(const DatumPtr& datum, const Coweight& h);

/// The weight-indexed sum over all lambda in X of c(lambda) x 1_lambda; at
/// each pi only the weights of the blocks contribute.
LimitElement weight_sum(const DatumPtr& datum, std::function<RatFunc(const Weight&)> c,
                        const LimitElement& x, std::string label);

/// Image of an element of U. Throws InvalidArgument if u contains 1_lambda.
LimitElement theta(const DatumPtr& datum, const Expr& u);
/// Image of an element of the modified form. Throws InvalidArgument unless
/// every word of u contains some 1_lambda.
LimitElement theta_dot(const DatumPtr& datum, const Expr& u);

struct Comparison {
  bool equal = true;
  std::string witness;
};

/// Equality of a and b at one truncation; equality in the limit is only
/// ever tested up to some pi.
Comparison eq_up_to(const LimitElement& a, const LimitElement& b, const SchurAlgebra& s);

struct CoherenceLink {
  std::string from;
  std::string to;
  bool pass = true;
  std::string witness;
};

struct CoherenceReport {
  std::vector<std::string> chain;
  std::vector<CoherenceLink> links;
  bool pass() const;
};

/// Checks f_{pi_k, pi_{k+1}}(a(pi_{k+1})) = a(pi_k) along an increasing
/// chain. Throws InvalidArgument if the chain is not nested.
CoherenceReport verify_coherence(const LimitElement& a, const std::vector<SchurPtr>& chain);

/// Coweights used by the K-identity suites: 0, +-basis vectors,
/// +-simple coroots and pairwise sums of simple coroots.
std::vector<Coweight> test_coweights(const RootDatum& datum);

/// K_h = sum v^{<h,lambda>} 1_lambda and K_h K_h' = K_{h+h'}, K_0 = 1,
/// K_{-h} K_h = 1, at S(pi).
Report check_prop_Kh(const SchurAlgebra& s);
/// Relations (a)-(d) for the limit generators and idempotents at S(pi).
Report check_uhat_relations(const SchurAlgebra& s);
/// The defining relations of U for the limit generators at S(pi).
Report check_u_relations(const SchurAlgebra& s);

/// saturate({mu}) for dominant mu of height at most h, by height.
std::vector<SaturatedSet> probe_schedule(const DatumPtr& datum, int height_bound);

/// First pi of the probe schedule where theta_dot(u) is nonzero. Absence is
/// inconclusive.
std::optional<SaturatedSet> separation_probe(const Expr& u, int height_bound, Tower& tower);

struct CoherentBasisReport {
  std::size_t candidates = 0;
  std::size_t nonzero = 0;
  std::size_t rank = 0;
  std::size_t dimension = 0;
  bool independent = true;
  bool spanning = false;
};

CoherentBasisReport coherent_basis_check(const std::vector<Expr>& family, const SchurAlgebra& s);

/// Compares a across every comparable pair of algebras drawn from two chains.
Report cofinal_consistency(const LimitElement& a, const std::vector<SchurPtr>& chain1,
                           const std::vector<SchurPtr>& chain2);

}  // namespace qhat
