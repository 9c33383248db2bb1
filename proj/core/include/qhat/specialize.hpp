#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qhat/block_algebra.hpp"
#include "qhat/expr.hpp"
#include "qhat/lattice.hpp"
#include "qhat/limit.hpp"
#include "qhat/ring.hpp"
#include "qhat/schur.hpp"

namespace qhat {

using RingMatrix = Matrix<RingElem>;
using RSchurElement = BlockElement<RingElem>;

/// The image of the A-form of U on the specialized lattices R (x) Delta(lambda),
/// lambda in pi. At roots of unity this may be a proper quotient of
/// R (x) S(pi); only the realized algebra is computed.
class SpecializedSchur {
 public:
  /// Throws UnsupportedLattice if a block has no integral lattice basis.
  static std::shared_ptr<const SpecializedSchur> build(const SaturatedSet& pi, const RingPoint& p,
                                                       LatticeCache& lattices);
  static std::shared_ptr<const SpecializedSchur> build(const SaturatedSet& pi, const RingPoint& p);

  const SaturatedSet& pi() const { return pi_; }
  const DatumPtr& datum() const { return pi_.datum(); }
  const RingPoint& point() const { return point_; }
  const std::vector<LatticePtr>& lattices() const { return lattices_; }
  const std::vector<BlockShape>& shapes() const { return shapes_; }
  const std::vector<Weight>& weights() const { return weights_; }

  /// Sum of squared block dimensions, the generic dimension.
  std::size_t generic_dimension() const;
  /// Rank over R of the span closure under all divided powers.
  std::size_t dimension() const;
  const std::vector<RSchurElement>& basis() const;

  RSchurElement zero() const;
  RSchurElement identity() const;
  RSchurElement divided_power(Sign s, std::size_t i, int k) const;
  RSchurElement one(const Weight& lambda) const;
  RSchurElement k_element(const Coweight& h) const;
  /// Largest nonvanishing divided power of E_{+-i} over all blocks.
  int max_power(Sign s, std::size_t i) const;

  /// Substitutes lattice matrices at xi; coefficients are evaluated at xi
  /// and may raise PoleError.
  RSchurElement evaluate(const Expr& e) const;
  /// Rewrites a generic element in the lattice bases and evaluates at xi.
  RSchurElement specialize(const SchurElement& x) const;

  /// Relations (a)-(d) and divided-power products over R.
  Report verify_relations() const;

  std::string describe(const RSchurElement& x) const;

 private:
  SpecializedSchur(SaturatedSet pi, RingPoint p, std::vector<LatticePtr> lattices);
  void compute_basis() const;

  SaturatedSet pi_;
  RingPoint point_;
  std::vector<LatticePtr> lattices_;
  std::vector<BlockShape> shapes_;
  std::vector<Weight> weights_;
  std::vector<RMatrix> inv_transitions_;

  mutable std::mutex powers_mu_;
  mutable std::map<std::tuple<int, std::size_t, int>, RSchurElement> powers_;

  mutable std::once_flag basis_once_;
  mutable std::vector<RSchurElement> basis_;
};

using SpecializedPtr = std::shared_ptr<const SpecializedSchur>;

/// 1 (x) f_{pi, pi'}: block restriction between specialized algebras.
class RTruncationMap {
 public:
  RTruncationMap(SpecializedPtr source, SpecializedPtr target);
  RSchurElement apply(const RSchurElement& x) const;
  Report verify() const;

 private:
  SpecializedPtr source_;
  SpecializedPtr target_;
  std::vector<std::size_t> blocks_;
};

/// Composition law and f_{pi,pi} = id for a chain a within b within c.
Report verify_r_chain(const SpecializedPtr& a, const SpecializedPtr& b, const SpecializedPtr& c);

/// Divided powers, idempotents 1_lambda (lambda in W pi) and all products
/// of two of these: elements of the A-form of S(pi).
std::vector<SchurElement> integral_family(const SchurAlgebra& s);

/// 1 (x) f applied after specialization equals specialization applied after
/// f, on integral_family of the larger algebra.
Report verify_specialize_commutes(const SchurPtr& big, const SchurPtr& small, const SpecializedPtr& rbig,
                                  const SpecializedPtr& rsmall);

/// An element of the limit over R given by a modified-form expression.
class RLimitElement {
 public:
  /// Throws InvalidArgument unless u is zero or every word has an idempotent.
  RLimitElement(DatumPtr datum, Expr u, RingPoint p);
  const Expr& expr() const { return u_; }
  RSchurElement at(const SpecializedSchur& s) const;

 private:
  DatumPtr datum_;
  Expr u_;
  RingPoint point_;
};

RLimitElement r_theta_dot(const DatumPtr& datum, const Expr& u, const RingPoint& p);

CoherenceReport verify_r_coherence(const RLimitElement& a, const std::vector<SpecializedPtr>& chain);

struct KernelProbeReport {
  std::vector<std::string> words;
  std::vector<std::string> pis;
  /// Joint kernel dimension after each successive pi; nonincreasing.
  std::vector<std::size_t> kernel_dims;
};

/// Words F-part K-part E-part of length at most degree_bound with divided
/// powers up to degree_bound (adjacent letters of a part use distinct
/// indices); K letters are the simple coroots and only enter when include_k.
std::vector<Expr> probe_words(const RootDatum& datum, int degree_bound, bool include_k);

/// Joint kernel over R of the span of probe_words on the probe schedule.
/// Empirical data only.
KernelProbeReport kernel_probe_RU(const DatumPtr& datum, int degree_bound, int height_bound,
                                  const RingPoint& p, bool include_k = false);

}  // namespace qhat
