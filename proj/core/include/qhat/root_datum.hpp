#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qhat {

/// Coordinates of an element of X in the chosen basis of X.
using Weight = std::vector<int>;
/// Coordinates of an element of Y in the chosen basis of Y.
using Coweight = std::vector<int>;
using IntMatrix = std::vector<std::vector<int>>;

std::string weight_str(const Weight& w);

struct CartanDatum {
  /// Symmetric form (i,j) on the index set {0, ..., r-1}.
  IntMatrix form;
  std::size_t rank() const { return form.size(); }
};

struct ValidationReport {
  bool valid = true;
  bool finite_type = true;
  std::vector<std::string> failures;
};

/// Checks the Cartan datum conditions and positive definiteness.
ValidationReport validate(const CartanDatum& cartan);

struct PositiveRoot {
  Weight root;
  Coweight coroot;
  /// Coordinates of the root in the simple-root basis.
  std::vector<int> alpha_coords;
};

/// A root datum (X, Y, pairing, simple roots, simple coroots). Construction
/// does not validate; call validate() or use the checked factories.
class RootDatum {
 public:
  RootDatum(std::string name, CartanDatum cartan, IntMatrix pairing, std::vector<Weight> alpha,
            std::vector<Coweight> coroots);

  /// A1, A1adj, A1xA1, A2, B2. Throws InvalidArgument for unknown names.
  static std::shared_ptr<const RootDatum> preset(const std::string& name);
  static std::vector<std::string> preset_names();
  /// Simply connected datum of a Cartan form: X has the fundamental weight
  /// basis and the pairing is the identity. Throws InvalidArgument if the
  /// form fails validation or is not of finite type.
  static std::shared_ptr<const RootDatum> simply_connected(const CartanDatum& cartan,
                                                           std::string name = "custom");

  const std::string& name() const { return name_; }
  const CartanDatum& cartan() const { return cartan_; }
  std::size_t rank() const { return alpha_.size(); }
  std::size_t rank_x() const { return rank_x_; }
  std::size_t rank_y() const { return rank_y_; }
  const IntMatrix& pairing() const { return pairing_; }
  const Weight& alpha(std::size_t i) const { return alpha_[i]; }
  const Coweight& coroot(std::size_t i) const { return coroots_[i]; }
  /// d_i = (i,i)/2.
  int d(std::size_t i) const { return cartan_.form[i][i] / 2; }
  /// <h_i, alpha_j>.
  int cartan_entry(std::size_t i, std::size_t j) const { return pair(coroots_[i], alpha_[j]); }

  int pair(const Coweight& h, const Weight& x) const;
  int pair_simple(std::size_t i, const Weight& x) const { return pair(coroots_[i], x); }

  Weight zero_weight() const { return Weight(rank_x_, 0); }
  Coweight zero_coweight() const { return Coweight(rank_y_, 0); }

  /// Exact coordinates of x in the simple-root basis, or nullopt when x is
  /// outside the rational span of the simple roots.
  std::optional<std::vector<mpq_class>> alpha_coords(const Weight& x) const;
  /// Integral coordinates in the simple-root basis, when they exist.
  std::optional<std::vector<int>> integral_alpha_coords(const Weight& x) const;

  bool is_dominant(const Weight& x) const;
  /// lambda <= mu in the dominance order.
  bool dominance_leq(const Weight& lambda, const Weight& mu) const;

  Weight reflect(std::size_t i, const Weight& x) const;
  Coweight reflect_coweight(std::size_t i, const Coweight& y) const;
  std::set<Weight> weyl_orbit(const Weight& x) const;
  Weight dominant_representative(const Weight& x) const;
  /// The minimal element w0 x of the orbit of x.
  Weight lowest_in_orbit(const Weight& x) const;
  /// Sum of the simple-root coordinates of lambda+ - w0 lambda+ where lambda+
  /// is the dominant representative of x.
  int height(const Weight& x) const;

  /// Ordered by height, then by simple-root coordinates descending.
  const std::vector<PositiveRoot>& positive_roots() const { return positive_roots_; }

  /// The W-invariant form on X (x) Q with (alpha_i, x) = d_i <h_i, x>.
  mpq_class invariant_form(const Weight& x, const Weight& y) const;
  /// Same, for rational vectors.
  mpq_class invariant_form_q(const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) const;

  /// Dominant weights of height at most h, ordered by (height, lexicographic).
  /// Requires rank_x() == rank().
  std::vector<Weight> dominant_weights_up_to(int h) const;

  /// Strict weak order (height, lexicographic) used for deterministic lists.
  bool weight_order(const Weight& a, const Weight& b) const;
  /// Sorts by weight_order, computing each height once.
  void sort_weights(std::vector<Weight>& ws) const;

  Weight add(const Weight& a, const Weight& b) const;
  Weight sub(const Weight& a, const Weight& b) const;
  Weight add_alpha(const Weight& x, std::size_t i, int times) const;

  /// Canonical text form covering every structural field.
  std::string serialize() const;

 private:
  void init_derived();

  std::string name_;
  CartanDatum cartan_;
  std::size_t rank_x_ = 0;
  std::size_t rank_y_ = 0;
  IntMatrix pairing_;
  std::vector<Weight> alpha_;
  std::vector<Coweight> coroots_;

  // Rational left inverse of the simple-root matrix, r x rank_x.
  std::vector<std::vector<mpq_class>> alpha_left_inverse_;
  bool alpha_independent_ = false;
  std::vector<PositiveRoot> positive_roots_;

  struct HeightMemo;
  std::shared_ptr<HeightMemo> heights_;
};

using DatumPtr = std::shared_ptr<const RootDatum>;

/// Validates every condition on the root datum, including those of its
/// Cartan datum.
ValidationReport validate(const RootDatum& datum);

}  // namespace qhat
