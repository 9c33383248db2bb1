#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "qhat/laurent.hpp"
#include "qhat/ratfunc.hpp"

namespace qhat {

namespace detail {
struct RingData;
}

class RingElem;

/// A specialization target v -> xi. Both supported rings are realized as
/// Q[z]/(m(z)) with xi the class of z: m(z) = z - xi for the rational field
/// and the n-th cyclotomic polynomial for the cyclotomic field of order n.
class RingPoint {
 public:
  enum class Kind { Rational, Cyclotomic };

  /// The rational field with xi a nonzero rational number.
  static RingPoint rational(const mpq_class& xi);
  /// Q(zeta_n) with xi = zeta_n a primitive n-th root of unity.
  static RingPoint cyclotomic(int n);

  Kind kind() const;
  /// Cyclotomic order n (1 for the rational field).
  int order() const;
  /// The rational value of xi; only meaningful for Kind::Rational.
  const mpq_class& rational_xi() const;
  /// Coefficients of the monic modulus m(z), lowest degree first.
  const std::vector<mpq_class>& modulus() const;

  RingElem xi() const;
  RingElem zero() const;
  RingElem one() const;
  RingElem constant(const mpq_class& c) const;

  /// "rational xi=p/q" or "cyclotomic n".
  std::string describe() const;

  friend bool operator==(const RingPoint& a, const RingPoint& b);

 private:
  explicit RingPoint(std::shared_ptr<const detail::RingData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::RingData> data_;
  friend class RingElem;
};

/// An exact element of a RingPoint's ring. A default-constructed element,
/// or one built from a bare rational, carries no ring and acts as that
/// constant in whichever ring it meets.
class RingElem {
 public:
  RingElem() = default;
  RingElem(long c);  // NOLINT
  explicit RingElem(const mpq_class& c);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  /// Coefficients in the power basis 1, z, z^2, ... (reduced mod m).
  const std::vector<mpq_class>& coefficients() const { return c_; }

  RingElem inverse() const;

  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  RingElem& operator*=(const RingElem& o);
  RingElem& operator/=(const RingElem& o);
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(RingElem a, const RingElem& b) { return a *= b; }
  friend RingElem operator/(RingElem a, const RingElem& b) { return a /= b; }
  RingElem operator-() const;

  friend bool operator==(const RingElem& a, const RingElem& b) { return a.c_ == b.c_; }

  /// "3/2" for constants, otherwise a polynomial in z: "z^2 - z + 1".
  std::string str() const;

 private:
  RingElem(std::shared_ptr<const detail::RingData> ring, std::vector<mpq_class> c);
  void adopt(const RingElem& o);
  void reduce();

  std::shared_ptr<const detail::RingData> ring_;
  std::vector<mpq_class> c_;
  friend class RingPoint;
  friend RingElem evaluate(const LaurentPoly& f, const RingPoint& p);
};

inline bool is_zero(const RingElem& x) { return x.is_zero(); }

/// Image of f under v -> xi.
RingElem evaluate(const LaurentPoly& f, const RingPoint& p);

/// Image of f under v -> xi. Throws PoleError naming gcd(den f, m) when the
/// denominator vanishes at xi.
RingElem evaluate(const RatFunc& f, const RingPoint& p);

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<mpz_class> cyclotomic_polynomial(int n);

}  // namespace qhat
