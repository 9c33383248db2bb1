#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qhat {

/// Dense integer polynomial, index = degree. Used by the gcd kernels.
using ZPoly = std::vector<mpz_class>;

namespace zpoly {

void trim(ZPoly& p);
mpz_class content(const ZPoly& p);
ZPoly primitive_part(const ZPoly& p);
ZPoly mul(const ZPoly& a, const ZPoly& b);
/// Exact quotient a / b in Z[v]; throws InternalError if b does not divide a.
ZPoly exact_div(const ZPoly& a, const ZPoly& b);
/// gcd in Z[v], normalized to a positive leading coefficient.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

}  // namespace zpoly

/// An element of Z[v, v^-1] in canonical form: coefficients are stored
/// densely from the lowest nonzero exponent to the highest, with no zero at
/// either end. The zero polynomial has no coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT: integers embed implicitly
  explicit LaurentPoly(const mpz_class& c);

  static LaurentPoly monomial(const mpz_class& c, int exponent);
  static LaurentPoly v(int exponent = 1) { return monomial(1, exponent); }
  /// Builds c[0] v^low + c[1] v^(low+1) + ... and canonicalizes.
  static LaurentPoly from_coefficients(int low, std::vector<mpz_class> c);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  /// True for +-v^k, the units of Z[v, v^-1].
  bool is_unit() const;
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  mpz_class coefficient(int exponent) const;
  const std::vector<mpz_class>& coefficients() const { return c_; }
  const mpz_class& leading() const { return c_.back(); }

  /// The polynomial part after removing v^low, i.e. this * v^-low.
  const ZPoly& stripped() const { return c_; }

  LaurentPoly shifted(int k) const;
  /// Substitutes v -> v^d for d >= 1.
  LaurentPoly dilated(int d) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.c_ == b.c_;
  }

  /// Human-readable form, highest exponent first: "v^2 + 1 + v^-2".
  std::string str() const;
  /// Compact canonical serialization: "low:c0,c1,...", or "0" for zero.
  std::string serialize() const;
  static LaurentPoly deserialize(std::string_view text);

  std::size_t hash() const;

 private:
  void canonicalize();

  int low_ = 0;
  std::vector<mpz_class> c_;
};

}  // namespace qhat
