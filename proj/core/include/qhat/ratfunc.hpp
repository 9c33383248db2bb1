#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qhat/laurent.hpp"

namespace qhat {

/// An element of Q(v), kept in a canonical reduced form so that structural
/// equality coincides with mathematical equality.
///
/// Canonical form: numerator and denominator share no nonunit factor in
/// Z[v, v^-1]; the denominator is a polynomial with nonzero constant term
/// and positive leading coefficient. Every unit +-v^k lives in the
/// numerator, so an element lies in Z[v, v^-1] exactly when the denominator
/// is 1.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(long c) : num_(c) {}  // NOLINT: integers embed implicitly
  RatFunc(LaurentPoly p) : num_(std::move(p)) {}  // NOLINT
  RatFunc(const LaurentPoly& num, const LaurentPoly& den);

  static RatFunc v(int exponent = 1) { return RatFunc(LaurentPoly::v(exponent)); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }

  RatFunc inverse() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str() const;
  /// "num" or "num/den" using LaurentPoly::serialize for each part.
  std::string serialize() const;
  static RatFunc deserialize(std::string_view text);

 private:
  struct Raw {};
  RatFunc(Raw, LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {}

  LaurentPoly num_;
  LaurentPoly den_ = 1;
};

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }

/// The Laurent polynomial equal to f when f lies in Z[v, v^-1].
std::optional<LaurentPoly> is_integral(const RatFunc& f);

}  // namespace qhat
