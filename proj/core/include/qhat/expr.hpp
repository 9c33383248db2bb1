#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhat/ratfunc.hpp"
#include "qhat/root_datum.hpp"
#include "qhat/weyl_module.hpp"

namespace qhat {

/// One symbol of a word: E_{+-i}^{(k)}, K_h or 1_lambda.
struct Letter {
  enum class Kind { E, K, One };
  Kind kind = Kind::E;
  Sign sign = Sign::Plus;
  std::size_t index = 0;
  int power = 1;
  /// Coweight for K, weight for One.
  std::vector<int> vec;

  static Letter e(Sign s, std::size_t i, int k = 1) { return {Kind::E, s, i, k, {}}; }
  static Letter k(const Coweight& h) { return {Kind::K, Sign::Plus, 0, 0, h}; }
  static Letter one(const Weight& lambda) { return {Kind::One, Sign::Plus, 0, 0, lambda}; }

  std::string str() const;
  friend auto operator<=>(const Letter&, const Letter&) = default;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// A formal Q(v)-linear combination of words. Words are kept verbatim; no
/// relation is applied except merging equal words and dropping E^{(0)}.
class Expr {
 public:
  Expr() = default;
  Expr(const RatFunc& c);  // NOLINT: scalars embed implicitly
  Expr(Letter l);          // NOLINT

  static Expr word(Word w, const RatFunc& c = RatFunc(1));

  const std::map<Word, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// No 1_lambda letters: an element of U.
  bool is_u() const;
  /// Every word contains some 1_lambda: an element of the modified form.
  bool is_udot() const;

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const RatFunc& c);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(const RatFunc& c, Expr a) { return a *= c; }
  friend bool operator==(const Expr&, const Expr&) = default;

  /// Text accepted by parse_expr.
  std::string str() const;

 private:
  void add_term(const Word& w, const RatFunc& c);
  std::map<Word, RatFunc> terms_;
};

/// Parses expressions such as "E1 F1 - F1 E1", "E2^(2) 1(1,0)",
/// "{1:1}*K(1) + 3/2*E1" or "0". Letters: E<i>, F<i> (1-based, optional
/// divided power ^(k)), K(h), 1(lambda). Coefficients are integers,
/// fractions, v^k, or a serialized rational function in braces. Throws
/// InvalidArgument with the column on malformed input or rank mismatch.
Expr parse_expr(const std::string& text, const RootDatum& datum);

/// Evaluates e blockwise. letter(b, l) returns the matrix of l on block b
/// and coef(c) converts a coefficient.
template <class T, class LetterFn, class CoefFn>
std::vector<Matrix<T>> evaluate_blocks(const Expr& e, const std::vector<std::size_t>& dims,
                                       LetterFn&& letter, CoefFn&& coef) {
  std::vector<Matrix<T>> out;
  for (std::size_t b = 0; b < dims.size(); ++b) {
    Matrix<T> acc(dims[b], dims[b]);
    for (const auto& [w, c] : e.terms()) {
      T s = coef(c);
      if (detail::entry_is_zero(s) || dims[b] == 0) continue;
      Matrix<T> m = Matrix<T>::identity(dims[b]);
      bool zero = false;
      for (const auto& l : w) {
        m = m * letter(b, l);
        if (m.is_zero()) {
          zero = true;
          break;
        }
      }
      if (zero) continue;
      m *= s;
      acc += m;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace qhat
