#pragma once

#include <map>
#include <vector>

#include "qhat/laurent.hpp"
#include "qhat/linalg.hpp"
#include "qhat/ratfunc.hpp"
#include "qhat/root_datum.hpp"
#include "qhat/weyl_module.hpp"

namespace qhat {

/// The Verma module of highest weight lambda restricted to the window
/// {nu : w0 lambda <= nu <= lambda}, with every FWord as a basis element.
class TruncatedVerma {
 public:
  /// Throws InvalidArgument for a non-dominant lambda or when the window
  /// holds more than max_words words.
  TruncatedVerma(DatumPtr datum, const Weight& lambda, std::size_t max_words = 20000);

  const Weight& highest_weight() const { return lambda_; }
  /// Window weights ordered by depth.
  const std::vector<Weight>& window() const { return window_; }
  bool in_window(const Weight& w) const { return words_.count(w) > 0; }
  /// Lexicographically ordered FWords of weight w.
  const std::vector<FWord>& words(const Weight& w) const;
  Weight word_weight(const FWord& word) const;

  /// E_i applied to an FWord, as a combination of FWords.
  std::map<FWord, LaurentPoly> raise(std::size_t i, const FWord& word) const;
  /// Matrix of E_i from the w-space to the (w + alpha_i)-space.
  Matrix<RatFunc> e_matrix(std::size_t i, const Weight& w) const;
  /// Matrix of F_i from the w-space to the (w - alpha_i)-space, truncated
  /// to the window.
  Matrix<RatFunc> f_matrix(std::size_t i, const Weight& w) const;

 private:
  DatumPtr datum_;
  Weight lambda_;
  std::vector<Weight> window_;
  std::map<Weight, std::vector<FWord>> words_;
};

/// G[J][K] = coefficient of the highest-weight vector in tau(F_J) F_K m,
/// with tau swapping E_i and F_i. Throws InvalidArgument outside the window.
Matrix<RatFunc> contravariant_gram(const TruncatedVerma& tv, const Weight& nu);

}  // namespace qhat
