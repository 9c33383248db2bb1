#include "qhat/verma.hpp"

#include <algorithm>
#include <functional>

#include "qhat/errors.hpp"
#include "qhat/qnumbers.hpp"

namespace qhat {

TruncatedVerma::TruncatedVerma(DatumPtr datum, const Weight& lambda, std::size_t max_words)
    : datum_(std::move(datum)), lambda_(lambda) {
  const RootDatum& d = *datum_;
  if (lambda.size() != d.rank_x() || !d.is_dominant(lambda)) {
    throw InvalidArgument("truncated_verma: weight " + weight_str(lambda) + " is not dominant");
  }
  auto b = d.integral_alpha_coords(d.sub(lambda, d.lowest_in_orbit(lambda)));
  if (!b) throw InternalError("truncated_verma: window left the root lattice");
  const std::size_t r = d.rank();

  std::vector<std::vector<int>> depths;
  std::vector<int> n(r, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == r) {
      depths.push_back(n);
      return;
    }
    for (int t = 0; t <= (*b)[pos]; ++t) {
      n[pos] = t;
      rec(pos + 1);
    }
    n[pos] = 0;
  };
  rec(0);
  std::sort(depths.begin(), depths.end(), [](const auto& x, const auto& y) {
    int dx = 0, dy = 0;
    for (int t : x) dx += t;
    for (int t : y) dy += t;
    if (dx != dy) return dx < dy;
    return x > y;
  });

  std::size_t total = 0;
  for (const auto& dep : depths) {
    Weight w = lambda;
    for (std::size_t i = 0; i < r; ++i) w = d.add_alpha(w, i, -dep[i]);
    std::vector<FWord> ws;
    if (w == lambda) {
      ws.push_back({});
    } else {
      for (std::size_t i = 0; i < r; ++i) {
        auto it = words_.find(d.add_alpha(w, i, 1));
        if (it == words_.end()) continue;
        for (const auto& tail : it->second) {
          FWord word{static_cast<int>(i)};
          word.insert(word.end(), tail.begin(), tail.end());
          ws.push_back(std::move(word));
        }
      }
      std::sort(ws.begin(), ws.end());
    }
    total += ws.size();
    if (total > max_words) {
      throw InvalidArgument("truncated_verma: window exceeds " + std::to_string(max_words) +
                            " words");
    }
    window_.push_back(w);
    words_.emplace(std::move(w), std::move(ws));
  }
}

const std::vector<FWord>& TruncatedVerma::words(const Weight& w) const {
  auto it = words_.find(w);
  if (it == words_.end()) throw InvalidArgument("truncated_verma: weight outside the window");
  return it->second;
}

Weight TruncatedVerma::word_weight(const FWord& word) const {
  Weight w = lambda_;
  for (int i : word) w = datum_->add_alpha(w, static_cast<std::size_t>(i), -1);
  return w;
}

std::map<FWord, LaurentPoly> TruncatedVerma::raise(std::size_t i, const FWord& word) const {
  std::map<FWord, LaurentPoly> out;
  if (word.empty()) return out;
  // E_i F_{j} w' = F_{j} E_i w' + delta_{ij} [<h_i, wt w'>]_i w'
  const int j = word.front();
  FWord tail(word.begin() + 1, word.end());
  for (auto& [t, c] : raise(i, tail)) {
    FWord w2{j};
    w2.insert(w2.end(), t.begin(), t.end());
    out[w2] += c;
  }
  if (static_cast<std::size_t>(j) == i) {
    const RootDatum& d = *datum_;
    out[tail] += qint(d.pair_simple(i, word_weight(tail)), d.d(i));
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

Matrix<RatFunc> TruncatedVerma::e_matrix(std::size_t i, const Weight& w) const {
  const auto& src = words(w);
  const Weight up = datum_->add_alpha(w, i, 1);
  if (!in_window(up)) return Matrix<RatFunc>(0, src.size());
  const auto& dst = words(up);
  Matrix<RatFunc> m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    for (auto& [t, coef] : raise(i, src[c])) {
      auto pos = std::lower_bound(dst.begin(), dst.end(), t) - dst.begin();
      m(static_cast<std::size_t>(pos), c) = RatFunc(coef);
    }
  }
  return m;
}

Matrix<RatFunc> TruncatedVerma::f_matrix(std::size_t i, const Weight& w) const {
  const auto& src = words(w);
  const Weight down = datum_->add_alpha(w, i, -1);
  if (!in_window(down)) return Matrix<RatFunc>(0, src.size());
  const auto& dst = words(down);
  Matrix<RatFunc> m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    FWord t{static_cast<int>(i)};
    t.insert(t.end(), src[c].begin(), src[c].end());
    auto pos = std::lower_bound(dst.begin(), dst.end(), t) - dst.begin();
    m(static_cast<std::size_t>(pos), c) = 1;
  }
  return m;
}

Matrix<RatFunc> contravariant_gram(const TruncatedVerma& tv, const Weight& nu) {
  if (!tv.in_window(nu)) {
    throw InvalidArgument("contravariant_gram: weight " + weight_str(nu) + " outside the window");
  }
  const auto& ws = tv.words(nu);
  Matrix<RatFunc> g(ws.size(), ws.size());
  for (std::size_t k = 0; k < ws.size(); ++k) {
    for (std::size_t jx = 0; jx < ws.size(); ++jx) {
      // tau(F_{j1} ... F_{jn}) = E_{jn} ... E_{j1}; E_{j1} acts first.
      std::map<FWord, LaurentPoly> cur{{ws[k], LaurentPoly(1)}};
      for (int letter : ws[jx]) {
        std::map<FWord, LaurentPoly> next;
        for (auto& [w, c] : cur) {
          for (auto& [t, e] : tv.raise(static_cast<std::size_t>(letter), w)) next[t] += c * e;
        }
        cur.clear();
        for (auto& [w, c] : next) {
          if (!c.is_zero()) cur.emplace(w, std::move(c));
        }
      }
      auto it = cur.find(FWord{});
      if (it != cur.end()) g(jx, k) = RatFunc(it->second);
    }
  }
  return g;
}

}  // namespace qhat
