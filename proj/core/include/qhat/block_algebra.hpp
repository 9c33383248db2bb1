#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qhat/errors.hpp"
#include "qhat/linalg.hpp"
#include "qhat/root_datum.hpp"

namespace qhat {

/// Weight layout of one block (one simple module) of a block-diagonal algebra.
struct BlockShape {
  Weight lambda;
  std::size_t dim = 0;
  std::map<Weight, std::pair<std::size_t, std::size_t>> spaces;  // weight -> (offset, dim)

  const std::pair<std::size_t, std::size_t>* find(const Weight& w) const {
    auto it = spaces.find(w);
    return it == spaces.end() ? nullptr : &it->second;
  }
};

/// An element of a block-diagonal algebra: one square matrix per block.
template <class T>
struct BlockElement {
  std::vector<Matrix<T>> blocks;

  bool is_zero() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const Matrix<T>& m) { return m.is_zero(); });
  }

  BlockElement& operator+=(const BlockElement& o) {
    check(o);
    for (std::size_t b = 0; b < blocks.size(); ++b) blocks[b] += o.blocks[b];
    return *this;
  }
  BlockElement& operator-=(const BlockElement& o) {
    check(o);
    for (std::size_t b = 0; b < blocks.size(); ++b) blocks[b] -= o.blocks[b];
    return *this;
  }
  BlockElement& operator*=(const T& s) {
    for (auto& m : blocks) m *= s;
    return *this;
  }
  friend BlockElement operator+(BlockElement a, const BlockElement& b) { return a += b; }
  friend BlockElement operator-(BlockElement a, const BlockElement& b) { return a -= b; }
  friend BlockElement operator*(const T& s, BlockElement a) { return a *= s; }
  friend BlockElement operator*(const BlockElement& a, const BlockElement& b) {
    a.check(b);
    BlockElement c;
    c.blocks.reserve(a.blocks.size());
    for (std::size_t k = 0; k < a.blocks.size(); ++k) c.blocks.push_back(a.blocks[k] * b.blocks[k]);
    return c;
  }
  friend bool operator==(const BlockElement& a, const BlockElement& b) {
    return a.blocks == b.blocks;
  }

  /// Row-major concatenation of all blocks.
  std::vector<T> flatten() const {
    std::vector<T> out;
    for (const auto& m : blocks) out.insert(out.end(), m.data().begin(), m.data().end());
    return out;
  }

 private:
  void check(const BlockElement& o) const {
    if (blocks.size() != o.blocks.size()) throw InvalidArgument("BlockElement: block count mismatch");
  }
};

/// Rank of a family of block elements, computed exactly.
template <class T>
std::size_t block_rank(const std::vector<BlockElement<T>>& xs) {
  if (xs.empty()) return 0;
  std::size_t width = xs.front().flatten().size();
  Echelon<T> e(width);
  for (const auto& x : xs) e.insert(x.flatten());
  return e.rank();
}

/// Describes the first entry where two block elements differ.
template <class T, class Str>
std::string block_diff(const BlockElement<T>& a, const BlockElement<T>& b,
                       const std::vector<BlockShape>& shapes, Str&& str) {
  for (std::size_t k = 0; k < a.blocks.size() && k < b.blocks.size(); ++k) {
    const auto& x = a.blocks[k];
    const auto& y = b.blocks[k];
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        if (!(x(i, j) == y(i, j))) {
          return "block " + weight_str(shapes[k].lambda) + " entry (" + std::to_string(i) + "," +
                 std::to_string(j) + "): " + str(x(i, j)) + " vs " + str(y(i, j));
        }
      }
    }
  }
  return a.blocks.size() == b.blocks.size() ? "" : "block count differs";
}

/// A generator of a block-diagonal algebra that shifts weights by `shift`.
template <class T>
struct BlockGenerator {
  Weight shift;
  BlockElement<T> value;
};

/// The span of the algebra generated by weight projectors and the given
/// generators, organized by weight pieces 1_mu A 1_nu.
template <class T>
class PieceClosure {
 public:
  using Piece = std::pair<Weight, Weight>;

  PieceClosure(const std::vector<BlockShape>& shapes, const std::vector<Weight>& weights,
               const std::vector<BlockGenerator<T>>& gens)
      : shapes_(shapes) {
    std::deque<std::pair<Piece, std::vector<T>>> queue;
    for (const auto& w : weights) {
      Piece p{w, w};
      std::vector<T> seed(width(p), T(0));
      std::size_t pos = 0;
      for (const auto& s : shapes_) {
        if (const auto* sp = s.find(w)) {
          for (std::size_t k = 0; k < sp->second; ++k) seed[pos + k * sp->second + k] = T(1);
          pos += sp->second * sp->second;
        }
      }
      if (seed.empty()) continue;
      if (piece(p).insert(seed)) queue.emplace_back(p, piece(p).rows().back());
    }
    while (!queue.empty()) {
      auto [p, x] = std::move(queue.front());
      queue.pop_front();
      for (const auto& g : gens) {
        // left: g x lies in piece (mu + shift, nu); right: x g in (mu, nu - shift).
        Weight up = add(p.first, g.shift);
        Piece left{up, p.second};
        if (width(left) > 0) {
          auto y = left_mul(g, p, x);
          if (!all_zero(y) && piece(left).insert(y)) queue.emplace_back(left, piece(left).rows().back());
        }
        Weight down = sub(p.second, g.shift);
        Piece right{p.first, down};
        if (width(right) > 0) {
          auto y = right_mul(g, p, x);
          if (!all_zero(y) && piece(right).insert(y)) {
            queue.emplace_back(right, piece(right).rows().back());
          }
        }
      }
    }
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& [p, e] : pieces_) r += e.rank();
    return r;
  }

  /// Spanning basis as block elements, pieces in (mu, nu) order.
  std::vector<BlockElement<T>> basis() const {
    std::vector<BlockElement<T>> out;
    for (const auto& [p, e] : pieces_) {
      for (const auto& row : e.rows()) out.push_back(unflatten(p, row));
    }
    return out;
  }

  std::size_t width(const Piece& p) const {
    std::size_t w = 0;
    for (const auto& s : shapes_) {
      const auto* a = s.find(p.first);
      const auto* b = s.find(p.second);
      if (a && b) w += a->second * b->second;
    }
    return w;
  }

  BlockElement<T> unflatten(const Piece& p, const std::vector<T>& v) const {
    BlockElement<T> out;
    std::size_t pos = 0;
    for (const auto& s : shapes_) {
      Matrix<T> m(s.dim, s.dim);
      const auto* a = s.find(p.first);
      const auto* b = s.find(p.second);
      if (a && b) {
        for (std::size_t i = 0; i < a->second; ++i) {
          for (std::size_t j = 0; j < b->second; ++j) m(a->first + i, b->first + j) = v[pos++];
        }
      }
      out.blocks.push_back(std::move(m));
    }
    return out;
  }

 private:
  static Weight add(const Weight& a, const Weight& b) {
    Weight c = a;
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += b[k];
    return c;
  }
  static Weight sub(const Weight& a, const Weight& b) {
    Weight c = a;
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= b[k];
    return c;
  }
  static bool all_zero(const std::vector<T>& v) {
    return std::all_of(v.begin(), v.end(), [](const T& x) { return detail::entry_is_zero(x); });
  }

  Echelon<T>& piece(const Piece& p) {
    auto it = pieces_.find(p);
    if (it == pieces_.end()) it = pieces_.emplace(p, Echelon<T>(width(p))).first;
    return it->second;
  }

  std::vector<T> left_mul(const BlockGenerator<T>& g, const Piece& p, const std::vector<T>& x) const {
    Weight up = add(p.first, g.shift);
    std::vector<T> out;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < shapes_.size(); ++b) {
      const auto& s = shapes_[b];
      const auto* a = s.find(p.first);
      const auto* n = s.find(p.second);
      const auto* u = s.find(up);
      if (!a || !n) {
        if (u && n) out.resize(out.size() + u->second * n->second, T(0));
        continue;
      }
      if (u) {
        const Matrix<T>& gm = g.value.blocks[b];
        for (std::size_t i = 0; i < u->second; ++i) {
          for (std::size_t j = 0; j < n->second; ++j) {
            T acc(0);
            for (std::size_t k = 0; k < a->second; ++k) {
              const T& gk = gm(u->first + i, a->first + k);
              const T& xk = x[pos + k * n->second + j];
              if (!detail::entry_is_zero(gk) && !detail::entry_is_zero(xk)) acc += gk * xk;
            }
            out.push_back(std::move(acc));
          }
        }
      }
      pos += a->second * n->second;
    }
    return out;
  }

  std::vector<T> right_mul(const BlockGenerator<T>& g, const Piece& p, const std::vector<T>& x) const {
    Weight down = sub(p.second, g.shift);
    std::vector<T> out;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < shapes_.size(); ++b) {
      const auto& s = shapes_[b];
      const auto* a = s.find(p.first);
      const auto* n = s.find(p.second);
      const auto* dn = s.find(down);
      if (!a || !n) {
        if (a && dn) out.resize(out.size() + a->second * dn->second, T(0));
        continue;
      }
      if (dn) {
        const Matrix<T>& gm = g.value.blocks[b];
        for (std::size_t i = 0; i < a->second; ++i) {
          for (std::size_t j = 0; j < dn->second; ++j) {
            T acc(0);
            for (std::size_t k = 0; k < n->second; ++k) {
              const T& xk = x[pos + i * n->second + k];
              const T& gk = gm(n->first + k, dn->first + j);
              if (!detail::entry_is_zero(gk) && !detail::entry_is_zero(xk)) acc += xk * gk;
            }
            out.push_back(std::move(acc));
          }
        }
      }
      pos += a->second * n->second;
    }
    return out;
  }

  const std::vector<BlockShape>& shapes_;
  std::map<Piece, Echelon<T>> pieces_;
};

}  // namespace qhat
