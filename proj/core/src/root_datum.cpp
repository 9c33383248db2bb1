#include "qhat/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "qhat/errors.hpp"
#include "qhat/linalg.hpp"

namespace qhat {

namespace {

using QMatrix = Matrix<mpq_class>;

constexpr std::size_t kOrbitLimit = 200000;

std::string matrix_str(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) os << ',';
      os << m[i][j];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

QMatrix to_qmatrix(const IntMatrix& m, std::size_t rows, std::size_t cols) {
  QMatrix q(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) q(i, j) = m[i][j];
  }
  return q;
}

std::vector<int> to_ints(const std::vector<mpq_class>& v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(static_cast<int>(x.get_num().get_si()));
  return out;
}

bool all_integral(const std::vector<mpq_class>& v) {
  return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x.get_den() == 1; });
}

}  // namespace

std::string weight_str(const Weight& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ',';
    os << w[i];
  }
  os << ')';
  return os.str();
}

ValidationReport validate(const CartanDatum& cartan) {
  ValidationReport r;
  const auto& f = cartan.form;
  const std::size_t n = f.size();
  auto fail = [&](std::string msg) {
    r.valid = false;
    r.failures.push_back(std::move(msg));
  };
  if (n == 0) fail("index set is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i].size() != n) {
      fail("form row " + std::to_string(i) + " has wrong length");
      r.finite_type = false;
      return r;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (f[i][j] != f[j][i]) {
        fail("form not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i][i] <= 0 || f[i][i] % 2 != 0) {
      fail("(i,i) not in {2,4,6,...} for i=" + std::to_string(i));
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      int num = 2 * f[i][j];
      if (num > 0 || num % f[i][i] != 0) {
        fail("2(i,j)/(i,i) not in {0,-1,-2,...} for (i,j)=(" + std::to_string(i) + "," +
             std::to_string(j) + ")");
      }
    }
  }
  // Leading principal minors of the form.
  QMatrix q = to_qmatrix(f, n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (determinant(q.block(0, 0, k, k)) <= 0) {
      r.finite_type = false;
      r.failures.push_back("form not positive definite: leading minor " + std::to_string(k) +
                           " is not positive");
      break;
    }
  }
  return r;
}

ValidationReport validate(const RootDatum& d) {
  ValidationReport r = validate(d.cartan());
  auto fail = [&](std::string msg) {
    r.valid = false;
    r.failures.push_back(std::move(msg));
  };
  const std::size_t n = d.cartan().rank();
  if (d.rank() != n) fail("number of simple roots differs from the index set");
  if (d.rank_x() != d.rank_y()) {
    fail("pairing is not square");
  } else {
    QMatrix p = to_qmatrix(d.pairing(), d.rank_y(), d.rank_x());
    mpq_class det = determinant(p);
    if (det != 1 && det != -1) fail("pairing is not perfect (determinant " + det.get_str() + ")");
  }
  if (!r.valid) return r;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& f = d.cartan().form;
      if (f[i][i] == 0) continue;
      int expect = 2 * f[i][j] / f[i][i];
      if (d.cartan_entry(i, j) != expect) {
        fail("<h_" + std::to_string(i) + ", alpha_" + std::to_string(j) +
             "> != 2(i,j)/(i,i)");
      }
    }
  }
  auto independent = [&](const std::vector<std::vector<int>>& vs, std::size_t width) {
    Echelon<mpq_class> e(width);
    for (const auto& v : vs) {
      std::vector<mpq_class> q(v.begin(), v.end());
      if (!e.insert(q)) return false;
    }
    return true;
  };
  std::vector<std::vector<int>> as, hs;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    as.push_back(d.alpha(i));
    hs.push_back(d.coroot(i));
  }
  if (!independent(as, d.rank_x())) fail("simple roots are linearly dependent");
  if (!independent(hs, d.rank_y())) fail("simple coroots are linearly dependent");
  return r;
}

RootDatum::RootDatum(std::string name, CartanDatum cartan, IntMatrix pairing,
                     std::vector<Weight> alpha, std::vector<Coweight> coroots)
    : name_(std::move(name)),
      cartan_(std::move(cartan)),
      pairing_(std::move(pairing)),
      alpha_(std::move(alpha)),
      coroots_(std::move(coroots)) {
  rank_y_ = pairing_.size();
  rank_x_ = pairing_.empty() ? 0 : pairing_[0].size();
  for (const auto& a : alpha_) {
    if (a.size() != rank_x_) throw InvalidArgument("RootDatum: simple root has wrong length");
  }
  for (const auto& h : coroots_) {
    if (h.size() != rank_y_) throw InvalidArgument("RootDatum: simple coroot has wrong length");
  }
  if (coroots_.size() != alpha_.size()) {
    throw InvalidArgument("RootDatum: root and coroot counts differ");
  }
  init_derived();
}

void RootDatum::init_derived() {
  heights_ = std::make_shared<HeightMemo>();
  const std::size_t r = alpha_.size();
  QMatrix a(rank_x_, r);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < rank_x_; ++i) a(i, j) = alpha_[j][i];
  }
  QMatrix at = a.transposed();
  auto gram_inv = inverse(at * a);
  alpha_independent_ = gram_inv.has_value();
  if (alpha_independent_) {
    QMatrix l = *gram_inv * at;
    alpha_left_inverse_.assign(r, std::vector<mpq_class>(rank_x_));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < rank_x_; ++j) alpha_left_inverse_[i][j] = l(i, j);
    }
  }
  if (!alpha_independent_) return;

  // Positive roots by reflection closure of the simple (root, coroot) pairs.
  std::map<Weight, Coweight> roots;
  std::deque<std::pair<Weight, Coweight>> queue;
  for (std::size_t i = 0; i < r; ++i) {
    if (roots.emplace(alpha_[i], coroots_[i]).second) queue.emplace_back(alpha_[i], coroots_[i]);
  }
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      Weight sx = reflect(i, x);
      if (roots.count(sx)) continue;
      if (roots.size() > kOrbitLimit) return;
      Coweight sy = reflect_coweight(i, y);
      roots.emplace(sx, sy);
      queue.emplace_back(std::move(sx), std::move(sy));
    }
  }
  for (const auto& [x, y] : roots) {
    auto c = integral_alpha_coords(x);
    if (!c) continue;
    if (std::all_of(c->begin(), c->end(), [](int t) { return t >= 0; })) {
      positive_roots_.push_back({x, y, *c});
    }
  }
  std::sort(positive_roots_.begin(), positive_roots_.end(),
            [](const PositiveRoot& p, const PositiveRoot& q) {
              int hp = 0, hq = 0;
              for (int t : p.alpha_coords) hp += t;
              for (int t : q.alpha_coords) hq += t;
              if (hp != hq) return hp < hq;
              return p.alpha_coords > q.alpha_coords;
            });
}

std::shared_ptr<const RootDatum> RootDatum::simply_connected(const CartanDatum& cartan,
                                                             std::string name) {
  ValidationReport rep = validate(cartan);
  if (!rep.valid || !rep.finite_type) {
    std::string msg = "invalid Cartan datum:";
    for (const auto& f : rep.failures) msg += " " + f + ";";
    throw InvalidArgument(msg);
  }
  const std::size_t r = cartan.rank();
  IntMatrix pairing(r, std::vector<int>(r, 0));
  std::vector<Weight> alpha(r, Weight(r, 0));
  std::vector<Coweight> coroots(r, Coweight(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    pairing[i][i] = 1;
    coroots[i][i] = 1;
    for (std::size_t j = 0; j < r; ++j) {
      alpha[j][i] = 2 * cartan.form[i][j] / cartan.form[i][i];
    }
  }
  return std::make_shared<const RootDatum>(std::move(name), cartan, std::move(pairing),
                                           std::move(alpha), std::move(coroots));
}

std::vector<std::string> RootDatum::preset_names() {
  return {"A1", "A1adj", "A1xA1", "A2", "B2"};
}

std::shared_ptr<const RootDatum> RootDatum::preset(const std::string& name) {
  if (name == "A1") return simply_connected({{{2}}}, "A1");
  if (name == "A1xA1") return simply_connected({{{2, 0}, {0, 2}}}, "A1xA1");
  if (name == "A2") return simply_connected({{{2, -1}, {-1, 2}}}, "A2");
  if (name == "B2") return simply_connected({{{4, -2}, {-2, 2}}}, "B2");
  if (name == "A1adj") {
    return std::make_shared<const RootDatum>("A1adj", CartanDatum{{{2}}}, IntMatrix{{1}},
                                             std::vector<Weight>{{1}},
                                             std::vector<Coweight>{{2}});
  }
  throw InvalidArgument("unknown preset '" + name + "'");
}

int RootDatum::pair(const Coweight& h, const Weight& x) const {
  long s = 0;
  for (std::size_t a = 0; a < rank_y_; ++a) {
    if (h[a] == 0) continue;
    for (std::size_t b = 0; b < rank_x_; ++b) s += static_cast<long>(h[a]) * pairing_[a][b] * x[b];
  }
  return static_cast<int>(s);
}

std::optional<std::vector<mpq_class>> RootDatum::alpha_coords(const Weight& x) const {
  if (!alpha_independent_) throw InvalidArgument("alpha_coords: simple roots are dependent");
  const std::size_t r = alpha_.size();
  std::vector<mpq_class> c(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < rank_x_; ++j) {
      if (x[j] != 0) c[i] += alpha_left_inverse_[i][j] * x[j];
    }
  }
  for (std::size_t k = 0; k < rank_x_; ++k) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < r; ++i) s += c[i] * alpha_[i][k];
    if (s != x[k]) return std::nullopt;
  }
  return c;
}

std::optional<std::vector<int>> RootDatum::integral_alpha_coords(const Weight& x) const {
  auto c = alpha_coords(x);
  if (!c || !all_integral(*c)) return std::nullopt;
  return to_ints(*c);
}

bool RootDatum::is_dominant(const Weight& x) const {
  for (std::size_t i = 0; i < rank(); ++i) {
    if (pair_simple(i, x) < 0) return false;
  }
  return true;
}

bool RootDatum::dominance_leq(const Weight& lambda, const Weight& mu) const {
  auto c = integral_alpha_coords(sub(mu, lambda));
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](int t) { return t >= 0; });
}

Weight RootDatum::reflect(std::size_t i, const Weight& x) const {
  return add_alpha(x, i, -pair_simple(i, x));
}

Coweight RootDatum::reflect_coweight(std::size_t i, const Coweight& y) const {
  int c = pair(y, alpha_[i]);
  Coweight out = y;
  for (std::size_t k = 0; k < rank_y_; ++k) out[k] -= c * coroots_[i][k];
  return out;
}

std::set<Weight> RootDatum::weyl_orbit(const Weight& x) const {
  std::set<Weight> seen{x};
  std::deque<Weight> queue{x};
  while (!queue.empty()) {
    Weight y = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < rank(); ++i) {
      Weight z = reflect(i, y);
      if (seen.insert(z).second) {
        if (seen.size() > kOrbitLimit) throw InvalidArgument("weyl_orbit: orbit is not finite");
        queue.push_back(std::move(z));
      }
    }
  }
  return seen;
}

Weight RootDatum::dominant_representative(const Weight& x) const {
  Weight y = x;
  for (std::size_t steps = 0; steps < kOrbitLimit; ++steps) {
    std::size_t i = 0;
    while (i < rank() && pair_simple(i, y) >= 0) ++i;
    if (i == rank()) return y;
    y = reflect(i, y);
  }
  throw InvalidArgument("dominant_representative: datum is not of finite type");
}

Weight RootDatum::lowest_in_orbit(const Weight& x) const {
  Weight y = x;
  for (std::size_t steps = 0; steps < kOrbitLimit; ++steps) {
    std::size_t i = 0;
    while (i < rank() && pair_simple(i, y) <= 0) ++i;
    if (i == rank()) return y;
    y = reflect(i, y);
  }
  throw InvalidArgument("lowest_in_orbit: datum is not of finite type");
}

struct RootDatum::HeightMemo {
  std::shared_mutex mu;
  std::map<Weight, int> values;
};

int RootDatum::height(const Weight& x) const {
  {
    std::shared_lock lock(heights_->mu);
    auto it = heights_->values.find(x);
    if (it != heights_->values.end()) return it->second;
  }
  Weight top = dominant_representative(x);
  Weight low = lowest_in_orbit(top);
  auto c = integral_alpha_coords(sub(top, low));
  if (!c) throw InternalError("height: orbit span left the root lattice");
  int h = 0;
  for (int t : *c) h += t;
  std::unique_lock lock(heights_->mu);
  heights_->values.emplace(x, h);
  return h;
}

mpq_class RootDatum::invariant_form_q(const std::vector<mpq_class>& x,
                                    const std::vector<mpq_class>& y) const {
  if (!alpha_independent_ || rank_x_ != rank()) {
    throw InvalidArgument("invariant_form: requires a semisimple datum");
  }
  mpq_class s = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    mpq_class cj = 0;
    for (std::size_t k = 0; k < rank_x_; ++k) cj += alpha_left_inverse_[j][k] * y[k];
    if (cj == 0) continue;
    mpq_class hx = 0;
    for (std::size_t a = 0; a < rank_y_; ++a) {
      if (coroots_[j][a] == 0) continue;
      for (std::size_t b = 0; b < rank_x_; ++b) hx += coroots_[j][a] * pairing_[a][b] * x[b];
    }
    s += cj * d(j) * hx;
  }
  return s;
}

mpq_class RootDatum::invariant_form(const Weight& x, const Weight& y) const {
  return invariant_form_q(std::vector<mpq_class>(x.begin(), x.end()),
                        std::vector<mpq_class>(y.begin(), y.end()));
}

std::vector<Weight> RootDatum::dominant_weights_up_to(int h) const {
  const std::size_t r = rank();
  if (rank_x_ != r) throw InvalidArgument("dominant_weights_up_to: requires a semisimple datum");
  QMatrix b(r, rank_x_);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < rank_x_; ++k) {
      mpq_class s = 0;
      for (std::size_t a = 0; a < rank_y_; ++a) s += coroots_[i][a] * pairing_[a][k];
      b(i, k) = s;
    }
  }
  auto binv = inverse(b);
  if (!binv) throw InvalidArgument("dominant_weights_up_to: coroots are dependent");
  std::vector<Weight> out;
  // Height of a dominant weight is at least the sum of its fundamental coordinates.
  std::vector<int> n(r, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int budget) {
    if (pos == r) {
      std::vector<mpq_class> x(rank_x_, 0);
      for (std::size_t k = 0; k < rank_x_; ++k) {
        for (std::size_t i = 0; i < r; ++i) x[k] += (*binv)(k, i) * n[i];
      }
      if (!all_integral(x)) return;
      Weight w = to_ints(x);
      if (height(w) <= h) out.push_back(std::move(w));
      return;
    }
    for (int t = 0; t <= budget; ++t) {
      n[pos] = t;
      rec(pos + 1, budget - t);
    }
    n[pos] = 0;
  };
  if (h >= 0) rec(0, h);
  sort_weights(out);
  return out;
}

bool RootDatum::weight_order(const Weight& a, const Weight& b) const {
  int ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

void RootDatum::sort_weights(std::vector<Weight>& ws) const {
  std::vector<std::pair<int, Weight>> keyed;
  keyed.reserve(ws.size());
  for (auto& w : ws) keyed.emplace_back(height(w), std::move(w));
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t k = 0; k < ws.size(); ++k) ws[k] = std::move(keyed[k].second);
}

Weight RootDatum::add(const Weight& a, const Weight& b) const {
  Weight out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b[k];
  return out;
}

Weight RootDatum::sub(const Weight& a, const Weight& b) const {
  Weight out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= b[k];
  return out;
}

Weight RootDatum::add_alpha(const Weight& x, std::size_t i, int times) const {
  Weight out = x;
  if (times == 0) return out;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += times * alpha_[i][k];
  return out;
}

std::string RootDatum::serialize() const {
  std::ostringstream os;
  os << "datum " << name_ << " form " << matrix_str(cartan_.form) << " pairing "
     << matrix_str(pairing_) << " alpha " << matrix_str(alpha_) << " coroots "
     << matrix_str(coroots_);
  return os.str();
}

}  // namespace qhat
