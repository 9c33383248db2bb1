#include "qhat/weyl_module.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "qhat/errors.hpp"
#include "qhat/qnumbers.hpp"

namespace qhat {

namespace {

struct Level {
  Weight weight;
  std::vector<int> depth;
  std::vector<FWord> words;
  RMatrix gram;
  // f_in[j]: M_{w+alpha_j} -> M_w.  e_out[i]: M_w -> M_{w+alpha_i}.
  std::vector<RMatrix> f_in;
  std::vector<RMatrix> e_out;
  std::size_t dim() const { return words.size(); }
};

struct Candidate {
  FWord word;
  std::size_t i;
  std::size_t y;
};

using Vec = std::vector<RatFunc>;

class Builder {
 public:
  Builder(const RootDatum& d, Weight lambda) : d_(d), lambda_(std::move(lambda)), r_(d.rank()) {}

  void run(std::vector<Level>& out_levels) {
    auto b = d_.integral_alpha_coords(d_.sub(lambda_, d_.lowest_in_orbit(lambda_)));
    if (!b) throw InternalError("weyl_module: window left the root lattice");
    bounds_ = *b;

    std::vector<std::vector<int>> window;
    std::vector<int> n(r_, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (pos == r_) {
        window.push_back(n);
        return;
      }
      for (int t = 0; t <= bounds_[pos]; ++t) {
        n[pos] = t;
        rec(pos + 1);
      }
      n[pos] = 0;
    };
    rec(0);
    std::sort(window.begin(), window.end(), [](const auto& a, const auto& c) {
      int da = 0, dc = 0;
      for (int t : a) da += t;
      for (int t : c) dc += t;
      if (da != dc) return da < dc;
      return a > c;
    });

    for (const auto& depth : window) {
      Weight w = weight_at(depth);
      Level lv;
      lv.weight = w;
      lv.depth = depth;
      if (std::all_of(depth.begin(), depth.end(), [](int t) { return t == 0; })) {
        lv.words = {FWord{}};
        lv.gram = RMatrix::identity(1);
      } else {
        build_level(lv);
      }
      if (lv.dim() > 0) {
        order_.push_back(w);
        built_.emplace(w, std::move(lv));
      }
    }
    // Out-of-window neighbours must carry a zero form.
    for (const auto& depth : window) {
      for (std::size_t i = 0; i < r_; ++i) {
        if (depth[i] < bounds_[i]) continue;
        std::vector<int> below = depth;
        ++below[i];
        Level probe;
        probe.weight = weight_at(below);
        probe.depth = below;
        RMatrix gram = candidate_gram(probe);
        if (!gram.is_zero()) {
          throw InternalError("weyl_module: nonzero contravariant form outside the window at " +
                              weight_str(probe.weight));
        }
      }
    }
    for (const auto& w : order_) out_levels.push_back(std::move(built_.at(w)));
  }

 private:
  Weight weight_at(const std::vector<int>& depth) const {
    Weight w = lambda_;
    for (std::size_t i = 0; i < r_; ++i) w = d_.add_alpha(w, i, -depth[i]);
    return w;
  }

  const Level* find(const Weight& w) const {
    auto it = built_.find(w);
    return it == built_.end() ? nullptr : &it->second;
  }

  std::vector<Candidate> candidates(const Weight& w) const {
    std::vector<Candidate> c;
    for (std::size_t i = 0; i < r_; ++i) {
      const Level* up = find(d_.add_alpha(w, i, 1));
      if (!up) continue;
      for (std::size_t y = 0; y < up->dim(); ++y) {
        FWord word;
        word.reserve(up->words[y].size() + 1);
        word.push_back(static_cast<int>(i));
        word.insert(word.end(), up->words[y].begin(), up->words[y].end());
        c.push_back({std::move(word), i, y});
      }
    }
    std::sort(c.begin(), c.end(),
              [](const Candidate& a, const Candidate& b) { return a.word < b.word; });
    return c;
  }

  // E_i F_j y = F_j E_i y + delta_ij [<h_i, wt y>]_i y, in coordinates of M_{w+alpha_i}.
  Vec raise(const Weight& w, std::size_t i, const Candidate& c) const {
    const Weight up_i = d_.add_alpha(w, i, 1);
    const Level* target = find(up_i);
    Vec out(target ? target->dim() : 0, RatFunc(0));
    if (!target) return out;
    const std::size_t j = c.i;
    const Weight up_j = d_.add_alpha(w, j, 1);
    const Level* src = find(up_j);
    const Weight top = d_.add_alpha(up_j, i, 1);
    if (src && find(top)) {
      const RMatrix& e = src->e_out[i];
      const RMatrix& f = target->f_in[j];
      for (std::size_t t = 0; t < e.rows(); ++t) {
        const RatFunc& ey = e(t, c.y);
        if (ey.is_zero()) continue;
        for (std::size_t k = 0; k < out.size(); ++k) {
          if (!f(k, t).is_zero()) out[k] += f(k, t) * ey;
        }
      }
    }
    if (i == j) {
      out[c.y] += RatFunc(qint(d_.pair_simple(i, up_i), d_.d(i)));
    }
    return out;
  }

  // Gram matrix of the candidates at lv.weight; fills z_ with raise() images.
  RMatrix candidate_gram(const Level& lv) {
    cands_ = candidates(lv.weight);
    const std::size_t nc = cands_.size();
    z_.assign(r_, {});
    RMatrix g(nc, nc);
    for (std::size_t i = 0; i < r_; ++i) {
      const Level* up = find(d_.add_alpha(lv.weight, i, 1));
      if (!up) continue;
      z_[i].resize(nc);
      for (std::size_t c = 0; c < nc; ++c) z_[i][c] = raise(lv.weight, i, cands_[c]);
      for (std::size_t c = 0; c < nc; ++c) {
        // G_{w+alpha_i} z
        Vec gz(up->dim(), RatFunc(0));
        for (std::size_t x = 0; x < up->dim(); ++x) {
          for (std::size_t k = 0; k < up->dim(); ++k) {
            if (!up->gram(x, k).is_zero() && !z_[i][c][k].is_zero()) {
              gz[x] += up->gram(x, k) * z_[i][c][k];
            }
          }
        }
        for (std::size_t a = 0; a < nc; ++a) {
          if (cands_[a].i == i) g(a, c) = gz[cands_[a].y];
        }
      }
    }
    return g;
  }

  void build_level(Level& lv) {
    RMatrix g = candidate_gram(lv);
    const std::size_t nc = cands_.size();
    Echelon<RatFunc> ech(nc);
    std::vector<std::size_t> basis;
    for (std::size_t a = 0; a < nc; ++a) {
      if (ech.insert(g.row(a))) basis.push_back(a);
    }
    const std::size_t nb = basis.size();
    if (nb == 0) return;
    RMatrix gbb(nb, nb);
    for (std::size_t p = 0; p < nb; ++p) {
      for (std::size_t q = 0; q < nb; ++q) gbb(p, q) = g(basis[p], basis[q]);
    }
    auto ginv = inverse(gbb);
    if (!ginv) throw InternalError("weyl_module: singular Gram block at " + weight_str(lv.weight));

    // coords(c) = G_BB^{-1} G_{B,c}
    RMatrix coords(nb, nc);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t p = 0; p < nb; ++p) {
        RatFunc s = 0;
        for (std::size_t q = 0; q < nb; ++q) {
          const RatFunc& gq = g(basis[q], c);
          if (!gq.is_zero() && !(*ginv)(p, q).is_zero()) s += (*ginv)(p, q) * gq;
        }
        coords(p, c) = s;
      }
    }

    // The radical must be stable under every E_i.
    for (std::size_t i = 0; i < r_; ++i) {
      if (z_[i].empty()) continue;
      for (std::size_t c = 0; c < nc; ++c) {
        Vec expect(z_[i][c].size(), RatFunc(0));
        for (std::size_t p = 0; p < nb; ++p) {
          if (coords(p, c).is_zero()) continue;
          for (std::size_t k = 0; k < expect.size(); ++k) {
            if (!z_[i][basis[p]][k].is_zero()) expect[k] += coords(p, c) * z_[i][basis[p]][k];
          }
        }
        if (expect != z_[i][c]) {
          throw InternalError("weyl_module: radical not stable under E_" + std::to_string(i) +
                              " at " + weight_str(lv.weight));
        }
      }
    }

    lv.words.reserve(nb);
    for (std::size_t p = 0; p < nb; ++p) lv.words.push_back(cands_[basis[p]].word);
    lv.gram = std::move(gbb);
    lv.f_in.assign(r_, RMatrix());
    lv.e_out.assign(r_, RMatrix());
    for (std::size_t j = 0; j < r_; ++j) {
      const Level* up = find(d_.add_alpha(lv.weight, j, 1));
      if (!up) continue;
      RMatrix f(nb, up->dim());
      for (std::size_t c = 0; c < nc; ++c) {
        if (cands_[c].i != j) continue;
        for (std::size_t p = 0; p < nb; ++p) f(p, cands_[c].y) = coords(p, c);
      }
      lv.f_in[j] = std::move(f);
      RMatrix e(up->dim(), nb);
      for (std::size_t p = 0; p < nb; ++p) {
        for (std::size_t k = 0; k < up->dim(); ++k) e(k, p) = z_[j][basis[p]][k];
      }
      lv.e_out[j] = std::move(e);
    }
  }

  const RootDatum& d_;
  Weight lambda_;
  std::size_t r_;
  std::vector<int> bounds_;
  std::map<Weight, Level> built_;
  std::vector<Weight> order_;
  std::vector<Candidate> cands_;
  std::vector<std::vector<Vec>> z_;
};

std::string join_words(const std::vector<FWord>& words) {
  std::string s;
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (k) s += '|';
    s += '[';
    for (std::size_t t = 0; t < words[k].size(); ++t) {
      if (t) s += ',';
      s += std::to_string(words[k][t]);
    }
    s += ']';
  }
  return s;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == ')' || ch == '[' || ch == ']') continue;
    if (ch == ',') {
      out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::stoi(cur));
  return out;
}

RMatrix diag_qint(const WeylModule& m, std::size_t i) {
  const RootDatum& d = *m.datum();
  RMatrix out(m.dim(), m.dim());
  for (const auto& sp : m.spaces()) {
    RatFunc q(qint(d.pair_simple(i, sp.weight), d.d(i)));
    for (std::size_t k = 0; k < sp.dim(); ++k) out(sp.offset + k, sp.offset + k) = q;
  }
  return out;
}

void check_relation_c(const WeylModule& m) {
  const std::size_t r = m.datum()->rank();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      RMatrix lhs = m.generator(Sign::Plus, i) * m.generator(Sign::Minus, j) -
                    m.generator(Sign::Minus, j) * m.generator(Sign::Plus, i);
      RMatrix rhs = i == j ? diag_qint(m, i) : RMatrix(m.dim(), m.dim());
      if (!(lhs == rhs)) {
        throw InternalError("weyl_module: relation (c) fails for (i,j)=(" + std::to_string(i) +
                            "," + std::to_string(j) + ") on highest weight " +
                            weight_str(m.highest_weight()));
      }
    }
  }
}

}  // namespace

std::string matrix_text(const RMatrix& m) {
  std::string s = std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  for (const auto& x : m.data()) s += " " + x.serialize();
  return s;
}

RMatrix parse_matrix(std::istream& is) {
  std::string shape;
  is >> shape;
  auto x = shape.find('x');
  if (x == std::string::npos) throw InvalidArgument("module text: bad matrix shape");
  std::size_t rows = std::stoul(shape.substr(0, x)), cols = std::stoul(shape.substr(x + 1));
  RMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::string tok;
      if (!(is >> tok)) throw InvalidArgument("module text: truncated matrix");
      m(i, j) = RatFunc::deserialize(tok);
    }
  }
  return m;
}

std::shared_ptr<const WeylModule> WeylModule::build(DatumPtr datum, const Weight& lambda) {
  if (lambda.size() != datum->rank_x()) {
    throw InvalidArgument("weyl_module: weight " + weight_str(lambda) + " has wrong rank");
  }
  if (!datum->is_dominant(lambda)) {
    throw InvalidArgument("weyl_module: weight " + weight_str(lambda) + " is not dominant");
  }
  std::vector<Level> levels;
  Builder(*datum, lambda).run(levels);

  std::shared_ptr<WeylModule> m(new WeylModule());
  m->datum_ = std::move(datum);
  m->lambda_ = lambda;
  const std::size_t r = m->datum_->rank();
  for (auto& lv : levels) {
    WeightSpace sp;
    sp.weight = lv.weight;
    sp.depth = lv.depth;
    sp.words = lv.words;
    sp.gram = lv.gram;
    m->spaces_.push_back(std::move(sp));
  }
  m->assemble_weight_index();
  m->e_plus_.assign(r, RMatrix(m->dim_, m->dim_));
  m->e_minus_.assign(r, RMatrix(m->dim_, m->dim_));
  for (std::size_t s = 0; s < levels.size(); ++s) {
    const auto& lv = levels[s];
    const std::size_t col = m->spaces_[s].offset;
    for (std::size_t i = 0; i < r; ++i) {
      const WeightSpace* up = m->space(m->datum_->add_alpha(lv.weight, i, 1));
      if (!up || lv.e_out.empty()) continue;
      m->e_plus_[i].set_block(up->offset, col, lv.e_out[i]);
      m->e_minus_[i].set_block(col, up->offset, lv.f_in[i]);
    }
  }
  check_relation_c(*m);
  return m;
}

void WeylModule::assemble_weight_index() {
  dim_ = 0;
  index_.clear();
  for (std::size_t s = 0; s < spaces_.size(); ++s) {
    spaces_[s].offset = dim_;
    dim_ += spaces_[s].dim();
    index_.emplace(spaces_[s].weight, s);
  }
}

const WeightSpace* WeylModule::space(const Weight& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? nullptr : &spaces_[it->second];
}

std::map<Weight, int> WeylModule::multiplicities() const {
  std::map<Weight, int> out;
  for (const auto& sp : spaces_) out[sp.weight] = static_cast<int>(sp.dim());
  return out;
}

const RMatrix& WeylModule::generator(Sign s, std::size_t i) const {
  return s == Sign::Plus ? e_plus_.at(i) : e_minus_.at(i);
}

const RMatrix& WeylModule::divided_power(Sign s, std::size_t i, int k) const {
  if (k < 0) throw InvalidArgument("divided_power: k must be nonnegative");
  std::lock_guard lock(cache_mu_);
  auto key = std::tuple{sign_value(s), i, k};
  auto it = powers_.find(key);
  if (it != powers_.end()) return *it->second;
  RMatrix p = RMatrix::identity(dim_);
  const RMatrix& g = generator(s, i);
  for (int t = 0; t < k; ++t) {
    p = g * p;
    if (p.is_zero()) break;
  }
  if (!p.is_zero() && k > 0) p *= RatFunc(qfact(k, datum_->d(i))).inverse();
  auto [pos, _] = powers_.emplace(key, std::make_unique<RMatrix>(std::move(p)));
  return *pos->second;
}

RMatrix WeylModule::k_matrix(const Coweight& h) const {
  RMatrix out(dim_, dim_);
  for (const auto& sp : spaces_) {
    RatFunc vk = RatFunc::v(datum_->pair(h, sp.weight));
    for (std::size_t k = 0; k < sp.dim(); ++k) out(sp.offset + k, sp.offset + k) = vk;
  }
  return out;
}

RMatrix WeylModule::weight_projector(const Weight& w) const {
  RMatrix out(dim_, dim_);
  if (const WeightSpace* sp = space(w)) {
    for (std::size_t k = 0; k < sp->dim(); ++k) out(sp->offset + k, sp->offset + k) = 1;
  }
  return out;
}

int WeylModule::nilpotency_degree(Sign s, std::size_t i) const {
  RMatrix p = RMatrix::identity(dim_);
  const RMatrix& g = generator(s, i);
  for (int n = 0;; ++n) {
    if (p.is_zero()) return n;
    p = g * p;
  }
}

std::string WeylModule::serialize() const {
  std::ostringstream os;
  os << "module " << weight_str(lambda_) << " spaces " << spaces_.size() << "\n";
  for (const auto& sp : spaces_) {
    os << "space " << weight_str(sp.weight) << " " << weight_str(sp.depth) << " "
       << join_words(sp.words) << " " << matrix_text(sp.gram) << "\n";
  }
  for (std::size_t i = 0; i < e_plus_.size(); ++i) {
    os << "gen + " << i << " " << matrix_text(e_plus_[i]) << "\n";
    os << "gen - " << i << " " << matrix_text(e_minus_[i]) << "\n";
  }
  return os.str();
}

std::shared_ptr<const WeylModule> WeylModule::deserialize(DatumPtr datum, const std::string& text) {
  std::istringstream is(text);
  std::string tag, lam;
  std::size_t nspaces = 0;
  is >> tag >> lam;
  if (tag != "module") throw InvalidArgument("module text: missing header");
  is >> tag >> nspaces;
  std::shared_ptr<WeylModule> m(new WeylModule());
  m->datum_ = std::move(datum);
  m->lambda_ = parse_ints(lam);
  for (std::size_t s = 0; s < nspaces; ++s) {
    WeightSpace sp;
    std::string w, dep, words;
    is >> tag >> w >> dep >> words;
    if (tag != "space") throw InvalidArgument("module text: expected space");
    sp.weight = parse_ints(w);
    sp.depth = parse_ints(dep);
    std::size_t start = 0;
    while (start <= words.size()) {
      std::size_t bar = words.find('|', start);
      std::string one = words.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
      sp.words.push_back(parse_ints(one));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    sp.gram = parse_matrix(is);
    m->spaces_.push_back(std::move(sp));
  }
  m->assemble_weight_index();
  const std::size_t r = m->datum_->rank();
  m->e_plus_.assign(r, RMatrix());
  m->e_minus_.assign(r, RMatrix());
  for (std::size_t k = 0; k < 2 * r; ++k) {
    std::string sign;
    std::size_t i = 0;
    is >> tag >> sign >> i;
    if (tag != "gen" || i >= r) throw InvalidArgument("module text: expected generator");
    (sign == "+" ? m->e_plus_ : m->e_minus_)[i] = parse_matrix(is);
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (m->e_plus_[i].rows() != m->dim_ || m->e_minus_[i].rows() != m->dim_) {
      throw InvalidArgument("module text: generator shape mismatch");
    }
  }
  check_relation_c(*m);
  return m;
}

ModulePtr ModuleCache::get(const Weight& lambda) {
  {
    std::lock_guard lock(mu_);
    auto it = modules_.find(lambda);
    if (it != modules_.end()) return it->second;
  }
  ModulePtr m = WeylModule::build(datum_, lambda);
  std::lock_guard lock(mu_);
  return modules_.emplace(lambda, std::move(m)).first->second;
}

void ModuleCache::put(ModulePtr m) {
  std::lock_guard lock(mu_);
  modules_.emplace(m->highest_weight(), std::move(m));
}

const std::vector<RelationCheck>& WeylModule::relation_checks() const {
  std::call_once(relations_once_, [this] { relations_ = check_module_relations(*this); });
  return relations_;
}

std::vector<RelationCheck> check_module_relations(const WeylModule& m) {
  const RootDatum& d = *m.datum();
  const std::size_t r = d.rank();
  const std::size_t n = m.dim();
  std::vector<RelationCheck> rows = {{"(a)", true, ""}, {"(b)", true, ""}, {"(b')", true, ""},
                                     {"(c)", true, ""}, {"(d)", true, ""}};
  auto fail = [&](std::size_t row, const std::string& what) {
    if (rows[row].pass) {
      rows[row].pass = false;
      rows[row].witness = what + " on highest weight " + weight_str(m.highest_weight());
    }
  };
  std::vector<RMatrix> proj;
  for (const auto& sp : m.spaces()) proj.push_back(m.weight_projector(sp.weight));

  // (a)
  RMatrix total(n, n);
  for (std::size_t a = 0; a < proj.size(); ++a) {
    total += proj[a];
    for (std::size_t b = 0; b < proj.size(); ++b) {
      RMatrix expect = a == b ? proj[a] : RMatrix(n, n);
      if (!(proj[a] * proj[b] == expect)) {
        fail(0, "1_" + weight_str(m.spaces()[a].weight) + " 1_" + weight_str(m.spaces()[b].weight));
      }
    }
  }
  if (!(total == RMatrix::identity(n))) fail(0, "sum of idempotents");

  // (b), (b')
  for (std::size_t i = 0; i < r; ++i) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const RMatrix& e = m.generator(s, i);
      const int sv = sign_value(s);
      const std::string name = std::string(s == Sign::Plus ? "E_" : "F_") + std::to_string(i);
      for (const auto& sp : m.spaces()) {
        const RMatrix& p = m.weight_projector(sp.weight);
        Weight shifted = d.add_alpha(sp.weight, i, sv);
        RMatrix lhs = e * p;
        RMatrix rhs = m.space(shifted) ? m.weight_projector(shifted) * e : RMatrix(n, n);
        if (!(lhs == rhs)) fail(1, name + " 1_" + weight_str(sp.weight));
        Weight back = d.add_alpha(sp.weight, i, -sv);
        RMatrix lhs2 = p * e;
        RMatrix rhs2 = m.space(back) ? e * m.weight_projector(back) : RMatrix(n, n);
        if (!(lhs2 == rhs2)) fail(2, "1_" + weight_str(sp.weight) + " " + name);
      }
    }
  }

  // (c)
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      RMatrix lhs = m.generator(Sign::Plus, i) * m.generator(Sign::Minus, j) -
                    m.generator(Sign::Minus, j) * m.generator(Sign::Plus, i);
      RMatrix rhs(n, n);
      if (i == j) {
        for (std::size_t a = 0; a < proj.size(); ++a) {
          RatFunc q(qint(d.pair_simple(i, m.spaces()[a].weight), d.d(i)));
          rhs += q * proj[a];
        }
      }
      if (!(lhs == rhs)) fail(3, "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }

  // (d), divided-power form.
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      const int top = 1 - d.cartan_entry(i, j);
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        RMatrix sum(n, n);
        for (int a = 0; a <= top; ++a) {
          RMatrix term = m.divided_power(s, i, a) * m.generator(s, j) * m.divided_power(s, i, top - a);
          if ((top - a) % 2 == 0) {
            sum += term;
          } else {
            sum -= term;
          }
        }
        if (!sum.is_zero()) {
          fail(4, std::string(s == Sign::Plus ? "+" : "-") + " (i,j)=(" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
        }
      }
    }
  }
  return rows;
}

}  // namespace qhat
