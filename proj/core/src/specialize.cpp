#include "qhat/specialize.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "qhat/errors.hpp"
#include "qhat/qnumbers.hpp"

namespace qhat {

namespace {

RingMatrix at_point(const RMatrix& m, const RingPoint& p) {
  return m.map([&](const RatFunc& f) { return f.is_zero() ? p.zero() : evaluate(f, p); });
}

std::string ring_str(const RingElem& x) { return x.str(); }

}  // namespace

SpecializedSchur::SpecializedSchur(SaturatedSet pi, RingPoint p, std::vector<LatticePtr> lattices)
    : pi_(std::move(pi)), point_(std::move(p)), lattices_(std::move(lattices)) {
  std::vector<ModulePtr> mods;
  for (const auto& l : lattices_) {
    mods.push_back(l->module());
    auto inv = inverse(l->transition());
    if (!inv) throw InternalError("specialize_schur: singular lattice transition");
    inv_transitions_.push_back(std::move(*inv));
  }
  // Lattice vectors are weight vectors listed in the module's space order,
  // so the block shapes are those of the modules.
  shapes_ = block_shapes(mods);
  weights_.assign(pi_.weyl_closure().begin(), pi_.weyl_closure().end());
  pi_.datum()->sort_weights(weights_);
}

std::shared_ptr<const SpecializedSchur> SpecializedSchur::build(const SaturatedSet& pi, const RingPoint& p,
                                                                LatticeCache& lattices) {
  std::vector<LatticePtr> ls;
  for (const auto& lam : pi.elements()) ls.push_back(lattices.get(lam));
  return std::shared_ptr<const SpecializedSchur>(new SpecializedSchur(pi, p, std::move(ls)));
}

std::shared_ptr<const SpecializedSchur> SpecializedSchur::build(const SaturatedSet& pi, const RingPoint& p) {
  LatticeCache cache(pi.datum());
  return build(pi, p, cache);
}

std::size_t SpecializedSchur::generic_dimension() const {
  std::size_t n = 0;
  for (const auto& s : shapes_) n += s.dim * s.dim;
  return n;
}

int SpecializedSchur::max_power(Sign s, std::size_t i) const {
  int k = 0;
  for (const auto& l : lattices_) k = std::max(k, l->max_power(s, i));
  return k;
}

RSchurElement SpecializedSchur::zero() const {
  RSchurElement x;
  for (const auto& s : shapes_) x.blocks.emplace_back(s.dim, s.dim);
  return x;
}

RSchurElement SpecializedSchur::identity() const {
  RSchurElement x;
  for (const auto& s : shapes_) x.blocks.push_back(RingMatrix::identity(s.dim));
  return x;
}

RSchurElement SpecializedSchur::divided_power(Sign s, std::size_t i, int k) const {
  if (i >= datum()->rank()) throw InvalidArgument("divided_power: index out of range");
  const auto key = std::make_tuple(sign_value(s), i, k);
  {
    std::lock_guard lock(powers_mu_);
    auto it = powers_.find(key);
    if (it != powers_.end()) return it->second;
  }
  RSchurElement x;
  for (const auto& l : lattices_) x.blocks.push_back(at_point(l->divided_power(s, i, k), point_));
  std::lock_guard lock(powers_mu_);
  return powers_.emplace(key, std::move(x)).first->second;
}

RSchurElement SpecializedSchur::one(const Weight& lambda) const {
  if (lambda.size() != datum()->rank_x()) throw InvalidArgument("one: weight of wrong rank");
  RSchurElement x = zero();
  for (std::size_t b = 0; b < shapes_.size(); ++b) {
    if (const auto* sp = shapes_[b].find(lambda)) {
      for (std::size_t k = 0; k < sp->second; ++k) x.blocks[b](sp->first + k, sp->first + k) = 1;
    }
  }
  return x;
}

RSchurElement SpecializedSchur::k_element(const Coweight& h) const {
  if (h.size() != datum()->rank_y()) throw InvalidArgument("k_element: coweight of wrong rank");
  RSchurElement x = zero();
  for (const auto& lam : weights_) {
    x += qhat::evaluate(LaurentPoly::v(datum()->pair(h, lam)), point_) * one(lam);
  }
  return x;
}

RSchurElement SpecializedSchur::evaluate(const Expr& e) const {
  std::vector<std::size_t> dims;
  for (const auto& s : shapes_) dims.push_back(s.dim);
  const RootDatum& d = *datum();
  std::map<Letter, RSchurElement> memo;
  auto letter = [&](std::size_t b, const Letter& l) -> RingMatrix {
    auto it = memo.find(l);
    if (it == memo.end()) {
      RSchurElement x;
      switch (l.kind) {
        case Letter::Kind::E:
          if (l.index >= d.rank()) throw InvalidArgument("evaluate: index out of range");
          x = divided_power(l.sign, l.index, l.power);
          break;
        case Letter::Kind::K:
          x = k_element(l.vec);
          break;
        case Letter::Kind::One:
          x = one(l.vec);
          break;
      }
      it = memo.emplace(l, std::move(x)).first;
    }
    return it->second.blocks[b];
  };
  auto coef = [&](const RatFunc& c) { return qhat::evaluate(c, point_); };
  return RSchurElement{evaluate_blocks<RingElem>(e, dims, letter, coef)};
}

RSchurElement SpecializedSchur::specialize(const SchurElement& x) const {
  if (x.blocks.size() != lattices_.size()) throw InvalidArgument("specialize: wrong block count");
  RSchurElement y;
  for (std::size_t b = 0; b < lattices_.size(); ++b) {
    RMatrix local = inv_transitions_[b] * x.blocks[b] * lattices_[b]->transition();
    y.blocks.push_back(at_point(local, point_));
  }
  return y;
}

void SpecializedSchur::compute_basis() const {
  std::call_once(basis_once_, [this] {
    const RootDatum& d = *datum();
    std::vector<BlockGenerator<RingElem>> gens;
    for (std::size_t i = 0; i < d.rank(); ++i) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        for (int k = 1; k <= max_power(s, i); ++k) {
          Weight shift = d.add_alpha(d.zero_weight(), i, sign_value(s) * k);
          gens.push_back({std::move(shift), divided_power(s, i, k)});
        }
      }
    }
    PieceClosure<RingElem> closure(shapes_, weights_, gens);
    std::vector<RSchurElement> raw = closure.basis();
    if (raw.size() > generic_dimension()) {
      throw InternalError("specialize_schur: realized rank exceeds the generic dimension");
    }
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t k = 0; k < raw.size(); ++k) {
      auto flat = raw[k].flatten();
      std::size_t p = 0;
      while (p < flat.size() && flat[p].is_zero()) ++p;
      order.emplace_back(p, k);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [p, k] : order) basis_.push_back(std::move(raw[k]));
  });
}

std::size_t SpecializedSchur::dimension() const {
  compute_basis();
  return basis_.size();
}

const std::vector<RSchurElement>& SpecializedSchur::basis() const {
  compute_basis();
  return basis_;
}

std::string SpecializedSchur::describe(const RSchurElement& x) const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t b = 0; b < x.blocks.size(); ++b) {
    const auto& m = x.blocks[b];
    if (m.is_zero()) continue;
    if (any) os << "; ";
    any = true;
    os << "block " << weight_str(shapes_[b].lambda) << " [";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i) os << ", ";
      os << "[";
      for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
      os << "]";
    }
    os << "]";
  }
  return any ? os.str() : "0";
}

Report SpecializedSchur::verify_relations() const {
  Report rep;
  const RootDatum& d = *datum();
  auto check = [&](const std::string& row, const RSchurElement& a, const RSchurElement& b,
                   const std::string& what) {
    rep.record(row, a == b, what + ": " + block_diff(a, b, shapes_, ring_str));
  };
  RSchurElement total = zero();
  for (const auto& a : weights_) {
    total += one(a);
    for (const auto& b : weights_) {
      check("(a)", one(a) * one(b), a == b ? one(a) : zero(),
            "1_" + weight_str(a) + " 1_" + weight_str(b));
    }
  }
  check("(a)", total, identity(), "sum of idempotents");
  for (const auto& lam : weights_) {
    for (std::size_t i = 0; i < d.rank(); ++i) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        const RSchurElement e = divided_power(s, i, 1);
        Weight up = d.add_alpha(lam, i, sign_value(s));
        check(s == Sign::Plus ? "(b)" : "(b')", e * one(lam), one(up) * e,
              Letter::e(s, i).str() + " 1_" + weight_str(lam));
      }
    }
  }
  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (std::size_t j = 0; j < d.rank(); ++j) {
      const RSchurElement ei = divided_power(Sign::Plus, i, 1);
      const RSchurElement fj = divided_power(Sign::Minus, j, 1);
      RSchurElement rhs = zero();
      if (i == j) {
        for (const auto& lam : weights_) {
          rhs += qhat::evaluate(qint(d.pair_simple(i, lam), d.d(i)), point_) * one(lam);
        }
      }
      check("(c)", ei * fj - fj * ei, rhs,
            "(i,j) = (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (std::size_t j = 0; j < d.rank(); ++j) {
      if (i == j) continue;
      const int top = 1 - d.cartan_entry(i, j);
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        RSchurElement sum = zero();
        for (int a = 0; a <= top; ++a) {
          RSchurElement term = divided_power(s, i, a) * divided_power(s, j, 1) * divided_power(s, i, top - a);
          if ((top - a) % 2 == 0) {
            sum += term;
          } else {
            sum -= term;
          }
        }
        check("(d)", sum, zero(),
              std::string(s == Sign::Plus ? "+" : "-") + " (i,j) = (" + std::to_string(i + 1) + "," +
                  std::to_string(j + 1) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const int top = max_power(s, i) + 1;
      for (int a = 1; a <= top; ++a) {
        for (int b = 1; a + b <= top; ++b) {
          RingElem c = qhat::evaluate(qbinom(a + b, a, d.d(i)), point_);
          check("divided powers", divided_power(s, i, a) * divided_power(s, i, b),
                c * divided_power(s, i, a + b),
                Letter::e(s, i, a).str() + " " + Letter::e(s, i, b).str());
        }
      }
    }
  }
  return rep;
}

RTruncationMap::RTruncationMap(SpecializedPtr source, SpecializedPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!(source_->point() == target_->point())) throw InvalidArgument("r_truncation_map: ring mismatch");
  if (!target_->pi().is_subset_of(source_->pi())) {
    throw InvalidArgument("r_truncation_map: {" + target_->pi().key() + "} is not contained in {" +
                          source_->pi().key() + "}");
  }
  const auto& src = source_->pi().elements();
  for (const auto& lam : target_->pi().elements()) {
    blocks_.push_back(static_cast<std::size_t>(std::find(src.begin(), src.end(), lam) - src.begin()));
  }
}

RSchurElement RTruncationMap::apply(const RSchurElement& x) const {
  if (x.blocks.size() != source_->shapes().size()) {
    throw InvalidArgument("r_truncation_map: element has the wrong block count");
  }
  RSchurElement y;
  for (std::size_t b : blocks_) y.blocks.push_back(x.blocks[b]);
  return y;
}

Report RTruncationMap::verify() const {
  Report rep;
  const RootDatum& d = *source_->datum();
  std::vector<std::pair<std::string, RSchurElement>> gens;
  rep.record("generators", true);
  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      for (int k = 1; k <= source_->max_power(s, i); ++k) {
        RSchurElement img = apply(source_->divided_power(s, i, k));
        RSchurElement want = target_->divided_power(s, i, k);
        rep.record("generators", img == want,
                   Letter::e(s, i, k).str() + ": " + block_diff(img, want, target_->shapes(), ring_str));
        gens.emplace_back(Letter::e(s, i, k).str(), source_->divided_power(s, i, k));
      }
    }
  }
  rep.record("idempotents", true);
  for (const auto& lam : source_->weights()) {
    RSchurElement img = apply(source_->one(lam));
    RSchurElement want = target_->one(lam);
    rep.record("idempotents", img == want, "1_" + weight_str(lam));
    gens.emplace_back("1_" + weight_str(lam), source_->one(lam));
  }
  rep.record("multiplicative", true);
  std::vector<RSchurElement> images;
  for (std::size_t k = 0; k < source_->basis().size(); ++k) {
    const RSchurElement& b = source_->basis()[k];
    RSchurElement fb = apply(b);
    for (const auto& [name, g] : gens) {
      RSchurElement fg = apply(g);
      bool ok = apply(b * g) == fb * fg && apply(g * b) == fg * fb;
      rep.record("multiplicative", ok, "basis element " + std::to_string(k) + " with " + name);
    }
    images.push_back(std::move(fb));
  }
  std::size_t r = block_rank(images);
  rep.record("surjective", r == target_->dimension(),
             "image rank " + std::to_string(r) + " vs dim " + std::to_string(target_->dimension()));
  return rep;
}

Report verify_r_chain(const SpecializedPtr& a, const SpecializedPtr& b, const SpecializedPtr& c) {
  Report rep;
  RTruncationMap ab(b, a), bc(c, b), ac(c, a), aa(a, a);
  rep.record("composition", true);
  for (std::size_t k = 0; k < c->basis().size(); ++k) {
    const auto& x = c->basis()[k];
    RSchurElement lhs = ab.apply(bc.apply(x));
    RSchurElement rhs = ac.apply(x);
    rep.record("composition", lhs == rhs, "basis element " + std::to_string(k));
  }
  rep.record("identity", true);
  for (std::size_t k = 0; k < a->basis().size(); ++k) {
    rep.record("identity", aa.apply(a->basis()[k]) == a->basis()[k], "basis element " + std::to_string(k));
  }
  return rep;
}

std::vector<SchurElement> integral_family(const SchurAlgebra& s) {
  const RootDatum& d = *s.datum();
  std::vector<SchurElement> gens;
  for (const auto& w : s.weights()) gens.push_back(s.one(w));
  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      int top = 0;
      for (const auto& m : s.modules()) top = std::max(top, m->nilpotency_degree(sg, i) - 1);
      for (int k = 1; k <= top; ++k) gens.push_back(s.divided_power(sg, i, k));
    }
  }
  std::vector<SchurElement> out = gens;
  for (const auto& a : gens) {
    for (const auto& b : gens) {
      SchurElement ab = a * b;
      if (!ab.is_zero()) out.push_back(std::move(ab));
    }
  }
  return out;
}

Report verify_specialize_commutes(const SchurPtr& big, const SchurPtr& small, const SpecializedPtr& rbig,
                                  const SpecializedPtr& rsmall) {
  Report rep;
  TruncationMap f(big, small);
  RTruncationMap g(rbig, rsmall);
  const auto family = integral_family(*big);
  rep.record("specialize commutes with restriction", true);
  for (std::size_t k = 0; k < family.size(); ++k) {
    RSchurElement lhs = rsmall->specialize(f.apply(family[k]));
    RSchurElement rhs = g.apply(rbig->specialize(family[k]));
    rep.record("specialize commutes with restriction", lhs == rhs,
               "family element " + std::to_string(k) + ": " + block_diff(lhs, rhs, rsmall->shapes(), ring_str));
  }
  return rep;
}

RLimitElement::RLimitElement(DatumPtr datum, Expr u, RingPoint p)
    : datum_(std::move(datum)), u_(std::move(u)), point_(std::move(p)) {
  if (!u_.is_zero() && !u_.is_udot()) {
    throw InvalidArgument("r_theta_dot: a word without an idempotent in " + u_.str());
  }
}

RSchurElement RLimitElement::at(const SpecializedSchur& s) const {
  if (!(s.point() == point_)) throw InvalidArgument("r_theta_dot: ring mismatch");
  if (s.datum() != datum_ && s.datum()->serialize() != datum_->serialize()) {
    throw InvalidArgument("r_theta_dot: datum mismatch");
  }
  return s.evaluate(u_);
}

RLimitElement r_theta_dot(const DatumPtr& datum, const Expr& u, const RingPoint& p) {
  return RLimitElement(datum, u, p);
}

CoherenceReport verify_r_coherence(const RLimitElement& a, const std::vector<SpecializedPtr>& chain) {
  CoherenceReport rep;
  for (const auto& s : chain) rep.chain.push_back(s->pi().key());
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    if (!chain[k]->pi().is_subset_of(chain[k + 1]->pi())) {
      throw InvalidArgument("verify_r_coherence: chain is not nested");
    }
  }
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    RTruncationMap f(chain[k + 1], chain[k]);
    RSchurElement lhs = f.apply(a.at(*chain[k + 1]));
    RSchurElement rhs = a.at(*chain[k]);
    CoherenceLink link{rep.chain[k + 1], rep.chain[k], lhs == rhs, ""};
    if (!link.pass) link.witness = block_diff(lhs, rhs, chain[k]->shapes(), ring_str);
    rep.links.push_back(std::move(link));
  }
  return rep;
}

std::vector<Expr> probe_words(const RootDatum& d, int degree_bound, bool include_k) {
  const int n = std::max(degree_bound, 0);
  // Sequences of divided powers of one sign, adjacent indices distinct.
  auto parts = [&](Sign s, int len) {
    std::vector<Word> out;
    Word cur;
    std::function<void()> rec = [&] {
      if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = 0; i < d.rank(); ++i) {
        if (!cur.empty() && cur.back().index == i) continue;
        for (int k = 1; k <= n; ++k) {
          cur.push_back(Letter::e(s, i, k));
          rec();
          cur.pop_back();
        }
      }
    };
    rec();
    return out;
  };
  auto kparts = [&](int len) {
    std::vector<Word> out;
    Word cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = from; i < d.rank(); ++i) {
        cur.push_back(Letter::k(d.coroot(i)));
        rec(i);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  };
  std::vector<Expr> words;
  for (int total = 0; total <= n; ++total) {
    for (int lf = 0; lf <= total; ++lf) {
      for (int lk = 0; lf + lk <= total; ++lk) {
        if (lk > 0 && !include_k) continue;
        const int le = total - lf - lk;
        for (const auto& f : parts(Sign::Minus, lf)) {
          for (const auto& k : kparts(lk)) {
            for (const auto& e : parts(Sign::Plus, le)) {
              Word w = f;
              w.insert(w.end(), k.begin(), k.end());
              w.insert(w.end(), e.begin(), e.end());
              words.push_back(Expr::word(std::move(w)));
            }
          }
        }
      }
    }
  }
  return words;
}

KernelProbeReport kernel_probe_RU(const DatumPtr& datum, int degree_bound, int height_bound,
                                  const RingPoint& p, bool include_k) {
  KernelProbeReport rep;
  const auto words = probe_words(*datum, degree_bound, include_k);
  for (const auto& w : words) rep.words.push_back(w.str());
  std::vector<std::vector<RingElem>> rows(words.size());
  LatticeCache lattices(datum);
  for (const auto& pi : probe_schedule(datum, height_bound)) {
    auto s = SpecializedSchur::build(pi, p, lattices);
    for (std::size_t k = 0; k < words.size(); ++k) {
      auto flat = s->evaluate(words[k]).flatten();
      rows[k].insert(rows[k].end(), flat.begin(), flat.end());
    }
    Echelon<RingElem> e(rows.empty() ? 0 : rows.front().size());
    for (const auto& r : rows) e.insert(r);
    rep.pis.push_back(pi.key());
    rep.kernel_dims.push_back(words.size() - e.rank());
  }
  return rep;
}

}  // namespace qhat
