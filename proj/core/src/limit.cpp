#include "qhat/limit.hpp"

#include <algorithm>
#include <tuple>

#include "qhat/errors.hpp"
#include "qhat/qnumbers.hpp"

namespace qhat {

SchurPtr Tower::get(const SaturatedSet& pi) {
  if (pi.datum() != datum_) throw InvalidArgument("tower: saturated set over another datum");
  const std::string key = pi.key();
  {
    std::lock_guard lock(mu_);
    auto it = algebras_.find(key);
    if (it != algebras_.end()) return it->second;
  }
  SchurPtr s = SchurAlgebra::build(pi, modules_);
  std::lock_guard lock(mu_);
  return algebras_.emplace(key, std::move(s)).first->second;
}

struct LimitElement::Impl {
  DatumPtr datum;
  std::string label;
  BlockFn block;
  PiFn pi;
  std::mutex mu;
  std::map<Weight, RMatrix> block_memo;
  std::map<std::string, SchurElement> pi_memo;
};

namespace {

bool same_datum(const DatumPtr& a, const DatumPtr& b) {
  return a == b || a->serialize() == b->serialize();
}

RMatrix eval_on_module(const Expr& e, const WeylModule& m) {
  const RootDatum& d = *m.datum();
  auto letter = [&](std::size_t, const Letter& l) -> RMatrix {
    switch (l.kind) {
      case Letter::Kind::E:
        if (l.index >= d.rank()) throw InvalidArgument("evaluate: index out of range");
        return m.divided_power(l.sign, l.index, l.power);
      case Letter::Kind::K:
        if (l.vec.size() != d.rank_y()) throw InvalidArgument("evaluate: coweight of wrong rank");
        return m.k_matrix(l.vec);
      case Letter::Kind::One:
        if (l.vec.size() != d.rank_x()) throw InvalidArgument("evaluate: weight of wrong rank");
        return m.weight_projector(l.vec);
    }
    return RMatrix();
  };
  return evaluate_blocks<RatFunc>(e, {m.dim()}, letter, [](const RatFunc& c) { return c; }).front();
}

std::string rat_str(const RatFunc& r) { return r.str(); }

}  // namespace

LimitElement LimitElement::blockwise(DatumPtr datum, BlockFn f, std::string label) {
  auto impl = std::make_shared<Impl>();
  impl->datum = std::move(datum);
  impl->block = std::move(f);
  impl->label = std::move(label);
  return LimitElement(std::move(impl));
}

LimitElement LimitElement::from_pi(DatumPtr datum, PiFn f, std::string label) {
  auto impl = std::make_shared<Impl>();
  impl->datum = std::move(datum);
  impl->pi = std::move(f);
  impl->label = std::move(label);
  return LimitElement(std::move(impl));
}

const DatumPtr& LimitElement::datum() const { return impl_->datum; }
const std::string& LimitElement::label() const { return impl_->label; }
bool LimitElement::is_blockwise() const { return static_cast<bool>(impl_->block); }

RMatrix LimitElement::at_block(const WeylModule& m, bool use_memo) const {
  if (!impl_->block) throw InvalidArgument("limit element " + impl_->label + " has no block evaluator");
  if (!same_datum(m.datum(), impl_->datum)) throw InvalidArgument("limit element: datum mismatch");
  if (use_memo) {
    std::lock_guard lock(impl_->mu);
    auto it = impl_->block_memo.find(m.highest_weight());
    if (it != impl_->block_memo.end()) return it->second;
  }
  RMatrix x = impl_->block(m);
  if (x.rows() != m.dim() || x.cols() != m.dim()) {
    throw InternalError("limit element " + impl_->label + ": block of the wrong shape");
  }
  if (use_memo) {
    std::lock_guard lock(impl_->mu);
    impl_->block_memo.emplace(m.highest_weight(), x);
  }
  return x;
}

SchurElement LimitElement::at(const SchurAlgebra& s, bool use_memo) const {
  if (!same_datum(s.datum(), impl_->datum)) throw InvalidArgument("limit element: datum mismatch");
  if (impl_->block) {
    SchurElement x;
    for (const auto& m : s.modules()) x.blocks.push_back(at_block(*m, use_memo));
    return x;
  }
  const std::string key = s.pi().key();
  if (use_memo) {
    std::lock_guard lock(impl_->mu);
    auto it = impl_->pi_memo.find(key);
    if (it != impl_->pi_memo.end()) return it->second;
  }
  SchurElement x = s.from_blocks(impl_->pi(s).blocks);
  if (use_memo) {
    std::lock_guard lock(impl_->mu);
    impl_->pi_memo.emplace(key, x);
  }
  return x;
}

namespace {

template <class BlockOp, class PiOp>
LimitElement combine(const LimitElement& a, const LimitElement& b, const std::string& label,
                     BlockOp block_op, PiOp pi_op) {
  if (!same_datum(a.datum(), b.datum())) throw InvalidArgument("limit elements over different data");
  if (a.is_blockwise() && b.is_blockwise()) {
    return LimitElement::blockwise(
        a.datum(), [a, b, block_op](const WeylModule& m) { return block_op(a.at_block(m), b.at_block(m)); },
        label);
  }
  return LimitElement::from_pi(
      a.datum(), [a, b, pi_op](const SchurAlgebra& s) { return pi_op(a.at(s), b.at(s)); }, label);
}

}  // namespace

LimitElement operator+(const LimitElement& a, const LimitElement& b) {
  return combine(
      a, b, "(" + a.label() + " + " + b.label() + ")",
      [](const RMatrix& x, const RMatrix& y) { return x + y; },
      [](const SchurElement& x, const SchurElement& y) { return x + y; });
}

LimitElement operator-(const LimitElement& a, const LimitElement& b) {
  return combine(
      a, b, "(" + a.label() + " - " + b.label() + ")",
      [](const RMatrix& x, const RMatrix& y) { return x - y; },
      [](const SchurElement& x, const SchurElement& y) { return x - y; });
}

LimitElement operator*(const LimitElement& a, const LimitElement& b) {
  return combine(
      a, b, a.label() + " " + b.label(), [](const RMatrix& x, const RMatrix& y) { return x * y; },
      [](const SchurElement& x, const SchurElement& y) { return x * y; });
}

LimitElement operator*(const RatFunc& c, const LimitElement& a) {
  const std::string label = "{" + c.serialize() + "}*" + a.label();
  if (a.is_blockwise()) {
    return LimitElement::blockwise(
        a.datum(), [a, c](const WeylModule& m) { return c * a.at_block(m); }, label);
  }
  return LimitElement::from_pi(
      a.datum(), [a, c](const SchurAlgebra& s) { return c * a.at(s); }, label);
}

LimitElement limit_add(const LimitElement& a, const LimitElement& b) { return a + b; }
LimitElement limit_mul(const LimitElement& a, const LimitElement& b) { return a * b; }

LimitElement limit_zero(const DatumPtr& datum) {
  return LimitElement::blockwise(
      datum, [](const WeylModule& m) { return RMatrix(m.dim(), m.dim()); }, "0");
}

LimitElement limit_identity(const DatumPtr& datum) {
  return LimitElement::blockwise(
      datum, [](const WeylModule& m) { return RMatrix::identity(m.dim()); }, "1");
}

LimitElement hat_E(const DatumPtr& datum, Sign s, std::size_t i, int k) {
  if (i >= datum->rank()) throw InvalidArgument("hat_E: index out of range");
  if (k < 0) throw InvalidArgument("hat_E: negative divided power");
  return LimitElement::blockwise(
      datum, [s, i, k](const WeylModule& m) { return m.divided_power(s, i, k); },
      Letter::e(s, i, k).str());
}

LimitElement hat_one(const DatumPtr& datum, const Weight& lambda) {
  if (lambda.size() != datum->rank_x()) throw InvalidArgument("hat_one: weight of wrong rank");
  return LimitElement::blockwise(
      datum, [lambda](const WeylModule& m) { return m.weight_projector(lambda); },
      Letter::one(lambda).str());
}

LimitElement hat_K(const DatumPtr& datum, const Coweight& h) {
  if (h.size() != datum->rank_y()) throw InvalidArgument("hat_K: coweight of wrong rank");
  return LimitElement::blockwise(
      datum, [h](const WeylModule& m) { return m.k_matrix(h); }, Letter::k(h).str());
}

LimitElement weight_sum(const DatumPtr& datum, std::function<RatFunc(const Weight&)> c,
                        const LimitElement& x, std::string label) {
  if (!same_datum(datum, x.datum())) throw InvalidArgument("weight_sum: datum mismatch");
  if (x.is_blockwise()) {
    return LimitElement::blockwise(
        datum,
        [c, x](const WeylModule& m) {
          RMatrix xm = x.at_block(m);
          RMatrix out(m.dim(), m.dim());
          for (const auto& sp : m.spaces()) {
            RatFunc coef = c(sp.weight);
            if (coef.is_zero()) continue;
            out += coef * (xm * m.weight_projector(sp.weight));
          }
          return out;
        },
        std::move(label));
  }
  return LimitElement::from_pi(
      datum,
      [c, x](const SchurAlgebra& s) {
        SchurElement xs = x.at(s);
        SchurElement out = s.zero();
        for (const auto& lam : s.weights()) {
          RatFunc coef = c(lam);
          if (!coef.is_zero()) out += coef * (xs * s.one(lam));
        }
        return out;
      },
      std::move(label));
}

LimitElement theta(const DatumPtr& datum, const Expr& u) {
  if (!u.is_u()) throw InvalidArgument("theta: expression contains an idempotent: " + u.str());
  return LimitElement::blockwise(
      datum, [u](const WeylModule& m) { return eval_on_module(u, m); }, "theta(" + u.str() + ")");
}

LimitElement theta_dot(const DatumPtr& datum, const Expr& u) {
  if (!u.is_udot()) {
    throw InvalidArgument("theta_dot: a word without an idempotent in " + u.str());
  }
  return LimitElement::blockwise(
      datum, [u](const WeylModule& m) { return eval_on_module(u, m); }, "theta_dot(" + u.str() + ")");
}

Comparison eq_up_to(const LimitElement& a, const LimitElement& b, const SchurAlgebra& s) {
  SchurElement x = a.at(s), y = b.at(s);
  if (x == y) return {true, ""};
  return {false, "at {" + s.pi().key() + "} " + block_diff(x, y, s.shapes(), rat_str)};
}

bool CoherenceReport::pass() const {
  return std::all_of(links.begin(), links.end(), [](const CoherenceLink& l) { return l.pass; });
}

CoherenceReport verify_coherence(const LimitElement& a, const std::vector<SchurPtr>& chain) {
  CoherenceReport rep;
  for (const auto& s : chain) rep.chain.push_back(s->pi().key());
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    if (!chain[k]->pi().is_subset_of(chain[k + 1]->pi())) {
      throw InvalidArgument("verify_coherence: {" + chain[k]->pi().key() + "} is not contained in {" +
                            chain[k + 1]->pi().key() + "}");
    }
  }
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    TruncationMap f(chain[k + 1], chain[k]);
    SchurElement lhs = f.apply(a.at(*chain[k + 1]));
    SchurElement rhs = a.at(*chain[k]);
    CoherenceLink link{rep.chain[k + 1], rep.chain[k], lhs == rhs, ""};
    if (!link.pass) link.witness = block_diff(lhs, rhs, chain[k]->shapes(), rat_str);
    rep.links.push_back(std::move(link));
  }
  return rep;
}

std::vector<Coweight> test_coweights(const RootDatum& d) {
  std::vector<Coweight> out{d.zero_coweight()};
  auto push = [&](Coweight h) {
    if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(std::move(h));
  };
  for (std::size_t k = 0; k < d.rank_y(); ++k) {
    Coweight e = d.zero_coweight();
    e[k] = 1;
    push(e);
    e[k] = -1;
    push(e);
  }
  for (std::size_t i = 0; i < d.rank(); ++i) {
    Coweight h = d.coroot(i);
    push(h);
    for (auto& x : h) x = -x;
    push(h);
    for (std::size_t j = i + 1; j < d.rank(); ++j) {
      Coweight s = d.coroot(i);
      for (std::size_t k = 0; k < s.size(); ++k) s[k] += d.coroot(j)[k];
      push(s);
    }
  }
  return out;
}

namespace {

Coweight cw_add(const Coweight& a, const Coweight& b) {
  Coweight c = a;
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += b[k];
  return c;
}

Coweight cw_scale(const Coweight& a, int s) {
  Coweight c = a;
  for (auto& x : c) x *= s;
  return c;
}

/// Checks lhs = rhs on one block and records the outcome.
class BlockChecker {
 public:
  BlockChecker(const WeylModule& m, Report& rep) : m_(m), rep_(rep) {}
  void eq(const std::string& row, const LimitElement& lhs, const LimitElement& rhs,
          const std::string& what) {
    RMatrix x = lhs.at_block(m_, false), y = rhs.at_block(m_, false);
    if (x == y) {
      rep_.record(row, true);
      return;
    }
    SchurElement a{{x}}, b{{y}};
    BlockShape shape;
    shape.lambda = m_.highest_weight();
    rep_.record(row, false, what + " on block " + weight_str(m_.highest_weight()) + ": " +
                                block_diff(a, b, {shape}, rat_str));
  }

 private:
  const WeylModule& m_;
  Report& rep_;
};

void k_identities(const WeylModule& m, Report& rep, const std::string& row_ab, const std::string& row_c) {
  const DatumPtr& d = m.datum();
  BlockChecker chk(m, rep);
  const auto hs = test_coweights(*d);
  chk.eq(row_ab, hat_K(d, d->zero_coweight()), limit_identity(d), "K_0 = 1");
  for (const auto& h : hs) {
    for (const auto& h2 : hs) {
      chk.eq(row_ab, hat_K(d, h) * hat_K(d, h2), hat_K(d, cw_add(h, h2)),
             "K_" + weight_str(h) + " K_" + weight_str(h2));
    }
    chk.eq(row_c, hat_K(d, cw_scale(h, -1)) * hat_K(d, h), limit_identity(d),
           "K_-h K_h for h = " + weight_str(h));
    chk.eq(row_c, hat_K(d, h) * hat_K(d, cw_scale(h, -1)), limit_identity(d),
           "K_h K_-h for h = " + weight_str(h));
  }
}

Report block_prop_kh(const WeylModule& m) {
  Report rep;
  const DatumPtr& d = m.datum();
  BlockChecker chk(m, rep);
  for (const auto& h : test_coweights(*d)) {
    const RootDatum* dp = d.get();
    LimitElement sum = weight_sum(
        d, [dp, h](const Weight& lam) { return RatFunc::v(dp->pair(h, lam)); }, limit_identity(d),
        "sum v^<h,lambda> 1_lambda");
    chk.eq("K_h = sum v^<h,lambda> 1_lambda", hat_K(d, h), sum, "h = " + weight_str(h));
  }
  k_identities(m, rep, "K_h K_h' = K_{h+h'}, K_0 = 1", "K_{-h} = K_h^{-1}");
  return rep;
}

std::vector<Weight> test_weights(const WeylModule& m) {
  const RootDatum& d = *m.datum();
  std::vector<Weight> out;
  for (const auto& sp : m.spaces()) {
    out.push_back(sp.weight);
    for (std::size_t i = 0; i < d.rank(); ++i) {
      out.push_back(d.add_alpha(sp.weight, i, 1));
      out.push_back(d.add_alpha(sp.weight, i, -1));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void serre(const WeylModule& m, Report& rep, const std::string& row, bool divided) {
  const DatumPtr& d = m.datum();
  BlockChecker chk(m, rep);
  for (std::size_t i = 0; i < d->rank(); ++i) {
    for (std::size_t j = 0; j < d->rank(); ++j) {
      if (i == j) continue;
      const int top = 1 - d->cartan_entry(i, j);
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        LimitElement sum = limit_zero(d);
        for (int a = 0; a <= top; ++a) {
          LimitElement term = divided ? hat_E(d, s, i, a) * hat_E(d, s, j) * hat_E(d, s, i, top - a)
                                      : RatFunc(qbinom(top, a, d->d(i))) * theta(d, Expr::word(
                                            std::vector<Letter>(a, Letter::e(s, i)))) *
                                            hat_E(d, s, j) *
                                            theta(d, Expr::word(std::vector<Letter>(
                                                         top - a, Letter::e(s, i))));
          sum = (top - a) % 2 == 0 ? sum + term : sum - term;
        }
        chk.eq(row, sum, limit_zero(d),
               std::string(s == Sign::Plus ? "+" : "-") + " (i,j) = (" + std::to_string(i + 1) + "," +
                   std::to_string(j + 1) + ")");
      }
    }
  }
}

Report block_uhat(const WeylModule& m) {
  Report rep;
  const DatumPtr& d = m.datum();
  BlockChecker chk(m, rep);
  const auto ws = test_weights(m);
  for (const auto& a : ws) {
    for (const auto& b : ws) {
      chk.eq("(a)", hat_one(d, a) * hat_one(d, b), a == b ? hat_one(d, a) : limit_zero(d),
             "1_" + weight_str(a) + " 1_" + weight_str(b));
    }
  }
  chk.eq("(a)", weight_sum(d, [](const Weight&) { return RatFunc(1); }, limit_identity(d), "sum 1_lambda"),
         limit_identity(d), "sum of idempotents");
  for (const auto& lam : ws) {
    for (std::size_t i = 0; i < d->rank(); ++i) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        chk.eq("(b)", hat_E(d, s, i) * hat_one(d, lam),
               hat_one(d, d->add_alpha(lam, i, sign_value(s))) * hat_E(d, s, i),
               Letter::e(s, i).str() + " 1_" + weight_str(lam));
      }
    }
  }
  for (std::size_t i = 0; i < d->rank(); ++i) {
    for (std::size_t j = 0; j < d->rank(); ++j) {
      LimitElement lhs = hat_E(d, Sign::Plus, i) * hat_E(d, Sign::Minus, j) -
                         hat_E(d, Sign::Minus, j) * hat_E(d, Sign::Plus, i);
      const RootDatum* dp = d.get();
      LimitElement rhs = i == j ? weight_sum(
                                      d,
                                      [dp, i](const Weight& lam) {
                                        return RatFunc(qint(dp->pair_simple(i, lam), dp->d(i)));
                                      },
                                      limit_identity(d), "sum [<h_i,lambda>]_i 1_lambda")
                                : limit_zero(d);
      chk.eq("(c)", lhs, rhs, "(i,j) = (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
  serre(m, rep, "(d)", true);
  return rep;
}

Report block_u(const WeylModule& m) {
  Report rep;
  const DatumPtr& d = m.datum();
  BlockChecker chk(m, rep);
  k_identities(m, rep, "(a)", "(a)");
  for (const auto& h : test_coweights(*d)) {
    for (std::size_t i = 0; i < d->rank(); ++i) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        RatFunc c = RatFunc::v(sign_value(s) * d->pair(h, d->alpha(i)));
        chk.eq("(b)", hat_K(d, h) * hat_E(d, s, i), c * (hat_E(d, s, i) * hat_K(d, h)),
               "K_" + weight_str(h) + " " + Letter::e(s, i).str());
      }
    }
  }
  for (std::size_t i = 0; i < d->rank(); ++i) {
    for (std::size_t j = 0; j < d->rank(); ++j) {
      LimitElement lhs = hat_E(d, Sign::Plus, i) * hat_E(d, Sign::Minus, j) -
                         hat_E(d, Sign::Minus, j) * hat_E(d, Sign::Plus, i);
      LimitElement rhs = limit_zero(d);
      if (i == j) {
        const int di = d->d(i);
        RatFunc denom = RatFunc::v(di) - RatFunc::v(-di);
        Coweight kt = cw_scale(d->coroot(i), di);
        rhs = denom.inverse() * (hat_K(d, kt) - hat_K(d, cw_scale(kt, -1)));
      }
      chk.eq("(c)", lhs, rhs, "(i,j) = (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
  serre(m, rep, "(d)", false);
  serre(m, rep, "(d')", true);
  return rep;
}

enum class Suite { PropKh, Uhat, U };

Report memo_block_suite(const WeylModule& m, Suite suite) {
  using Key = std::tuple<const RootDatum*, Weight, int>;
  static std::mutex mu;
  static std::map<Key, std::pair<DatumPtr, Report>> memo;
  Key key{m.datum().get(), m.highest_weight(), static_cast<int>(suite)};
  {
    std::lock_guard lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second.second;
  }
  Report r = suite == Suite::PropKh ? block_prop_kh(m) : suite == Suite::Uhat ? block_uhat(m) : block_u(m);
  std::lock_guard lock(mu);
  memo.emplace(key, std::make_pair(m.datum(), r));
  return r;
}

Report run_suite(const SchurAlgebra& s, Suite suite) {
  Report rep;
  // The infinite sums over X truncate to W pi exactly when every block
  // weight lies in W pi.
  rep.record("sums truncate to W pi", true);
  for (const auto& m : s.modules()) {
    for (const auto& sp : m->spaces()) {
      if (!s.pi().weyl_closure().count(sp.weight)) {
        rep.record("sums truncate to W pi", false,
                   "weight " + weight_str(sp.weight) + " of block " + weight_str(m->highest_weight()));
      }
    }
  }
  for (const auto& m : s.modules()) {
    for (const auto& row : memo_block_suite(*m, suite).rows) rep.record(row.name, row.pass, row.witness);
  }
  return rep;
}

}  // namespace

Report check_prop_Kh(const SchurAlgebra& s) { return run_suite(s, Suite::PropKh); }
Report check_uhat_relations(const SchurAlgebra& s) { return run_suite(s, Suite::Uhat); }
Report check_u_relations(const SchurAlgebra& s) { return run_suite(s, Suite::U); }

std::vector<SaturatedSet> probe_schedule(const DatumPtr& datum, int height_bound) {
  std::vector<SaturatedSet> out;
  for (const auto& mu : datum->dominant_weights_up_to(height_bound)) out.push_back(saturate(datum, {mu}));
  return out;
}

std::optional<SaturatedSet> separation_probe(const Expr& u, int height_bound, Tower& tower) {
  if (u.is_zero()) return std::nullopt;
  LimitElement x = theta_dot(tower.datum(), u);
  for (const auto& pi : probe_schedule(tower.datum(), height_bound)) {
    if (!x.at(*tower.get(pi)).is_zero()) return pi;
  }
  return std::nullopt;
}

CoherentBasisReport coherent_basis_check(const std::vector<Expr>& family, const SchurAlgebra& s) {
  CoherentBasisReport rep;
  rep.candidates = family.size();
  rep.dimension = s.dimension();
  std::vector<SchurElement> images;
  for (const auto& b : family) {
    SchurElement x = b.is_zero() ? s.zero() : theta_dot(s.datum(), b).at(s);
    if (!x.is_zero()) images.push_back(std::move(x));
  }
  rep.nonzero = images.size();
  rep.rank = block_rank(images);
  rep.independent = rep.rank == rep.nonzero;
  rep.spanning = rep.rank == rep.dimension;
  return rep;
}

Report cofinal_consistency(const LimitElement& a, const std::vector<SchurPtr>& chain1,
                           const std::vector<SchurPtr>& chain2) {
  Report rep;
  rep.record("comparisons", true);
  for (const auto& p : chain1) {
    for (const auto& q : chain2) {
      const SchurPtr* big = nullptr;
      const SchurPtr* small = nullptr;
      if (p->pi().is_subset_of(q->pi())) {
        small = &p;
        big = &q;
      } else if (q->pi().is_subset_of(p->pi())) {
        small = &q;
        big = &p;
      } else {
        continue;
      }
      TruncationMap f(*big, *small);
      SchurElement lhs = f.apply(a.at(**big));
      SchurElement rhs = a.at(**small);
      rep.record("comparisons", lhs == rhs,
                 "{" + (*big)->pi().key() + "} -> {" + (*small)->pi().key() + "}: " +
                     block_diff(lhs, rhs, (*small)->shapes(), rat_str));
    }
  }
  return rep;
}

}  // namespace qhat
