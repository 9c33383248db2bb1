#include "qhat/schur.hpp"

#include <algorithm>
#include <sstream>

#include "qhat/errors.hpp"
#include "qhat/qnumbers.hpp"

namespace qhat {

bool Report::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

void Report::record(const std::string& name, bool ok, const std::string& witness) {
  for (auto& r : rows) {
    if (r.name != name) continue;
    if (!ok && r.pass) {
      r.pass = false;
      r.witness = witness;
    }
    return;
  }
  rows.push_back({name, ok, ok ? "" : witness});
}

std::vector<BlockShape> block_shapes(const std::vector<ModulePtr>& modules) {
  std::vector<BlockShape> out;
  for (const auto& m : modules) {
    BlockShape s;
    s.lambda = m->highest_weight();
    s.dim = m->dim();
    for (const auto& sp : m->spaces()) s.spaces.emplace(sp.weight, std::make_pair(sp.offset, sp.dim()));
    out.push_back(std::move(s));
  }
  return out;
}

SchurAlgebra::SchurAlgebra(SaturatedSet pi, std::vector<ModulePtr> modules)
    : pi_(std::move(pi)), modules_(std::move(modules)), shapes_(block_shapes(modules_)) {
  weights_.assign(pi_.weyl_closure().begin(), pi_.weyl_closure().end());
  pi_.datum()->sort_weights(weights_);
}

std::shared_ptr<const SchurAlgebra> SchurAlgebra::build(const SaturatedSet& pi, ModuleCache& cache) {
  if (cache.datum() != pi.datum()) throw InvalidArgument("build_schur: module cache for another datum");
  std::vector<ModulePtr> mods;
  for (const auto& lam : pi.elements()) mods.push_back(cache.get(lam));
  return std::shared_ptr<const SchurAlgebra>(new SchurAlgebra(pi, std::move(mods)));
}

std::shared_ptr<const SchurAlgebra> SchurAlgebra::build(const SaturatedSet& pi) {
  ModuleCache cache(pi.datum());
  return build(pi, cache);
}

std::size_t SchurAlgebra::expected_dimension() const {
  std::size_t n = 0;
  for (const auto& m : modules_) n += m->dim() * m->dim();
  return n;
}

void SchurAlgebra::compute_basis() const {
  std::call_once(basis_once_, [this] {
    std::vector<BlockGenerator<RatFunc>> gens;
    const RootDatum& d = *datum();
    for (std::size_t i = 0; i < d.rank(); ++i) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        Weight shift = d.alpha(i);
        if (s == Sign::Minus) {
          for (auto& x : shift) x = -x;
        }
        gens.push_back({std::move(shift), generator(s, i)});
      }
    }
    PieceClosure<RatFunc> closure(shapes_, weights_, gens);
    std::vector<SchurElement> raw = closure.basis();
    if (raw.size() != expected_dimension()) {
      throw InternalError("algebra_dimension: span closure of S(" + pi_.key() + ") has rank " +
                          std::to_string(raw.size()) + ", expected " +
                          std::to_string(expected_dimension()));
    }
    // Pieces have disjoint supports, so sorting by pivot position yields an
    // echelon basis of the whole algebra.
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

std::size_t SchurAlgebra::dimension() const {
  compute_basis();
  return basis_.size();
}

const std::vector<SchurElement>& SchurAlgebra::basis() const {
  compute_basis();
  return basis_;
}

SchurElement SchurAlgebra::zero() const {
  SchurElement x;
  for (const auto& m : modules_) x.blocks.emplace_back(m->dim(), m->dim());
  return x;
}

SchurElement SchurAlgebra::identity() const {
  SchurElement x;
  for (const auto& m : modules_) x.blocks.push_back(RMatrix::identity(m->dim()));
  return x;
}

SchurElement SchurAlgebra::divided_power(Sign s, std::size_t i, int k) const {
  if (i >= datum()->rank()) throw InvalidArgument("divided_power: index out of range");
  if (k < 0) throw InvalidArgument("divided_power: negative exponent");
  SchurElement x;
  for (const auto& m : modules_) x.blocks.push_back(m->divided_power(s, i, k));
  return x;
}

SchurElement SchurAlgebra::one(const Weight& lambda) const {
  if (lambda.size() != datum()->rank_x()) throw InvalidArgument("one: weight of wrong rank");
  SchurElement x;
  for (const auto& m : modules_) x.blocks.push_back(m->weight_projector(lambda));
  return x;
}

SchurElement SchurAlgebra::k_element(const Coweight& h) const {
  if (h.size() != datum()->rank_y()) throw InvalidArgument("k_element: coweight of wrong rank");
  SchurElement x = zero();
  for (const auto& lam : weights_) {
    x += RatFunc::v(datum()->pair(h, lam)) * one(lam);
  }
  return x;
}

SchurElement SchurAlgebra::from_blocks(std::vector<RMatrix> blocks) const {
  if (blocks.size() != modules_.size()) throw InvalidArgument("from_blocks: wrong block count");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].rows() != modules_[b]->dim() || blocks[b].cols() != modules_[b]->dim()) {
      throw InvalidArgument("from_blocks: block " + std::to_string(b) + " has the wrong shape");
    }
  }
  return SchurElement{std::move(blocks)};
}

SchurElement SchurAlgebra::evaluate(const Expr& e) const {
  std::vector<std::size_t> dims;
  for (const auto& m : modules_) dims.push_back(m->dim());
  const RootDatum& d = *datum();
  auto letter = [&](std::size_t b, const Letter& l) -> RMatrix {
    const WeylModule& m = *modules_[b];
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
  return SchurElement{evaluate_blocks<RatFunc>(e, dims, letter, [](const RatFunc& c) { return c; })};
}

Report SchurAlgebra::verify_presentation() const {
  Report rep;
  for (const auto& name : {"(a)", "(b)", "(b')", "(c)", "(d)"}) rep.record(name, true);
  // S(pi) is block diagonal with every block weight inside W pi, so each
  // relation holds in S(pi) iff it holds on every block.
  for (const auto& m : modules_) {
    for (const auto& sp : m->spaces()) {
      if (!pi_.weyl_closure().count(sp.weight)) {
        rep.record("(a)", false,
                   "weight " + weight_str(sp.weight) + " of block " + weight_str(m->highest_weight()) +
                       " lies outside W pi");
      }
    }
    for (const auto& row : m->relation_checks()) rep.record(row.relation, row.pass, row.witness);
  }
  for (const auto& lam : weights_) {
    bool nonzero = std::any_of(modules_.begin(), modules_.end(),
                               [&](const ModulePtr& m) { return m->space(lam) != nullptr; });
    if (!nonzero) rep.record("(a)", false, "1_" + weight_str(lam) + " vanishes");
  }
  return rep;
}

std::string SchurAlgebra::describe(const SchurElement& x) const {
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

std::string SchurAlgebra::serialize() const {
  std::ostringstream os;
  os << "schur " << datum()->name() << "\n";
  os << "pi " << pi_.key() << "\n";
  os << "modules " << modules_.size() << "\n";
  for (const auto& m : modules_) {
    std::string text = m->serialize();
    os << "lines " << std::count(text.begin(), text.end(), '\n') << "\n" << text;
  }
  os << "basis " << basis().size() << "\n";
  for (const auto& x : basis_) {
    for (std::size_t b = 0; b < x.blocks.size(); ++b) os << (b ? " " : "") << matrix_text(x.blocks[b]);
    os << "\n";
  }
  return os.str();
}

std::shared_ptr<const SchurAlgebra> SchurAlgebra::deserialize(DatumPtr datum, const std::string& text) {
  std::istringstream is(text);
  std::string tag, name, key;
  is >> tag >> name;
  if (tag != "schur" || name != datum->name()) throw InvalidArgument("schur text: bad header");
  is >> tag >> key;
  if (tag != "pi") throw InvalidArgument("schur text: missing pi");
  std::vector<Weight> elems;
  std::size_t start = 0;
  while (start < key.size()) {
    std::size_t semi = key.find(';', start);
    std::string w = key.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    if (w.size() < 2 || w.front() != '(' || w.back() != ')') throw InvalidArgument("schur text: bad weight");
    Weight x;
    std::stringstream ws(w.substr(1, w.size() - 2));
    std::string tok;
    while (std::getline(ws, tok, ',')) x.push_back(std::stoi(tok));
    elems.push_back(std::move(x));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  SaturatedSet pi(datum, elems);
  std::size_t nmods = 0;
  is >> tag >> nmods;
  if (tag != "modules" || nmods != pi.size()) throw InvalidArgument("schur text: bad module count");
  std::vector<ModulePtr> mods;
  for (std::size_t k = 0; k < nmods; ++k) {
    std::size_t lines = 0;
    is >> tag >> lines;
    if (tag != "lines") throw InvalidArgument("schur text: expected module");
    std::string line, body;
    std::getline(is, line);
    for (std::size_t l = 0; l < lines; ++l) {
      if (!std::getline(is, line)) throw InvalidArgument("schur text: truncated module");
      body += line + "\n";
    }
    auto m = WeylModule::deserialize(datum, body);
    if (m->highest_weight() != pi.elements()[k]) throw InvalidArgument("schur text: module order");
    mods.push_back(std::move(m));
  }
  std::shared_ptr<SchurAlgebra> s(new SchurAlgebra(pi, std::move(mods)));
  std::size_t nbasis = 0;
  is >> tag >> nbasis;
  if (tag != "basis") throw InvalidArgument("schur text: missing basis");
  std::call_once(s->basis_once_, [&] {
    for (std::size_t k = 0; k < nbasis; ++k) {
      SchurElement x;
      for (std::size_t b = 0; b < s->modules_.size(); ++b) x.blocks.push_back(parse_matrix(is));
      s->from_blocks(x.blocks);
      s->basis_.push_back(std::move(x));
    }
  });
  if (!is) throw InvalidArgument("schur text: truncated basis");
  if (s->basis_.size() != s->expected_dimension()) throw InvalidArgument("schur text: basis size");
  return s;
}

bool operator==(const SchurAlgebra& a, const SchurAlgebra& b) {
  if (!(a.pi_ == b.pi_) || a.modules_.size() != b.modules_.size()) return false;
  for (std::size_t k = 0; k < a.modules_.size(); ++k) {
    if (a.modules_[k]->serialize() != b.modules_[k]->serialize()) return false;
  }
  return a.basis() == b.basis();
}

TruncationMap::TruncationMap(SchurPtr source, SchurPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_->datum() != target_->datum() &&
      source_->datum()->serialize() != target_->datum()->serialize()) {
    throw InvalidArgument("truncation_map: different root data");
  }
  if (!target_->pi().is_subset_of(source_->pi())) {
    throw InvalidArgument("truncation_map: {" + target_->pi().key() + "} is not contained in {" +
                          source_->pi().key() + "}");
  }
  const auto& src = source_->pi().elements();
  for (const auto& lam : target_->pi().elements()) {
    blocks_.push_back(static_cast<std::size_t>(std::find(src.begin(), src.end(), lam) - src.begin()));
  }
}

SchurElement TruncationMap::apply(const SchurElement& x) const {
  if (x.blocks.size() != source_->modules().size()) {
    throw InvalidArgument("truncation_map: element has the wrong block count");
  }
  SchurElement y;
  for (std::size_t b : blocks_) y.blocks.push_back(x.blocks[b]);
  return y;
}

namespace {

std::string rat_str(const RatFunc& r) { return r.str(); }

}  // namespace

Report TruncationMap::verify() const {
  Report rep;
  const RootDatum& d = *source_->datum();
  std::vector<std::pair<std::string, SchurElement>> gens;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      std::string name = (s == Sign::Plus ? "E" : "F") + std::to_string(i + 1);
      SchurElement img = apply(source_->generator(s, i));
      SchurElement want = target_->generator(s, i);
      rep.record("generators", img == want,
                 name + ": " + block_diff(img, want, target_->shapes(), rat_str));
      gens.emplace_back(name, source_->generator(s, i));
    }
  }
  rep.record("generators", true);
  for (const auto& lam : source_->weights()) {
    SchurElement img = apply(source_->one(lam));
    SchurElement want = target_->one(lam);
    rep.record("idempotents", img == want,
               "1_" + weight_str(lam) + ": " + block_diff(img, want, target_->shapes(), rat_str));
    gens.emplace_back("1_" + weight_str(lam), source_->one(lam));
  }
  rep.record("idempotents", true);
  std::vector<SchurElement> images;
  for (std::size_t k = 0; k < source_->basis().size(); ++k) {
    const SchurElement& b = source_->basis()[k];
    SchurElement fb = apply(b);
    for (const auto& [name, g] : gens) {
      SchurElement fg = apply(g);
      bool ok = apply(b * g) == fb * fg && apply(g * b) == fg * fb;
      rep.record("multiplicative", ok, "basis element " + std::to_string(k) + " with " + name);
    }
    images.push_back(std::move(fb));
  }
  rep.record("multiplicative", true);
  std::size_t r = block_rank(images);
  rep.record("surjective", r == target_->dimension(),
             "image rank " + std::to_string(r) + " vs dim " + std::to_string(target_->dimension()));
  return rep;
}

Report verify_chain(const SchurPtr& a, const SchurPtr& b, const SchurPtr& c) {
  Report rep;
  TruncationMap ab(b, a), bc(c, b), ac(c, a), aa(a, a);
  for (std::size_t k = 0; k < c->basis().size(); ++k) {
    const auto& x = c->basis()[k];
    SchurElement lhs = ab.apply(bc.apply(x));
    SchurElement rhs = ac.apply(x);
    rep.record("composition", lhs == rhs,
               "basis element " + std::to_string(k) + ": " + block_diff(lhs, rhs, a->shapes(), rat_str));
  }
  rep.record("composition", true);
  for (std::size_t k = 0; k < a->basis().size(); ++k) {
    const auto& x = a->basis()[k];
    rep.record("identity", aa.apply(x) == x, "basis element " + std::to_string(k));
  }
  rep.record("identity", true);
  return rep;
}

}  // namespace qhat
