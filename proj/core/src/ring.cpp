#include "qhat/ring.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "qhat/errors.hpp"

namespace qhat {

namespace detail {

struct RingData {
  RingPoint::Kind kind;
  int order = 1;
  mpq_class xi;
  std::vector<mpq_class> modulus;  // monic, lowest degree first
};

}  // namespace detail

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

// Division with remainder by a nonzero divisor.
void divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const mpq_class& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    mpq_class f = a.back() / lb;
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    a.pop_back();
    trim(a);
  }
  trim(q);
  r = std::move(a);
}

QPoly mod(const QPoly& a, const QPoly& m) {
  QPoly q, r;
  divmod(a, m, q, r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

QPoly gcd_monic(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpq_class lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

std::string poly_str(const QPoly& p, char var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.size(); k-- > 0;) {
    const mpq_class& c = p[k];
    if (c == 0) continue;
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str();
    os << var;
    if (k != 1) os << '^' << k;
  }
  return os.str();
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(int n) {
  if (n < 1) throw InvalidArgument("cyclotomic_polynomial: order must be >= 1");
  static std::mutex mu;
  static std::map<int, std::vector<mpz_class>> memo;
  {
    std::lock_guard lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
  }
  ZPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = zpoly::exact_div(p, cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mu);
  memo.emplace(n, p);
  return p;
}

RingPoint RingPoint::rational(const mpq_class& xi) {
  if (xi == 0) throw InvalidArgument("RingPoint::rational: xi must be invertible");
  auto d = std::make_shared<detail::RingData>();
  d->kind = Kind::Rational;
  d->xi = xi;
  d->modulus = {-xi, 1};
  return RingPoint(std::move(d));
}

RingPoint RingPoint::cyclotomic(int n) {
  if (n < 1) throw InvalidArgument("RingPoint::cyclotomic: order must be >= 1");
  auto d = std::make_shared<detail::RingData>();
  d->kind = Kind::Cyclotomic;
  d->order = n;
  for (const auto& c : cyclotomic_polynomial(n)) d->modulus.emplace_back(c);
  return RingPoint(std::move(d));
}

RingPoint::Kind RingPoint::kind() const { return data_->kind; }
int RingPoint::order() const { return data_->order; }
const mpq_class& RingPoint::rational_xi() const { return data_->xi; }
const std::vector<mpq_class>& RingPoint::modulus() const { return data_->modulus; }

RingElem RingPoint::xi() const {
  RingElem e(data_, {0, 1});
  e.reduce();
  return e;
}

RingElem RingPoint::zero() const { return RingElem(data_, {}); }
RingElem RingPoint::one() const { return constant(1); }
RingElem RingPoint::constant(const mpq_class& c) const {
  return c == 0 ? zero() : RingElem(data_, {c});
}

std::string RingPoint::describe() const {
  if (data_->kind == Kind::Rational) return "rational xi=" + data_->xi.get_str();
  return "cyclotomic " + std::to_string(data_->order);
}

bool operator==(const RingPoint& a, const RingPoint& b) {
  return a.data_->kind == b.data_->kind && a.data_->order == b.data_->order &&
         a.data_->xi == b.data_->xi;
}

RingElem::RingElem(long c) {
  if (c != 0) c_.emplace_back(c);
}

RingElem::RingElem(const mpq_class& c) {
  if (c != 0) c_.push_back(c);
}

RingElem::RingElem(std::shared_ptr<const detail::RingData> ring, std::vector<mpq_class> c)
    : ring_(std::move(ring)), c_(std::move(c)) {
  trim(c_);
}

bool RingElem::is_one() const { return c_.size() == 1 && c_[0] == 1; }

void RingElem::adopt(const RingElem& o) {
  if (!o.ring_) return;
  if (!ring_) {
    ring_ = o.ring_;
    return;
  }
  if (ring_ != o.ring_ && !(ring_->kind == o.ring_->kind && ring_->order == o.ring_->order &&
                            ring_->xi == o.ring_->xi)) {
    throw InvalidArgument("RingElem: operands belong to different rings");
  }
}

void RingElem::reduce() {
  trim(c_);
  if (ring_ && c_.size() >= ring_->modulus.size()) c_ = mod(c_, ring_->modulus);
}

RingElem& RingElem::operator+=(const RingElem& o) {
  adopt(o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim(c_);
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) { return *this += -o; }

RingElem& RingElem::operator*=(const RingElem& o) {
  adopt(o);
  c_ = mul(c_, o.c_);
  reduce();
  return *this;
}

RingElem RingElem::inverse() const {
  if (is_zero()) throw InvalidArgument("RingElem::inverse: zero is not invertible");
  if (!ring_ || c_.size() == 1) {
    RingElem r = *this;
    r.c_ = {1 / c_[0]};
    return r;
  }
  // Extended Euclid against the (irreducible) modulus.
  QPoly r0 = ring_->modulus, r1 = c_;
  QPoly s0, s1 = {1};
  while (!r1.empty()) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    QPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw InternalError("RingElem::inverse: element is a zero divisor");
  for (auto& c : s0) c /= r0[0];
  RingElem out(ring_, std::move(s0));
  out.reduce();
  return out;
}

RingElem& RingElem::operator/=(const RingElem& o) { return *this *= o.inverse(); }

RingElem RingElem::operator-() const {
  RingElem r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

std::string RingElem::str() const {
  if (c_.size() <= 1) return c_.empty() ? "0" : c_[0].get_str();
  return poly_str(c_, 'z');
}

RingElem evaluate(const LaurentPoly& f, const RingPoint& p) {
  RingElem acc = p.zero();
  if (f.is_zero()) return acc;
  RingElem z = p.xi();
  const auto& c = f.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc *= z;
    acc += p.constant(mpq_class(c[k]));
  }
  int low = f.low();
  if (low != 0) {
    RingElem base = low > 0 ? z : z.inverse();
    for (int k = 0; k < std::abs(low); ++k) acc *= base;
  }
  return acc;
}

RingElem evaluate(const RatFunc& f, const RingPoint& p) {
  RingElem n = evaluate(f.num(), p);
  if (f.is_laurent()) return n;
  RingElem d = evaluate(f.den(), p);
  if (d.is_zero()) {
    QPoly den;
    for (const auto& c : f.den().coefficients()) den.emplace_back(c);
    std::string factor = poly_str(gcd_monic(den, p.modulus()), 'v');
    throw PoleError(factor, "pole: denominator factor " + factor + " of " + f.str() +
                                " vanishes at " + p.describe());
  }
  return n / d;
}

}  // namespace qhat
