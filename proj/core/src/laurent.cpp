#include "qhat/laurent.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>

#include "qhat/errors.hpp"

namespace qhat {

namespace zpoly {

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class content(const ZPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly primitive_part(const ZPoly& p) {
  ZPoly out = p;
  trim(out);
  if (out.empty()) return out;
  mpz_class g = content(out);
  if (out.back() < 0) g = -g;
  if (g != 1) {
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  trim(out);
  return out;
}

ZPoly exact_div(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw InternalError("zpoly::exact_div: division by zero");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw InternalError("zpoly::exact_div: inexact division");
  ZPoly r = a;
  ZPoly q(a.size() - b.size() + 1, 0);
  const mpz_class& lb = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    mpz_class& top = r[k + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) {
      throw InternalError("zpoly::exact_div: inexact division");
    }
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  trim(r);
  if (!r.empty()) throw InternalError("zpoly::exact_div: inexact division");
  trim(q);
  return q;
}

namespace {

// lc(b)^k * a mod b, computed one leading term at a time.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  const mpz_class& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    mpz_class lead = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_submul(a[shift + j].get_mpz_t(), lead.get_mpz_t(), b[j].get_mpz_t());
    }
    trim(a);
    // Keep coefficients small between steps.
    if (!a.empty()) {
      mpz_class g = content(a);
      if (g > 1) {
        for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
      }
    }
  }
  return a;
}

}  // namespace

ZPoly gcd(const ZPoly& a0, const ZPoly& b0) {
  ZPoly a = a0, b = b0;
  trim(a);
  trim(b);
  if (a.empty()) std::swap(a, b);
  if (b.empty()) {
    if (a.empty()) return {};
    if (a.back() < 0) for (auto& c : a) c = -c;
    return a;
  }
  mpz_class g;
  {
    mpz_class ca = content(a), cb = content(b);
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  }
  ZPoly A = primitive_part(a), B = primitive_part(b);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    if (B.size() == 1) {
      A = ZPoly{1};
      break;
    }
    ZPoly R = pseudo_rem(A, B);
    A = std::move(B);
    B = primitive_part(R);
  }
  A = primitive_part(A);
  for (auto& c : A) c *= g;
  return A;
}

}  // namespace zpoly

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

LaurentPoly::LaurentPoly(const mpz_class& c) {
  if (c != 0) c_.push_back(c);
}

LaurentPoly LaurentPoly::monomial(const mpz_class& c, int exponent) {
  LaurentPoly p;
  if (c != 0) {
    p.low_ = exponent;
    p.c_.push_back(c);
  }
  return p;
}

LaurentPoly LaurentPoly::from_coefficients(int low, std::vector<mpz_class> c) {
  LaurentPoly p;
  p.low_ = low;
  p.c_ = std::move(c);
  p.canonicalize();
  return p;
}

void LaurentPoly::canonicalize() {
  zpoly::trim(c_);
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    low_ = 0;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
}

bool LaurentPoly::is_one() const { return low_ == 0 && c_.size() == 1 && c_[0] == 1; }

bool LaurentPoly::is_unit() const {
  return c_.size() == 1 && (c_[0] == 1 || c_[0] == -1);
}

mpz_class LaurentPoly::coefficient(int exponent) const {
  if (c_.empty() || exponent < low_ || exponent > high()) return 0;
  return c_[static_cast<std::size_t>(exponent - low_)];
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly p = *this;
  if (!p.c_.empty()) p.low_ += k;
  return p;
}

LaurentPoly LaurentPoly::dilated(int d) const {
  if (d <= 0) throw InvalidArgument("LaurentPoly::dilated: exponent scale must be positive");
  if (d == 1 || c_.empty()) return *this;
  LaurentPoly p;
  p.low_ = low_ * d;
  p.c_.assign((c_.size() - 1) * static_cast<std::size_t>(d) + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) p.c_[i * static_cast<std::size_t>(d)] = c_[i];
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  int lo = std::min(low_, o.low_);
  int hi = std::max(high(), o.high());
  if (lo < low_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(low_ - lo), mpz_class(0));
    low_ = lo;
  }
  c_.resize(static_cast<std::size_t>(hi - lo + 1), 0);
  for (std::size_t j = 0; j < o.c_.size(); ++j) {
    c_[static_cast<std::size_t>(o.low_ - lo) + j] += o.c_[j];
  }
  canonicalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  LaurentPoly p;
  p.low_ = a.low_ + b.low_;
  p.c_ = zpoly::mul(a.c_, b.c_);
  return p;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int e = high(); e >= low_; --e) {
    const mpz_class& c = c_[static_cast<std::size_t>(e - low_)];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str();
    os << 'v';
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

std::string LaurentPoly::serialize() const {
  if (c_.empty()) return "0";
  std::string out = std::to_string(low_) + ":";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += c_[i].get_str();
  }
  return out;
}

LaurentPoly LaurentPoly::deserialize(std::string_view text) {
  if (text == "0") return {};
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("LaurentPoly::deserialize: missing ':' in '" + std::string(text) + "'");
  }
  int low = 0;
  auto head = text.substr(0, colon);
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), low);
  if (ec != std::errc() || ptr != head.data() + head.size()) {
    throw InvalidArgument("LaurentPoly::deserialize: bad exponent in '" + std::string(text) + "'");
  }
  std::vector<mpz_class> c;
  auto rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto tok = rest.substr(0, comma);
    mpz_class z;
    if (z.set_str(std::string(tok), 10) != 0) {
      throw InvalidArgument("LaurentPoly::deserialize: bad coefficient '" + std::string(tok) + "'");
    }
    c.push_back(z);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  LaurentPoly p = from_coefficients(low, std::move(c));
  if (p.serialize() != text) {
    throw InvalidArgument("LaurentPoly::deserialize: non-canonical input '" + std::string(text) + "'");
  }
  return p;
}

std::size_t LaurentPoly::hash() const {
  std::size_t h = std::hash<int>{}(low_);
  for (const auto& c : c_) {
    h ^= std::hash<long>{}(mpz_get_si(c.get_mpz_t())) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace qhat
