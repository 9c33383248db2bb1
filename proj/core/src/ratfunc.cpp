#include "qhat/ratfunc.hpp"

#include "qhat/errors.hpp"

namespace qhat {

namespace {

bool is_one_poly(const ZPoly& p) { return p.size() == 1 && p[0] == 1; }

LaurentPoly div_exact(const LaurentPoly& p, const ZPoly& g) {
  if (is_one_poly(g)) return p;
  return LaurentPoly::from_coefficients(p.low(), zpoly::exact_div(p.stripped(), g));
}

}  // namespace

RatFunc::RatFunc(const LaurentPoly& n, const LaurentPoly& d) {
  if (d.is_zero()) throw InvalidArgument("RatFunc: zero denominator");
  if (n.is_zero()) return;
  ZPoly N = n.stripped();
  ZPoly D = d.stripped();
  int shift = n.low() - d.low();
  if (D.size() > 1 || D[0] != 1) {
    ZPoly g = zpoly::gcd(N, D);
    if (!is_one_poly(g)) {
      N = zpoly::exact_div(N, g);
      D = zpoly::exact_div(D, g);
    }
  }
  if (D.back() < 0) {
    for (auto& c : N) c = -c;
    for (auto& c : D) c = -c;
  }
  num_ = LaurentPoly::from_coefficients(shift, std::move(N));
  den_ = LaurentPoly::from_coefficients(0, std::move(D));
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw InvalidArgument("RatFunc::inverse: zero has no inverse");
  ZPoly D = num_.stripped();
  LaurentPoly n = den_.shifted(-num_.low());
  if (D.back() < 0) {
    for (auto& c : D) c = -c;
    n = -n;
  }
  return RatFunc(Raw{}, std::move(n), LaurentPoly::from_coefficients(0, std::move(D)));
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    if (num_.is_zero()) den_ = 1;
    return *this;
  }
  if (den_.is_one()) {
    LaurentPoly n = num_ * o.den_ + o.num_;
    if (n.is_zero()) return *this = RatFunc();
    num_ = std::move(n);
    den_ = o.den_;
    return *this;
  }
  if (den_ == o.den_) return *this = RatFunc(num_ + o.num_, den_);
  ZPoly g = zpoly::gcd(den_.stripped(), o.den_.stripped());
  LaurentPoly b = div_exact(den_, g);
  LaurentPoly d = div_exact(o.den_, g);
  return *this = RatFunc(num_ * d + o.num_ * b, den_ * d);
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_);
  ZPoly g1 = b.den_.is_one() ? ZPoly{1} : zpoly::gcd(a.num_.stripped(), b.den_.stripped());
  ZPoly g2 = a.den_.is_one() ? ZPoly{1} : zpoly::gcd(b.num_.stripped(), a.den_.stripped());
  LaurentPoly n = div_exact(a.num_, g1) * div_exact(b.num_, g2);
  LaurentPoly d = div_exact(a.den_, g2) * div_exact(b.den_, g1);
  return RatFunc(RatFunc::Raw{}, std::move(n), std::move(d));
}

RatFunc& RatFunc::operator*=(const RatFunc& o) { return *this = *this * o; }

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this = *this * o.inverse(); }

RatFunc RatFunc::operator-() const { return RatFunc(Raw{}, -num_, den_); }

std::string RatFunc::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::string RatFunc::serialize() const {
  if (den_.is_one()) return num_.serialize();
  return num_.serialize() + "/" + den_.serialize();
}

RatFunc RatFunc::deserialize(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return RatFunc(LaurentPoly::deserialize(text));
  RatFunc r(LaurentPoly::deserialize(text.substr(0, slash)),
            LaurentPoly::deserialize(text.substr(slash + 1)));
  if (r.serialize() != text) {
    throw InvalidArgument("RatFunc::deserialize: non-canonical input '" + std::string(text) + "'");
  }
  return r;
}

std::optional<LaurentPoly> is_integral(const RatFunc& f) {
  if (f.is_laurent()) return f.num();
  return std::nullopt;
}

}  // namespace qhat
