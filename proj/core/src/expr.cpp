#include "qhat/expr.hpp"

#include <cctype>

#include "qhat/errors.hpp"

namespace qhat {

std::string Letter::str() const {
  auto tuple = [](const std::vector<int>& x) {
    std::string s = "(";
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(x[k]);
    }
    return s + ")";
  };
  switch (kind) {
    case Kind::E: {
      std::string s = (sign == Sign::Plus ? "E" : "F") + std::to_string(index + 1);
      if (power != 1) s += "^(" + std::to_string(power) + ")";
      return s;
    }
    case Kind::K:
      return "K" + tuple(vec);
    case Kind::One:
      return "1" + tuple(vec);
  }
  return "";
}

Expr::Expr(const RatFunc& c) { add_term({}, c); }

Expr::Expr(Letter l) { add_term({std::move(l)}, RatFunc(1)); }

Expr Expr::word(Word w, const RatFunc& c) {
  Expr e;
  e.add_term(w, c);
  return e;
}

void Expr::add_term(const Word& w, const RatFunc& c) {
  if (c.is_zero()) return;
  Word clean;
  for (const auto& l : w) {
    if (l.kind == Letter::Kind::E && l.power == 0) continue;
    if (l.kind == Letter::Kind::E && l.power < 0) {
      throw InvalidArgument("Expr: negative divided power in " + l.str());
    }
    clean.push_back(l);
  }
  auto it = terms_.find(clean);
  if (it == terms_.end()) {
    terms_.emplace(std::move(clean), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool Expr::is_u() const {
  for (const auto& [w, c] : terms_) {
    for (const auto& l : w) {
      if (l.kind == Letter::Kind::One) return false;
    }
  }
  return true;
}

bool Expr::is_udot() const {
  for (const auto& [w, c] : terms_) {
    bool found = false;
    for (const auto& l : w) found = found || l.kind == Letter::Kind::One;
    if (!found) return false;
  }
  return true;
}

Expr& Expr::operator+=(const Expr& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

Expr& Expr::operator*=(const RatFunc& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

std::string Expr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    RatFunc mag = c;
    bool neg = false;
    if (c.is_laurent() && c.num().low() == 0 && c.num().high() == 0) {
      neg = c.num().leading() < 0;
      if (neg) mag = -c;
    }
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string coef;
    if (mag.is_laurent() && mag.num().low() == 0 && mag.num().high() == 0) {
      if (!mag.is_one() || w.empty()) coef = mag.num().leading().get_str();
    } else {
      coef = "{" + mag.serialize() + "}";
    }
    out += coef;
    if (!coef.empty() && !w.empty()) out += "*";
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k) out += " ";
      out += w[k].str();
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const RootDatum& d) : s_(text), d_(d) {}

  Expr parse() {
    skip();
    if (done()) fail("empty expression");
    Expr out;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    for (;;) {
      Expr t = term();
      if (neg) {
        out -= t;
      } else {
        out += t;
      }
      skip();
      if (done()) break;
      if (peek() == '+') {
        neg = false;
      } else if (peek() == '-') {
        neg = true;
      } else {
        fail(std::string("unexpected '") + peek() + "'");
      }
      ++pos_;
    }
    return out;
  }

 private:
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("parse_expr: " + what + " at column " + std::to_string(pos_ + 1));
  }

  long integer() {
    std::size_t start = pos_;
    if (!done() && (peek() == '-' || peek() == '+')) ++pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string tok = s_.substr(start, pos_ - start);
    if (tok.empty() || tok == "-" || tok == "+") {
      pos_ = start;
      fail("expected an integer");
    }
    try {
      return std::stol(tok);
    } catch (const std::exception&) {
      pos_ = start;
      fail("integer out of range");
    }
  }

  void expect(char c) {
    skip();
    if (done() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::vector<int> tuple(std::size_t rank) {
    expect('(');
    std::vector<int> out;
    skip();
    if (!done() && peek() == ')') {
      ++pos_;
    } else {
      for (;;) {
        skip();
        out.push_back(static_cast<int>(integer()));
        skip();
        if (!done() && peek() == ',') {
          ++pos_;
          continue;
        }
        expect(')');
        break;
      }
    }
    if (out.size() != rank) {
      fail("tuple of length " + std::to_string(out.size()) + ", expected " + std::to_string(rank));
    }
    return out;
  }

  bool at_letter() const {
    if (done()) return false;
    char c = peek();
    if (c == 'E' || c == 'F' || c == 'K') return true;
    if (c == '1') {
      std::size_t k = pos_ + 1;
      while (k < s_.size() && std::isspace(static_cast<unsigned char>(s_[k]))) ++k;
      return k < s_.size() && s_[k] == '(';
    }
    return false;
  }

  Letter letter() {
    char c = peek();
    if (c == 'K') {
      ++pos_;
      return Letter::k(tuple(d_.rank_y()));
    }
    if (c == '1') {
      ++pos_;
      return Letter::one(tuple(d_.rank_x()));
    }
    ++pos_;
    std::size_t at = pos_;
    long i = integer();
    if (i < 1 || static_cast<std::size_t>(i) > d_.rank()) {
      pos_ = at;
      fail("index " + std::to_string(i) + " out of range 1.." + std::to_string(d_.rank()));
    }
    int k = 1;
    if (!done() && peek() == '^') {
      ++pos_;
      expect('(');
      skip();
      k = static_cast<int>(integer());
      if (k < 0) fail("negative divided power");
      expect(')');
    }
    return Letter::e(c == 'E' ? Sign::Plus : Sign::Minus, static_cast<std::size_t>(i - 1), k);
  }

  RatFunc coefficient() {
    if (peek() == '{') {
      std::size_t close = s_.find('}', pos_);
      if (close == std::string::npos) fail("unterminated '{'");
      std::string body = s_.substr(pos_ + 1, close - pos_ - 1);
      RatFunc r;
      try {
        r = RatFunc::deserialize(body);
      } catch (const InvalidArgument& e) {
        fail(std::string("bad rational function: ") + e.what());
      }
      pos_ = close + 1;
      return r;
    }
    if (peek() == 'v') {
      ++pos_;
      int e = 1;
      if (!done() && peek() == '^') {
        ++pos_;
        e = static_cast<int>(integer());
      }
      return RatFunc::v(e);
    }
    long num = integer();
    skip();
    if (!done() && peek() == '/') {
      ++pos_;
      skip();
      std::size_t at = pos_;
      long den = integer();
      if (den == 0) {
        pos_ = at;
        fail("zero denominator");
      }
      return RatFunc(LaurentPoly(num), LaurentPoly(den));
    }
    return RatFunc(num);
  }

  Expr term() {
    skip();
    if (done()) fail("expected a term");
    RatFunc c(1);
    bool any = false;
    if (!at_letter() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '{' ||
                         peek() == 'v')) {
      c = coefficient();
      any = true;
      skip();
      if (!done() && peek() == '*') {
        ++pos_;
        skip();
        if (!at_letter()) fail("expected a letter after '*'");
      }
    }
    Word w;
    while (!done() && at_letter()) {
      w.push_back(letter());
      skip();
    }
    if (!any && w.empty()) fail("expected a term");
    return Expr::word(std::move(w), c);
  }

  const std::string& s_;
  const RootDatum& d_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text, const RootDatum& datum) {
  return Parser(text, datum).parse();
}

}  // namespace qhat
