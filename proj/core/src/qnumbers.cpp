#include "qhat/qnumbers.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "qhat/errors.hpp"
#include "qhat/ratfunc.hpp"

namespace qhat {

LaurentPoly qint(int n, int d) {
  if (d <= 0) throw InvalidArgument("qint: d must be positive");
  if (n == 0) return {};
  int m = n < 0 ? -n : n;
  // [m] = v^(m-1) + v^(m-3) + ... + v^-(m-1)
  std::vector<mpz_class> c(static_cast<std::size_t>(2 * (m - 1) + 1), 0);
  for (int k = 0; k < m; ++k) c[static_cast<std::size_t>(2 * k)] = 1;
  LaurentPoly p = LaurentPoly::from_coefficients(-(m - 1), std::move(c)).dilated(d);
  return n < 0 ? -p : p;
}

LaurentPoly qfact(int n, int d) {
  if (n < 0) throw InvalidArgument("qfact: n must be nonnegative");
  LaurentPoly p = 1;
  for (int k = 1; k <= n; ++k) p *= qint(k, d);
  return p;
}

LaurentPoly qbinom(int a, int t, int d) {
  if (t < 0) throw InvalidArgument("qbinom: t must be nonnegative");
  if (d <= 0) throw InvalidArgument("qbinom: d must be positive");
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, LaurentPoly> memo;
  {
    std::lock_guard lock(mu);
    auto it = memo.find({a, t, d});
    if (it != memo.end()) return it->second;
  }
  // prod_{s=1}^t (v^(a-s+1) - v^-(a-s+1)) / (v^s - v^-s)
  LaurentPoly num = 1, den = 1;
  for (int s = 1; s <= t; ++s) {
    num *= LaurentPoly::v(a - s + 1) - LaurentPoly::v(-(a - s + 1));
    den *= LaurentPoly::v(s) - LaurentPoly::v(-s);
  }
  auto reduced = is_integral(RatFunc(num, den));
  if (!reduced) throw InternalError("qbinom: product formula left Z[v,v^-1]");
  LaurentPoly out = reduced->dilated(d);
  std::lock_guard lock(mu);
  memo.emplace(std::tuple{a, t, d}, out);
  return out;
}

}  // namespace qhat
