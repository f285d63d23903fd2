#include "cix/arith.hpp"

#include <cctype>

namespace cix {

Rat parse_rat(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw Error("parse", "empty rational");
  auto slash = t.find('/');
  auto ok = [](const std::string& x, bool sign) {
    if (x.empty()) return false;
    std::size_t i = (sign && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
    return true;
  };
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!ok(num, true) || !ok(den, false)) throw Error("parse", "bad rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Int n(num), d(den);
  if (d == 0) throw Error("parse", "zero denominator in '" + s + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Int& z) { return z.get_str(); }

Rat mod_one(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  Rat out = r - Rat(q);
  out.canonicalize();
  return out;
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

Int factorial(long n) {
  Int f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace cix
