#include "flagalg/rational.hpp"

#include <stdexcept>

namespace flagalg {

Rational pow_rational(const Rational& x, long k) {
  if (k == 0) return Rational(1);
  if (x == 0) {
    if (k < 0) throw std::invalid_argument("pow_rational: 0 to a negative power");
    return Rational(0);
  }
  unsigned long e = k > 0 ? static_cast<unsigned long>(k) : static_cast<unsigned long>(-k);
  Integer num = pow_integer(Integer(x.get_num()), e);
  Integer den = pow_integer(Integer(x.get_den()), e);
  Rational r;
  if (k > 0)
    r = Rational(num, den);
  else
    r = Rational(den, num);
  r.canonicalize();
  return r;
}

std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::string body = s;
  // mpq_class(str) accepts "n/d" but aborts on malformed input, so validate.
  size_t i = 0;
  if (body[i] == '+' || body[i] == '-') ++i;
  bool digits = false, slash = false, digits_after = false;
  for (; i < body.size(); ++i) {
    char ch = body[i];
    if (ch == '/') {
      if (slash || !digits) return std::nullopt;
      slash = true;
      if (i + 1 < body.size() && (body[i + 1] == '+' || body[i + 1] == '-')) return std::nullopt;
      continue;
    }
    if (ch < '0' || ch > '9') return std::nullopt;
    if (slash)
      digits_after = true;
    else
      digits = true;
  }
  if (!digits || (slash && !digits_after)) return std::nullopt;
  Rational r(body, 10);
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const Integer& x) { return x.get_str(); }

}  // namespace flagalg
