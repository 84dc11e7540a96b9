#include "flagalg/location.hpp"

#include <stdexcept>

namespace flagalg {

Location Location::from_string(const std::string& bits) {
  Location loc(static_cast<int>(bits.size()), 0);
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      loc.mask |= 1u << i;
    else if (bits[i] != '0')
      throw std::invalid_argument("Location: bits must be 0/1");
  }
  return loc;
}

std::vector<int> Location::S_set() const {
  std::vector<int> s;
  for (int m = 1; m <= n; ++m)
    if (get(m) == 0) s.push_back(m);
  return s;
}

std::vector<int> Location::T_set() const {
  std::vector<int> t;
  for (int m = 1; m <= n; ++m)
    if (get(m) == 1) t.push_back(m);
  return t;
}

std::string Location::to_string() const {
  std::string s(n, '0');
  for (int m = 1; m <= n; ++m)
    if (get(m)) s[m - 1] = '1';
  return s;
}

bool location_leq(const Location& a, const Location& b) {
  return a.n == b.n && (a.mask & ~b.mask) == 0;
}

std::vector<Location> all_locations(int n) {
  std::vector<Location> out;
  out.reserve(1u << n);
  for (unsigned lex = 0; lex < (1u << n); ++lex) {
    Location loc(n, 0);
    for (int m = 1; m <= n; ++m)
      if ((lex >> (n - m)) & 1u) loc.mask |= 1u << (m - 1);
    out.push_back(loc);
  }
  return out;
}

std::vector<int> mask_to_set(unsigned mask) {
  std::vector<int> s;
  for (int m = 1; mask; ++m, mask >>= 1)
    if (mask & 1u) s.push_back(m);
  return s;
}

unsigned set_to_mask(const std::vector<int>& s) {
  unsigned m = 0;
  for (int x : s) m |= 1u << (x - 1);
  return m;
}

std::string set_mask_str(unsigned mask) {
  std::string s = "{";
  bool first = true;
  for (int m : mask_to_set(mask)) {
    if (!first) s += ",";
    s += std::to_string(m);
    first = false;
  }
  return s + "}";
}

}  // namespace flagalg
