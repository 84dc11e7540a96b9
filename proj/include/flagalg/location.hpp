#pragma once

#include <string>
#include <vector>

namespace flagalg {

// A point mu of the N-cube {0,1}^N; bit (m-1) of mask holds mu_m.
struct Location {
  int n = 0;
  unsigned mask = 0;

  Location() = default;
  Location(int n_, unsigned mask_) : n(n_), mask(mask_) {}
  static Location from_string(const std::string& bits);
  static Location all_ones(int n) { return Location(n, (1u << n) - 1); }
  static Location all_zeros(int n) { return Location(n, 0); }

  int get(int m) const { return (mask >> (m - 1)) & 1u; }  // 1-based
  int weight() const { return __builtin_popcount(mask); }
  bool is_zero() const { return mask == 0; }
  bool is_one() const { return mask == (1u << n) - 1; }

  // mu_1 is the most significant digit in lexicographic order.
  unsigned lex_rank() const {
    unsigned r = 0;
    for (int m = 1; m <= n; ++m) r = (r << 1) | get(m);
    return r;
  }

  bool can_lower(int m) const { return get(m) == 1; }
  bool can_raise(int m) const { return get(m) == 0; }
  Location lowered(int m) const { return Location(n, mask & ~(1u << (m - 1))); }
  Location raised(int m) const { return Location(n, mask | (1u << (m - 1))); }

  std::vector<int> S_set() const;  // indices with mu_m == 0, ascending
  std::vector<int> T_set() const;  // indices with mu_m == 1, ascending

  std::string to_string() const;

  friend bool operator==(const Location& a, const Location& b) {
    return a.n == b.n && a.mask == b.mask;
  }
  friend bool operator!=(const Location& a, const Location& b) { return !(a == b); }
};

// Coordinate-wise partial order of the N-cube.
bool location_leq(const Location& a, const Location& b);

// All 2^N locations in lexicographic order of (mu_1, ..., mu_N).
std::vector<Location> all_locations(int n);

std::vector<int> mask_to_set(unsigned mask);  // ascending 1-based members
unsigned set_to_mask(const std::vector<int>& s);
std::string set_mask_str(unsigned mask);  // "{1,3}"

}  // namespace flagalg
