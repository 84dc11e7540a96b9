#include "flagalg/combin.hpp"

#include <algorithm>
#include <stdexcept>

namespace flagalg {

bool FerrersBoard::has_cell(int s, int t) const {
  return std::find(cells.begin(), cells.end(), Cell{s, t}) != cells.end();
}

std::vector<int> RookPlacement::pi1() const {
  std::vector<int> r;
  for (const auto& c : cells) r.push_back(c.first);
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<int> RookPlacement::pi2() const {
  std::vector<int> r;
  for (const auto& c : cells) r.push_back(c.second);
  std::sort(r.begin(), r.end());
  return r;
}

FerrersBoard board(const Location& mu) {
  FerrersBoard b;
  b.mu = mu;
  b.S = mu.S_set();
  b.T = mu.T_set();
  for (int s : b.S)
    for (int t : b.T)
      if (s < t) b.cells.push_back({s, t});
  return b;
}

std::vector<int> S_upto(const Location& mu, int m) {
  std::vector<int> r;
  for (int s = 1; s <= std::min(m, mu.n); ++s)
    if (mu.get(s) == 0) r.push_back(s);
  return r;
}

std::vector<int> T_from(const Location& mu, int m) {
  std::vector<int> r;
  for (int t = std::max(1, m); t <= mu.n; ++t)
    if (mu.get(t) == 1) r.push_back(t);
  return r;
}

std::vector<Cell> rectangle(const FerrersBoard& b, int s0, int t0) {
  if (!b.has_cell(s0, t0)) throw std::invalid_argument("rectangle: cell outside board");
  std::vector<Cell> out;
  for (int s : S_upto(b.mu, s0))
    for (int t : T_from(b.mu, t0)) out.push_back({s, t});
  return out;
}

bool admissible_type(const Location& mu, unsigned lambda) {
  std::vector<int> a, b;
  for (int m : mask_to_set(lambda)) {
    if (m > mu.n) return false;
    (mu.get(m) == 0 ? a : b).push_back(m);
  }
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] >= b[i]) return false;
  return true;
}

bool column_full(const Location& mu, unsigned lambda) {
  return (set_to_mask(mu.T_set()) & ~lambda) == 0;
}

bool row_full(const Location& mu, unsigned lambda) {
  return (set_to_mask(mu.S_set()) & ~lambda) == 0;
}

std::vector<RookPlacement> enumerate_placements(const FerrersBoard& b, unsigned lambda) {
  if (!admissible_type(b.mu, lambda)) throw std::invalid_argument("enumerate_placements: inadmissible type");
  std::vector<int> rows, cols;
  for (int m : mask_to_set(lambda)) (b.mu.get(m) == 0 ? rows : cols).push_back(m);
  size_t n = rows.size();
  std::vector<RookPlacement> out;
  if (n == 0) {
    out.push_back(RookPlacement{});
    return out;
  }
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (size_t i = 0; i < n; ++i)
      if (rows[i] >= cols[perm[i]]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    RookPlacement sigma;
    for (size_t i = 0; i < n; ++i) sigma.cells.push_back({rows[i], cols[perm[i]]});
    std::sort(sigma.cells.begin(), sigma.cells.end());
    out.push_back(std::move(sigma));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

long local_inversion(const RookPlacement& sigma, int s, int t) {
  if (std::find(sigma.cells.begin(), sigma.cells.end(), Cell{s, t}) == sigma.cells.end())
    throw std::invalid_argument("local_inversion: cell not in placement");
  long c = 0;
  for (const auto& cell : sigma.cells)
    if (cell.first < s && cell.second > t) ++c;
  return c;
}

long inversion(const RookPlacement& sigma) {
  long total = 0;
  for (const auto& cell : sigma.cells) total += local_inversion(sigma, cell.first, cell.second);
  return total;
}

RookPlacement sigma_of_matrix(const FqMatrix& M, const Location& mu) {
  FerrersBoard b = board(mu);
  if (M.nrows != static_cast<int>(b.S.size()) || M.ncols != static_cast<int>(b.T.size()))
    throw std::invalid_argument("sigma_of_matrix: shape mismatch");
  for (int i = 0; i < M.nrows; ++i)
    for (int j = 0; j < M.ncols; ++j)
      if (M.at(i, j) != 0 && b.S[i] >= b.T[j])
        throw std::invalid_argument("sigma_of_matrix: support outside B_mu");

  auto rect_rank = [&](int s, int t) -> long {
    // rank of the S_mu(s) x T_mu(t) submatrix
    std::vector<int> rows = S_upto(mu, s), cols = T_from(mu, t);
    if (rows.empty() || cols.empty()) return 0;
    FqMatrix sub(*M.F, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) {
        int ri = static_cast<int>(std::lower_bound(b.S.begin(), b.S.end(), rows[i]) - b.S.begin());
        int cj = static_cast<int>(std::lower_bound(b.T.begin(), b.T.end(), cols[j]) - b.T.begin());
        sub.at(static_cast<int>(i), static_cast<int>(j)) = M.at(ri, cj);
      }
    return rank(sub);
  };

  RookPlacement sigma;
  for (const auto& [s, t] : b.cells) {
    long r = rect_rank(s, t);
    // s^-: next smaller element of S_mu (0 if none); t^+: next larger of T_mu.
    int sm = 0;
    for (int v : b.S)
      if (v < s) sm = v;
    int tp = 0;
    for (int j = static_cast<int>(b.T.size()) - 1; j >= 0; --j)
      if (b.T[j] > t) tp = b.T[j];
    long rminus = (sm != 0) ? rect_rank(sm, t) : 0;
    long rplus = (tp != 0) ? rect_rank(s, tp) : 0;
    long rmp = (sm != 0 && tp != 0) ? rect_rank(sm, tp) : 0;
    if (rminus == r - 1 && rplus == r - 1 && rmp == r - 1) sigma.cells.push_back({s, t});
  }
  std::sort(sigma.cells.begin(), sigma.cells.end());
  return sigma;
}

long rho(int m, const Location& mu, unsigned lambda) {
  if (!admissible_type(mu, lambda)) throw std::invalid_argument("rho: inadmissible type");
  long c = 0;
  for (int s : S_upto(mu, m))
    if (lambda & (1u << (s - 1))) ++c;
  for (int t : T_from(mu, m))
    if (lambda & (1u << (t - 1))) ++c;
  return c - __builtin_popcount(lambda) / 2;
}

long kappa(int m, const Location& mu, unsigned lambda) {
  if (!admissible_type(mu, lambda)) throw std::invalid_argument("kappa: inadmissible type");
  long c = 0;
  for (int s : S_upto(mu, m - 1))
    if (!(lambda & (1u << (s - 1)))) ++c;
  for (int t : T_from(mu, m + 1))
    if (!(lambda & (1u << (t - 1)))) ++c;
  return c + __builtin_popcount(lambda) / 2;
}

long n_of(const Location& mu, const std::vector<int>& pi1) {
  long total = 0;
  for (int s : pi1) total += static_cast<long>(S_upto(mu, s).size());
  return total;
}

std::pair<Rational, Rational> gen_function_check(const Location& mu, unsigned lambda,
                                                 const Rational& q) {
  if (q == 0 || q == 1) throw std::invalid_argument("gen_function_check: q must differ from 0, 1");
  FerrersBoard b = board(mu);
  Rational lhs(0);
  for (const auto& sigma : enumerate_placements(b, lambda)) lhs += pow_rational(q, inversion(sigma));
  Rational rhs(1);
  for (int s : mask_to_set(lambda & set_to_mask(mu.S_set())))
    rhs *= (pow_rational(q, rho(s, mu, lambda)) - 1) / (q - 1);
  return {lhs, rhs};
}

std::pair<long, long> kappa_sum_identity(const Location& mu, unsigned lambda) {
  long lhs = 0;
  for (int m = 1; m <= mu.n; ++m) {
    if (lambda & (1u << (m - 1))) continue;
    long k = kappa(m, mu, lambda);
    lhs += mu.get(m) ? -k : k;
  }
  long rhs = (mu.n - 1) * (mu.n - 2 * mu.weight()) / 2;
  return {lhs, rhs};
}

std::pair<Rational, Rational> kappa_q_identity(const Location& mu, unsigned lambda,
                                               const Rational& q) {
  if (q == 0 || q == 1) throw std::invalid_argument("kappa_q_identity: q must differ from 0, 1");
  Rational lhs(0);
  for (int m = 1; m <= mu.n; ++m) {
    if (lambda & (1u << (m - 1))) continue;
    Rational term = pow_rational(q, kappa(m, mu, lambda));
    if (mu.get(m))
      lhs -= term;
    else
      lhs += term;
  }
  Rational rhs = (pow_rational(q, mu.n - mu.weight()) - pow_rational(q, mu.weight())) / (q - 1);
  return {lhs, rhs};
}

Integer count_matrices_for_placement(const Location& mu, const RookPlacement& sigma, long q) {
  if (!column_full(mu, sigma.type_mask()))
    throw std::invalid_argument("count_matrices_for_placement: placement not column-full");
  long nb = static_cast<long>(board(mu).cells.size());
  long expo = inversion(sigma) + nb - n_of(mu, sigma.pi1());
  return pow_integer(Integer(q - 1), mu.weight()) * pow_integer(Integer(q), expo);
}

Integer multiplicity_formula(const Location& mu, unsigned lambda, long q) {
  if (!admissible_type(mu, lambda)) throw std::invalid_argument("multiplicity_formula: inadmissible type");
  if (!column_full(mu, lambda))
    throw std::invalid_argument("multiplicity_formula: type not column-full");
  std::vector<int> rows = mask_to_set(lambda & set_to_mask(mu.S_set()));
  long nb = static_cast<long>(board(mu).cells.size());
  Integer result = pow_integer(Integer(q), nb - n_of(mu, rows));
  for (int s : rows) result *= pow_integer(Integer(q), rho(s, mu, lambda)) - 1;
  return result;
}

}  // namespace flagalg
