#include "flagalg/lattice.hpp"

#include <stdexcept>

#include "flagalg/combin.hpp"

namespace flagalg {

namespace {

// Canonical basis rows from a matrix form: for t in T_mu the row
// w_t = sum over s in S_mu of Y_{s,t} v_s + v_t.
FqMatrix canon_from_form(const Field& F, const Location& mu, const FqMatrix& form) {
  std::vector<int> T = mu.T_set(), S = mu.S_set();
  FqMatrix canon(F, static_cast<int>(T.size()), mu.n);
  for (size_t i = 0; i < T.size(); ++i) {
    canon.at(static_cast<int>(i), T[i] - 1) = 1;
    for (size_t j = 0; j < S.size(); ++j)
      canon.at(static_cast<int>(i), S[j] - 1) = form.at(static_cast<int>(j), static_cast<int>(i));
  }
  return canon;
}

}  // namespace

Integer lattice_size(long q, int N) {
  Integer total(0);
  for (const Location& mu : all_locations(N))
    total += pow_integer(Integer(q), static_cast<unsigned long>(board(mu).cells.size()));
  return total;
}

Lattice enumerate_lattice(const Field& F, int N, long long cap) {
  if (N < 1) throw std::invalid_argument("enumerate_lattice: N must be >= 1");
  Integer total = lattice_size(F.q(), N);
  if (total > Integer(static_cast<long>(cap)))
    throw std::invalid_argument("enumerate_lattice: |P| = " + total.get_str() +
                                " exceeds the size cap " + std::to_string(cap));
  Lattice lat;
  lat.F = &F;
  lat.N = N;
  lat.q = F.q();
  lat.buckets.assign(1u << N, {});
  lat.mcov.assign(N + 1, {});

  for (const Location& mu : all_locations(N)) {
    FerrersBoard b = board(mu);
    std::vector<int> S = mu.S_set(), T = mu.T_set();
    size_t ncells = b.cells.size();
    std::vector<int> entries(ncells, 0);
    while (true) {
      Subspace y;
      y.id = static_cast<int>(lat.pts.size());
      y.loc = mu;
      if (!mu.is_zero() && !mu.is_one()) {
        y.form = FqMatrix(F, static_cast<int>(S.size()), static_cast<int>(T.size()));
        y.form.row_labels = S;
        y.form.col_labels = T;
        for (size_t k = 0; k < ncells; ++k)
          y.form.at(y.form.row_index(b.cells[k].first), y.form.col_index(b.cells[k].second)) =
              static_cast<uint8_t>(entries[k]);
      } else {
        y.form = FqMatrix(F, 0, 0);
      }
      y.canon = canon_from_form(F, mu, y.form);
      lat.buckets[mu.lex_rank()].push_back(y.id);
      lat.pts.push_back(std::move(y));

      // Row-major entry-lex odometer: last cell varies fastest.
      if (ncells == 0) break;
      size_t k = ncells;
      while (k > 0) {
        if (++entries[k - 1] < F.q()) break;
        entries[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }

  // m-cover adjacency by containment between adjacent location buckets.
  for (int m = 1; m <= N; ++m) {
    for (const Location& mu : all_locations(N)) {
      if (!mu.can_lower(m)) continue;
      Location nu = mu.lowered(m);
      for (int z : lat.buckets[nu.lex_rank()])
        for (int y : lat.buckets[mu.lex_rank()])
          if (lat.contains(y, z)) lat.mcov[m].push_back({z, y});
    }
  }
  return lat;
}

int Lattice::id_of_form(const Location& mu, const std::vector<int>& entries) const {
  // Enumeration within a bucket is the row-major odometer, so the entry
  // digits are the bucket offset in base q.
  long long off = 0;
  for (int e : entries) off = off * q + e;
  return buckets[mu.lex_rank()][static_cast<size_t>(off)];
}

int Lattice::id_of_span(const FqMatrix& B) const {
  FqMatrix canon = B.nrows ? bottom_pivot_reduce(B) : B;
  Location mu(N, 0);
  for (int t : bottom_pivots(canon)) mu.mask |= 1u << (t - 1);
  FerrersBoard b = board(mu);
  std::vector<int> entries;
  for (const auto& [s, t] : b.cells) {
    int row = static_cast<int>(std::find(b.T.begin(), b.T.end(), t) - b.T.begin());
    entries.push_back(canon.at(row, s - 1));
  }
  return id_of_form(mu, entries);
}

bool Lattice::contains(int y, int z) const {
  const Subspace& Y = pts[y];
  const Subspace& Z = pts[z];
  if (!location_leq(Z.loc, Y.loc)) return false;
  std::vector<int> pivots = Y.loc.T_set();
  for (int i = 0; i < Z.canon.nrows; ++i) {
    std::vector<int> r(N);
    for (int j = 0; j < N; ++j) r[j] = Z.canon.at(i, j);
    for (size_t k = 0; k < pivots.size(); ++k) {
      int c = r[pivots[k] - 1];
      if (c == 0) continue;
      for (int j = 0; j < N; ++j) r[j] = F->sub(r[j], F->mul(c, Y.canon.at(static_cast<int>(k), j)));
    }
    for (int j = 0; j < N; ++j)
      if (r[j] != 0) return false;
  }
  return true;
}

Location location_of(const FqMatrix& B) {
  FqMatrix canon = bottom_pivot_reduce(B);
  Location mu(B.ncols, 0);
  for (int t : bottom_pivots(canon)) mu.mask |= 1u << (t - 1);
  return mu;
}

bool m_covers(const Lattice& lat, int y, int z, int m) {
  const Location& ly = lat.at(y).loc;
  const Location& lz = lat.at(z).loc;
  if (!lz.can_raise(m) || lz.raised(m) != ly) return false;
  return lat.contains(y, z);
}

Integer count_m_covered_formula(const Location& mu, long q, int m) {
  if (mu.get(m) != 1) return Integer(0);
  long e = 0;
  for (int k = m + 1; k <= mu.n; ++k) e += mu.get(k);
  return pow_integer(Integer(q), e);
}

Integer count_m_covering_formula(const Location& mu, long q, int m) {
  if (mu.get(m) != 0) return Integer(0);
  long e = m - 1;
  for (int k = 1; k <= m - 1; ++k) e -= mu.get(k);
  return pow_integer(Integer(q), e);
}

long count_m_covered_adj(const Lattice& lat, int y, int m) {
  long c = 0;
  for (const auto& [z, yy] : lat.mcov[m])
    if (yy == y) ++c;
  return c;
}

long count_m_covering_adj(const Lattice& lat, int y, int m) {
  long c = 0;
  for (const auto& [z, yy] : lat.mcov[m])
    if (z == y) ++c;
  return c;
}

bool matrix_cover_criterion(const FqMatrix& Y, const Location& mu, const FqMatrix& Z, int m) {
  if (mu.is_zero() || mu.is_one() || !mu.can_lower(m))
    throw std::invalid_argument("matrix_cover_criterion: bad location");
  Location nu = mu.lowered(m);
  if (nu.is_zero() || nu.is_one())
    throw std::invalid_argument("matrix_cover_criterion: boundary location");
  std::vector<int> S = mu.S_set(), Tn = nu.T_set();
  if (Y.nrows != static_cast<int>(S.size()) || Z.ncols != static_cast<int>(Tn.size()))
    throw std::invalid_argument("matrix_cover_criterion: shape mismatch");
  const Field& F = *Y.F;
  for (int s : S)
    for (int t : Tn) {
      int lhs = Z.at(Z.row_index(s), Z.col_index(t));
      int rhs = F.add(Y.at(Y.row_index(s), Y.col_index(t)),
                      F.mul(Y.at(Y.row_index(s), Y.col_index(m)),
                            Z.at(Z.row_index(m), Z.col_index(t))));
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace flagalg
