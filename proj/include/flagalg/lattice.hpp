#pragma once

#include <vector>

#include "flagalg/gf.hpp"
#include "flagalg/location.hpp"
#include "flagalg/rational.hpp"

namespace flagalg {

// A point of P in flag-adapted canonical form.  canon holds the unique
// bottom-pivot basis (|mu| rows of F_q^N, pivots T_mu); form is the matrix
// form Y over S_mu x T_mu (empty when mu is all-zeros or all-ones).
struct Subspace {
  int id = 0;
  Location loc;
  FqMatrix canon;
  FqMatrix form;
};

class Lattice {
 public:
  const Field* F = nullptr;
  int N = 0;
  long q = 0;
  std::vector<Subspace> pts;
  // Buckets indexed by lex_rank(mu); subspaces in entry-lex order.
  std::vector<std::vector<int>> buckets;
  // Per m (1-based): cover pairs (lower z, upper y), y m-covers z.
  std::vector<std::vector<std::pair<int, int>>> mcov;

  const Subspace& at(int id) const { return pts[id]; }
  const std::vector<int>& bucket(const Location& mu) const { return buckets[mu.lex_rank()]; }
  int size() const { return static_cast<int>(pts.size()); }

  // Id of the subspace with the given matrix form entries (board cell order).
  int id_of_form(const Location& mu, const std::vector<int>& entries) const;
  // Id of the subspace spanned by the rows of B.
  int id_of_span(const FqMatrix& B) const;

  bool contains(int y, int z) const;  // z subseteq y as subspaces
};

// Enumerates P for F_q^N: locations in lex order, matrix forms in row-major
// entry-lex order.  Throws if |P| would exceed cap.
Lattice enumerate_lattice(const Field& F, int N, long long cap = 200000);

Integer lattice_size(long q, int N);  // sum over mu of q^{|B_mu|}

// Location of the row space of B against the standard flag.
Location location_of(const FqMatrix& B);

bool m_covers(const Lattice& lat, int y, int z, int m);

Integer count_m_covered_formula(const Location& mu, long q, int m);
Integer count_m_covering_formula(const Location& mu, long q, int m);

long count_m_covered_adj(const Lattice& lat, int y, int m);
long count_m_covering_adj(const Lattice& lat, int y, int m);

// Matrix-form cover criterion: Z_{s,t} = Y_{s,t} + Y_{s,m} Z_{m,t}
// for s in S_mu, t in T_nu, where Y sits at mu and Z at nu = mu - m^.
// Requires mu, nu both different from all-zeros and all-ones.
bool matrix_cover_criterion(const FqMatrix& Y, const Location& mu, const FqMatrix& Z, int m);

}  // namespace flagalg
