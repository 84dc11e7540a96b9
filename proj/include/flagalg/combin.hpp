#pragma once

#include <utility>
#include <vector>

#include "flagalg/gf.hpp"
#include "flagalg/location.hpp"
#include "flagalg/rational.hpp"

namespace flagalg {

using Cell = std::pair<int, int>;  // (s, t), 1-based

// Ferrers board B_mu = {(s,t) in S_mu x T_mu : s < t}.
struct FerrersBoard {
  Location mu;
  std::vector<int> S, T;
  std::vector<Cell> cells;  // row-major: s ascending, then t ascending

  bool has_cell(int s, int t) const;
};

// Rook placement: cells with pairwise distinct rows and columns.
struct RookPlacement {
  std::vector<Cell> cells;  // sorted

  std::vector<int> pi1() const;  // occupied rows, ascending
  std::vector<int> pi2() const;  // occupied columns, ascending
  unsigned type_mask() const { return set_to_mask(pi1()) | set_to_mask(pi2()); }

  friend bool operator==(const RookPlacement& a, const RookPlacement& b) {
    return a.cells == b.cells;
  }
};

FerrersBoard board(const Location& mu);

// S_mu(m) = {s in S_mu : s <= m},  T_mu(m) = {t in T_mu : t >= m}.
std::vector<int> S_upto(const Location& mu, int m);
std::vector<int> T_from(const Location& mu, int m);

// Rectangle B_mu(s0,t0) = S_mu(s0) x T_mu(t0); (s0,t0) must lie on the board.
std::vector<Cell> rectangle(const FerrersBoard& b, int s0, int t0);

// Lambda is a type on B_mu iff |lambda ∩ S_mu| = |lambda ∩ T_mu| and the
// i-th smallest of lambda ∩ S_mu is below the i-th smallest of lambda ∩ T_mu.
bool admissible_type(const Location& mu, unsigned lambda);

bool column_full(const Location& mu, unsigned lambda);  // T_mu ⊆ lambda
bool row_full(const Location& mu, unsigned lambda);     // S_mu ⊆ lambda

// All rook placements on B_mu of type lambda, in lexicographic order of the
// column sequence (t_{sigma(1)}, t_{sigma(2)}, ...).
std::vector<RookPlacement> enumerate_placements(const FerrersBoard& b, unsigned lambda);

long local_inversion(const RookPlacement& sigma, int s, int t);
long inversion(const RookPlacement& sigma);

// Rook placement sigma(M) of a matrix form M (rows labelled S_mu, columns
// T_mu, support inside B_mu): cells where all three boundary ranks r^-, r^+,
// r^{-+} equal rank(M(s,t)) - 1.
RookPlacement sigma_of_matrix(const FqMatrix& M, const Location& mu);

// rho(m,mu,lambda) = |lambda ∩ S_mu(m)| + |lambda ∩ T_mu(m)| - |lambda|/2,
// the constant |sigma ∩ (S_mu(m) x T_mu(m))| over placements of type lambda.
long rho(int m, const Location& mu, unsigned lambda);

// kappa(m,mu,lambda) = |S_mu(m-1) \ lambda| + |T_mu(m+1) \ lambda| + |lambda|/2.
long kappa(int m, const Location& mu, unsigned lambda);

// n(pi1) = sum over s in pi1 of |S_mu(s)|.
long n_of(const Location& mu, const std::vector<int>& pi1);

// lhs: sum over placements of q^{inv(sigma)}; rhs: closed product form.
std::pair<Rational, Rational> gen_function_check(const Location& mu, unsigned lambda,
                                                 const Rational& q);

// lhs: sum over m not in lambda of (-1)^{mu_m} kappa; rhs: (N-1)(N-2|mu|)/2.
std::pair<long, long> kappa_sum_identity(const Location& mu, unsigned lambda);

// lhs: sum over m not in lambda of (-1)^{mu_m} q^{kappa}; rhs: (q^{N-|mu|}-q^{|mu|})/(q-1).
std::pair<Rational, Rational> kappa_q_identity(const Location& mu, unsigned lambda,
                                               const Rational& q);

// (q-1)^{|mu|} q^{inv(sigma) + |B_mu| - n(pi1(sigma))}; sigma must be column-full.
Integer count_matrices_for_placement(const Location& mu, const RookPlacement& sigma, long q);

// q^{|B_mu| - n(lambda ∩ S_mu)} * prod over s in lambda ∩ S_mu of (q^{rho} - 1);
// lambda must be admissible and column-full.
Integer multiplicity_formula(const Location& mu, unsigned lambda, long q);

}  // namespace flagalg
