#pragma once

#include <map>
#include <string>
#include <vector>

#include "flagalg/combin.hpp"
#include "flagalg/cyclotomic.hpp"
#include "flagalg/lattice.hpp"
#include "flagalg/linalg.hpp"
#include "flagalg/sqrt_ext.hpp"

namespace flagalg {

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;
};
using CheckList = std::vector<Check>;

void add_check(CheckList& cl, const std::string& name, bool pass, const std::string& witness = "");
bool all_pass(const CheckList& cl);

// The generators of H on the standard module V = CP: location projectors
// E_mu*, diagonal weights K_m with entry q^{1/2 - mu_m}, and the lowering /
// raising matrices L_m, R_m built from the m-cover adjacency.
struct Generators {
  const Lattice* lat = nullptr;
  int N = 0;
  long q = 0;
  std::vector<SparseMat<Rational>> L, R;    // 1-based, size N+1
  std::vector<SparseMat<SqrtExt>> K, Kinv;  // 1-based, size N+1
  std::vector<SparseMat<Rational>> Estar;   // by lex_rank(mu)
};

Generators build_generators(const Lattice& lat);

// Exact checks of the eight relation families among L_m, R_m, K_m.
CheckList verify_h_relations(const Generators& g);

// E_mu* as polynomials in the monomials K_1^{v_1}...K_N^{v_N}; throws if the
// coefficient system were singular (impossible for q != 1).
std::vector<SparseMat<SqrtExt>> reconstruct_projectors_from_K(const Generators& g);

// Type of a subspace: type of sigma(Y) for its matrix form, empty at the
// all-zeros / all-ones locations.
unsigned subspace_type_mask(const Lattice& lat, int id);

// The decomposition V = (+) E_mu* E_lambda V into joint eigenspaces of the
// commuting family {R_m L_m + L_m R_m}, labelled by admissible lambda with
// eigenvalue pattern theta(m) = 0 (m in lambda) / q^{kappa(m,mu,lambda)}.
struct ProjectorFamily {
  struct Block {
    Location mu;
    unsigned lambda = 0;
    std::vector<int> point_ids;     // bucket of mu, row coordinates of basis
    DenseMat<Rational> basis;       // |bucket| x dim
    SparseMat<Rational> projector;  // global projector onto E_mu* E_lambda V
  };
  std::vector<Block> blocks;  // mu in lex order, lambda ascending
  std::map<unsigned, SparseMat<Rational>> E_lambda;

  const Block* find(const Location& mu, unsigned lambda) const;
  std::vector<unsigned> lambdas() const;
};

// Throws when a joint eigenvector fails to match the eigenvalue pattern of
// any admissible lambda.
ProjectorFamily build_E_lambda(const Generators& g, const Lattice& lat);

// Eigenvalue checks of R_mL_m and L_mR_m on every block, block dimensions
// against type counts, completeness per location, projector algebra.
CheckList verify_spectral(const Generators& g, const ProjectorFamily& pf, const Lattice& lat);

// Certifies that every block projector is a polynomial in the restricted
// generator products (R_mL_m + L_mR_m), mu block by mu block.
CheckList verify_projector_polynomials(const Generators& g, const ProjectorFamily& pf,
                                       const Lattice& lat);

// Character vectors chi_y with respect to a -> zeta_p^{mult * Tr(a)}.
struct ChiFamily {
  long p = 2;
  long mult = 1;
  // chi[y]: entries (z id, value) over the bucket of y.
  std::vector<std::vector<std::pair<int, CycRational>>> chi;
};

ChiFamily build_chi_basis(const Lattice& lat, long character_mult = 1);

// Gram orthogonality within each bucket: <chi_y, chi_{y'}> = delta |P_mu|.
CheckList chi_orthogonality(const Lattice& lat, const ChiFamily& f);

// (a) span{chi_y : type y = lambda} = range E_lambda, by projector fixing and
// exact rank over Q(zeta_p); (b)/(c) the L_m/R_m vanishing equivalences;
// (d) the entry formula for L_m chi_y.
CheckList chi_cross_check(const Lattice& lat, const Generators& g, const ProjectorFamily& pf,
                          const ChiFamily& f);

// One isomorphism class of irreducible H-modules realized inside V.
struct IrredDescriptor {
  Location endpoint;
  unsigned shape = 0;
  int dim = 0;
  Integer multiplicity;
  Integer formula_multiplicity;
  std::vector<int> free_coords;     // m with m not in lambda, ascending
  std::vector<unsigned> eps_order;  // epsilon masks, ascending mask order
  DenseMat<Rational> basis;         // |P| x dim, columns w(eps)
};

// Builds one module per column-full admissible (mu,lambda), verifies the
// L/R/K action coefficients and the multiplicity formula, and appends the
// verification results to checks.
std::vector<IrredDescriptor> decompose_standard_module(const ProjectorFamily& pf,
                                                       const Generators& g, const Lattice& lat,
                                                       CheckList& checks);

// V_new = ∩ ker L_m vs the column-full block sum, V_old = ∩ ker R_m vs the
// row-full block sum, as exact subspace equalities.
CheckList kernel_spaces(const Generators& g, const ProjectorFamily& pf, const Lattice& lat,
                        int* dim_new = nullptr, int* dim_old = nullptr);

// Restriction X of A to the invariant column span B (A B = B X); requires the
// columns of B to have pairwise disjoint supports.  Throws if A does not
// preserve the span.
DenseMat<SqrtExt> restrict_operator(const SparseMat<SqrtExt>& A, const DenseMat<Rational>& B);

// Dimension of {X : X M = M X for all M in mats}.  Diagonal members restrict
// the support of X (entries are forced to vanish across distinct joint
// diagonal patterns); the rest impose linear conditions solved exactly.
int commutant_dimension(const std::vector<DenseMat<SqrtExt>>& mats);

// Commutant of {K_m, L_m, R_m} restricted to the module of d.
int h_commutant_dimension(const Generators& g, const IrredDescriptor& d);

}  // namespace flagalg
