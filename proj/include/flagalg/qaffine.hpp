#pragma once

#include <vector>

#include "flagalg/algebra.hpp"

namespace flagalg {

// Blockwise pseudo-inverse actions (L_mR_m)^{-1}L_m and (R_mL_m)^{-1}R_m:
// on a block E_mu* E_lambda V where the plain action is nonzero they equal
// q^{-kappa(m,mu,lambda)} L_m (resp. R_m), elsewhere zero.
struct PseudoInvAction {
  std::vector<SparseMat<Rational>> ML, MR;  // 1-based, size N+1
  // Projectors onto the union of blocks where L_m (resp. R_m) acts nonzero.
  std::vector<SparseMat<Rational>> SL, SR;
};

PseudoInvAction build_pseudo_inverse_actions(const ProjectorFamily& pf, const Generators& g);

CheckList verify_pseudo_inverse(const PseudoInvAction& pi, const Generators& g);

// The Chevalley generators acting on V at deformation parameter q^{1/2}.
struct ChevalleyAction {
  long q = 0;
  int N = 0;
  std::vector<Rational> alphas;  // 1-based, size N+1
  SparseMat<SqrtExt> e0p, e1p, e0m, e1m, k0, k1, k0i, k1i;
};

std::vector<Rational> default_alphas(long q, int N);  // alpha_m = q^{2m}

ChevalleyAction build_chevalley(const Generators& g, const PseudoInvAction& pi,
                                const std::vector<Rational>& alphas);

// Exact verification of the defining relations at parameter q^{1/2}.
CheckList verify_uq_relations(const ChevalleyAction& act);

// Blockwise cross-check: the first e0 commutator relation reduces to the
// kappa q-identity on every (mu,lambda) block.
CheckList verify_defrel3_kappa(const ChevalleyAction& act, const ProjectorFamily& pf,
                               const Generators& g);

// Tensor product of evaluation modules V_{d_1}(alpha_1) x ... x V_{d_N}(alpha_N)
// with the explicit Chevalley action at parameter q^{1/2}.
struct EvalTensor {
  long q = 0;
  std::vector<int> d;            // 1-based, size N+1
  std::vector<Rational> alphas;  // 1-based
  std::vector<std::vector<int>> basis;  // epsilon tuples (1-based coords), ascending
  int dim = 0;
  DenseMat<SqrtExt> e0p, e1p, e0m, e1m, k0, k1;
};

EvalTensor build_eval_tensor(const std::vector<int>& d, const std::vector<Rational>& alphas,
                             long q);

// The six Chevalley actions restricted to an irreducible H-module.
struct RestrictedAction {
  DenseMat<SqrtExt> e0p, e1p, e0m, e1m, k0, k1;
};

RestrictedAction restrict_chevalley(const ChevalleyAction& act, const IrredDescriptor& d);

// d_m = 1 iff m not in lambda.
std::vector<int> shape_to_d(int N, unsigned lambda);

// The map u(eps) -> gamma(eps) w(eps); returns the diagonal matrix of gamma
// and verifies it intertwines all six generators exactly.
DenseMat<SqrtExt> build_intertwiner(const IrredDescriptor& desc, const RestrictedAction& W,
                                    const EvalTensor& tensor, CheckList& checks);

// q-string S_d(alpha) = {alpha q^{(d-1)/2}, ..., alpha q^{-(d-1)/2}} at
// deformation parameter q^{1/2}.
std::vector<SqrtExt> q_string(const Rational& alpha, int d, long q);

bool is_q_string(std::vector<SqrtExt> elems, long q);

bool strings_in_general_position(const std::vector<SqrtExt>& a, const std::vector<SqrtExt>& b,
                                 long q);

bool check_general_position(const std::vector<int>& d, const std::vector<Rational>& alphas,
                            long q);

// Commutant dimension of the six restricted Chevalley generators.  Dimension
// 1 certifies irreducibility when the module is known semisimple (general
// position); a reducible indecomposable module also has commutant 1, so the
// converse needs the envelope certificate below.
int u_commutant_dimension(const RestrictedAction& W);

// Dimension of the unital algebra generated by the six restricted matrices
// inside End(W).  Equals dim(W)^2 exactly when W is absolutely irreducible.
int u_envelope_dimension(const RestrictedAction& W);

// Every k0/k1 eigenvalue must be +q^{j/2} for an integer j.
CheckList verify_type11(const RestrictedAction& W, long q, const std::string& label);

}  // namespace flagalg
