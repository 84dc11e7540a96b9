#include "flagalg/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace flagalg {

void add_check(CheckList& cl, const std::string& name, bool pass, const std::string& witness) {
  cl.push_back(Check{name, pass, pass ? std::string() : witness});
}

bool all_pass(const CheckList& cl) {
  for (const auto& c : cl)
    if (!c.pass) return false;
  return true;
}

namespace {

std::vector<int> bucket_pos(const Lattice& lat, const Location& mu) {
  std::vector<int> pos(lat.size(), -1);
  const auto& b = lat.bucket(mu);
  for (size_t i = 0; i < b.size(); ++i) pos[b[i]] = static_cast<int>(i);
  return pos;
}

DenseMat<Rational> restrict_block(const SparseMat<Rational>& S, const std::vector<int>& row_ids,
                                  const std::vector<int>& col_pos, int ncols) {
  DenseMat<Rational> D(static_cast<int>(row_ids.size()), ncols);
  for (size_t i = 0; i < row_ids.size(); ++i)
    for (const auto& [j, v] : S.rows[row_ids[i]]) {
      if (col_pos[j] < 0) throw std::runtime_error("restrict_block: entry outside block");
      D.at(static_cast<int>(i), col_pos[j]) = v;
    }
  return D;
}

std::vector<unsigned> admissible_lambdas(const Location& mu) {
  std::vector<unsigned> out;
  for (unsigned lam = 0; lam < (1u << mu.n); ++lam)
    if (admissible_type(mu, lam)) out.push_back(lam);
  return out;
}

std::string block_str(const Location& mu, unsigned lambda) {
  return "mu=" + mu.to_string() + ",lambda=" + set_mask_str(lambda);
}

template <class F>
std::vector<F> apply_rational(const SparseMat<Rational>& S, const std::vector<F>& v) {
  std::vector<F> out(S.n, F());
  for (int i = 0; i < S.n; ++i)
    for (const auto& [j, a] : S.rows[i])
      if (!(v[j] == F())) out[i] += F(a) * v[j];
  return out;
}

bool vec_is_zero_cyc(const std::vector<CycRational>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

Generators build_generators(const Lattice& lat) {
  Generators g;
  g.lat = &lat;
  g.N = lat.N;
  g.q = lat.q;
  int P = lat.size();
  g.L.assign(g.N + 1, SparseMat<Rational>(P));
  g.R.assign(g.N + 1, SparseMat<Rational>(P));
  g.K.assign(g.N + 1, SparseMat<SqrtExt>(P));
  g.Kinv.assign(g.N + 1, SparseMat<SqrtExt>(P));
  for (int m = 1; m <= g.N; ++m) {
    for (const auto& [z, y] : lat.mcov[m]) {
      g.L[m].rows[z][y] = Rational(1);
      g.R[m].rows[y][z] = Rational(1);
    }
    for (int id = 0; id < P; ++id) {
      int mum = lat.at(id).loc.get(m);
      g.K[m].rows[id][id] = q_half_pow(g.q, 1 - 2 * mum);
      g.Kinv[m].rows[id][id] = q_half_pow(g.q, 2 * mum - 1);
    }
  }
  g.Estar.assign(1u << g.N, SparseMat<Rational>(P));
  for (const Location& mu : all_locations(g.N))
    for (int id : lat.bucket(mu)) g.Estar[mu.lex_rank()].rows[id][id] = Rational(1);
  return g;
}

CheckList verify_h_relations(const Generators& g) {
  CheckList cl;
  const Rational q(g.q);
  auto lift = [&](const SparseMat<Rational>& a) { return convert_sparse<Rational, SqrtExt>(a); };

  auto report = [&](const std::string& name, const SparseMat<SqrtExt>& lhs,
                    const SparseMat<SqrtExt>& rhs, int m, int n, bool& pass, std::string& wit) {
    int i, j;
    SqrtExt a, b;
    if (lhs.first_diff(rhs, i, j, a, b)) {
      pass = false;
      if (wit.empty()) {
        std::ostringstream os;
        os << name << " m=" << m << " n=" << n << " entry=(" << i << "," << j
           << ") lhs=" << a.to_string() << " rhs=" << b.to_string();
        wit = os.str();
      }
    }
  };

  {  // L_m K_n = K_n L_m and R_m K_n = K_n R_m for m != n
    bool pl = true, pr = true;
    std::string wl, wr;
    for (int m = 1; m <= g.N; ++m)
      for (int n = 1; n <= g.N; ++n) {
        if (m == n) continue;
        report("LK", lift(g.L[m]) * g.K[n], g.K[n] * lift(g.L[m]), m, n, pl, wl);
        report("RK", lift(g.R[m]) * g.K[n], g.K[n] * lift(g.R[m]), m, n, pr, wr);
      }
    add_check(cl, "h.relations.LmKn_commute", pl, wl);
    add_check(cl, "h.relations.RmKn_commute", pr, wr);
  }
  {  // q L_m K_m = K_m L_m and R_m K_m = q K_m R_m
    bool pl = true, pr = true;
    std::string wl, wr;
    for (int m = 1; m <= g.N; ++m) {
      report("qLK", SqrtExt(q) * (lift(g.L[m]) * g.K[m]), g.K[m] * lift(g.L[m]), m, m, pl, wl);
      report("RKq", lift(g.R[m]) * g.K[m], SqrtExt(q) * (g.K[m] * lift(g.R[m])), m, m, pr, wr);
    }
    add_check(cl, "h.relations.qLmKm", pl, wl);
    add_check(cl, "h.relations.RmKm_q", pr, wr);
  }
  {  // L_m^2 = R_m^2 = 0
    bool pass = true;
    std::string wit;
    for (int m = 1; m <= g.N; ++m) {
      if (!(g.L[m] * g.L[m]).is_zero() || !(g.R[m] * g.R[m]).is_zero()) {
        pass = false;
        wit = "m=" + std::to_string(m);
        break;
      }
    }
    add_check(cl, "h.relations.squares_vanish", pass, wit);
  }
  {  // q L_m L_n = L_n L_m and R_m R_n = q R_n R_m for m < n
    bool pl = true, pr = true;
    std::string wl, wr;
    for (int m = 1; m <= g.N; ++m)
      for (int n = m + 1; n <= g.N; ++n) {
        SparseMat<Rational> l1 = g.L[m] * g.L[n];
        for (auto& r : l1.rows)
          for (auto& [j, v] : r) v *= q;
        report("qLL", lift(l1), lift(g.L[n] * g.L[m]), m, n, pl, wl);
        SparseMat<Rational> r2 = g.R[n] * g.R[m];
        for (auto& r : r2.rows)
          for (auto& [j, v] : r) v *= q;
        report("RRq", lift(g.R[m] * g.R[n]), lift(r2), m, n, pr, wr);
      }
    add_check(cl, "h.relations.qLmLn", pl, wl);
    add_check(cl, "h.relations.RmRn_q", pr, wr);
  }
  {  // L_m R_n = R_n L_m for m != n
    bool pass = true;
    std::string wit;
    for (int m = 1; m <= g.N; ++m)
      for (int n = 1; n <= g.N; ++n) {
        if (m == n) continue;
        report("LR", lift(g.L[m] * g.R[n]), lift(g.R[n] * g.L[m]), m, n, pass, wit);
      }
    add_check(cl, "h.relations.LmRn_commute", pass, wit);
  }
  return cl;
}

std::vector<SparseMat<SqrtExt>> reconstruct_projectors_from_K(const Generators& g) {
  int N = g.N;
  int dim = 1 << N;
  std::vector<Location> locs = all_locations(N);
  // Coefficient matrix: row = location mu (lex order), column = monomial nu;
  // entry = diagonal value of K^nu on P_mu.
  DenseMat<SqrtExt> M(dim, dim);
  std::vector<unsigned> nus;
  for (unsigned nu = 0; nu < (1u << N); ++nu) nus.push_back(nu);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      long expo = 0;
      for (int m = 1; m <= N; ++m)
        if (nus[c] & (1u << (m - 1))) expo += 1 - 2 * locs[r].get(m);
      M.at(r, c) = q_half_pow(g.q, expo);
    }
  DenseMat<SqrtExt> Minv = inverse(M);  // throws if singular

  // Monomial matrices K^nu (diagonal).
  int P = g.lat->size();
  std::vector<SparseMat<SqrtExt>> mono;
  for (unsigned nu : nus) {
    SparseMat<SqrtExt> D = SparseMat<SqrtExt>::identity(P);
    for (int m = 1; m <= N; ++m)
      if (nu & (1u << (m - 1))) D = D * g.K[m];
    mono.push_back(std::move(D));
  }
  std::vector<SparseMat<SqrtExt>> out(dim, SparseMat<SqrtExt>(P));
  for (size_t r = 0; r < locs.size(); ++r) {
    SparseMat<SqrtExt> E(P);
    for (int c = 0; c < dim; ++c) {
      SqrtExt coeff = Minv.at(c, static_cast<int>(r));
      if (coeff.is_zero()) continue;
      E += coeff * mono[c];
    }
    out[locs[r].lex_rank()] = std::move(E);
  }
  return out;
}

unsigned subspace_type_mask(const Lattice& lat, int id) {
  const Subspace& y = lat.at(id);
  if (y.loc.is_zero() || y.loc.is_one()) return 0;
  return sigma_of_matrix(y.form, y.loc).type_mask();
}

const ProjectorFamily::Block* ProjectorFamily::find(const Location& mu, unsigned lambda) const {
  for (const auto& b : blocks)
    if (b.mu == mu && b.lambda == lambda) return &b;
  return nullptr;
}

std::vector<unsigned> ProjectorFamily::lambdas() const {
  std::vector<unsigned> out;
  for (const auto& [lam, mat] : E_lambda) out.push_back(lam);
  return out;
}

ProjectorFamily build_E_lambda(const Generators& g, const Lattice& lat) {
  ProjectorFamily pf;
  int N = g.N, P = lat.size();
  std::vector<SparseMat<Rational>> RL(N + 1, SparseMat<Rational>(P)),
      LR(N + 1, SparseMat<Rational>(P));
  for (int m = 1; m <= N; ++m) {
    RL[m] = g.R[m] * g.L[m];
    LR[m] = g.L[m] * g.R[m];
  }

  for (const Location& mu : all_locations(N)) {
    const auto& bucket = lat.bucket(mu);
    int b = static_cast<int>(bucket.size());
    std::vector<int> pos = bucket_pos(lat, mu);
    std::vector<DenseMat<Rational>> A(N + 1);
    for (int m = 1; m <= N; ++m) {
      A[m] = restrict_block(RL[m], bucket, pos, b);
      DenseMat<Rational> A2 = restrict_block(LR[m], bucket, pos, b);
      for (size_t k = 0; k < A[m].a.size(); ++k) A[m].a[k] += A2.a[k];
    }

    std::vector<std::pair<unsigned, DenseMat<Rational>>> found;
    int dimsum = 0;
    for (unsigned lam : admissible_lambdas(mu)) {
      DenseMat<Rational> stack(N * b, b);
      for (int m = 1; m <= N; ++m) {
        Rational theta =
            (lam & (1u << (m - 1))) ? Rational(0) : pow_rational(Rational(g.q), kappa(m, mu, lam));
        for (int i = 0; i < b; ++i)
          for (int j = 0; j < b; ++j)
            stack.at((m - 1) * b + i, j) = A[m].at(i, j) - (i == j ? theta : Rational(0));
      }
      DenseMat<Rational> U = nullspace(std::move(stack));
      dimsum += U.c;
      found.push_back({lam, std::move(U)});
    }
    if (dimsum != b)
      throw std::runtime_error(
          "build_E_lambda: joint eigenspaces of admissible types do not fill E_mu*V at mu=" +
          mu.to_string());

    DenseMat<Rational> Ball(b, b);
    int col = 0;
    for (const auto& [lam, U] : found)
      for (int j = 0; j < U.c; ++j, ++col)
        for (int i = 0; i < b; ++i) Ball.at(i, col) = U.at(i, j);
    DenseMat<Rational> Binv = b > 0 ? inverse(Ball) : DenseMat<Rational>(0, 0);

    col = 0;
    for (auto& [lam, U] : found) {
      ProjectorFamily::Block blk;
      blk.mu = mu;
      blk.lambda = lam;
      blk.point_ids = bucket;
      blk.projector = SparseMat<Rational>(P);
      // projector = (columns of this block) * (matching rows of Ball^{-1})
      for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) {
          Rational v(0);
          for (int k = 0; k < U.c; ++k) v += U.at(i, k) * Binv.at(col + k, j);
          if (v != 0) blk.projector.rows[bucket[i]][bucket[j]] = v;
        }
      col += U.c;
      blk.basis = std::move(U);
      auto it = pf.E_lambda.find(lam);
      if (it == pf.E_lambda.end())
        pf.E_lambda.emplace(lam, blk.projector);
      else
        it->second += blk.projector;
      pf.blocks.push_back(std::move(blk));
    }
  }
  return pf;
}

CheckList verify_spectral(const Generators& g, const ProjectorFamily& pf, const Lattice& lat) {
  CheckList cl;
  int N = g.N, P = lat.size();
  std::vector<SparseMat<Rational>> RL(N + 1, SparseMat<Rational>(P)),
      LR(N + 1, SparseMat<Rational>(P));
  for (int m = 1; m <= N; ++m) {
    RL[m] = g.R[m] * g.L[m];
    LR[m] = g.L[m] * g.R[m];
  }

  bool eig_pass = true;
  std::string eig_wit;
  bool dim_pass = true;
  std::string dim_wit;
  std::map<unsigned, int> bucket_sum;  // mu lex -> sum of block dims
  for (const auto& blk : pf.blocks) {
    const auto& bucket = blk.point_ids;
    int b = static_cast<int>(bucket.size());
    std::vector<int> pos = bucket_pos(lat, blk.mu);
    DenseMat<Rational> Arl(b, b), Alr(b, b);
    for (int m = 1; m <= N; ++m) {
      Arl = restrict_block(RL[m], bucket, pos, b);
      Alr = restrict_block(LR[m], bucket, pos, b);
      bool in_lam = (blk.lambda >> (m - 1)) & 1u;
      Rational krl =
          (!in_lam && blk.mu.get(m) == 1) ? pow_rational(Rational(g.q), kappa(m, blk.mu, blk.lambda)) : Rational(0);
      Rational klr =
          (!in_lam && blk.mu.get(m) == 0) ? pow_rational(Rational(g.q), kappa(m, blk.mu, blk.lambda)) : Rational(0);
      for (int j = 0; j < blk.basis.c && eig_pass; ++j) {
        for (int i = 0; i < b && eig_pass; ++i) {
          Rational rl(0), lr(0);
          for (int k = 0; k < b; ++k) {
            rl += Arl.at(i, k) * blk.basis.at(k, j);
            lr += Alr.at(i, k) * blk.basis.at(k, j);
          }
          if (rl != krl * blk.basis.at(i, j) || lr != klr * blk.basis.at(i, j)) {
            eig_pass = false;
            eig_wit = block_str(blk.mu, blk.lambda) + " m=" + std::to_string(m);
          }
        }
      }
    }
    // Block dimension equals the number of subspaces of this type.
    int cnt = 0;
    for (int id : bucket)
      if (subspace_type_mask(lat, id) == blk.lambda) ++cnt;
    if (cnt != blk.basis.c) {
      dim_pass = false;
      if (dim_wit.empty())
        dim_wit = block_str(blk.mu, blk.lambda) + " dim=" + std::to_string(blk.basis.c) +
                  " type_count=" + std::to_string(cnt);
    }
    bucket_sum[blk.mu.lex_rank()] += blk.basis.c;
  }
  add_check(cl, "h.spectral.eigenvalues", eig_pass, eig_wit);
  add_check(cl, "h.spectral.block_dims_match_types", dim_pass, dim_wit);

  bool full = true;
  std::string full_wit;
  for (const Location& mu : all_locations(N))
    if (bucket_sum[mu.lex_rank()] != static_cast<int>(lat.bucket(mu).size())) {
      full = false;
      full_wit = "mu=" + mu.to_string();
      break;
    }
  add_check(cl, "h.spectral.completeness", full, full_wit);

  // Projector algebra: idempotents, orthogonality, resolution of identity.
  bool proj_pass = true;
  std::string proj_wit;
  SparseMat<Rational> sum(P);
  for (const auto& [lam, E] : pf.E_lambda) {
    if (!((E * E) == E)) {
      proj_pass = false;
      proj_wit = "E_lambda not idempotent, lambda=" + set_mask_str(lam);
      break;
    }
    sum += E;
  }
  if (proj_pass)
    for (auto it = pf.E_lambda.begin(); it != pf.E_lambda.end() && proj_pass; ++it)
      for (auto jt = std::next(it); jt != pf.E_lambda.end(); ++jt)
        if (!(it->second * jt->second).is_zero()) {
          proj_pass = false;
          proj_wit = "E_lambda products nonzero: " + set_mask_str(it->first) + "," + set_mask_str(jt->first);
          break;
        }
  if (proj_pass && !(sum == SparseMat<Rational>::identity(P))) {
    proj_pass = false;
    proj_wit = "sum of E_lambda differs from identity";
  }
  add_check(cl, "h.spectral.projector_algebra", proj_pass, proj_wit);
  return cl;
}

CheckList verify_projector_polynomials(const Generators& g, const ProjectorFamily& pf,
                                       const Lattice& lat) {
  CheckList cl;
  int N = g.N, P = lat.size();
  std::vector<SparseMat<Rational>> sumRL(N + 1, SparseMat<Rational>(P));
  for (int m = 1; m <= N; ++m) sumRL[m] = g.R[m] * g.L[m] + g.L[m] * g.R[m];

  bool pass = true;
  std::string wit;
  for (const Location& mu : all_locations(N)) {
    const auto& bucket = lat.bucket(mu);
    int b = static_cast<int>(bucket.size());
    std::vector<int> pos = bucket_pos(lat, mu);
    std::vector<DenseMat<Rational>> G(N + 1);
    for (int m = 1; m <= N; ++m) G[m] = restrict_block(sumRL[m], bucket, pos, b);

    for (unsigned lam : admissible_lambdas(mu)) {
      // X = prod over m not in lambda of G_m equals
      // sum over admissible lambda'' subset of lambda of
      //   (prod over m not in lambda of theta(m, mu, lambda'')) P_{mu,lambda''}.
      DenseMat<Rational> X = DenseMat<Rational>::identity(b);
      for (int m = 1; m <= N; ++m)
        if (!(lam & (1u << (m - 1)))) X = X * G[m];
      DenseMat<Rational> expect(b, b);
      for (unsigned sub : admissible_lambdas(mu)) {
        if (sub & ~lam) continue;
        Rational c(1);
        for (int m = 1; m <= N; ++m) {
          if (lam & (1u << (m - 1))) continue;
          if (sub & (1u << (m - 1))) {
            c = 0;
            break;
          }
          c *= pow_rational(Rational(g.q), kappa(m, mu, sub));
        }
        if (c == 0) continue;
        const auto* blk = pf.find(mu, sub);
        for (int i = 0; i < b; ++i)
          for (int j = 0; j < b; ++j) expect.at(i, j) += c * blk->projector.get(bucket[i], bucket[j]);
      }
      if (!(X == expect)) {
        pass = false;
        wit = block_str(mu, lam);
        break;
      }
    }
    if (!pass) break;
  }
  add_check(cl, "h.projector_polynomials", pass, wit);
  return cl;
}

ChiFamily build_chi_basis(const Lattice& lat, long character_mult) {
  const Field& F = *lat.F;
  ChiFamily f;
  f.p = F.p();
  f.mult = ((character_mult % f.p) + f.p) % f.p;
  if (f.mult == 0) throw std::invalid_argument("build_chi_basis: character must be nontrivial");
  f.chi.resize(lat.size());
  for (const Location& mu : all_locations(lat.N)) {
    const auto& bucket = lat.bucket(mu);
    for (int y : bucket) {
      auto& vec = f.chi[y];
      if (mu.is_zero() || mu.is_one()) {
        vec.push_back({y, CycRational(1)});
        continue;
      }
      const FqMatrix& Y = lat.at(y).form;
      for (int z : bucket) {
        const FqMatrix& Z = lat.at(z).form;
        int s = 0;
        for (int i = 0; i < Y.nrows; ++i)
          for (int j = 0; j < Y.ncols; ++j) s = F.add(s, F.mul(Y.at(i, j), Z.at(i, j)));
        long tr = trace_to_prime(F, s);
        vec.push_back({z, character_value(f.p, f.mult * tr)});
      }
    }
  }
  return f;
}

CheckList chi_orthogonality(const Lattice& lat, const ChiFamily& f) {
  CheckList cl;
  bool pass = true;
  std::string wit;
  for (const Location& mu : all_locations(lat.N)) {
    const auto& bucket = lat.bucket(mu);
    CycRational norm(Rational(static_cast<long>(bucket.size())));
    for (size_t a = 0; a < bucket.size() && pass; ++a)
      for (size_t b = a; b < bucket.size(); ++b) {
        CycRational inner;
        const auto& u = f.chi[bucket[a]];
        const auto& v = f.chi[bucket[b]];
        for (size_t k = 0; k < u.size(); ++k) inner += u[k].second * v[k].second.conj();
        CycRational expect = (a == b) ? norm : CycRational(0);
        if (!(inner == expect)) {
          pass = false;
          wit = "mu=" + mu.to_string() + " y=" + std::to_string(bucket[a]) +
                " y'=" + std::to_string(bucket[b]);
          break;
        }
      }
    if (!pass) break;
  }
  add_check(cl, "chi.orthogonality", pass, wit);
  return cl;
}

CheckList chi_cross_check(const Lattice& lat, const Generators& g, const ProjectorFamily& pf,
                          const ChiFamily& f) {
  CheckList cl;
  int P = lat.size();
  std::vector<unsigned> types(P);
  for (int id = 0; id < P; ++id) types[id] = subspace_type_mask(lat, id);

  // (a) span{chi_y : type lambda} = range E_lambda.
  bool span_pass = true;
  std::string span_wit;
  for (const auto& [lam, E] : pf.E_lambda) {
    int rankE = 0;
    for (const auto& blk : pf.blocks)
      if (blk.lambda == lam) rankE += blk.basis.c;
    std::vector<int> ys;
    for (int id = 0; id < P; ++id)
      if (types[id] == lam) ys.push_back(id);
    if (static_cast<int>(ys.size()) != rankE) {
      span_pass = false;
      span_wit = "lambda=" + set_mask_str(lam) + " count=" + std::to_string(ys.size()) +
                 " rank=" + std::to_string(rankE);
      break;
    }
    // E_lambda fixes every chi_y of type lambda.
    for (int y : ys) {
      std::vector<CycRational> dense(P);
      for (const auto& [z, v] : f.chi[y]) dense[z] = v;
      std::vector<CycRational> image = apply_rational(E, dense);
      for (int i = 0; i < P; ++i)
        if (!(image[i] == dense[i])) {
          span_pass = false;
          span_wit = "E_lambda chi_y != chi_y at lambda=" + set_mask_str(lam) + " y=" + std::to_string(y);
          break;
        }
      if (!span_pass) break;
    }
    if (!span_pass) break;
    // Exact rank of the chi family over Q(zeta_p), bucket by bucket.
    for (const Location& mu : all_locations(lat.N)) {
      std::vector<int> ys_mu;
      for (int y : lat.bucket(mu))
        if (types[y] == lam) ys_mu.push_back(y);
      if (ys_mu.empty()) continue;
      std::vector<int> pos = bucket_pos(lat, mu);
      DenseMat<CycRational> M(static_cast<int>(lat.bucket(mu).size()),
                              static_cast<int>(ys_mu.size()));
      for (size_t j = 0; j < ys_mu.size(); ++j)
        for (const auto& [z, v] : f.chi[ys_mu[j]]) M.at(pos[z], static_cast<int>(j)) = v;
      if (rank_of(std::move(M)) != static_cast<int>(ys_mu.size())) {
        span_pass = false;
        span_wit = "chi rank drop at mu=" + mu.to_string() + " lambda=" + set_mask_str(lam);
        break;
      }
    }
    if (!span_pass) break;
  }
  add_check(cl, "chi.span_matches_E_lambda", span_pass, span_wit);

  // (b) L_m chi_y = 0 iff m in S_mu or m in lambda; (c) the R_m analogue.
  bool lv_pass = true, rv_pass = true;
  std::string lv_wit, rv_wit;
  for (int y = 0; y < P; ++y) {
    const Location& mu = lat.at(y).loc;
    std::vector<CycRational> dense(P);
    for (const auto& [z, v] : f.chi[y]) dense[z] = v;
    for (int m = 1; m <= g.N; ++m) {
      bool lzero = vec_is_zero_cyc(apply_rational(g.L[m], dense));
      bool lexpect = (mu.get(m) == 0) || ((types[y] >> (m - 1)) & 1u);
      if (lzero != lexpect && lv_pass) {
        lv_pass = false;
        lv_wit = "y=" + std::to_string(y) + " m=" + std::to_string(m);
      }
      bool rzero = vec_is_zero_cyc(apply_rational(g.R[m], dense));
      bool rexpect = (mu.get(m) == 1) || ((types[y] >> (m - 1)) & 1u);
      if (rzero != rexpect && rv_pass) {
        rv_pass = false;
        rv_wit = "y=" + std::to_string(y) + " m=" + std::to_string(m);
      }
    }
  }
  add_check(cl, "chi.L_vanishing", lv_pass, lv_wit);
  add_check(cl, "chi.R_vanishing", rv_pass, rv_wit);

  // (d) entry formula for L_m chi_y between interior locations.
  bool ef_pass = true;
  std::string ef_wit;
  const Field& F = *lat.F;
  for (int y = 0; y < P && ef_pass; ++y) {
    const Location& mu = lat.at(y).loc;
    if (mu.is_zero() || mu.is_one()) continue;
    const FqMatrix& Y = lat.at(y).form;
    std::vector<CycRational> dense(P);
    for (const auto& [z, v] : f.chi[y]) dense[z] = v;
    for (int m = 1; m <= g.N && ef_pass; ++m) {
      if (!mu.can_lower(m)) continue;
      Location nu = mu.lowered(m);
      if (nu.is_zero() || nu.is_one()) continue;
      std::vector<CycRational> image = apply_rational(g.L[m], dense);
      std::vector<int> S = mu.S_set(), Tn = nu.T_set();
      for (int z : lat.bucket(nu)) {
        const FqMatrix& Z = lat.at(z).form;
        bool cond = true;
        for (int s : S) {
          if (s >= m) continue;
          int rhs = 0;
          for (int t : Tn)
            rhs = F.add(rhs, F.mul(Y.at(Y.row_index(s), Y.col_index(t)),
                                   Z.at(Z.row_index(m), Z.col_index(t))));
          if (Y.at(Y.row_index(s), Y.col_index(m)) != rhs) {
            cond = false;
            break;
          }
        }
        CycRational expect;
        if (cond) {
          int dot = 0;
          for (int s : S)
            for (int t : Tn)
              dot = F.add(dot, F.mul(Y.at(Y.row_index(s), Y.col_index(t)),
                                     Z.at(Z.row_index(s), Z.col_index(t))));
          Rational coeff = pow_rational(Rational(lat.q), static_cast<long>(S_upto(mu, m - 1).size()));
          expect = CycRational(coeff) * character_value(f.p, f.mult * trace_to_prime(F, dot));
        }
        if (!(image[z] == expect)) {
          ef_pass = false;
          ef_wit = "y=" + std::to_string(y) + " m=" + std::to_string(m) + " z=" + std::to_string(z);
          break;
        }
      }
    }
  }
  add_check(cl, "chi.Lm_entry_formula", ef_pass, ef_wit);
  return cl;
}

std::vector<IrredDescriptor> decompose_standard_module(const ProjectorFamily& pf,
                                                       const Generators& g, const Lattice& lat,
                                                       CheckList& checks) {
  int P = lat.size();
  std::vector<IrredDescriptor> out;
  bool act_pass = true, mult_pass = true, nz_pass = true;
  std::string act_wit, mult_wit, nz_wit;
  Integer total(0);

  for (const auto& blk : pf.blocks) {
    if (!column_full(blk.mu, blk.lambda) || blk.basis.c == 0) continue;
    IrredDescriptor d;
    d.endpoint = blk.mu;
    d.shape = blk.lambda;
    d.multiplicity = blk.basis.c;
    d.formula_multiplicity = multiplicity_formula(blk.mu, blk.lambda, g.q);
    for (int m = 1; m <= g.N; ++m)
      if (!(blk.lambda & (1u << (m - 1)))) d.free_coords.push_back(m);
    unsigned free_mask = set_to_mask(d.free_coords);
    for (unsigned eps = 0; eps < (1u << g.N); ++eps)
      if ((eps & ~free_mask) == 0) d.eps_order.push_back(eps);
    d.dim = static_cast<int>(d.eps_order.size());

    if (d.multiplicity != d.formula_multiplicity && mult_pass) {
      mult_pass = false;
      mult_wit = block_str(blk.mu, blk.lambda) + " dim=" + to_string(d.multiplicity) +
                 " formula=" + to_string(d.formula_multiplicity);
    }

    // Basis w(eps) = R_N^{eps_N} ... R_1^{eps_1} v, built by raising the
    // largest set coordinate; v is the first block basis vector.
    std::map<unsigned, int> eps_col;
    for (size_t k = 0; k < d.eps_order.size(); ++k) eps_col[d.eps_order[k]] = static_cast<int>(k);
    d.basis = DenseMat<Rational>(P, d.dim);
    for (int i = 0; i < static_cast<int>(blk.point_ids.size()); ++i)
      d.basis.at(blk.point_ids[i], 0) = blk.basis.at(i, 0);
    for (unsigned eps : d.eps_order) {
      if (eps == 0) continue;
      int mtop = 32 - __builtin_clz(eps);  // largest set coordinate
      unsigned prev = eps & ~(1u << (mtop - 1));
      std::vector<Rational> w(P);
      for (int i = 0; i < P; ++i) w[i] = d.basis.at(i, eps_col[prev]);
      std::vector<Rational> img = apply_rational(g.R[mtop], w);
      for (int i = 0; i < P; ++i) d.basis.at(i, eps_col[eps]) = img[i];
    }

    auto col_vec = [&](int j) {
      std::vector<Rational> v(P);
      for (int i = 0; i < P; ++i) v[i] = d.basis.at(i, j);
      return v;
    };
    auto is_scaled_col = [&](const std::vector<Rational>& v, const Rational& c, int j) {
      for (int i = 0; i < P; ++i)
        if (v[i] != c * d.basis.at(i, j)) return false;
      return true;
    };
    auto is_zero_vec = [&](const std::vector<Rational>& v) {
      for (int i = 0; i < P; ++i)
        if (v[i] != 0) return false;
      return true;
    };

    for (unsigned eps : d.eps_order) {
      int jcol = eps_col[eps];
      std::vector<Rational> w = col_vec(jcol);
      if (is_zero_vec(w) && nz_pass) {
        nz_pass = false;
        nz_wit = block_str(blk.mu, blk.lambda) + " eps=" + std::to_string(eps);
      }
      for (int m = 1; m <= g.N; ++m) {
        long e_below = 0, e_above = 0;
        for (int i = 1; i < m; ++i)
          if (eps & (1u << (i - 1))) ++e_below;
        for (int i = m + 1; i <= g.N; ++i)
          if (eps & (1u << (i - 1))) ++e_above;
        // L_m action
        std::vector<Rational> lw = apply_rational(g.L[m], w);
        bool ok;
        if (eps & (1u << (m - 1))) {
          Rational c = pow_rational(Rational(g.q), kappa(m, blk.mu, blk.lambda) - e_below);
          ok = is_scaled_col(lw, c, eps_col[eps & ~(1u << (m - 1))]);
        } else {
          ok = is_zero_vec(lw);
        }
        if (!ok && act_pass) {
          act_pass = false;
          act_wit = block_str(blk.mu, blk.lambda) + " L_" + std::to_string(m) +
                    " eps=" + std::to_string(eps);
        }
        // R_m action
        std::vector<Rational> rw = apply_rational(g.R[m], w);
        bool raise_ok = !(eps & (1u << (m - 1))) && (free_mask & (1u << (m - 1)));
        if (raise_ok) {
          Rational c = pow_rational(Rational(g.q), e_above);
          ok = is_scaled_col(rw, c, eps_col[eps | (1u << (m - 1))]);
        } else {
          ok = is_zero_vec(rw);
        }
        if (!ok && act_pass) {
          act_pass = false;
          act_wit = block_str(blk.mu, blk.lambda) + " R_" + std::to_string(m) +
                    " eps=" + std::to_string(eps);
        }
        // K_m action: q^{1/2 - (mu_m + eps_m)}
        int em = (eps >> (m - 1)) & 1u;
        SqrtExt kc = q_half_pow(g.q, 1 - 2 * (blk.mu.get(m) + em));
        std::vector<SqrtExt> wl(P);
        for (int i = 0; i < P; ++i) wl[i] = SqrtExt(w[i]);
        std::vector<SqrtExt> kw(P);
        for (int i = 0; i < P; ++i)
          for (const auto& [j, a] : g.K[m].rows[i]) kw[i] += a * wl[j];
        bool kok = true;
        for (int i = 0; i < P; ++i)
          if (!(kw[i] == kc * wl[i])) {
            kok = false;
            break;
          }
        if (!kok && act_pass) {
          act_pass = false;
          act_wit = block_str(blk.mu, blk.lambda) + " K_" + std::to_string(m) +
                    " eps=" + std::to_string(eps);
        }
      }
    }
    total += d.multiplicity * Integer(d.dim);
    out.push_back(std::move(d));
  }
  add_check(checks, "decompose.basis_nonzero", nz_pass, nz_wit);
  add_check(checks, "decompose.LRK_actions", act_pass, act_wit);
  add_check(checks, "decompose.multiplicity_formula", mult_pass, mult_wit);
  add_check(checks, "decompose.sum_dim_mult", total == Integer(P),
            "sum=" + total.get_str() + " |P|=" + std::to_string(P));
  return out;
}

CheckList kernel_spaces(const Generators& g, const ProjectorFamily& pf, const Lattice& lat,
                        int* dim_new, int* dim_old) {
  CheckList cl;
  int N = g.N;
  int total_new = 0, total_old = 0;

  for (int side = 0; side < 2; ++side) {
    // side 0: V_new = ∩ ker L_m vs column-full blocks; side 1: V_old vs row-full.
    bool pass = true;
    std::string wit;
    int total = 0;
    for (const Location& mu : all_locations(N)) {
      const auto& bucket = lat.bucket(mu);
      int b = static_cast<int>(bucket.size());
      std::vector<int> pos = bucket_pos(lat, mu);

      // Stack the restrictions of all L_m (resp. R_m) leaving this bucket.
      std::vector<std::pair<int, int>> rows;  // (m, target id)
      for (int m = 1; m <= N; ++m) {
        bool moves = side == 0 ? mu.can_lower(m) : mu.can_raise(m);
        if (!moves) continue;
        Location tgt = side == 0 ? mu.lowered(m) : mu.raised(m);
        for (int id : lat.bucket(tgt)) rows.push_back({m, id});
      }
      DenseMat<Rational> stack(static_cast<int>(rows.size()), b);
      for (size_t r = 0; r < rows.size(); ++r) {
        const auto& [m, id] = rows[r];
        const SparseMat<Rational>& op = side == 0 ? g.L[m] : g.R[m];
        for (const auto& [j, v] : op.rows[id])
          if (pos[j] >= 0) stack.at(static_cast<int>(r), pos[j]) = v;
      }
      DenseMat<Rational> ker = nullspace(std::move(stack));
      int expected = 0;
      std::vector<DenseMat<Rational>> parts;
      for (const auto& blk : pf.blocks) {
        if (!(blk.mu == mu)) continue;
        bool fullside = side == 0 ? column_full(mu, blk.lambda) : row_full(mu, blk.lambda);
        if (!fullside) continue;
        expected += blk.basis.c;
        parts.push_back(blk.basis);
      }
      if (ker.c != expected) {
        pass = false;
        wit = "mu=" + mu.to_string() + " kernel=" + std::to_string(ker.c) +
              " blocks=" + std::to_string(expected);
        break;
      }
      // Mutual containment: [block bases | kernel] must have rank = dim.
      int cols = 0;
      for (const auto& p : parts) cols += p.c;
      DenseMat<Rational> both(b, cols + ker.c);
      int cj = 0;
      for (const auto& p : parts)
        for (int j = 0; j < p.c; ++j, ++cj)
          for (int i = 0; i < b; ++i) both.at(i, cj) = p.at(i, j);
      for (int j = 0; j < ker.c; ++j, ++cj)
        for (int i = 0; i < b; ++i) both.at(i, cj) = ker.at(i, j);
      if (rank_of(std::move(both)) != expected) {
        pass = false;
        wit = "mu=" + mu.to_string() + " span mismatch";
        break;
      }
      total += expected;
    }
    if (side == 0) {
      add_check(cl, "h.kernel.V_new", pass, wit);
      total_new = total;
    } else {
      add_check(cl, "h.kernel.V_old", pass, wit);
      total_old = total;
    }
  }
  if (dim_new) *dim_new = total_new;
  if (dim_old) *dim_old = total_old;
  return cl;
}

DenseMat<SqrtExt> restrict_operator(const SparseMat<SqrtExt>& A, const DenseMat<Rational>& B) {
  int P = B.r, D = B.c;
  // Leading coordinate of each column; columns must have disjoint supports.
  std::vector<int> lead(D, -1);
  for (int j = 0; j < D; ++j)
    for (int i = 0; i < P; ++i)
      if (B.at(i, j) != 0) {
        lead[j] = i;
        break;
      }
  DenseMat<SqrtExt> X(D, D);
  for (int j = 0; j < D; ++j) {
    std::vector<SqrtExt> u(P);
    for (int i = 0; i < P; ++i)
      for (const auto& [k, a] : A.rows[i])
        if (B.at(k, j) != 0) u[i] += a * SqrtExt(B.at(k, j));
    for (int k = 0; k < D; ++k) {
      if (lead[k] < 0) throw std::runtime_error("restrict_operator: zero basis column");
      X.at(k, j) = u[lead[k]] / SqrtExt(B.at(lead[k], k));
    }
    // Residual must vanish: A preserves the span and supports are disjoint.
    for (int i = 0; i < P; ++i) {
      SqrtExt acc = u[i];
      for (int k = 0; k < D; ++k)
        if (B.at(i, k) != 0) acc -= X.at(k, j) * SqrtExt(B.at(i, k));
      if (!acc.is_zero()) throw std::runtime_error("restrict_operator: span not preserved");
    }
  }
  return X;
}

int commutant_dimension(const std::vector<DenseMat<SqrtExt>>& mats) {
  if (mats.empty()) throw std::invalid_argument("commutant_dimension: no matrices");
  int D = mats[0].r;
  std::vector<const DenseMat<SqrtExt>*> diag, rest;
  for (const auto& M : mats) {
    bool is_diag = true;
    for (int i = 0; i < D && is_diag; ++i)
      for (int j = 0; j < D; ++j)
        if (i != j && !(M.at(i, j) == SqrtExt())) {
          is_diag = false;
          break;
        }
    (is_diag ? diag : rest).push_back(&M);
  }
  // X must vanish wherever joint diagonal patterns differ.
  std::vector<std::pair<int, int>> unknowns;
  std::vector<std::vector<int>> uidx(D, std::vector<int>(D, -1));
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      bool same = true;
      for (const auto* M : diag)
        if (!(M->at(i, i) == M->at(j, j))) {
          same = false;
          break;
        }
      if (same) {
        uidx[i][j] = static_cast<int>(unknowns.size());
        unknowns.push_back({i, j});
      }
    }
  int U = static_cast<int>(unknowns.size());

  // Incremental echelon over the unknowns; early exit at corank 1.
  std::vector<std::vector<SqrtExt>> ech;
  std::vector<int> pivots;
  auto reduce_insert = [&](std::vector<SqrtExt>& row) {
    for (size_t r = 0; r < ech.size(); ++r) {
      const SqrtExt& c = row[pivots[r]];
      if (c.is_zero()) continue;
      SqrtExt f = c;
      for (int k = 0; k < U; ++k)
        if (!ech[r][k].is_zero()) row[k] -= f * ech[r][k];
    }
    int p = -1;
    for (int k = 0; k < U; ++k)
      if (!row[k].is_zero()) {
        p = k;
        break;
      }
    if (p < 0) return false;
    SqrtExt inv = row[p].inverse();
    for (int k = p; k < U; ++k)
      if (!row[k].is_zero()) row[k] *= inv;
    ech.push_back(std::move(row));
    pivots.push_back(p);
    return true;
  };

  for (const auto* Mp : rest) {
    const auto& M = *Mp;
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        std::vector<SqrtExt> row(U);
        bool nonzero = false;
        for (int k = 0; k < D; ++k) {
          if (uidx[i][k] >= 0 && !(M.at(k, j) == SqrtExt())) {
            row[uidx[i][k]] += M.at(k, j);
            nonzero = true;
          }
          if (uidx[k][j] >= 0 && !(M.at(i, k) == SqrtExt())) {
            row[uidx[k][j]] -= M.at(i, k);
            nonzero = true;
          }
        }
        if (!nonzero) continue;
        reduce_insert(row);
        if (static_cast<int>(ech.size()) == U - 1) return 1;
      }
  }
  return U - static_cast<int>(ech.size());
}

int h_commutant_dimension(const Generators& g, const IrredDescriptor& d) {
  std::vector<DenseMat<SqrtExt>> mats;
  for (int m = 1; m <= g.N; ++m) {
    mats.push_back(restrict_operator(g.K[m], d.basis));
    mats.push_back(restrict_operator(convert_sparse<Rational, SqrtExt>(g.L[m]), d.basis));
    mats.push_back(restrict_operator(convert_sparse<Rational, SqrtExt>(g.R[m]), d.basis));
  }
  return commutant_dimension(mats);
}

}  // namespace flagalg
