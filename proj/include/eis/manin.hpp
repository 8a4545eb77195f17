#pragma once

#include <array>
#include <chrono>
#include <map>
#include <optional>

#include "eis/criteria.hpp"
#include "eis/zpr.hpp"

namespace eis {

using Mat22 = std::array<i64, 4>;  // row-major (a b; c d)

// P^1(Z/NZ): indices 0..N-1 are [i:1], index N is [1:0].
struct P1Index {
  u64 N = 0;
  explicit P1Index(u64 N_) : N(N_) {}
  int size() const { return (int)N + 1; }
  int normalize(i64 c, i64 d) const {
    u64 cr = ((c % (i64)N) + (i64)N) % (i64)N;
    u64 dr = ((d % (i64)N) + (i64)N) % (i64)N;
    if (dr != 0) return (int)mulmod(cr, invmod(dr, N), N);
    if (cr == 0) throw Error(ErrorKind::BadIndex, "[0:0] is not in P^1");
    return (int)N;
  }
  std::pair<u64, u64> rep(int idx) const {
    return idx == (int)N ? std::pair<u64, u64>{1, 0} : std::pair<u64, u64>{(u64)idx, 1};
  }
  // right action on the row vector (c d)
  int act(int idx, const Mat22& m) const {
    auto [c, d] = rep(idx);
    return normalize((i64)c * m[0] + (i64)d * m[2], (i64)c * m[1] + (i64)d * m[3]);
  }
};

// Merel's matrix set X_n: integer matrices (a b; c d), a > b >= 0, d > c >= 0,
// ad - bc = n.
std::vector<Mat22> merel_matrices(u64 n, u64 N);

struct Deadline {
  std::chrono::steady_clock::time_point at;
  bool enabled = false;
  void check() const {
    if (enabled && std::chrono::steady_clock::now() > at)
      throw Error(ErrorKind::BudgetExceeded, "per-item time budget exceeded");
  }
};

// Presentation of V = H_1(X_0(N), cusps; Z/p^r)_+ from the free module on
// P^1(Z/NZ) modulo the sigma-, tau- and iota-relations.
struct ManinSpace {
  const FieldCtx* F = nullptr;
  P1Index p1{1};
  u64 p = 0;
  int r = 0, t = 0;
  u64 M = 0;  // p^r
  size_t dim = 0;
  u64 genus = 0;

  // per P^1 index: projection into V (empty vector = zero class)
  std::vector<Vec> project_table;
  std::vector<int> lift_p1;  // basis index -> P^1 index
  std::vector<i64> bnd_free; // boundary functional on P^1 generators

  std::map<u64, std::vector<Vec>> hecke_cache;  // n -> matrix on V

  Vec project(int p1_idx) const { return project_table[(size_t)p1_idx]; }
  u64 boundary(const Vec& v) const;
};

ManinSpace build_manin_space(const FieldCtx& F, u64 p, int r);

u64 genus_x0_prime(u64 N);

// Matrix of T_n on V via Merel's matrices; asserts that the relation
// generators map to zero (NotWellDefined otherwise). Cached.
const std::vector<Vec>& hecke_tn(ManinSpace& ms, u64 n);

// Matrix of the Atkin-Lehner involution w_N on V, computed by converting
// {W g(0), W g(infty)} to Manin symbols with the continued-fraction trick.
std::vector<Vec> atkin_lehner(ManinSpace& ms);

// Modular symbol {oo, a/b} as a vector in V (continued-fraction convergents).
Vec modsym_from_infinity(const ManinSpace& ms, i64 a, i64 b);

struct F0Result {
  Vec m0;                 // the Eisenstein generator in V
  std::vector<i64> k0;    // exact integer coefficient data per P^1 index (24 F_0)
};

// m_0^+ from the lattice-count coefficients; verifies the eta_ell
// annihilation for ell <= 13, the exact rational boundary (N-1)/12, and
// m_0^+ not in pV. Throws VerificationFailed.
F0Result f0_element(ManinSpace& ms);

// m_1^+ from the log-weighted coefficients; verifies
// (T_ell - ell - 1) m_1^+ = ((ell-1)/2) log(ell) m_0^+ for ell <= 13 and the
// boundary value (1/3) sum k log k.
Vec f1_element(ManinSpace& ms, const LogMap& lm, const Vec& m0);

struct EisensteinFiltration {
  Vec e0;
  std::vector<u64> ideal_gen_primes;
  int n_rp = 0;
  std::vector<size_t> chain_ranks;   // rank of I^k V for k = 0,1,...
  bool kernel_chain_checked = false; // r = 1 cross-validation ran and agreed
};

EisensteinFiltration eisenstein_filtration(ManinSpace& ms, const Vec& e0,
                                           std::vector<u64> gen_primes = {},
                                           u64 gens_max_prime = 31,
                                           bool with_atkin_lehner = false,
                                           Deadline deadline = {});

struct NewtonInvariants {
  u64 N = 0, p = 0;
  int t = 0;
  std::vector<int> n_rp;  // index r-1, r = 1..t
  std::vector<int> z;     // z_i for i = 1..n(1,p)
};

NewtonInvariants newton_invariants(const FieldCtx& F, u64 p, u64 gens_max_prime = 31,
                                   bool with_atkin_lehner = false, Deadline deadline = {});

// p = 2 companion: the integral lattice-count coefficients 12 F_{0,2} and
// their verifications (antisymmetry, Gauss-lemma congruence, agreement with
// the generic-p coefficients).
struct F02Result {
  std::vector<i64> twelve_f02;  // per P^1 index
  std::vector<IdentityVerdict> checks;
};
F02Result f02_element(const FieldCtx& F);

}  // namespace eis
