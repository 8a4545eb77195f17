#include <algorithm>

#include "eis/manin.hpp"

namespace eis {

namespace {

// K0(x) = sum over (u,w) in [1,N-1]^2 with (d-c)u + (d+c)w = 0 mod N of
// (-1)^(u+w). The double sum over (Z/2N)^2 with alternating B_1 weights
// collapses to K0/4, so 6 F_0(x) = K0(x)/4 and the coefficient of m_0^+ is
// K0(x)/24.
i64 f0_coeff_k0(const FieldCtx& F, i64 c, i64 d) {
  const u64 N = F.N;
  u64 dc = F.reduce_int(d - c), dpc = F.reduce_int(d + c);
  if (dc == 0 || dpc == 0) return 0;  // [1:1], [-1:1]
  u64 slope = F.mul(F.neg(dpc), F.inv(dc));  // u = slope * w
  i64 k0 = 0;
  for (u64 w = 1; w < N; ++w) {
    u64 u = F.mul(slope, w);
    if (u == 0) continue;
    k0 += ((u + w) % 2 == 0) ? 1 : -1;
  }
  return k0;
}

bool vec_is_zero(const Vec& v) {
  for (u64 c : v)
    if (c) return false;
  return true;
}

Vec apply_eta(const ManinSpace& ms, const std::vector<Vec>& tmat, u64 ell, const Vec& v) {
  Vec w = mat_apply(tmat, v, ms.M);
  u64 c = (ell + 1) % ms.M;
  for (size_t i = 0; i < w.size(); ++i) w[i] = submod(w[i], mulmod(c, v[i], ms.M), ms.M);
  return w;
}

}  // namespace

F0Result f0_element(ManinSpace& ms) {
  const FieldCtx& F = *ms.F;
  const u64 N = F.N;
  F0Result res;
  res.k0.resize((size_t)ms.p1.size());
  res.m0.assign(ms.dim, 0);
  for (int x = 0; x < ms.p1.size(); ++x) {
    auto [c, d] = ms.p1.rep(x);
    res.k0[(size_t)x] = f0_coeff_k0(F, (i64)c, (i64)d);
  }
  // exact rational boundary: 2 F_0([1:0]) = (N-1)/12, i.e. K0([1:0]) = N-1,
  // and K0([0:1]) = -K0([1:0])
  i64 k_inf = res.k0[(size_t)ms.p1.normalize(1, 0)];
  i64 k_zero = res.k0[(size_t)ms.p1.normalize(0, 1)];
  if (k_inf != (i64)(N - 1) || k_zero != -k_inf)
    throw Error(ErrorKind::VerificationFailed, "f0 boundary is not (N-1)/12");

  u64 inv24 = invmod(24 % ms.M, ms.M);
  for (int x = 0; x < ms.p1.size(); ++x) {
    if (res.k0[(size_t)x] == 0) continue;
    u64 coef = mulmod((u64)(((res.k0[(size_t)x] % (i64)ms.M) + (i64)ms.M) % (i64)ms.M),
                      inv24, ms.M);
    const Vec& pr = ms.project_table[(size_t)x];
    for (size_t k = 0; k < ms.dim; ++k)
      res.m0[k] = addmod(res.m0[k], mulmod(coef, pr[k], ms.M), ms.M);
  }

  for (u64 ell : {2, 3, 5, 7, 11, 13}) {
    if (ell == N) continue;
    if (!vec_is_zero(apply_eta(ms, hecke_tn(ms, ell), ell, res.m0)))
      throw Error(ErrorKind::VerificationFailed, "m_0^+ not annihilated by T_l - l - 1");
  }
  bool unit_coeff = false;
  for (u64 c : res.m0)
    if (c % ms.p != 0) unit_coeff = true;
  if (!unit_coeff) throw Error(ErrorKind::VerificationFailed, "m_0^+ lies in pV");
  u64 want = rational_mod((i64)(N - 1), 12, ms.p, ms.M);
  if (ms.boundary(res.m0) != want)
    throw Error(ErrorKind::VerificationFailed, "m_0^+ boundary mismatch mod p^r");
  return res;
}

Vec f1_element(ManinSpace& ms, const LogMap& lm, const Vec& m0) {
  const FieldCtx& F = *ms.F;
  const u64 N = F.N;
  const u64 M = ms.M;
  if (lm.modulus != M || lm.F != ms.F)
    throw Error(ErrorKind::RangeError, "log map modulus mismatch");

  std::vector<u64> lg(N, 0);  // log0: log(v) for v != 0, 0 at v = 0
  for (u64 v = 1; v < N; ++v) lg[v] = lm.log(v);

  const u64 m = (N - 1) / 2;
  Vec m1(ms.dim, 0);
  std::vector<u64> h((size_t)N);  // h(c) = sum_{j=1..m} log0(c + B j)

  for (int x = 0; x < ms.p1.size(); ++x) {
    auto [cc, dd] = ms.p1.rep(x);
    i64 c = (i64)cc, d = (i64)dd;
    u64 dc = F.reduce_int(d - c), dpc = F.reduce_int(d + c);
    if (dc == 0) continue;  // F_1([1:1]) = 0
    u64 inv_dc = F.inv(dc);

    // congruence part: for w in [1,N-1], u0 = -dpc w / dc; weight (-1)^(u0+w)
    u64 cong = 0;
    if (dpc != 0) {
      u64 slope = F.mul(F.neg(dpc), inv_dc);
      for (u64 w = 1; w < N; ++w) {
        u64 u = F.mul(slope, w);
        if (u == 0) continue;
        u64 term = lg[F.mul(w, inv_dc)];
        cong = ((u + w) % 2 == 0) ? addmod(cong, term, M) : submod(cong, term, M);
      }
    }

    // complement part: S2 = sum_u (-1)^u [h(dc u) - h(dc u - dpc)] with
    // h(c) = sum_{j=1..m} log0(c + B j), B = 2 dpc
    u64 s2 = 0;
    u64 B = F.add(dpc, dpc);
    if (B == 0) {
      s2 = 0;  // E(u) = O(u) termwise
    } else {
      u64 h0 = 0;
      for (u64 j = 1; j <= m; ++j) h0 = addmod(h0, lg[F.mul(B, j)], M);
      u64 cval = 0;
      u64 mB = F.mul(m % N, B);
      for (u64 step = 0;; ++step) {
        h[(size_t)cval] = h0;
        if (step + 1 == N) break;
        // h(c - B) = h(c) + log0(c) - log0(c + mB)
        u64 cnext = F.sub(cval, B);
        h0 = submod(addmod(h0, lg[cval], M), lg[F.add(cval, mB)], M);
        cval = cnext;
      }
      for (u64 u = 1; u < N; ++u) {
        u64 du = F.mul(dc, u);
        u64 inner = submod(h[(size_t)du], h[(size_t)F.sub(du, dpc)], M);
        s2 = (u % 2 == 0) ? addmod(s2, inner, M) : submod(s2, inner, M);
      }
    }

    // 12 F_1(x) = (cong - s2)/4
    u64 coef = mulmod(submod(cong, s2, M), invmod(48 % M, M), M);
    if (coef == 0) continue;
    const Vec& pr = ms.project_table[(size_t)x];
    for (size_t k = 0; k < ms.dim; ++k)
      m1[k] = addmod(m1[k], mulmod(coef, pr[k], M), M);
  }

  // (T_l - l - 1) m_1^+ = ((l-1)/2) log(l) m_0^+ for small l
  u64 inv2 = invmod(2 % M, M);
  for (u64 ell : {2, 3, 5, 7, 11, 13}) {
    if (ell == N) continue;
    Vec lhs = apply_eta(ms, hecke_tn(ms, ell), ell, m1);
    u64 scal = mulmod(mulmod((ell - 1) % M, inv2, M), lm.log(ell % N), M);
    for (size_t k = 0; k < ms.dim; ++k)
      lhs[k] = submod(lhs[k], mulmod(scal, m0[k], M), M);
    if (!vec_is_zero(lhs))
      throw Error(ErrorKind::VerificationFailed, "m_1^+ Hecke relation failed");
  }
  u64 a1 = merel_sum(lm, 1);
  if (ms.boundary(m1) != mulmod(invmod(3 % M, M), a1, M))
    throw Error(ErrorKind::VerificationFailed, "m_1^+ boundary mismatch");
  return m1;
}

namespace {

// ranks of the chain W_k = I^k V and the largest k with e0 in W_k
struct ChainResult {
  std::vector<HowellForm> chain;  // W_0, W_1, ...
  int n_e0 = -1;
};

ChainResult run_chain(ManinSpace& ms, const Vec& e0, const std::vector<u64>& gens,
                      bool with_w, const Deadline& deadline) {
  ZprRing R(ms.p, ms.r);
  std::vector<const std::vector<Vec>*> etas;
  std::vector<std::vector<Vec>> eta_store;
  for (u64 ell : gens) {
    const auto& T = hecke_tn(ms, ell);
    std::vector<Vec> eta = T;
    u64 c = (ell + 1) % ms.M;
    for (size_t i = 0; i < ms.dim; ++i) eta[i][i] = submod(eta[i][i], c, ms.M);
    eta_store.push_back(std::move(eta));
  }
  if (with_w) {
    std::vector<Vec> w = atkin_lehner(ms);
    for (size_t i = 0; i < ms.dim; ++i) w[i][i] = addmod(w[i][i], 1, ms.M);  // w_N + 1
    eta_store.push_back(std::move(w));
  }
  for (const auto& e : eta_store) etas.push_back(&e);

  ChainResult res;
  // W_0 = V
  HowellForm W(R, ms.dim);
  for (size_t i = 0; i < ms.dim; ++i) {
    Vec v(ms.dim, 0);
    v[i] = 1;
    W.insert(std::move(v));
  }
  res.chain.push_back(W);
  res.n_e0 = 0;
  for (int k = 1;; ++k) {
    deadline.check();
    const HowellForm& prev = res.chain.back();
    HowellForm next(R, ms.dim);
    for (const auto* eta : etas)
      for (const auto& row : prev.rows) next.insert(mat_apply(*eta, row, ms.M));
    bool stable = next.same_span(prev);
    bool has_e0 = next.contains(e0);
    res.chain.push_back(std::move(next));
    if (has_e0) res.n_e0 = k;
    if (stable || !has_e0) break;
    if (k > (int)(ms.dim * (size_t)ms.r) + 4)
      throw Error(ErrorKind::InternalInvariantViolation, "filtration failed to terminate");
  }
  return res;
}

bool chains_equal(const ChainResult& a, const ChainResult& b) {
  if (a.n_e0 != b.n_e0) return false;
  size_t n = std::min(a.chain.size(), b.chain.size());
  for (size_t k = 0; k < n; ++k)
    if (!a.chain[k].same_span(b.chain[k])) return false;
  return true;
}

// dim V[I^k] over F_p for k = 1, 2, ... until the plateau (r = 1 only)
std::vector<size_t> kernel_chain_dims(ManinSpace& ms, const std::vector<u64>& gens) {
  const u64 p = ms.p;
  std::vector<std::vector<Vec>> etas;
  for (u64 ell : gens) {
    std::vector<Vec> eta = hecke_tn(ms, ell);
    u64 c = (ell + 1) % p;
    for (size_t i = 0; i < ms.dim; ++i) eta[i][i] = submod(eta[i][i], c, p);
    etas.push_back(std::move(eta));
  }
  std::vector<size_t> dims;
  std::vector<Vec> kernel_basis;  // of V[I^k]
  {
    std::vector<Vec> stacked;
    for (const auto& eta : etas)
      for (const auto& row : eta) stacked.push_back(row);
    kernel_basis = fp_kernel(stacked, ms.dim, p);
  }
  dims.push_back(kernel_basis.size());
  for (;;) {
    // K_{j+1} = {v : eta v in K_j for all eta} = ker(stack of Q eta)
    auto Q = fp_annihilator(kernel_basis, ms.dim, p);
    std::vector<Vec> stacked;
    for (const auto& eta : etas) {
      auto qe = mat_mul(Q, eta, p);
      for (auto& row : qe) stacked.push_back(std::move(row));
    }
    auto next = fp_kernel(stacked, ms.dim, p);
    if (next.size() == kernel_basis.size()) break;
    kernel_basis = std::move(next);
    dims.push_back(kernel_basis.size());
    if (dims.size() > ms.dim + 2)
      throw Error(ErrorKind::InternalInvariantViolation, "kernel chain failed to stabilize");
  }
  return dims;
}

}  // namespace

EisensteinFiltration eisenstein_filtration(ManinSpace& ms, const Vec& e0,
                                           std::vector<u64> gen_primes, u64 gens_max_prime,
                                           bool with_atkin_lehner, Deadline deadline) {
  if (gen_primes.empty()) gen_primes = {2, 3, 5, 7, 11, 13};
  gen_primes.erase(std::remove(gen_primes.begin(), gen_primes.end(), ms.F->N),
                   gen_primes.end());

  // e0 must span V[I-tilde] direction: eta e0 = 0 for all generators
  for (u64 ell : gen_primes) {
    Vec w = mat_apply(hecke_tn(ms, ell), e0, ms.M);
    u64 c = (ell + 1) % ms.M;
    for (size_t i = 0; i < ms.dim; ++i) w[i] = submod(w[i], mulmod(c, e0[i], ms.M), ms.M);
    if (!vec_is_zero(w))
      throw Error(ErrorKind::VerificationFailed, "e0 not annihilated by the Eisenstein ideal");
  }

  ChainResult cur = run_chain(ms, e0, gen_primes, with_atkin_lehner, deadline);
  // grow the generator set until two consecutive enlargements leave the whole
  // chain unchanged
  int stable_rounds = 0;
  u64 next_prime = gen_primes.back();
  std::vector<u64> gens = gen_primes;
  while (stable_rounds < 2) {
    do {
      ++next_prime;
    } while (!is_prime_u64(next_prime) || next_prime == ms.F->N);
    if (next_prime > gens_max_prime)
      throw Error(ErrorKind::GeneratorInstability,
                  "filtration chain not stable within the generator prime bound");
    gens.push_back(next_prime);
    deadline.check();
    ChainResult bigger = run_chain(ms, e0, gens, with_atkin_lehner, deadline);
    if (chains_equal(cur, bigger)) {
      ++stable_rounds;
    } else {
      stable_rounds = 0;
      cur = std::move(bigger);
    }
  }

  EisensteinFiltration out;
  out.e0 = e0;
  out.ideal_gen_primes = gens;
  out.n_rp = cur.n_e0;
  for (const auto& W : cur.chain) out.chain_ranks.push_back(W.rank());

  if (ms.r == 1) {
    auto dims = kernel_chain_dims(ms, gens);
    // dim V[I^k] must be exactly k up to the plateau n(1,p)+1
    bool ok = true;
    for (size_t k = 0; k < dims.size(); ++k)
      if (dims[k] != std::min(k + 1, (size_t)out.n_rp + 1)) ok = false;
    if (dims.back() != (size_t)out.n_rp + 1) ok = false;
    if (!ok)
      throw Error(ErrorKind::VerificationFailed,
                  "kernel-growth chain disagrees with the power-chain rank");
    out.kernel_chain_checked = true;
  }
  return out;
}

NewtonInvariants newton_invariants(const FieldCtx& F, u64 p, u64 gens_max_prime,
                                   bool with_atkin_lehner, Deadline deadline) {
  if (p < 5) throw Error(ErrorKind::UnsupportedPrime, "newton_invariants needs p >= 5");
  NewtonInvariants out;
  out.N = F.N;
  out.p = p;
  out.t = eisenstein_t(F.N, p);
  for (int r = 1; r <= out.t; ++r) {
    ManinSpace ms = build_manin_space(F, p, r);
    F0Result f0 = f0_element(ms);
    auto filt =
        eisenstein_filtration(ms, f0.m0, {}, gens_max_prime, with_atkin_lehner, deadline);
    out.n_rp.push_back(filt.n_rp);
  }
  for (int r = 2; r <= out.t; ++r)
    if (out.n_rp[(size_t)r - 1] > out.n_rp[(size_t)r - 2])
      throw Error(ErrorKind::VerificationFailed, "n(r,p) not non-increasing in r");
  for (int i = 1; i <= out.n_rp[0]; ++i) {
    int zi = 0;
    for (int r = 1; r <= out.t; ++r)
      if (out.n_rp[(size_t)r - 1] >= i) zi = r;
    out.z.push_back(zi);
  }
  return out;
}

F02Result f02_element(const FieldCtx& F) {
  const u64 N = F.N;
  if (N % 8 != 1) throw Error(ErrorKind::NotEisensteinPrime, "p = 2 needs N = 1 mod 8");
  const u64 m = (N - 1) / 2;
  F02Result out;
  P1Index p1(N);
  out.twelve_f02.resize((size_t)p1.size());

  // count(x) = #{(s1,s2) in [1,m]^2 : (d-c)s1 + (d+c)s2 = 0 mod N};
  // 12 F_{0,2} = -(N-1) + 4 count
  auto count_of = [&](u64 dc, u64 dpc) -> i64 {
    if (dc == 0 || dpc == 0) return 0;
    u64 slope = F.mul(F.neg(dpc), F.inv(dc));  // s1 = slope * s2
    i64 cnt = 0;
    for (u64 s2 = 1; s2 <= m; ++s2) {
      u64 s1 = F.mul(slope, s2);
      if (s1 >= 1 && s1 <= m) ++cnt;
    }
    return cnt;
  };
  std::vector<i64> counts((size_t)p1.size());
  for (int x = 0; x < p1.size(); ++x) {
    auto [c, d] = p1.rep(x);
    u64 dc = F.reduce_int((i64)d - (i64)c), dpc = F.reduce_int((i64)d + (i64)c);
    counts[(size_t)x] = count_of(dc, dpc);
    out.twelve_f02[(size_t)x] =
        (dc == 0 || dpc == 0) ? 0 : -(i64)(N - 1) + 4 * counts[(size_t)x];
  }

  // antisymmetry F_{0,2}([-d:c]) = -F_{0,2}([c:d]) away from [1:1], [-1:1]
  {
    bool ok = true;
    for (int x = 0; x < p1.size(); ++x) {
      auto [c, d] = p1.rep(x);
      u64 dc = F.reduce_int((i64)d - (i64)c), dpc = F.reduce_int((i64)d + (i64)c);
      if (dc == 0 || dpc == 0) continue;
      int y = p1.normalize(-(i64)d, (i64)c);
      if (out.twelve_f02[(size_t)x] != -out.twelve_f02[(size_t)y]) ok = false;
    }
    out.checks.push_back({"f02:antisymmetry", ok});
  }

  // Gauss-lemma congruence: count([x:1]) = log((x+1)/(x-1)) mod 2
  {
    LogMap lm = make_log(F, 2, 1);
    bool ok = true;
    for (u64 x = 2; x <= N - 2; ++x) {
      i64 cnt = counts[(size_t)p1.normalize((i64)x, 1)];
      u64 val = F.mul(F.add(x, 1), F.inv(F.sub(x, 1)));
      if ((u64)(cnt & 1) != lm.log(val) % 2) ok = false;
    }
    out.checks.push_back({"f02:gauss-lemma", ok});
  }

  // agreement with the generic-p lattice sum: K0(x) = -2(N-1) + 8 count(x)
  {
    bool ok = true;
    for (int x = 0; x < p1.size(); ++x) {
      auto [c, d] = p1.rep(x);
      u64 dc = F.reduce_int((i64)d - (i64)c), dpc = F.reduce_int((i64)d + (i64)c);
      if (dc == 0 || dpc == 0) continue;
      i64 k0 = f0_coeff_k0(F, (i64)c, (i64)d);
      if (k0 != -2 * (i64)(N - 1) + 8 * counts[(size_t)x]) ok = false;
    }
    out.checks.push_back({"f02:matches-generic-f0", ok});
  }
  return out;
}

}  // namespace eis
