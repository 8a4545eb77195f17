#include "eis/field.hpp"

namespace eis {

FieldCtx::FieldCtx(u64 N_) : N(N_) {
  if (!is_prime_u64(N)) throw Error(ErrorKind::CompositeModulus, "N is not prime");
  if (N < 5) throw Error(ErrorKind::BadPrime, "N must be >= 5");

  fac_n_minus_1 = factorize(N - 1);
  // N^2 - 1 = (N-1)(N+1); merge the factorizations
  fac_n2_minus_1 = fac_n_minus_1;
  for (auto [p, e] : factorize(N + 1)) {
    bool found = false;
    for (auto& [q, f] : fac_n2_minus_1) {
      if (q == p) {
        f += e;
        found = true;
      }
    }
    if (!found) fac_n2_minus_1.push_back({p, e});
  }

  for (u64 q = 2;; ++q) {
    if (powmod(q, (N - 1) / 2, N) == N - 1) {
      nonresidue = q;
      break;
    }
  }
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (auto [q, e] : fac_n_minus_1) {
      (void)e;
      if (powmod(g, (N - 1) / q, N) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen_fn = g;
      break;
    }
  }
  // Smallest (a,b) in lex order generating F_{N^2}^x. Elements with b=0 lie in
  // F_N and cannot have full order.
  u64 q2m1 = N * N - 1;
  for (u64 a = 0; a < N && gen_fn2 == Fq2{}; ++a) {
    for (u64 b = 1; b < N; ++b) {
      Fq2 cand{a, b};
      bool ok = true;
      for (auto [q, e] : fac_n2_minus_1) {
        (void)e;
        if (pow2(cand, q2m1 / q) == one2()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen_fn2 = cand;
        break;
      }
    }
  }
}

bool FieldCtx::is_square(u64 a) const { return powmod(a % N, (N - 1) / 2, N) == 1; }

u64 FieldCtx::mult_order(u64 a) const {
  u64 ord = N - 1;
  for (auto [q, e] : fac_n_minus_1) {
    for (int i = 0; i < e; ++i) {
      if (powmod(a, ord / q, N) == 1)
        ord /= q;
      else
        break;
    }
  }
  return ord;
}

u64 FieldCtx::order2(Fq2 u) const {
  u64 ord = N * N - 1;
  for (auto [q, e] : fac_n2_minus_1) {
    for (int i = 0; i < e; ++i) {
      if (pow2(u, ord / q) == one2())
        ord /= q;
      else
        break;
    }
  }
  return ord;
}

u64 FieldCtx::sqrt_fp(u64 a) const {
  a %= N;
  if (a == 0) return 0;
  if (!is_square(a)) throw Error(ErrorKind::RangeError, "sqrt_fp: not a square");
  if (N % 4 == 3) return powmod(a, (N + 1) / 4, N);
  // Tonelli-Shanks, with the precomputed nonresidue as the 2-power generator
  u64 q = N - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = powmod(nonresidue, q, N);
  u64 m = (u64)s;
  u64 c = z;
  u64 t = powmod(a, q, N);
  u64 r = powmod(a, (q + 1) / 2, N);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, N);
      ++i;
      if (i == m) throw Error(ErrorKind::InternalInvariantViolation, "sqrt_fp failed");
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, N);
    m = i;
    c = mulmod(b, b, N);
    t = mulmod(t, c, N);
    r = mulmod(r, b, N);
  }
  return r;
}

Fq2 FieldCtx::sqrt_fq2(Fq2 u) const {
  if (is_zero2(u)) return u;
  if (!is_square2(u)) throw Error(ErrorKind::RangeError, "sqrt_fq2: not a square");
  // Tonelli-Shanks in the cyclic group of order N^2-1; gen_fn2 is a nonsquare.
  u64 Q = N * N - 1;
  int s = 0;
  while ((Q & 1) == 0) {
    Q >>= 1;
    ++s;
  }
  Fq2 z = pow2(gen_fn2, Q);
  u64 m = (u64)s;
  Fq2 c = z;
  Fq2 t = pow2(u, Q);
  Fq2 r = pow2(u, (Q + 1) / 2);
  while (!(t == one2())) {
    Fq2 t2 = t;
    u64 i = 0;
    while (!(t2 == one2())) {
      t2 = mul2(t2, t2);
      ++i;
      if (i == m) throw Error(ErrorKind::InternalInvariantViolation, "sqrt_fq2 failed");
    }
    Fq2 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mul2(b, b);
    m = i;
    c = mul2(b, b);
    t = mul2(t, c);
    r = mul2(r, b);
  }
  return r;
}

}  // namespace eis
