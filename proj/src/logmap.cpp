#include "eis/logmap.hpp"

#include <cmath>

namespace eis {

namespace {

u64 isqrt_ceil(u64 n) {
  u64 r = (u64)std::sqrt((double)n);
  while (r * r < n) ++r;
  return r;
}

// index of y in <g> where g has prime order p (baby-step/giant-step)
u64 bsgs_prime_order(const FieldCtx& F, u64 y, u64 mstep,
                     const std::unordered_map<u64, u64>& baby, u64 giant, u64 p) {
  u64 cur = y;
  for (u64 i = 0; i * mstep < p + mstep; ++i) {
    auto it = baby.find(cur);
    if (it != baby.end()) {
      u64 e = i * mstep + it->second;
      return e % p;
    }
    cur = F.mul(cur, giant);
  }
  throw Error(ErrorKind::InternalInvariantViolation, "bsgs: element outside subgroup");
}

LogMap build(const FieldCtx& F, u64 p, int s, int t) {
  LogMap lm;
  lm.F = &F;
  lm.p = p;
  lm.r = s;
  lm.t = t;
  lm.v = valuation(F.N - 1, p) + valuation(F.N + 1, p);
  lm.modulus = upow(p, s);
  lm.cofactor_ = (F.N - 1) / lm.modulus;
  lm.base_ = F.pow(F.gen_fn, lm.cofactor_);
  lm.base_p_ = F.pow(lm.base_, upow(p, s - 1));
  lm.mstep_ = isqrt_ceil(p);
  u64 g = 1;
  for (u64 j = 0; j < lm.mstep_; ++j) {
    lm.baby_.emplace(g, j);
    g = F.mul(g, lm.base_p_);
  }
  lm.giant_ = F.inv(F.pow(lm.base_p_, lm.mstep_));
  return lm;
}

}  // namespace

u64 LogMap::log(u64 x) const {
  const FieldCtx& Fld = *F;
  x %= Fld.N;
  if (x == 0) throw Error(ErrorKind::RangeError, "log of zero");
  u64 y = Fld.pow(x, cofactor_);
  u64 e = 0;
  u64 base_inv = Fld.inv(base_);
  for (int i = 0; i < r; ++i) {
    u64 z = Fld.mul(y, Fld.pow(base_inv, e));
    u64 zi = Fld.pow(z, upow(p, (u64)(r - 1 - i)));
    u64 d = bsgs_prime_order(Fld, zi, mstep_, baby_, giant_, p);
    e += d * upow(p, i);
  }
  return e % modulus;
}

LogMap make_log(const FieldCtx& F, u64 p, int r) {
  if (!is_prime_u64(p)) throw Error(ErrorKind::BadPrime, "p must be prime");
  int t = eisenstein_t(F.N, p);
  if (t == 0) throw Error(ErrorKind::NotEisensteinPrime, "p does not divide numerator((N-1)/12)");
  if (r < 1 || r > t) throw Error(ErrorKind::RangeError, "need 1 <= r <= t");
  return build(F, p, r, t);
}

LogMap make_log_raw(const FieldCtx& F, u64 p, int s) {
  if (s < 1 || valuation(F.N - 1, p) < s)
    throw Error(ErrorKind::RangeError, "make_log_raw: p^s must divide N-1");
  return build(F, p, s, eisenstein_t(F.N, p));
}

Fq2LogMap extend_log_fq2(const LogMap& lm) {
  if (lm.p == 2)
    throw Error(ErrorKind::UnsupportedPrime, "no F_{N^2} extension at p = 2 (use TildeLambda)");
  Fq2LogMap ext;
  ext.F = lm.F;
  ext.base = lm.p == 3 ? make_log_raw(*lm.F, 3, lm.r + 1) : lm;
  ext.modulus = ext.base.modulus;
  ext.np1_inv = invmod((lm.F->N + 1) % ext.modulus, ext.modulus);
  return ext;
}

u64 TildeLambda::log(Fq2 z) const {
  const FieldCtx& Fld = *F;
  if (Fld.is_zero2(z)) throw Error(ErrorKind::RangeError, "log of zero");
  Fq2 y = Fld.pow2(z, cofactor);
  // digit-by-digit in the cyclic group of order 2^(t+3); digits are bits
  u64 e = 0;
  Fq2 base_inv = Fld.inv2(base);
  int bits = t + 3;
  for (int i = 0; i < bits; ++i) {
    Fq2 w = Fld.mul2(y, Fld.pow2(base_inv, e));
    Fq2 wi = Fld.pow2(w, 1ull << (bits - 1 - i));
    if (wi == Fld.one2()) {
      // bit 0
    } else if (wi == Fld.neg2(Fld.one2())) {
      e += 1ull << i;
    } else {
      throw Error(ErrorKind::InternalInvariantViolation, "tilde-lambda: bad 2-part");
    }
  }
  return mulmod(unit, e % modulus, modulus);
}

TildeLambda make_tilde_lambda(const FieldCtx& F) {
  int t = eisenstein_t(F.N, 2);
  if (t == 0) throw Error(ErrorKind::NotEisensteinPrime, "2 does not divide numerator((N-1)/12)");
  if (valuation(F.N * F.N - 1, 2) != t + 3)
    throw Error(ErrorKind::InternalInvariantViolation, "v_2(N^2-1) != t+3");
  TildeLambda tl;
  tl.F = &F;
  tl.t = t;
  tl.modulus = 1ull << (t + 3);
  tl.cofactor = (F.N * F.N - 1) / tl.modulus;
  tl.base = F.pow2(F.gen_fn2, tl.cofactor);
  // Normalize: on F_N^x the raw map equals 2*c*log' for some odd c; divide by c.
  u64 raw_g = tl.log(F.embed(F.gen_fn));
  if (raw_g % 2 != 0 || (raw_g / 2) % 2 == 0)
    throw Error(ErrorKind::InternalInvariantViolation, "tilde-lambda: unexpected restriction");
  u64 c = (raw_g / 2) % (tl.modulus / 2);
  tl.unit = invmod(c, tl.modulus);
  return tl;
}

}  // namespace eis
