#pragma once

#include <unordered_map>

#include "eis/field.hpp"

namespace eis {

// (N-1)/gcd(N-1,12), the numerator of (N-1)/12 in lowest terms.
inline u64 eisenstein_numerator(u64 N) { return (N - 1) / gcd_u64(N - 1, 12); }

// Primes p with p | numerator((N-1)/12), i.e. the Eisenstein primes of level N.
inline std::vector<u64> eisenstein_primes(u64 N) {
  std::vector<u64> ps;
  for (auto [p, e] : factorize(eisenstein_numerator(N))) {
    (void)e;
    ps.push_back(p);
  }
  return ps;
}

inline int eisenstein_t(u64 N, u64 p) { return valuation(eisenstein_numerator(N), p); }

// The fixed surjection log : (Z/NZ)^x -> Z/p^r Z, computed per query by
// Pohlig-Hellman relative to gen_fn, digit by digit with baby-step/giant-step
// in the order-p subgroup. log(gen_fn) = 1.
struct LogMap {
  const FieldCtx* F = nullptr;
  u64 p = 0;
  int r = 0;       // working modulus p^r
  int t = 0;       // v_p(numerator((N-1)/12))
  int v = 0;       // v_p(N^2-1)
  u64 modulus = 0; // p^r

  u64 log(u64 x) const;

  // internal Pohlig-Hellman state
  u64 base_ = 0;       // gen_fn^((N-1)/p^r), order p^r
  u64 base_p_ = 0;     // base_^(p^(r-1)), order p
  u64 cofactor_ = 0;   // (N-1)/p^r
  u64 mstep_ = 0;
  std::unordered_map<u64, u64> baby_;
  u64 giant_ = 0;      // base_p_^(-mstep_)
};

// Public constructor per the module contract: requires p | numerator((N-1)/12)
// and 1 <= r <= t.
LogMap make_log(const FieldCtx& F, u64 p, int r);

// Relaxed constructor at modulus p^s for any s with p^s | N-1; the canonical
// lift of make_log's map (same generator normalization). Used for the lifted
// moduli of the p = 2, 3 statements.
LogMap make_log_raw(const FieldCtx& F, u64 p, int s);

// Extension of log to F_{N^2}^x at the same modulus (p >= 5) or at the lifted
// modulus 3^(r+1) (p = 3): Log(z) = (N+1)^{-1} * log(Norm z), which restricts
// to the (lift of) log on F_N^x. p = 2 is rejected.
struct Fq2LogMap {
  const FieldCtx* F = nullptr;
  LogMap base;      // over F_N at the working modulus
  u64 modulus = 0;
  u64 np1_inv = 0;  // (N+1)^{-1} mod modulus

  u64 log(Fq2 z) const {
    u64 n = F->norm2(z);
    if (n == 0) throw Error(ErrorKind::RangeError, "Log of zero");
    return mulmod(np1_inv, base.log(n), modulus);
  }
  u64 log_fp(u64 x) const { return base.log(x); }
};

Fq2LogMap extend_log_fq2(const LogMap& lm);

// Surjection F_{N^2}^x -> Z/2^(t+3) normalized so that its restriction to
// F_N^x is twice the canonical lift of log (p = 2 only). Used by the p = 2
// supersingular verifier.
struct TildeLambda {
  const FieldCtx* F = nullptr;
  int t = 0;
  u64 modulus = 0;  // 2^(t+3)
  Fq2 base;         // gen_fn2^((N^2-1)/2^(t+3))
  u64 cofactor = 0;
  u64 unit = 1;     // normalizing unit

  u64 log(Fq2 z) const;
};

TildeLambda make_tilde_lambda(const FieldCtx& F);

}  // namespace eis
