#pragma once

#include <vector>

#include "eis/modarith.hpp"

namespace eis {

// F_N together with its quadratic extension F_{N^2} = F_N[x]/(x^2 - nonresidue).
// All choices are deterministic: smallest nonresidue, smallest generators.
struct FieldCtx {
  u64 N = 0;
  u64 nonresidue = 0;
  u64 gen_fn = 0;
  std::vector<std::pair<u64, int>> fac_n_minus_1;
  std::vector<std::pair<u64, int>> fac_n2_minus_1;

  struct Fq2 {
    u64 a = 0, b = 0;  // a + b*x
    bool operator==(const Fq2&) const = default;
    bool operator<(const Fq2& o) const { return a != o.a ? a < o.a : b < o.b; }
  };
  Fq2 gen_fn2;

  explicit FieldCtx(u64 N_);

  u64 add(u64 a, u64 b) const { return addmod(a, b, N); }
  u64 sub(u64 a, u64 b) const { return submod(a, b, N); }
  u64 neg(u64 a) const { return negmod(a, N); }
  u64 mul(u64 a, u64 b) const { return mulmod(a, b, N); }
  u64 inv(u64 a) const { return invmod(a, N); }
  u64 pow(u64 a, u64 e) const { return powmod(a, e, N); }
  u64 reduce_int(i64 v) const {
    i64 r = v % (i64)N;
    return r < 0 ? (u64)(r + (i64)N) : (u64)r;
  }

  bool is_square(u64 a) const;     // nonzero a
  u64 sqrt_fp(u64 a) const;        // Tonelli-Shanks; requires a square
  u64 mult_order(u64 a) const;     // order in F_N^x

  Fq2 embed(u64 a) const { return Fq2{a % N, 0}; }
  Fq2 zero2() const { return Fq2{0, 0}; }
  Fq2 one2() const { return Fq2{1, 0}; }
  Fq2 add2(Fq2 u, Fq2 v) const { return Fq2{add(u.a, v.a), add(u.b, v.b)}; }
  Fq2 sub2(Fq2 u, Fq2 v) const { return Fq2{sub(u.a, v.a), sub(u.b, v.b)}; }
  Fq2 neg2(Fq2 u) const { return Fq2{neg(u.a), neg(u.b)}; }
  Fq2 mul2(Fq2 u, Fq2 v) const {
    // (a+bx)(c+dx) = (ac + bd*nr) + (ad+bc)x
    u64 ac = mul(u.a, v.a), bd = mul(u.b, v.b);
    u64 ad = mul(u.a, v.b), bc = mul(u.b, v.a);
    return Fq2{add(ac, mul(bd, nonresidue)), add(ad, bc)};
  }
  Fq2 scale2(u64 c, Fq2 u) const { return Fq2{mul(c, u.a), mul(c, u.b)}; }
  Fq2 frobenius(Fq2 u) const { return Fq2{u.a, neg(u.b)}; }
  u64 norm2(Fq2 u) const { return sub(mul(u.a, u.a), mul(nonresidue, mul(u.b, u.b))); }
  bool is_zero2(Fq2 u) const { return u.a == 0 && u.b == 0; }
  Fq2 inv2(Fq2 u) const {
    // 1/(a+bx) = (a-bx)/norm
    u64 ninv = inv(norm2(u));
    return Fq2{mul(u.a, ninv), mul(neg(u.b), ninv)};
  }
  Fq2 pow2(Fq2 u, u64 e) const {
    Fq2 r = one2();
    while (e) {
      if (e & 1) r = mul2(r, u);
      u = mul2(u, u);
      e >>= 1;
    }
    return r;
  }
  u64 order2(Fq2 u) const;   // order in F_{N^2}^x
  Fq2 sqrt_fq2(Fq2 u) const; // Tonelli-Shanks in F_{N^2}; requires a square
  bool is_square2(Fq2 u) const {
    return pow2(u, (N * N - 1) / 2) == one2();
  }
};

using Fq2 = FieldCtx::Fq2;

}  // namespace eis
