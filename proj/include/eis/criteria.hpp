#pragma once

#include <map>

#include "eis/logmap.hpp"

namespace eis {

// sum_{k=1}^{(N-1)/2} k log(k)^i mod p^r  (log(k)^0 := 1)
u64 merel_sum(const LogMap& lm, int i);

// sum_{k=1}^{N-1} k^2 log(k)^i mod p^r
u64 square_weighted_sum(const LogMap& lm, int i);

// F_i = sum_{k=1}^{(N-1)/2} log(k)^i mod p^r
u64 f_sum(const LogMap& lm, int i);

// p >= 5: n(r,p) >= 2 iff merel_sum(1) = 0; >= 3 iff also merel_sum(2) = 0.
bool criterion_ge2(const LogMap& lm);
bool criterion_ge3(const LogMap& lm);

// p = 3: n(r,3) >= 2 iff sum k^2 log(k) = 0 mod 3^r.
bool criterion_ge2_p3(const FieldCtx& F, int r);

// p = 2: n(r,2) >= 2 iff sum_{k<=(N-1)/2} k log(k) = 2^(t-1) mod 2^r.
bool criterion_ge2_p2(const FieldCtx& F, int r);

struct IdentityVerdict {
  std::string id;
  bool pass = false;
};

// The lemma identities over (Z/NZ)^x at modulus p^(v_p(N-1)); all are
// theorem-backed and must pass.
std::vector<IdentityVerdict> identity_suite(const FieldCtx& F, u64 p);

struct CriteriaReport {
  u64 N = 0, p = 0;
  int r = 0, t = 0;
  std::map<int, u64> sums;         // i -> sum k log^i(k), i in 0..3
  std::map<int, u64> squares_sum;  // i -> sum k^2 log^i(k), i in 1..2
  std::map<int, u64> f_i;          // i -> F_i, i in 0..2
  bool ge2_defined = false, ge3_defined = false;
  bool ge2 = false, ge3 = false;
};

CriteriaReport criteria_report(const FieldCtx& F, u64 p, int r);

// num/den mod 2^k-free modulus: divides out the p-part of den from num
// exactly and multiplies by the inverse of the rest. num is a signed integer.
u64 rational_mod(i64 num, u64 den, u64 p, u64 modulus);

}  // namespace eis
