#include "eis/criteria.hpp"

namespace eis {

u64 rational_mod(i64 num, u64 den, u64 p, u64 modulus) {
  int vd = valuation(den, p);
  u64 pv = upow(p, vd);
  if (num % (i64)pv != 0)
    throw Error(ErrorKind::RangeError, "rational_mod: denominator p-part does not divide");
  num /= (i64)pv;
  den /= pv;
  i64 rm = num % (i64)modulus;
  u64 r = rm < 0 ? (u64)(rm + (i64)modulus) : (u64)rm;
  return mulmod(r, invmod(den % modulus, modulus), modulus);
}

namespace {

u64 powu(u64 base, int e, u64 M) {
  u64 r = 1 % M;
  for (int i = 0; i < e; ++i) r = mulmod(r, base, M);
  return r;
}

}  // namespace

u64 merel_sum(const LogMap& lm, int i) {
  const FieldCtx& F = *lm.F;
  u64 M = lm.modulus;
  u64 s = 0;
  for (u64 k = 1; k <= (F.N - 1) / 2; ++k)
    s = addmod(s, mulmod(k % M, powu(lm.log(k), i, M), M), M);
  return s;
}

u64 square_weighted_sum(const LogMap& lm, int i) {
  const FieldCtx& F = *lm.F;
  u64 M = lm.modulus;
  u64 s = 0;
  for (u64 k = 1; k <= F.N - 1; ++k)
    s = addmod(s, mulmod(mulmod(k % M, k % M, M), powu(lm.log(k), i, M), M), M);
  return s;
}

u64 f_sum(const LogMap& lm, int i) {
  const FieldCtx& F = *lm.F;
  u64 M = lm.modulus;
  u64 s = 0;
  for (u64 k = 1; k <= (F.N - 1) / 2; ++k) s = addmod(s, powu(lm.log(k), i, M), M);
  return s;
}

bool criterion_ge2(const LogMap& lm) {
  if (lm.p < 5) throw Error(ErrorKind::UnsupportedPrime, "criterion_ge2 needs p >= 5");
  return merel_sum(lm, 1) == 0;
}

bool criterion_ge3(const LogMap& lm) {
  if (lm.p < 5) throw Error(ErrorKind::UnsupportedPrime, "criterion_ge3 needs p >= 5");
  return merel_sum(lm, 1) == 0 && merel_sum(lm, 2) == 0;
}

bool criterion_ge2_p3(const FieldCtx& F, int r) {
  LogMap lm = make_log(F, 3, r);
  return square_weighted_sum(lm, 1) == 0;
}

bool criterion_ge2_p2(const FieldCtx& F, int r) {
  LogMap lm = make_log(F, 2, r);  // checks N = 1 mod 8 via the t >= 1 precondition
  u64 M = lm.modulus;
  u64 target = lm.t >= 1 ? powu(2, lm.t - 1, M) : 1;
  return merel_sum(lm, 1) == target % M;
}

std::vector<IdentityVerdict> identity_suite(const FieldCtx& F, u64 p) {
  int vN1 = valuation(F.N - 1, p);
  if (eisenstein_t(F.N, p) < 1)
    throw Error(ErrorKind::NotEisensteinPrime, "identity_suite: p not Eisenstein for N");
  LogMap lm = make_log_raw(F, p, vN1);
  const u64 M = lm.modulus;
  const u64 N = F.N;
  const u64 m = (N - 1) / 2;

  std::vector<u64> lg(N, 0);
  for (u64 k = 1; k < N; ++k) lg[k] = lm.log(k);

  u64 A1 = 0, A2 = 0, B1 = 0, B2 = 0, F1 = 0, F2 = 0;
  for (u64 k = 1; k <= m; ++k) {
    A1 = addmod(A1, mulmod(k % M, lg[k], M), M);
    A2 = addmod(A2, mulmod(k % M, mulmod(lg[k], lg[k], M), M), M);
    F1 = addmod(F1, lg[k], M);
    F2 = addmod(F2, mulmod(lg[k], lg[k], M), M);
  }
  for (u64 k = 1; k < N; ++k) {
    u64 k2 = mulmod(k % M, k % M, M);
    B1 = addmod(B1, mulmod(k2, lg[k], M), M);
    B2 = addmod(B2, mulmod(k2, mulmod(lg[k], lg[k], M), M), M);
  }
  u64 log2v = lg[2];
  u64 nm1_6 = rational_mod((i64)(N - 1), 6, p, M);
  u64 nm1_3 = rational_mod((i64)(N - 1), 3, p, M);

  std::vector<IdentityVerdict> out;
  auto push = [&](const std::string& id, u64 lhs, u64 rhs) { out.push_back({id, lhs == rhs}); };

  // 4 A1 = -3 B1 - log(2) (N-1)/6 - F1
  push("klogk-vs-k2logk", mulmod(4, A1, M),
       submod(submod(negmod(mulmod(3, B1, M), M), mulmod(log2v, nm1_6, M), M), F1, M));

  // 4 A2 = -3 B2 + log(2)^2 (N-1)/6 - 2 log(2) B1 + 3 F2
  {
    u64 rhs = negmod(mulmod(3, B2, M), M);
    rhs = addmod(rhs, mulmod(mulmod(log2v, log2v, M), nm1_6, M), M);
    rhs = submod(rhs, mulmod(2, mulmod(log2v, B1, M), M), M);
    rhs = addmod(rhs, mulmod(3, F2, M), M);
    push("klog2k-vs-k2log2k", mulmod(4, A2, M), rhs);
  }

  // difference/sum lemmas over {1..m}^2, evaluated by multiplicity counting
  {
    u64 diff1 = 0, diff2 = 0, sum1 = 0, sum2 = 0;
    for (u64 k = 1; k <= m - 1; ++k) {
      u64 cnt = (m - k) % M;
      diff1 = addmod(diff1, mulmod(cnt, addmod(lg[k], lg[N - k], M), M), M);
      u64 sq = addmod(mulmod(lg[k], lg[k], M), mulmod(lg[N - k], lg[N - k], M), M);
      diff2 = addmod(diff2, mulmod(cnt, sq, M), M);
    }
    for (u64 s = 2; s <= N - 1; ++s) {
      u64 cnt = (s <= m + 1 ? s - 1 : N - s) % M;
      sum1 = addmod(sum1, mulmod(cnt, lg[s], M), M);
      sum2 = addmod(sum2, mulmod(cnt, mulmod(lg[s], lg[s], M), M), M);
    }
    push("diff-log", diff1, negmod(mulmod(2, A1, M), M));
    push("sum-log", sum1, submod(mulmod(2, A1, M), F1, M));
    push("diff-log2", diff2, negmod(mulmod(2, A2, M), M));
    push("sum-log2", sum2, submod(mulmod(2, A2, M), F2, M));
  }

  // D2-weighted lemmas: D2(k/N) = +1 for 1 <= k <= m, -1 for m < k < N
  {
    auto d2 = [&](u64 k) -> int { return k == 0 ? 0 : (k <= m ? 1 : -1); };
    u64 dsum1 = 0, dsum2 = 0;
    for (u64 t1 = 1; t1 < N; ++t1) {
      for (u64 t2 = 1; t2 < N; ++t2) {
        if (t1 == t2) continue;
        int sgn = d2(t1) * d2(t2);
        u64 d = t1 >= t2 ? t1 - t2 : t1 + N - t2;
        u64 term1 = lg[d];
        u64 term2 = mulmod(lg[d], lg[d], M);
        if (sgn == 1) {
          dsum1 = addmod(dsum1, term1, M);
          dsum2 = addmod(dsum2, term2, M);
        } else {
          dsum1 = submod(dsum1, term1, M);
          dsum2 = submod(dsum2, term2, M);
        }
      }
    }
    u64 rhs1a = addmod(negmod(mulmod(8, A1, M), M), mulmod(2, F1, M), M);
    u64 rhs1b = addmod(mulmod(6, B1, M), mulmod(log2v, nm1_3, M), M);
    push("d2-diff-log:a", dsum1, rhs1a);
    push("d2-diff-log:b", dsum1, rhs1b);
    u64 rhs2a = addmod(negmod(mulmod(8, A2, M), M), mulmod(2, F2, M), M);
    u64 rhs2b = mulmod(6, B2, M);
    rhs2b = submod(rhs2b, mulmod(mulmod(log2v, log2v, M), nm1_3, M), M);
    rhs2b = addmod(rhs2b, mulmod(4, mulmod(log2v, B1, M), M), M);
    rhs2b = submod(rhs2b, mulmod(4, F2, M), M);
    push("d2-diff-log2:a", dsum2, rhs2a);
    push("d2-diff-log2:b", dsum2, rhs2b);
  }

  // sum_{k != a} log(k-a) log(k) = -log(a)^2 + log(-1) log(a) + F2, for 20
  // deterministic a != 0, +-1
  {
    u64 logm1 = lg[N - 1];
    int tested = 0;
    bool all = true;
    for (u64 a = 2; a < N - 1 && tested < 20; ++a, ++tested) {
      u64 s = 0;
      for (u64 k = 1; k < N; ++k) {
        if (k == a) continue;
        u64 d = k >= a ? k - a : k + N - a;
        s = addmod(s, mulmod(lg[d], lg[k], M), M);
      }
      u64 rhs = addmod(submod(mulmod(logm1, lg[a], M), mulmod(lg[a], lg[a], M), M), F2, M);
      if (s != rhs) all = false;
    }
    out.push_back({"log-shift-quadratic", all});
  }

  return out;
}

CriteriaReport criteria_report(const FieldCtx& F, u64 p, int r) {
  CriteriaReport rep;
  rep.N = F.N;
  rep.p = p;
  rep.r = r;
  LogMap lm = make_log(F, p, r);
  rep.t = lm.t;
  for (int i = 0; i <= 3; ++i) rep.sums[i] = merel_sum(lm, i);
  for (int i = 1; i <= 2; ++i) rep.squares_sum[i] = square_weighted_sum(lm, i);
  {
    LogMap lv = make_log_raw(F, p, valuation(F.N - 1, p));
    for (int i = 0; i <= 2; ++i) rep.f_i[i] = f_sum(lv, i);
  }
  if (p >= 5) {
    rep.ge2_defined = rep.ge3_defined = true;
    rep.ge2 = rep.sums[1] == 0;
    rep.ge3 = rep.sums[1] == 0 && rep.sums[2] == 0;
  } else if (p == 3) {
    rep.ge2_defined = true;
    rep.ge2 = rep.squares_sum[1] == 0;
  } else if (p == 2) {
    rep.ge2_defined = true;
    rep.ge2 = criterion_ge2_p2(F, r);
  }
  return rep;
}

}  // namespace eis
