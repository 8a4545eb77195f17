#include "eis/supersingular.hpp"

#include <algorithm>
#include <map>

namespace eis {

PolyFp hasse_poly(const FieldCtx& F) {
  u64 m = (F.N - 1) / 2;
  std::vector<u64> c(m + 1);
  u64 b = 1;  // binom(m, i) mod N by the multiplicative recurrence
  c[0] = 1;
  for (u64 i = 1; i <= m; ++i) {
    b = F.mul(b, F.mul((m - i + 1) % F.N, F.inv(i % F.N)));
    c[i] = F.mul(b, b);
  }
  FpOps K{F};
  return PolyFp::from(K, std::move(c));
}

u64 hasse_disc_closed(const FieldCtx& F) {
  u64 m = (F.N - 1) / 2;
  u64 prod = 1, fact = 1;
  for (u64 k = 1; k <= m; ++k) {
    prod = F.mul(prod, F.pow(k, 4 * k));
    fact = F.mul(fact, k);
  }
  u64 d = F.mul(prod, F.inv(fact));
  return (m % 4 == 1 || m % 4 == 2) ? F.neg(d) : d;  // (-1)^(m(m-1)/2)
}

u64 hasse_disc_resultant(const FieldCtx& F) {
  FpOps K{F};
  PolyFp H = hasse_poly(F);
  u64 res = poly_resultant(K, H, poly_derivative(K, H, F.N));
  u64 m = (F.N - 1) / 2;
  return (m % 4 == 1 || m % 4 == 2) ? F.neg(res) : res;
}

Fq2 j_of_lambda(const FieldCtx& F, Fq2 lam) {
  Fq2 one = F.one2();
  Fq2 a = F.add2(F.sub2(one, lam), F.mul2(lam, lam));  // 1 - l + l^2
  Fq2 num = F.scale2(256 % F.N, F.mul2(a, F.mul2(a, a)));
  Fq2 oml = F.sub2(one, lam);
  Fq2 den = F.mul2(F.mul2(lam, lam), F.mul2(oml, oml));
  return F.mul2(num, F.inv2(den));
}

int SupersingularSet::index_of(Fq2 lam) const {
  auto it = std::lower_bound(lambdas.begin(), lambdas.end(), lam);
  if (it != lambdas.end() && *it == lam) return (int)(it - lambdas.begin());
  return -1;
}

SupersingularSet supersingular_set(const FieldCtx& F) {
  FpOps K{F};
  SupersingularSet ss;
  ss.F = &F;
  ss.H = hasse_poly(F);
  ss.Hp = poly_derivative(K, ss.H, F.N);
  ss.lambdas = roots_in_fq2(F, ss.H);

  u64 m = (F.N - 1) / 2;
  if (ss.lambdas.size() != m)
    throw Error(ErrorKind::InternalInvariantViolation, "|L| != (N-1)/2");
  for (size_t i = 1; i < ss.lambdas.size(); ++i)
    if (ss.lambdas[i] == ss.lambdas[i - 1])
      throw Error(ErrorKind::InternalInvariantViolation, "repeated root of H");

  PolyFq2 Hp2 = lift_to_fq2(F, ss.Hp);
  Fq2Ops K2{F};
  ss.hprime.reserve(ss.lambdas.size());
  for (Fq2 lam : ss.lambdas) {
    Fq2 hp = poly_eval(K2, Hp2, lam);
    if (F.is_zero2(hp))
      throw Error(ErrorKind::InternalInvariantViolation, "H'(lambda) = 0 at a root");
    ss.hprime.push_back(hp);
  }

  // closure under lambda -> 1/lambda, 1 - lambda, Frobenius
  for (Fq2 lam : ss.lambdas) {
    if (!ss.contains(F.inv2(lam)) || !ss.contains(F.sub2(F.one2(), lam)) ||
        !ss.contains(F.frobenius(lam)))
      throw Error(ErrorKind::InternalInvariantViolation, "L not stable under S3/Frobenius");
  }

  // S3 orbits
  ss.orbit_of.assign(ss.lambdas.size(), -1);
  for (size_t i = 0; i < ss.lambdas.size(); ++i) {
    if (ss.orbit_of[i] >= 0) continue;
    Fq2 lam = ss.lambdas[i];
    Fq2 one = F.one2();
    Fq2 oml = F.sub2(one, lam);
    Fq2 imgs[6] = {lam,
                   F.inv2(lam),
                   oml,
                   F.mul2(F.neg2(oml), F.inv2(lam)),   // (lambda-1)/lambda
                   F.mul2(lam, F.inv2(F.neg2(oml))),   // lambda/(lambda-1)
                   F.inv2(oml)};
    SupersingularSet::Orbit orb;
    for (Fq2 im : imgs) {
      int idx = ss.index_of(im);
      if (idx < 0)
        throw Error(ErrorKind::InternalInvariantViolation, "orbit image outside L");
      if (std::find(orb.members.begin(), orb.members.end(), idx) == orb.members.end())
        orb.members.push_back(idx);
    }
    std::sort(orb.members.begin(), orb.members.end());
    orb.c = (int)orb.members.size();
    if (orb.c != 1 && orb.c != 2 && orb.c != 3 && orb.c != 6)
      throw Error(ErrorKind::InternalInvariantViolation, "bad orbit size");
    orb.w = 6 / orb.c;
    orb.j = j_of_lambda(F, lam);
    for (int idx : orb.members) {
      if (!(j_of_lambda(F, ss.lambdas[(size_t)idx]) == orb.j))
        throw Error(ErrorKind::InternalInvariantViolation, "j not constant on orbit");
      ss.orbit_of[(size_t)idx] = (int)ss.orbits.size();
    }
    ss.orbits.push_back(std::move(orb));
  }

  // Eichler mass formula sum 1/w_E = (N-1)/12, i.e. sum 6/w_E = sum c_E = |L|
  long long six_mass = 0;
  for (const auto& o : ss.orbits) six_mass += 6 / o.w;
  if (six_mass * 12 != (long long)(F.N - 1) * 6)
    throw Error(ErrorKind::InternalInvariantViolation, "mass formula violated");

  return ss;
}

PolyFp p_resultant_poly(const FieldCtx& F) {
  FpOps K{F};
  PolyFp Hp = poly_derivative(K, hasse_poly(F), F.N);
  u64 m = (F.N - 1) / 2;
  // A(X) = 256 (1-X+X^2)^3, B(X) = X^2 (1-X)^2
  PolyFp q = PolyFp::from(K, {1, F.N - 1, 1});
  PolyFp A = poly_scale(K, 256 % F.N, poly_mul(K, q, poly_mul(K, q, q)));
  PolyFp omx = PolyFp::from(K, {1, F.N - 1});
  PolyFp B = poly_mul(K, PolyFp::from(K, {0, 0, 1}), poly_mul(K, omx, omx));
  // deg_Y P = deg H' = m-1: interpolate from m evaluations
  u64 npts = m;
  if (npts > F.N)
    throw Error(ErrorKind::RangeError, "not enough interpolation points");
  std::vector<u64> xs(npts), ys(npts);
  for (u64 y = 0; y < npts; ++y) {
    xs[y] = y;
    ys[y] = poly_resultant(K, Hp, poly_sub(K, A, poly_scale(K, y, B)));
  }
  // Lagrange interpolation
  PolyFp master = poly_const(K, (u64)1);
  for (u64 i = 0; i < npts; ++i)
    master = poly_mul(K, master, PolyFp::from(K, {F.neg(xs[i]), 1}));
  PolyFp result;
  for (u64 i = 0; i < npts; ++i) {
    if (ys[i] == 0) continue;
    // master / (X - x_i) by synthetic division
    std::vector<u64> qd((size_t)master.deg(), 0);
    u64 carry = 0;
    for (int d = master.deg(); d >= 1; --d) {
      carry = F.add(master.c[(size_t)d], F.mul(carry, xs[i]));
      qd[(size_t)(d - 1)] = carry;
    }
    PolyFp li = PolyFp::from(K, std::move(qd));
    u64 denom = poly_eval(K, li, xs[i]);
    result = poly_add(K, result, poly_scale(K, F.mul(ys[i], F.inv(denom)), li));
  }
  return result;
}

std::pair<Fq2, Fq2> u2_action(const SupersingularSet& ss, Fq2 lam) {
  const FieldCtx& F = *ss.F;
  if (!ss.contains(lam)) throw Error(ErrorKind::NotSupersingular, "lambda not in L");
  if (lam == F.one2()) throw Error(ErrorKind::RangeError, "lambda = 1");
  Fq2 oml = F.sub2(F.one2(), lam);
  Fq2 a = F.mul2(oml, oml);
  Fq2 b = F.scale2(16 % F.N, lam);
  Fq2 c = F.neg2(b);
  Fq2 disc = F.sub2(F.mul2(b, b), F.scale2(4, F.mul2(a, c)));
  Fq2 s = F.sqrt_fq2(disc);
  Fq2 inv2a = F.inv2(F.add2(a, a));
  Fq2 r1 = F.mul2(F.sub2(s, b), inv2a);
  Fq2 r2 = F.mul2(F.sub2(F.neg2(s), b), inv2a);
  if (r2 < r1) std::swap(r1, r2);
  if (!ss.contains(r1) || !ss.contains(r2))
    throw Error(ErrorKind::InternalInvariantViolation, "U_2 image left L");
  return {r1, r2};
}

std::pair<Fq2, Fq2> u2_preimages(const SupersingularSet& ss, Fq2 lam) {
  const FieldCtx& F = *ss.F;
  // phi_2(X, lam) = lam^2 X^2 + (16 lam - 2 lam^2 - 16) X + lam^2
  Fq2 l2 = F.mul2(lam, lam);
  Fq2 b = F.sub2(F.scale2(16 % F.N, lam), F.add2(F.add2(l2, l2), F.embed(16 % F.N)));
  Fq2 disc = F.sub2(F.mul2(b, b), F.scale2(4, F.mul2(l2, l2)));
  Fq2 s = F.sqrt_fq2(disc);
  Fq2 inv2a = F.inv2(F.add2(l2, l2));
  Fq2 r1 = F.mul2(F.sub2(s, b), inv2a);
  Fq2 r2 = F.mul2(F.sub2(F.neg2(s), b), inv2a);
  if (r2 < r1) std::swap(r1, r2);
  return {r1, r2};
}

std::vector<CheckResult> verify_u2_multiplicative(const SupersingularSet& ss) {
  const FieldCtx& F = *ss.F;
  Fq2Ops K2{F};
  FpOps K{F};
  std::vector<CheckResult> out;
  PolyFq2 Hp2 = lift_to_fq2(F, ss.Hp);
  u64 inv4 = F.inv(4);
  for (size_t i = 0; i < ss.lambdas.size(); ++i) {
    Fq2 lam = ss.lambdas[i];
    auto [m1, m2] = u2_preimages(ss, lam);
    Fq2 lhs = F.mul2(F.pow2(lam, F.N - 1),
                     F.mul2(poly_eval(K2, Hp2, m1), poly_eval(K2, Hp2, m2)));
    Fq2 rhs = F.mul2(F.mul2(F.mul2(lam, lam), F.sub2(lam, F.one2())),
                     F.mul2(ss.hprime[i], ss.hprime[i]));
    rhs = F.scale2(inv4, rhs);
    out.push_back({"u2-mult:lambda#" + std::to_string(i), lhs == rhs});
  }
  // Res_X(H(X), phi_2(X, Y)) = H(Y)^2 as polynomials over F_N
  u64 npts = F.N - 1;
  u64 want_deg = 2 * (u64)ss.H.deg();
  if (npts > want_deg + 1) npts = want_deg + 1;
  bool poly_ok = npts >= want_deg + 1;
  PolyFp H2 = poly_mul(K, ss.H, ss.H);
  if (poly_ok) {
    for (u64 y = 0; y < npts && poly_ok; ++y) {
      // phi_2(X, y) = y^2 (1-X)^2 + 16 X y - 16 X as a polynomial in X
      u64 y2 = F.mul(y, y);
      u64 c16 = 16 % F.N;
      PolyFp phi = PolyFp::from(
          K, {y2, F.sub(F.mul(c16, y), F.add(F.add(y2, y2), c16)), y2});
      u64 lhs = poly_resultant(K, ss.H, phi);
      if (lhs != poly_eval(K, H2, y)) poly_ok = false;
    }
  }
  out.push_back({"u2-mult:resultant-identity", poly_ok});
  return out;
}

E1Element e1_element(const SupersingularSet& ss, const Fq2LogMap& lg) {
  const FieldCtx& F = *ss.F;
  if (lg.base.p < 5) throw Error(ErrorKind::UnsupportedPrime, "e1_element needs p >= 5");
  PolyFp P = p_resultant_poly(F);
  PolyFq2 P2 = lift_to_fq2(F, P);
  Fq2Ops K2{F};
  E1Element e;
  u64 inv12 = invmod(12 % lg.modulus, lg.modulus);
  for (const auto& orb : ss.orbits) {
    Fq2 pj = poly_eval(K2, P2, orb.j);
    if (F.is_zero2(pj))
      throw Error(ErrorKind::InternalInvariantViolation, "P(j(E)) = 0");
    u64 c12 = lg.log(pj);
    e.coeff_times_12.push_back(c12);
    e.coeff.push_back(mulmod(inv12, c12, lg.modulus));
  }
  return e;
}

u64 pairing_e1_e0(const SupersingularSet& ss, const Fq2LogMap& lg) {
  if (lg.base.p < 5) throw Error(ErrorKind::UnsupportedPrime, "pairing needs p >= 5");
  u64 M = lg.modulus;
  u64 s = 0;
  for (Fq2 hp : ss.hprime) s = addmod(s, lg.log(hp), M);
  return mulmod(invmod(12 % M, M), s, M);
}

u64 pairing_e1_e1(const SupersingularSet& ss, const Fq2LogMap& lg) {
  if (lg.base.p < 5) throw Error(ErrorKind::UnsupportedPrime, "pairing needs p >= 5");
  if (pairing_e1_e0(ss, lg) != 0)
    throw Error(ErrorKind::PairingUndefined, "e1.e1 needs e1.e0 = 0");
  u64 M = lg.modulus;
  u64 sh = 0, sl = 0;
  for (size_t i = 0; i < ss.lambdas.size(); ++i) {
    u64 lh = lg.log(ss.hprime[i]);
    u64 ll = lg.log(ss.lambdas[i]);
    sh = addmod(sh, mulmod(lh, lh, M), M);
    sl = addmod(sl, mulmod(ll, ll, M), M);
  }
  u64 num = submod(mulmod(3, sh, M), mulmod(4, sl, M), M);
  return mulmod(invmod(72 % M, M), num, M);
}

Gamma2Elements gamma2_eisenstein_elements(const SupersingularSet& ss, const Fq2LogMap& lg) {
  const FieldCtx& F = *ss.F;
  if (lg.base.p < 5) throw Error(ErrorKind::UnsupportedPrime, "gamma2 elements need p >= 5");
  u64 M = lg.modulus;
  size_t n = ss.lambdas.size();
  Gamma2Elements g;
  g.e00.resize(n);
  g.e01.resize(n);
  g.e02.assign(n, 1);
  g.e12.resize(n);
  u64 log2v = lg.log_fp(2);
  u64 inv2 = invmod(2 % M, M);
  for (size_t i = 0; i < n; ++i) {
    Fq2 lam = ss.lambdas[i];
    u64 ll = lg.log(lam);
    u64 lo = lg.log(F.sub2(F.one2(), lam));
    g.e00[i] = ll;
    g.e01[i] = submod(lo, addmod(mulmod(2, ll, M), mulmod(4, log2v, M), M), M);
    g.e12[i] = addmod(g.e00[i],
                      mulmod(inv2, addmod(g.e01[i], lg.log(ss.hprime[i]), M), M), M);
  }

  auto apply_u2 = [&](const std::vector<u64>& v) {
    std::vector<u64> out(n, 0);
    for (size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      auto [r1, r2] = u2_action(ss, ss.lambdas[i]);
      out[(size_t)ss.index_of(r1)] = addmod(out[(size_t)ss.index_of(r1)], v[i], M);
      out[(size_t)ss.index_of(r2)] = addmod(out[(size_t)ss.index_of(r2)], v[i], M);
    }
    return out;
  };
  auto apply_un = [&](const std::vector<u64>& v) {
    std::vector<u64> out(n, 0);
    for (size_t i = 0; i < n; ++i)
      out[(size_t)ss.index_of(F.frobenius(ss.lambdas[i]))] = v[i];
    return out;
  };
  auto axpy = [&](const std::vector<u64>& v, u64 c, const std::vector<u64>& w) {
    // v - c*w
    std::vector<u64> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = submod(v[i], mulmod(c, w[i], M), M);
    return out;
  };
  auto is_zero = [&](const std::vector<u64>& v) {
    for (u64 x : v)
      if (x) return false;
    return true;
  };

  const std::vector<u64>* elems[3] = {&g.e00, &g.e01, &g.e02};
  for (int a = 0; a < 3; ++a) {
    g.checks.push_back({"gamma2:(U2-" + std::to_string(a) + ")e0^" + std::to_string(a),
                        is_zero(axpy(apply_u2(*elems[a]), (u64)a % M, *elems[a]))});
    g.checks.push_back({"gamma2:(UN-1)e0^" + std::to_string(a),
                        is_zero(axpy(apply_un(*elems[a]), 1, *elems[a]))});
  }
  {
    auto lhs = axpy(apply_u2(g.e12), 2 % M, g.e12);
    auto want = std::vector<u64>(n);
    for (size_t i = 0; i < n; ++i) want[i] = mulmod(log2v, g.e00[i], M);
    g.checks.push_back({"gamma2:(U2-2)e1^2=log2.e0^0", is_zero(axpy(lhs, 1, want))});
    g.checks.push_back({"gamma2:(UN-1)e1^2", is_zero(axpy(apply_un(g.e12), 1, g.e12))});
  }
  for (u64 ell : {3ull, 5ull}) {
    if (ell == F.N) continue;
    LegendreHecke T = legendre_hecke(ss, ell);
    auto apply_tl = [&](const std::vector<u64>& v) {
      std::vector<u64> out(n, 0);
      for (size_t i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        for (int tgt : T.images[i]) out[(size_t)tgt] = addmod(out[(size_t)tgt], v[i], M);
      }
      return out;
    };
    u64 scal = mulmod(mulmod((ell - 1) % M, inv2, M), lg.log_fp(ell % F.N), M);
    for (int a = 0; a < 3; ++a)
      g.checks.push_back(
          {"gamma2:(T" + std::to_string(ell) + "-" + std::to_string(ell + 1) + ")e0^" +
               std::to_string(a),
           is_zero(axpy(apply_tl(*elems[a]), (ell + 1) % M, *elems[a]))});
    auto lhs = axpy(apply_tl(g.e12), (ell + 1) % M, g.e12);
    g.checks.push_back({"gamma2:(T" + std::to_string(ell) + "-" + std::to_string(ell + 1) +
                            ")e1^2=((l-1)/2)log(l).e0^2",
                        is_zero(axpy(lhs, scal, g.e02))});
  }
  return g;
}

}  // namespace eis
