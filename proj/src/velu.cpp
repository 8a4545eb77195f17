#include <algorithm>

#include "eis/supersingular.hpp"

namespace eis {

namespace {

struct Curve {
  // y^2 = x^3 + a2 x^2 + a4 x  (Legendre curve in expanded form, a6 = 0)
  Fq2 a2, a4;
  Fq2 b2, b4;  // b6 = 0, b8 = -a4^2
};

Curve curve_of_lambda(const FieldCtx& F, Fq2 lam) {
  Curve E;
  E.a2 = F.neg2(F.add2(F.one2(), lam));
  E.a4 = lam;
  E.b2 = F.scale2(4, E.a2);
  E.b4 = F.add2(E.a4, E.a4);
  return E;
}

PolyFq2 division_poly(const FieldCtx& F, const Curve& E, u64 ell) {
  Fq2Ops K{F};
  Fq2 b8 = F.neg2(F.mul2(E.a4, E.a4));
  // psi_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
  PolyFq2 psi3 = PolyFq2::from(
      K, {b8, F.zero2(), F.scale2(3, E.b4), E.b2, F.embed(3 % F.N)});
  if (ell == 3) return psi3;
  if (ell == 5) {
    // psi_5 = q4 * (psi_2^2)^2 - psi_3^3, with
    // q4 = 2x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2 + (b2 b8 - b4 b6) x + b4 b8
    PolyFq2 q4 = PolyFq2::from(K, {F.mul2(E.b4, b8), F.mul2(E.b2, b8),
                                   F.scale2(10, b8), F.zero2(), F.scale2(5, E.b4),
                                   E.b2, F.embed(2 % F.N)});
    // psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    PolyFq2 psi2sq = PolyFq2::from(
        K, {F.zero2(), F.add2(E.b4, E.b4), E.b2, F.embed(4 % F.N)});
    PolyFq2 lhs = poly_mul(K, q4, poly_mul(K, psi2sq, psi2sq));
    PolyFq2 rhs = poly_mul(K, psi3, poly_mul(K, psi3, psi3));
    return poly_sub(K, lhs, rhs);
  }
  throw Error(ErrorKind::UnsupportedDegree, "division polynomial only for ell in {3,5}");
}

// x(2P) from x(P), needing only y^2 = f(x).
Fq2 duplicate_x(const FieldCtx& F, const Curve& E, Fq2 x) {
  Fq2 fx = F.mul2(x, F.add2(F.mul2(x, F.add2(x, E.a2)), E.a4));
  Fq2 fpx = F.add2(F.mul2(x, F.add2(F.scale2(3, x), F.scale2(2, E.a2))), E.a4);
  Fq2 s2 = F.mul2(F.mul2(fpx, fpx), F.inv2(F.scale2(4, fx)));
  return F.sub2(s2, F.add2(E.a2, F.add2(x, x)));
}

// Monic kernel polynomials of the ell+1 cyclic order-ell subgroups, over F_{N^2}.
std::vector<PolyFq2> kernel_polynomials(const FieldCtx& F, const Curve& E, u64 ell) {
  Fq2Ops K{F};
  PolyFq2 psi = division_poly(F, E, ell);
  if (ell == 3) {
    auto roots = roots_fq2_poly(F, psi);
    if (roots.size() != 4)
      throw Error(ErrorKind::InternalInvariantViolation, "psi_3 must split over F_{N^2}");
    std::vector<PolyFq2> ks;
    for (Fq2 r : roots) ks.push_back(PolyFq2::from(K, {F.neg2(r), F.one2()}));
    return ks;
  }
  // ell = 5: rational roots pair up under doubling; the rest must be
  // irreducible quadratic kernel polynomials
  std::vector<PolyFq2> ks;
  auto roots = roots_fq2_poly(F, psi);
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Fq2 d = duplicate_x(F, E, roots[i]);
    auto it = std::find(roots.begin(), roots.end(), d);
    if (it == roots.end() || used[(size_t)(it - roots.begin())] || d == roots[i])
      throw Error(ErrorKind::InternalInvariantViolation, "5-torsion doubling left root set");
    used[i] = used[(size_t)(it - roots.begin())] = true;
    // (x - r)(x - d)
    ks.push_back(PolyFq2::from(
        K, {F.mul2(roots[i], d), F.neg2(F.add2(roots[i], d)), F.one2()}));
  }
  PolyFq2 rem = psi;
  for (Fq2 r : roots) {
    auto [q, s] = poly_divrem(K, rem, PolyFq2::from(K, {F.neg2(r), F.one2()}));
    if (!s.is_zero())
      throw Error(ErrorKind::InternalInvariantViolation, "root division failed");
    rem = q;
  }
  if (rem.deg() % 2 != 0)
    throw Error(ErrorKind::InternalInvariantViolation, "odd residual degree in psi_5");
  if (rem.deg() > 0) {
    // split the rational-root-free part into irreducible quadratics:
    // every factor is a Frobenius-conjugate pair {x(P), x(2P)} in one kernel
    std::vector<PolyFq2> work{poly_monic(K, rem)};
    const u64 q = F.N * F.N;
    while (!work.empty()) {
      PolyFq2 h = std::move(work.back());
      work.pop_back();
      if (h.deg() == 2) {
        ks.push_back(h);
        continue;
      }
      bool split = false;
      for (u64 attempt = 0; attempt < 65536 && !split; ++attempt) {
        Fq2 a{attempt % F.N, (attempt / F.N) % F.N};
        PolyFq2 shift = PolyFq2::from(K, {a, F.one2()});
        // exponent (q^2-1)/2 as ((q-1)/2)*(q+1) to stay inside u64
        PolyFq2 b = poly_powmod(K, shift, (q - 1) / 2, h);
        PolyFq2 bq = poly_powmod(K, b, q + 1, h);
        bq = poly_sub(K, bq, poly_const(K, K.one()));
        PolyFq2 d = poly_gcd(K, h, bq);
        if (d.deg() > 0 && d.deg() < h.deg()) {
          work.push_back(poly_divrem(K, h, d).first);
          work.push_back(std::move(d));
          split = true;
        }
      }
      if (!split)
        throw Error(ErrorKind::InternalInvariantViolation, "quadratic EDF did not converge");
    }
  }
  if (ks.size() != ell + 1)
    throw Error(ErrorKind::InternalInvariantViolation, "wrong kernel count");
  return ks;
}

// Velu: image lambda' of the isogeny with the given odd kernel polynomial,
// renormalized to Legendre form by x(0,0) -> 0, x(1,0) -> 1.
Fq2 velu_image_lambda(const FieldCtx& F, const Curve& E, Fq2 lam, const PolyFq2& Kpoly) {
  Fq2Ops K{F};
  int d = Kpoly.deg();
  Fq2 s1 = d >= 1 ? F.neg2(Kpoly.coeff(d - 1)) : F.zero2();
  Fq2 s2 = d >= 2 ? Kpoly.coeff(d - 2) : F.zero2();
  Fq2 s3 = d >= 3 ? F.neg2(Kpoly.coeff(d - 3)) : F.zero2();
  Fq2 p1 = s1;
  Fq2 p2 = F.sub2(F.mul2(s1, s1), F.add2(s2, s2));
  Fq2 p3 = F.add2(F.sub2(F.mul2(s1, F.mul2(s1, s1)), F.scale2(3, F.mul2(s1, s2))),
                  F.scale2(3, s3));
  Fq2 t = F.add2(F.scale2(6, p2), F.add2(F.mul2(E.b2, p1), F.scale2((u64)d, E.b4)));
  Fq2 w = F.add2(F.scale2(10, p3),
                 F.add2(F.scale2(8, F.mul2(E.a2, p2)), F.scale2(6, F.mul2(E.a4, p1))));

  PolyFq2 Kd = poly_derivative(K, Kpoly, F.N);
  PolyFq2 tpoly = PolyFq2::from(K, {E.b4, E.b2, F.embed(6 % F.N)});
  PolyFq2 upoly = PolyFq2::from(K, {F.zero2(), F.add2(E.b4, E.b4), E.b2, F.embed(4 % F.N)});
  PolyFq2 Gt = poly_mod(K, poly_mul(K, tpoly, Kd), Kpoly);
  PolyFq2 Gu = poly_mod(K, poly_mul(K, upoly, Kd), Kpoly);
  PolyFq2 Gup = poly_derivative(K, Gu, F.N);

  auto X = [&](Fq2 v) {
    Fq2 kv = poly_eval(K, Kpoly, v);
    Fq2 kdv = poly_eval(K, Kd, v);
    Fq2 num = F.add2(F.mul2(poly_eval(K, Gt, v), kv),
                     F.sub2(F.mul2(poly_eval(K, Gu, v), kdv),
                            F.mul2(poly_eval(K, Gup, v), kv)));
    return F.add2(v, F.mul2(num, F.inv2(F.mul2(kv, kv))));
  };

  Fq2 e0 = X(F.zero2());
  Fq2 e1 = X(F.one2());
  Fq2 el = X(lam);

  // consistency: the image 2-torsion must be the roots of the Velu codomain
  // cubic X^3 + a2 X^2 + (a4 - 5t) X + (a6 - b2 t - 7w)
  Fq2 A4 = F.sub2(E.a4, F.scale2(5, t));
  Fq2 A6 = F.neg2(F.add2(F.mul2(E.b2, t), F.scale2(7, w)));
  Fq2 sum = F.add2(e0, F.add2(e1, el));
  Fq2 sym2 = F.add2(F.mul2(e0, e1), F.add2(F.mul2(e0, el), F.mul2(e1, el)));
  Fq2 prod = F.mul2(e0, F.mul2(e1, el));
  if (!(sum == F.neg2(E.a2)) || !(sym2 == A4) || !(prod == F.neg2(A6)))
    throw Error(ErrorKind::InternalInvariantViolation, "Velu codomain mismatch");

  return F.mul2(F.sub2(el, e0), F.inv2(F.sub2(e1, e0)));
}

}  // namespace

LegendreHecke legendre_hecke(const SupersingularSet& ss, u64 ell) {
  const FieldCtx& F = *ss.F;
  if (ell != 3 && ell != 5)
    throw Error(ErrorKind::UnsupportedDegree, "isogeny enumeration only for ell in {3,5}");
  if (ell == F.N) throw Error(ErrorKind::BadIndex, "ell = N");
  LegendreHecke T;
  T.ell = ell;
  T.images.resize(ss.lambdas.size());
  for (size_t i = 0; i < ss.lambdas.size(); ++i) {
    Fq2 lam = ss.lambdas[i];
    Curve E = curve_of_lambda(F, lam);
    for (const auto& kp : kernel_polynomials(F, E, ell)) {
      Fq2 lp = velu_image_lambda(F, E, lam, kp);
      int idx = ss.index_of(lp);
      if (idx < 0)
        throw Error(ErrorKind::InternalInvariantViolation, "isogenous lambda left L");
      T.images[i].push_back(idx);
    }
  }
  return T;
}

std::vector<CheckResult> verify_hprime_product(const SupersingularSet& ss, u64 ell) {
  const FieldCtx& F = *ss.F;
  LegendreHecke T = legendre_hecke(ss, ell);
  std::vector<CheckResult> out;
  for (size_t i = 0; i < ss.lambdas.size(); ++i) {
    Fq2 prod = F.one2();
    for (int tgt : T.images[i]) prod = F.mul2(prod, ss.hprime[(size_t)tgt]);
    Fq2 rhs = F.scale2(F.pow(ell % F.N, ell - 1), F.pow2(ss.hprime[i], ell + 1));
    out.push_back({"hprime-product:l=" + std::to_string(ell) + ":lambda#" + std::to_string(i),
                   prod == rhs});
  }
  return out;
}

}  // namespace eis
