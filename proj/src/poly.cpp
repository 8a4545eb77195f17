#include "eis/poly.hpp"

namespace eis {

namespace {

// Deterministic Cantor-Zassenhaus splitting of a product of distinct linear
// factors over F_N, via quadratic characters of shifted roots.
void split_linear_fp(const FpOps& K, PolyFp g, std::vector<u64>& out) {
  const FieldCtx& F = K.F;
  std::vector<PolyFp> work{std::move(g)};
  while (!work.empty()) {
    PolyFp f = std::move(work.back());
    work.pop_back();
    if (f.deg() <= 0) continue;
    if (f.deg() == 1) {
      out.push_back(F.neg(F.mul(f.c[0], F.inv(f.c[1]))));
      continue;
    }
    if (f.coeff(0) == 0) {
      // extract the root 0 directly
      out.push_back(0);
      f.c.erase(f.c.begin());
      work.push_back(std::move(f));
      continue;
    }
    for (u64 c = 0;; ++c) {
      if (c > 4096)
        throw Error(ErrorKind::InternalInvariantViolation, "linear split did not converge");
      PolyFp shift = PolyFp::from(K, {c, 1});
      PolyFp a = poly_powmod(K, shift, (F.N - 1) / 2, f);
      a = poly_sub(K, a, poly_const(K, K.one()));
      PolyFp d = poly_gcd(K, f, a);
      if (d.deg() > 0 && d.deg() < f.deg()) {
        work.push_back(poly_divrem(K, f, d).first);
        work.push_back(std::move(d));
        break;
      }
    }
  }
}

// Multiplicity of root beta in f (over F_{N^2}), by repeated synthetic division.
int root_multiplicity(const FieldCtx& F, const PolyFq2& f, Fq2 beta) {
  Fq2Ops K{F};
  PolyFq2 g = f;
  int m = 0;
  while (g.deg() >= 1) {
    // synthetic division by (X - beta)
    std::vector<Fq2> q((size_t)g.deg(), F.zero2());
    Fq2 carry = F.zero2();
    for (int i = g.deg(); i >= 1; --i) {
      carry = F.add2(g.c[(size_t)i], F.mul2(carry, beta));
      q[(size_t)(i - 1)] = carry;
    }
    Fq2 rem = F.add2(g.c[0], F.mul2(carry, beta));
    if (!F.is_zero2(rem)) break;
    ++m;
    g = PolyFq2::from(K, std::move(q));
  }
  return m;
}

}  // namespace

std::vector<u64> roots_in_fp(const FieldCtx& F, const PolyFp& f) {
  FpOps K{F};
  if (f.deg() <= 0) return {};
  PolyFp fm = poly_monic(K, f);
  PolyFp d = poly_derivative(K, fm, F.N);
  PolyFp sf = d.is_zero() ? fm : poly_divrem(K, fm, poly_gcd(K, fm, d)).first;
  PolyFp w = poly_powmod(K, poly_x(K), F.N, sf);
  w = poly_sub(K, w, poly_x(K));
  PolyFp g1 = poly_gcd(K, sf, w);
  std::vector<u64> roots;
  split_linear_fp(K, g1, roots);
  std::vector<u64> out;
  for (u64 r : roots) {
    int m = root_multiplicity(F, lift_to_fq2(F, fm), Fq2{r, 0});
    for (int i = 0; i < m; ++i) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PolyFp> split_deg_le2(const FieldCtx& F, const PolyFp& f, const PolyFp& frob_x) {
  FpOps K{F};
  std::vector<PolyFp> done;
  std::vector<PolyFp> work{poly_monic(K, f)};
  while (!work.empty()) {
    PolyFp h = std::move(work.back());
    work.pop_back();
    if (h.deg() <= 0) continue;
    if (h.deg() <= 2) {
      done.push_back(std::move(h));
      continue;
    }
    PolyFp wq = poly_mod(K, frob_x, h);
    PolyFp u = poly_add(K, poly_x(K), wq);                    // trace values
    PolyFp w = poly_mod(K, poly_mul(K, poly_x(K), wq), h);    // norm values
    bool split = false;
    for (u64 attempt = 0; attempt < 4096 && !split; ++attempt) {
      u64 alpha = attempt & 15, c = attempt >> 4;
      PolyFp v = poly_add(K, u, poly_scale(K, alpha, w));
      v = poly_add(K, v, poly_const(K, c));
      PolyFp b = poly_powmod(K, v, (F.N - 1) / 2, h);
      b = poly_sub(K, b, poly_const(K, K.one()));
      PolyFp d = poly_gcd(K, h, b);
      if (d.deg() > 0 && d.deg() < h.deg()) {
        work.push_back(poly_divrem(K, h, d).first);
        work.push_back(std::move(d));
        split = true;
      }
    }
    if (!split)
      throw Error(ErrorKind::InternalInvariantViolation,
                  "quadratic split did not converge (factor of degree > 2?)");
  }
  return done;
}

std::vector<Fq2> roots_in_fq2(const FieldCtx& F, const PolyFp& f) {
  FpOps K{F};
  if (f.is_zero()) throw Error(ErrorKind::RangeError, "roots of the zero polynomial");
  if (f.deg() == 0) return {};
  PolyFp fm = poly_monic(K, f);
  PolyFp d = poly_derivative(K, fm, F.N);
  bool squarefree = !d.is_zero() && poly_gcd(K, fm, d).deg() == 0;
  // radical by repeated gcd with the derivative; the dr == 0 branch handles
  // factor multiplicities divisible by N (rad = s(X^N) for some s)
  PolyFp sf = fm;
  while (!squarefree) {
    PolyFp dr = poly_derivative(K, sf, F.N);
    if (!dr.is_zero()) {
      PolyFp g = poly_gcd(K, sf, dr);
      if (g.deg() == 0) break;
      sf = poly_divrem(K, sf, g).first;
    } else {
      std::vector<u64> sc;
      for (int i = 0; i <= sf.deg(); i += (int)F.N) sc.push_back(sf.coeff(i));
      sf = PolyFp::from(K, std::move(sc));
    }
    if (sf.deg() <= 0) break;
  }

  // F_N-rational roots first
  PolyFp wsf = poly_powmod(K, poly_x(K), F.N, sf);
  PolyFp g1 = poly_gcd(K, sf, poly_sub(K, wsf, poly_x(K)));
  std::vector<u64> fp_roots;
  split_linear_fp(K, g1, fp_roots);

  PolyFp h = g1.deg() > 0 ? poly_divrem(K, sf, g1).first : sf;
  std::vector<Fq2> distinct;
  for (u64 r : fp_roots) distinct.push_back(Fq2{r, 0});

  if (h.deg() > 0) {
    if (h.deg() <= 64) {
      // exact degree-2 filter: X^(N^2) mod h via composition of X^N mod h
      PolyFp wh = poly_mod(K, wsf, h);
      PolyFp comp = {};  // wh(wh) mod h by Horner
      for (int i = wh.deg(); i >= 0; --i) {
        comp = poly_mod(K, poly_mul(K, comp, wh), h);
        comp = poly_add(K, comp, poly_const(K, wh.c[(size_t)i]));
      }
      PolyFp h2 = poly_gcd(K, h, poly_sub(K, comp, poly_x(K)));
      h = h2;  // factors of degree >= 3 discarded
    }
    if (h.deg() > 0) {
      auto quads = split_deg_le2(F, h, wsf);
      for (const auto& q : quads) {
        if (q.deg() == 1) {
          distinct.push_back(Fq2{F.neg(F.mul(q.c[0], F.inv(q.c[1]))), 0});
          continue;
        }
        // monic X^2 + bX + c with nonsquare discriminant
        u64 b = F.mul(q.c[1], F.inv(q.c[2]));
        u64 c = F.mul(q.c[0], F.inv(q.c[2]));
        u64 disc = F.sub(F.mul(b, b), F.mul(4 % F.N, c));
        if (F.is_square(disc))
          throw Error(ErrorKind::InternalInvariantViolation, "reducible quadratic after split");
        u64 y = F.sqrt_fp(F.mul(disc, F.inv(F.nonresidue)));
        u64 inv2 = F.inv(2);
        u64 a0 = F.mul(F.neg(b), inv2);
        u64 b0 = F.mul(y, inv2);
        distinct.push_back(Fq2{a0, b0});
        distinct.push_back(Fq2{a0, F.neg(b0)});
      }
    }
  }

  std::vector<Fq2> out;
  if (squarefree) {
    out = std::move(distinct);
  } else {
    PolyFq2 flift = lift_to_fq2(F, fm);
    for (Fq2 beta : distinct) {
      int m = root_multiplicity(F, flift, beta);
      for (int i = 0; i < m; ++i) out.push_back(beta);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Fq2> roots_fq2_poly(const FieldCtx& F, const PolyFq2& f) {
  Fq2Ops K{F};
  if (f.is_zero()) throw Error(ErrorKind::RangeError, "roots of the zero polynomial");
  if (f.deg() == 0) return {};
  const u64 q = F.N * F.N;
  PolyFq2 fm = poly_monic(K, f);
  PolyFq2 d = poly_derivative(K, fm, F.N);
  PolyFq2 sf = fm;
  if (!d.is_zero()) {
    PolyFq2 g = poly_gcd(K, fm, d);
    if (g.deg() > 0) sf = poly_divrem(K, fm, g).first;
  }
  PolyFq2 wq = poly_powmod(K, poly_x(K), q, sf);
  PolyFq2 g1 = poly_gcd(K, sf, poly_sub(K, wq, poly_x(K)));

  std::vector<Fq2> distinct;
  std::vector<PolyFq2> work;
  if (g1.deg() > 0) work.push_back(g1);
  while (!work.empty()) {
    PolyFq2 g = std::move(work.back());
    work.pop_back();
    if (g.deg() <= 0) continue;
    if (g.deg() == 1) {
      distinct.push_back(F.neg2(F.mul2(g.c[0], F.inv2(g.c[1]))));
      continue;
    }
    if (F.is_zero2(g.coeff(0))) {
      distinct.push_back(F.zero2());
      g.c.erase(g.c.begin());
      work.push_back(std::move(g));
      continue;
    }
    bool split = false;
    for (u64 attempt = 0; attempt < 65536 && !split; ++attempt) {
      Fq2 a{attempt % F.N, (attempt / F.N) % F.N};
      PolyFq2 shift = PolyFq2::from(K, {a, F.one2()});
      PolyFq2 b = poly_powmod(K, shift, (q - 1) / 2, g);
      b = poly_sub(K, b, poly_const(K, K.one()));
      PolyFq2 dd = poly_gcd(K, g, b);
      if (dd.deg() > 0 && dd.deg() < g.deg()) {
        work.push_back(poly_divrem(K, g, dd).first);
        work.push_back(std::move(dd));
        split = true;
      }
    }
    if (!split)
      throw Error(ErrorKind::InternalInvariantViolation, "fq2 root split did not converge");
  }

  std::vector<Fq2> out;
  for (Fq2 beta : distinct) {
    int m = root_multiplicity(F, fm, beta);
    for (int i = 0; i < m; ++i) out.push_back(beta);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace eis
