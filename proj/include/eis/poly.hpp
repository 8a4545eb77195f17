#pragma once

#include <algorithm>
#include <vector>

#include "eis/field.hpp"

namespace eis {

// Field-ops adapters so one dense-polynomial engine serves F_N and F_{N^2}.
struct FpOps {
  const FieldCtx& F;
  using elem = u64;
  elem zero() const { return 0; }
  elem one() const { return 1; }
  bool is_zero(elem a) const { return a == 0; }
  elem add(elem a, elem b) const { return F.add(a, b); }
  elem sub(elem a, elem b) const { return F.sub(a, b); }
  elem neg(elem a) const { return F.neg(a); }
  elem mul(elem a, elem b) const { return F.mul(a, b); }
  elem inv(elem a) const { return F.inv(a); }
};

struct Fq2Ops {
  const FieldCtx& F;
  using elem = Fq2;
  elem zero() const { return F.zero2(); }
  elem one() const { return F.one2(); }
  bool is_zero(elem a) const { return F.is_zero2(a); }
  elem add(elem a, elem b) const { return F.add2(a, b); }
  elem sub(elem a, elem b) const { return F.sub2(a, b); }
  elem neg(elem a) const { return F.neg2(a); }
  elem mul(elem a, elem b) const { return F.mul2(a, b); }
  elem inv(elem a) const { return F.inv2(a); }
};

// Dense polynomial, highest-degree coefficient nonzero; empty vector = 0.
template <class Ops>
struct Poly {
  using E = typename Ops::elem;
  std::vector<E> c;

  int deg() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  E lc() const { return c.back(); }

  static Poly from(const Ops& K, std::vector<E> v) {
    Poly p{std::move(v)};
    p.normalize(K);
    return p;
  }
  void normalize(const Ops& K) {
    while (!c.empty() && K.is_zero(c.back())) c.pop_back();
  }
  E coeff(int i) const {
    return (i >= 0 && i < (int)c.size()) ? c[(size_t)i] : E{};
  }
};

template <class Ops>
Poly<Ops> poly_x(const Ops& K) {
  return Poly<Ops>::from(K, {K.zero(), K.one()});
}

template <class Ops>
Poly<Ops> poly_const(const Ops& K, typename Ops::elem v) {
  return Poly<Ops>::from(K, {v});
}

template <class Ops>
Poly<Ops> poly_add(const Ops& K, const Poly<Ops>& f, const Poly<Ops>& g) {
  std::vector<typename Ops::elem> r(std::max(f.c.size(), g.c.size()), K.zero());
  for (size_t i = 0; i < r.size(); ++i) r[i] = K.add(f.coeff((int)i), g.coeff((int)i));
  return Poly<Ops>::from(K, std::move(r));
}

template <class Ops>
Poly<Ops> poly_sub(const Ops& K, const Poly<Ops>& f, const Poly<Ops>& g) {
  std::vector<typename Ops::elem> r(std::max(f.c.size(), g.c.size()), K.zero());
  for (size_t i = 0; i < r.size(); ++i) r[i] = K.sub(f.coeff((int)i), g.coeff((int)i));
  return Poly<Ops>::from(K, std::move(r));
}

template <class Ops>
Poly<Ops> poly_scale(const Ops& K, typename Ops::elem s, const Poly<Ops>& f) {
  std::vector<typename Ops::elem> r(f.c.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = K.mul(s, f.c[i]);
  return Poly<Ops>::from(K, std::move(r));
}

template <class Ops>
Poly<Ops> poly_mul(const Ops& K, const Poly<Ops>& f, const Poly<Ops>& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<typename Ops::elem> r(f.c.size() + g.c.size() - 1, K.zero());
  for (size_t i = 0; i < f.c.size(); ++i)
    for (size_t j = 0; j < g.c.size(); ++j)
      r[i + j] = K.add(r[i + j], K.mul(f.c[i], g.c[j]));
  return Poly<Ops>::from(K, std::move(r));
}

// Quotient and remainder; g nonzero.
template <class Ops>
std::pair<Poly<Ops>, Poly<Ops>> poly_divrem(const Ops& K, Poly<Ops> f, const Poly<Ops>& g) {
  if (g.is_zero()) throw Error(ErrorKind::RangeError, "poly_divrem by zero");
  if (f.deg() < g.deg()) return {{}, std::move(f)};
  auto glc_inv = K.inv(g.lc());
  std::vector<typename Ops::elem> q((size_t)(f.deg() - g.deg() + 1), K.zero());
  while (f.deg() >= g.deg()) {
    int k = f.deg() - g.deg();
    auto s = K.mul(f.lc(), glc_inv);
    q[(size_t)k] = s;
    for (int i = 0; i <= g.deg(); ++i)
      f.c[(size_t)(i + k)] = K.sub(f.c[(size_t)(i + k)], K.mul(s, g.c[(size_t)i]));
    f.normalize(K);
    if (f.is_zero()) break;
  }
  return {Poly<Ops>::from(K, std::move(q)), std::move(f)};
}

template <class Ops>
Poly<Ops> poly_mod(const Ops& K, Poly<Ops> f, const Poly<Ops>& g) {
  return poly_divrem(K, std::move(f), g).second;
}

template <class Ops>
Poly<Ops> poly_monic(const Ops& K, const Poly<Ops>& f) {
  if (f.is_zero()) return f;
  return poly_scale(K, K.inv(f.lc()), f);
}

template <class Ops>
Poly<Ops> poly_gcd(const Ops& K, Poly<Ops> a, Poly<Ops> b) {
  while (!b.is_zero()) {
    auto r = poly_mod(K, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(K, a);
}

template <class Ops>
Poly<Ops> poly_derivative(const Ops& K, const Poly<Ops>& f, u64 char_p) {
  if (f.deg() <= 0) return {};
  std::vector<typename Ops::elem> r((size_t)f.deg(), K.zero());
  for (int i = 1; i <= f.deg(); ++i) {
    u64 m = (u64)i % char_p;
    auto t = f.c[(size_t)i];
    auto acc = K.zero();
    // i * coeff via scalar in the prime field
    for (u64 bit = 1; bit <= m; bit <<= 1) {
      if (m & bit) acc = K.add(acc, t);
      t = K.add(t, t);
    }
    r[(size_t)(i - 1)] = acc;
  }
  return Poly<Ops>::from(K, std::move(r));
}

template <class Ops>
typename Ops::elem poly_eval(const Ops& K, const Poly<Ops>& f, typename Ops::elem x) {
  auto r = K.zero();
  for (int i = f.deg(); i >= 0; --i) r = K.add(K.mul(r, x), f.c[(size_t)i]);
  return r;
}

// f^e mod g by square-and-multiply.
template <class Ops>
Poly<Ops> poly_powmod(const Ops& K, Poly<Ops> f, u64 e, const Poly<Ops>& g) {
  Poly<Ops> r = poly_const(K, K.one());
  f = poly_mod(K, std::move(f), g);
  while (e) {
    if (e & 1) r = poly_mod(K, poly_mul(K, r, f), g);
    f = poly_mod(K, poly_mul(K, f, f), g);
    e >>= 1;
  }
  return r;
}

// Res(f,g) by the Euclidean recurrence with leading-coefficient corrections:
// Res(f,g) = lc(g)^(deg f - deg r) * (-1)^(deg f * deg g) * Res(g, r), r = f mod g.
template <class Ops>
typename Ops::elem poly_resultant(const Ops& K, Poly<Ops> f, Poly<Ops> g) {
  if (f.is_zero() && g.is_zero())
    throw Error(ErrorKind::BothZero, "resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) return K.zero();
  auto res = K.one();
  bool flip = false;
  while (g.deg() > 0) {
    auto r = poly_mod(K, f, g);
    if (r.is_zero()) return K.zero();
    int df = f.deg(), dg = g.deg(), dr = r.deg();
    auto corr = K.one();
    for (int i = 0; i < df - dr; ++i) corr = K.mul(corr, g.lc());
    res = K.mul(res, corr);
    if ((df & 1) && (dg & 1)) flip = !flip;
    f = std::move(g);
    g = std::move(r);
  }
  // g is a nonzero constant
  auto clast = K.one();
  for (int i = 0; i < f.deg(); ++i) clast = K.mul(clast, g.c[0]);
  res = K.mul(res, clast);
  return flip ? K.neg(res) : res;
}

using PolyFp = Poly<FpOps>;
using PolyFq2 = Poly<Fq2Ops>;

// Embed an F_N polynomial into F_{N^2}[X].
inline PolyFq2 lift_to_fq2(const FieldCtx& F, const PolyFp& f) {
  PolyFq2 g;
  g.c.reserve(f.c.size());
  for (u64 v : f.c) g.c.push_back(Fq2{v, 0});
  return g;
}

// All roots of f in F_{N^2}, with multiplicity, sorted lexicographically by
// (a, b). Factors of degree >= 3 (roots in larger fields) are discarded.
std::vector<Fq2> roots_in_fq2(const FieldCtx& F, const PolyFp& f);

// Roots in F_N of an F_N polynomial (with multiplicity).
std::vector<u64> roots_in_fp(const FieldCtx& F, const PolyFp& f);

// Roots in F_{N^2} of a small F_{N^2} polynomial (with multiplicity); used for
// division-polynomial factoring. Degree is expected to stay tiny.
std::vector<Fq2> roots_fq2_poly(const FieldCtx& F, const PolyFq2& f);

// Splits a squarefree monic F_N polynomial all of whose irreducible factors
// have degree <= 2 into those factors. Throws InternalInvariantViolation if a
// factor resists the bounded deterministic splitting schedule.
std::vector<PolyFp> split_deg_le2(const FieldCtx& F, const PolyFp& f, const PolyFp& frob_x);

}  // namespace eis
