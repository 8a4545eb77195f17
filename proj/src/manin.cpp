#include "eis/manin.hpp"

#include <algorithm>
#include <numeric>

namespace eis {

std::vector<Mat22> merel_matrices(u64 n, u64 N) {
  if (gcd_u64(n, N) != 1) throw Error(ErrorKind::BadIndex, "gcd(n, N) != 1");
  std::vector<Mat22> out;
  for (i64 a = 1; a <= (i64)n; ++a) {
    for (i64 d = 1; d <= (i64)n; ++d) {
      i64 bc = a * d - (i64)n;
      if (bc < 0) continue;
      if (bc == 0) {
        for (i64 b = 0; b < a; ++b)
          for (i64 c = 0; c < d; ++c)
            if (b == 0 || c == 0) out.push_back({a, b, c, d});
        continue;
      }
      for (i64 b = 1; b < a; ++b) {
        if (bc % b) continue;
        i64 c = bc / b;
        if (c >= 1 && c < d) out.push_back({a, b, c, d});
      }
    }
  }
  return out;
}

u64 genus_x0_prime(u64 N) {
  // prime level: mu = N+1, nu_inf = 2, nu_2 = 1 + (-1|N), nu_3 = 1 + (-3|N)
  auto legendre = [&](i64 a) -> i64 {
    u64 ar = (u64)(((a % (i64)N) + (i64)N) % (i64)N);
    if (ar == 0) return 0;
    return powmod(ar, (N - 1) / 2, N) == 1 ? 1 : -1;
  };
  i64 nu2 = 1 + legendre(-1);
  i64 nu3 = 1 + legendre(-3);
  // g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2, exact over Q
  i64 twelve_g = 12 + (i64)(N + 1) - 3 * nu2 - 4 * nu3 - 12;
  if (twelve_g % 12 != 0) throw Error(ErrorKind::InternalInvariantViolation, "genus formula");
  return (u64)(twelve_g / 12);
}

namespace {

struct SignedUF {
  std::vector<int> parent;
  std::vector<int8_t> sign;  // sign relative to parent
  std::vector<bool> dead;

  explicit SignedUF(size_t n) : parent(n), sign(n, 1), dead(n, false) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::pair<int, int> find(int x) {
    if (parent[(size_t)x] == x) return {x, 1};
    auto [root, s] = find(parent[(size_t)x]);
    parent[(size_t)x] = root;
    sign[(size_t)x] = (int8_t)(sign[(size_t)x] * s);
    return {root, sign[(size_t)x]};
  }
  // assert val(x) = s * val(y)
  void join(int x, int y, int s) {
    auto [rx, sx] = find(x);
    auto [ry, sy] = find(y);
    if (rx == ry) {
      if (sx != s * sy) dead[(size_t)rx] = true;  // 2 val = 0 -> val = 0 (p odd)
      return;
    }
    parent[(size_t)rx] = ry;
    sign[(size_t)rx] = (int8_t)(s * sx * sy);
    dead[(size_t)ry] = dead[(size_t)ry] || dead[(size_t)rx];
  }
};

const Mat22 kSigma{0, -1, 1, 0};
const Mat22 kTau{0, -1, 1, -1};

}  // namespace

ManinSpace build_manin_space(const FieldCtx& F, u64 p, int r) {
  if (p < 5) throw Error(ErrorKind::UnsupportedPrime, "modular-symbol engine needs p >= 5");
  int t = eisenstein_t(F.N, p);
  if (t == 0) throw Error(ErrorKind::NotEisensteinPrime, "p not Eisenstein for N");
  if (r < 1 || r > t) throw Error(ErrorKind::RangeError, "need 1 <= r <= t");

  ManinSpace ms;
  ms.F = &F;
  ms.p1 = P1Index(F.N);
  ms.p = p;
  ms.r = r;
  ms.t = t;
  ms.M = upow(p, r);
  ms.genus = genus_x0_prime(F.N);

  const int n = ms.p1.size();
  SignedUF uf((size_t)n);
  for (int x = 0; x < n; ++x) {
    int xs = ms.p1.act(x, kSigma);
    if (xs == x)
      uf.dead[(size_t)uf.find(x).first] = true;
    else
      uf.join(x, xs, -1);
    auto [c, d] = ms.p1.rep(x);
    int xi = ms.p1.normalize(-(i64)c, (i64)d);
    uf.join(x, xi, 1);
  }
  // tau relations on union-find classes
  std::vector<bool> seen((size_t)n, false);
  std::vector<std::map<int, i64>> tau_rows;
  for (int x = 0; x < n; ++x) {
    if (seen[(size_t)x]) continue;
    int x1 = ms.p1.act(x, kTau);
    int x2 = ms.p1.act(x1, kTau);
    seen[(size_t)x] = seen[(size_t)x1] = seen[(size_t)x2] = true;
    if (x1 == x) {
      uf.dead[(size_t)uf.find(x).first] = true;  // 3x = 0, p != 3
      continue;
    }
    std::map<int, i64> row;
    for (int y : {x, x1, x2}) {
      auto [root, s] = uf.find(y);
      if (uf.dead[(size_t)root]) continue;
      row[root] += s;
    }
    if (!row.empty()) tau_rows.push_back(std::move(row));
  }

  // live class roots -> dense columns
  std::vector<int> col_of((size_t)n, -1);
  std::vector<int> root_of_col;
  for (int x = 0; x < n; ++x) {
    auto [root, s] = uf.find(x);
    (void)s;
    if (uf.dead[(size_t)root] || col_of[(size_t)root] >= 0) continue;
    col_of[(size_t)root] = (int)root_of_col.size();
    root_of_col.push_back(root);
  }
  const size_t ncols = root_of_col.size();

  std::vector<Vec> rows;
  rows.reserve(tau_rows.size());
  for (auto& row : tau_rows) {
    Vec v(ncols, 0);
    bool nonzero = false;
    for (auto [root, coef] : row) {
      u64 c = (u64)(((coef % (i64)ms.M) + (i64)ms.M) % (i64)ms.M);
      if (c) {
        v[(size_t)col_of[(size_t)root]] = c;
        nonzero = true;
      }
    }
    if (nonzero) rows.push_back(std::move(v));
  }

  // full RREF over Z/p^r; every pivot must be a unit (no p-torsion for p >= 5)
  std::vector<int> pivot_row_of_col(ncols, -1);
  size_t rank = 0;
  for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    size_t sel = rows.size();
    for (size_t i = rank; i < rows.size(); ++i) {
      if (rows[i][col] % p != 0) {
        sel = i;
        break;
      }
    }
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    u64 inv = invmod(rows[rank][col], ms.M);
    for (auto& x : rows[rank]) x = mulmod(x, inv, ms.M);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      u64 c = rows[i][col];
      for (size_t j = 0; j < ncols; ++j)
        rows[i][j] = submod(rows[i][j], mulmod(c, rows[rank][j], ms.M), ms.M);
    }
    pivot_row_of_col[col] = (int)rank;
    ++rank;
  }
  for (size_t i = rank; i < rows.size(); ++i)
    for (u64 x : rows[i])
      if (x != 0)
        throw Error(ErrorKind::RankMismatch, "non-unit pivot: presentation has p-torsion");

  std::vector<int> basis_col;
  for (size_t col = 0; col < ncols; ++col)
    if (pivot_row_of_col[col] < 0) basis_col.push_back((int)col);
  ms.dim = basis_col.size();
  if (ms.dim != ms.genus + 1)
    throw Error(ErrorKind::RankMismatch, "plus-space dimension != g+1");

  std::vector<int> basis_index_of_col(ncols, -1);
  for (size_t k = 0; k < basis_col.size(); ++k)
    basis_index_of_col[(size_t)basis_col[k]] = (int)k;

  // expression of each column in the basis
  std::vector<Vec> col_expr(ncols);
  for (size_t col = 0; col < ncols; ++col) {
    Vec e(ms.dim, 0);
    if (pivot_row_of_col[col] < 0) {
      e[(size_t)basis_index_of_col[col]] = 1;
    } else {
      const Vec& row = rows[(size_t)pivot_row_of_col[col]];
      for (size_t j = 0; j < ncols; ++j) {
        if (j == col || row[j] == 0) continue;
        e[(size_t)basis_index_of_col[j]] = negmod(row[j], ms.M);
      }
    }
    col_expr[col] = std::move(e);
  }

  ms.project_table.resize((size_t)n);
  for (int x = 0; x < n; ++x) {
    auto [root, s] = uf.find(x);
    if (uf.dead[(size_t)root]) {
      ms.project_table[(size_t)x] = Vec(ms.dim, 0);
      continue;
    }
    Vec v = col_expr[(size_t)col_of[(size_t)root]];
    if (s < 0)
      for (auto& c : v) c = negmod(c, ms.M);
    ms.project_table[(size_t)x] = std::move(v);
  }

  ms.lift_p1.resize(ms.dim);
  for (size_t k = 0; k < ms.dim; ++k) ms.lift_p1[k] = root_of_col[(size_t)basis_col[k]];

  ms.bnd_free.assign((size_t)n, 0);
  ms.bnd_free[(size_t)ms.p1.normalize(1, 0)] = 1;
  ms.bnd_free[(size_t)ms.p1.normalize(0, 1)] = -1;

  return ms;
}

u64 ManinSpace::boundary(const Vec& v) const {
  u64 b = 0;
  for (size_t k = 0; k < dim; ++k) {
    i64 f = bnd_free[(size_t)lift_p1[k]];
    if (f == 0 || v[k] == 0) continue;
    b = f > 0 ? addmod(b, v[k], M) : submod(b, v[k], M);
  }
  return b;
}

const std::vector<Vec>& hecke_tn(ManinSpace& ms, u64 n) {
  auto it = ms.hecke_cache.find(n);
  if (it != ms.hecke_cache.end()) return it->second;

  auto mats = merel_matrices(n, ms.F->N);
  const int np = ms.p1.size();
  // full map on the free module, projected
  std::vector<Vec> tmap((size_t)np);
  for (int x = 0; x < np; ++x) {
    Vec acc(ms.dim, 0);
    for (const auto& m : mats) {
      const Vec& pr = ms.project_table[(size_t)ms.p1.act(x, m)];
      for (size_t k = 0; k < ms.dim; ++k) acc[k] = addmod(acc[k], pr[k], ms.M);
    }
    tmap[(size_t)x] = std::move(acc);
  }
  // relations must map to zero
  auto is_zero = [&](const Vec& v) {
    for (u64 c : v)
      if (c) return false;
    return true;
  };
  for (int x = 0; x < np; ++x) {
    Vec v = tmap[(size_t)x];
    const Vec& vs = tmap[(size_t)ms.p1.act(x, kSigma)];
    for (size_t k = 0; k < ms.dim; ++k) v[k] = addmod(v[k], vs[k], ms.M);
    if (!is_zero(v)) throw Error(ErrorKind::NotWellDefined, "sigma relation broken by T_n");
    int x1 = ms.p1.act(x, kTau), x2 = ms.p1.act(x1, kTau);
    Vec w = tmap[(size_t)x];
    for (size_t k = 0; k < ms.dim; ++k)
      w[k] = addmod(w[k], addmod(tmap[(size_t)x1][k], tmap[(size_t)x2][k], ms.M), ms.M);
    if (!is_zero(w)) throw Error(ErrorKind::NotWellDefined, "tau relation broken by T_n");
    auto [c, d] = ms.p1.rep(x);
    Vec u = tmap[(size_t)x];
    const Vec& vi = tmap[(size_t)ms.p1.normalize(-(i64)c, (i64)d)];
    for (size_t k = 0; k < ms.dim; ++k) u[k] = submod(u[k], vi[k], ms.M);
    if (!is_zero(u)) throw Error(ErrorKind::NotWellDefined, "iota relation broken by T_n");
  }

  std::vector<Vec> mat(ms.dim, Vec(ms.dim, 0));
  for (size_t k = 0; k < ms.dim; ++k) {
    const Vec& col = tmap[(size_t)ms.lift_p1[k]];
    for (size_t i = 0; i < ms.dim; ++i) mat[i][k] = col[i];
  }
  return ms.hecke_cache.emplace(n, std::move(mat)).first->second;
}

Vec modsym_from_infinity(const ManinSpace& ms, i64 a, i64 b) {
  // Manin trick: {oo, a/b} = sum_k xi([q_k : (-1)^(k-1) q_{k-1}]) over the
  // continued-fraction convergents p_k/q_k of a/b.
  Vec out(ms.dim, 0);
  if (b == 0) return out;  // {oo, oo} = 0
  i64 num = a, den = b;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i64 q_prev2 = 1, q_prev = 0;  // q_{-2} = 1, q_{-1} = 0
  for (int k = 0; den != 0; ++k) {
    i64 q = num >= 0 ? num / den : -((-num + den - 1) / den);  // floor
    i64 rem = num - q * den;
    i64 q_cur = q * q_prev + q_prev2;
    i64 sgn = (k % 2 == 0) ? -1 : 1;  // (-1)^(k-1)
    int idx = ms.p1.normalize(q_cur, sgn * q_prev);
    const Vec& pr = ms.project_table[(size_t)idx];
    for (size_t j = 0; j < ms.dim; ++j) out[j] = addmod(out[j], pr[j], ms.M);
    q_prev2 = q_prev;
    q_prev = q_cur;
    num = den;
    den = rem;
  }
  return out;
}

std::vector<Vec> atkin_lehner(ManinSpace& ms) {
  const u64 N = ms.F->N;
  std::vector<Vec> mat(ms.dim, Vec(ms.dim, 0));
  for (size_t k = 0; k < ms.dim; ++k) {
    auto [c, d] = ms.p1.rep(ms.lift_p1[k]);
    // lift [c:d] to (a b; c d) in SL_2(Z)
    i64 cc = (i64)c, dd = (i64)d;
    if (dd == 0) {
      cc = 1;
      dd = (i64)N;  // bottom row (1, N): same class [1:0]
    }
    while (std::gcd(cc, dd) != 1) cc += (i64)N;
    // extended gcd: a dd - b cc = 1
    i64 x0 = 0, x1 = 1, y0 = 1, y1 = 0, r0 = dd, r1 = cc;
    while (r1 != 0) {
      i64 q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
      std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    if (r0 < 0) {
      x0 = -x0;
      y0 = -y0;
    }
    i64 a = x0, b = -y0;  // a dd - b cc = 1
    // w_N {g0, g oo} = {-d/(N b), -c/(N a)} = {oo,-c/(Na)} - {oo,-d/(Nb)}
    Vec to = modsym_from_infinity(ms, -cc, (i64)N * a);
    Vec from = modsym_from_infinity(ms, -dd, (i64)N * b);
    for (size_t i = 0; i < ms.dim; ++i) mat[i][k] = submod(to[i], from[i], ms.M);
  }
  return mat;
}

}  // namespace eis
