#include "eis/zpr.hpp"

#include <algorithm>

namespace eis {

namespace {

int leading(const Vec& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i]) return (int)i;
  return -1;
}

void row_axpy(Vec& w, u64 c, const Vec& v, u64 M) {
  // w -= c v
  for (size_t i = 0; i < w.size(); ++i) w[i] = submod(w[i], mulmod(c, v[i], M), M);
}

}  // namespace

bool HowellForm::reduce(Vec& v) const {
  for (size_t k = 0; k < rows.size(); ++k) {
    int col = pivot_col[k];
    if (v[(size_t)col] == 0) continue;
    int a = pivot_val[k];
    if (R.val(v[(size_t)col]) < a) return false;
    u64 c = v[(size_t)col] / upow(R.p, a);
    row_axpy(v, c, rows[k], R.M);
  }
  return leading(v) < 0;
}

void HowellForm::insert(Vec v) {
  for (;;) {
    int col = leading(v);
    if (col < 0) return;
    int a = R.val(v[(size_t)col]);
    // locate existing pivot at this column
    size_t k = 0;
    bool found = false;
    for (; k < rows.size(); ++k) {
      if (pivot_col[k] == col) {
        found = true;
        break;
      }
    }
    if (found) {
      if (pivot_val[k] <= a) {
        u64 c = v[(size_t)col] / upow(R.p, pivot_val[k]);
        row_axpy(v, c, rows[k], R.M);
        continue;
      }
      // new row has the better pivot: swap and re-insert the old one
      std::swap(v, rows[k]);
      std::swap(a, pivot_val[k]);
      // normalize the new pivot row
      u64 u = R.unit_of(rows[k][(size_t)col]);
      if (u != 1) {
        u64 ui = invmod(u, R.M);
        for (auto& x : rows[k]) x = mulmod(x, ui, R.M);
      }
      if (pivot_val[k] > 0) {
        Vec sat = rows[k];
        u64 c = upow(R.p, (u64)(R.r - pivot_val[k]));
        for (auto& x : sat) x = mulmod(x, c, R.M);
        insert(std::move(sat));
      }
      continue;  // re-insert the displaced row (now in v)
    }
    // fresh pivot column
    u64 u = R.unit_of(v[(size_t)col]);
    if (u != 1) {
      u64 ui = invmod(u, R.M);
      for (auto& x : v) x = mulmod(x, ui, R.M);
    }
    rows.push_back(v);
    pivot_col.push_back(col);
    pivot_val.push_back(a);
    // keep rows ordered by pivot column
    for (size_t i = rows.size(); i-- > 1;) {
      if (pivot_col[i] < pivot_col[i - 1]) {
        std::swap(rows[i], rows[i - 1]);
        std::swap(pivot_col[i], pivot_col[i - 1]);
        std::swap(pivot_val[i], pivot_val[i - 1]);
      } else {
        break;
      }
    }
    if (a > 0) {
      Vec sat = v;
      u64 c = upow(R.p, (u64)(R.r - a));
      for (auto& x : sat) x = mulmod(x, c, R.M);
      insert(std::move(sat));
    }
    return;
  }
}

bool HowellForm::same_span(const HowellForm& other) const {
  if (n != other.n) return false;
  for (const auto& row : rows)
    if (!other.contains(row)) return false;
  for (const auto& row : other.rows)
    if (!contains(row)) return false;
  return true;
}

HowellForm howell_form(ZprRing R, size_t ncols, const std::vector<Vec>& gens) {
  HowellForm H(R, ncols);
  for (const auto& g : gens) H.insert(g);
  return H;
}

Vec mat_apply(const std::vector<Vec>& A, const Vec& v, u64 M) {
  Vec w(A.size(), 0);
  for (size_t i = 0; i < A.size(); ++i) {
    u64 acc = 0;
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j]) acc = addmod(acc, mulmod(A[i][j], v[j], M), M);
    w[i] = acc;
  }
  return w;
}

std::vector<Vec> mat_mul(const std::vector<Vec>& A, const std::vector<Vec>& B, u64 M) {
  size_t n = A.size(), m = B[0].size(), inner = B.size();
  std::vector<Vec> C(n, Vec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < inner; ++k) {
      u64 a = A[i][k];
      if (!a) continue;
      for (size_t j = 0; j < m; ++j)
        C[i][j] = addmod(C[i][j], mulmod(a, B[k][j], M), M);
    }
  return C;
}

std::vector<Vec> fp_kernel(std::vector<Vec> A, size_t ncols, u64 p) {
  // row echelonize A, then read off the kernel from free columns
  std::vector<int> pivot_of_col(ncols, -1);
  size_t rank = 0;
  for (size_t col = 0; col < ncols && rank < A.size(); ++col) {
    size_t sel = rank;
    while (sel < A.size() && A[sel][col] == 0) ++sel;
    if (sel == A.size()) continue;
    std::swap(A[rank], A[sel]);
    u64 inv = invmod(A[rank][col], p);
    for (auto& x : A[rank]) x = mulmod(x, inv, p);
    for (size_t i = 0; i < A.size(); ++i) {
      if (i == rank || A[i][col] == 0) continue;
      u64 c = A[i][col];
      for (size_t j = 0; j < ncols; ++j) A[i][j] = submod(A[i][j], mulmod(c, A[rank][j], p), p);
    }
    pivot_of_col[col] = (int)rank;
    ++rank;
  }
  std::vector<Vec> kernel;
  for (size_t col = 0; col < ncols; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    Vec v(ncols, 0);
    v[col] = 1;
    for (size_t c2 = 0; c2 < ncols; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = negmod(A[(size_t)pivot_of_col[c2]][col], p);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

std::vector<Vec> fp_annihilator(const std::vector<Vec>& basis, size_t ncols, u64 p) {
  if (basis.empty()) {
    // everything annihilates the zero space
    std::vector<Vec> id(ncols, Vec(ncols, 0));
    for (size_t i = 0; i < ncols; ++i) id[i][i] = 1;
    return id;
  }
  // {f : B f = 0} where rows of B are the basis vectors
  return fp_kernel(basis, ncols, p);
}

}  // namespace eis
