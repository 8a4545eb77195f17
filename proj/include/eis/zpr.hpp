#pragma once

#include "eis/modarith.hpp"

namespace eis {

// Dense linear algebra over the local ring Z/p^r. Pivots are chosen by
// minimal p-valuation; Howell completion makes greedy reduction a correct
// membership test for row spans.
struct ZprRing {
  u64 p = 0;
  int r = 0;
  u64 M = 0;  // p^r

  ZprRing() = default;
  ZprRing(u64 p_, int r_) : p(p_), r(r_), M(upow(p_, r_)) {}

  int val(u64 x) const {
    if (x == 0) return r;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }
  u64 unit_of(u64 x) const { return x / upow(p, val(x)); }
};

using Vec = std::vector<u64>;

struct HowellForm {
  ZprRing R;
  size_t n = 0;
  std::vector<Vec> rows;        // echelon rows, leading entries p^a * 1
  std::vector<int> pivot_col;   // per row
  std::vector<int> pivot_val;   // per row, exponent a

  explicit HowellForm(ZprRing ring, size_t ncols) : R(ring), n(ncols) {}

  // Reduce v against the form in place; returns true iff reduced to zero.
  bool reduce(Vec& v) const;
  bool contains(Vec v) const { return reduce(v); }

  // Insert a row (and its saturation tail) into the form.
  void insert(Vec v);

  bool same_span(const HowellForm& other) const;
  size_t rank() const { return rows.size(); }
};

HowellForm howell_form(ZprRing R, size_t ncols, const std::vector<Vec>& gens);

// w = A v over Z/M (row-major dense).
Vec mat_apply(const std::vector<Vec>& A, const Vec& v, u64 M);

// A B (both row-major dense square).
std::vector<Vec> mat_mul(const std::vector<Vec>& A, const std::vector<Vec>& B, u64 M);

// F_p tools (r = 1), used by the kernel-growth cross-check.
// Basis of the null space {v : A v = 0} over F_p.
std::vector<Vec> fp_kernel(std::vector<Vec> A, size_t ncols, u64 p);

// Basis of the row space's annihilator {f : f . b = 0 for all rows b}.
std::vector<Vec> fp_annihilator(const std::vector<Vec>& basis, size_t ncols, u64 p);

}  // namespace eis
