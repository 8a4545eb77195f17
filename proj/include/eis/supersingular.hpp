#pragma once

#include <optional>

#include "eis/logmap.hpp"
#include "eis/poly.hpp"

namespace eis {

// Hasse polynomial H(X) = sum binom((N-1)/2, i)^2 X^i over F_N.
PolyFp hasse_poly(const FieldCtx& F);

// Disc(H) by the closed form (-1)^(m(m-1)/2) / m! * prod_{k<=m} k^(4k), m = (N-1)/2.
u64 hasse_disc_closed(const FieldCtx& F);

// Disc(H) = (-1)^(m(m-1)/2) * Res(H, H') (H is monic).
u64 hasse_disc_resultant(const FieldCtx& F);

// The set L of supersingular Legendre lambda-invariants (roots of H in
// F_{N^2}) with cached H'(lambda) and the S3-orbit structure.
struct SupersingularSet {
  const FieldCtx* F = nullptr;
  PolyFp H, Hp;
  std::vector<Fq2> lambdas;  // sorted lexicographically by (a, b)
  std::vector<Fq2> hprime;   // H'(lambda), same index
  struct Orbit {
    std::vector<int> members;  // indices into lambdas, smallest first
    Fq2 j;
    int c = 0;  // orbit size, in {1,2,3,6}
    int w = 0;  // 6/c
  };
  std::vector<Orbit> orbits;
  std::vector<int> orbit_of;

  int index_of(Fq2 lam) const;  // -1 if not in L
  bool contains(Fq2 lam) const { return index_of(lam) >= 0; }
};

// Builds L and verifies the structural invariants (|L| = (N-1)/2, simple
// roots, stability under lambda -> 1/lambda, 1-lambda, Frobenius, j constant
// on orbits, mass formula). Violations throw InternalInvariantViolation.
SupersingularSet supersingular_set(const FieldCtx& F);

// j = 256 (1 - lambda + lambda^2)^3 / (lambda^2 (1-lambda)^2).
Fq2 j_of_lambda(const FieldCtx& F, Fq2 lam);

// P(Y) = Res_X(H'(X), 256 (1-X+X^2)^3 - X^2 (1-X)^2 Y), degree (N-3)/2.
PolyFp p_resultant_poly(const FieldCtx& F);

// The two roots of Y^2 (1-lambda)^2 + 16 lambda Y - 16 lambda (the U_2 image
// of [lambda]); both lie in L.
std::pair<Fq2, Fq2> u2_action(const SupersingularSet& ss, Fq2 lam);

// The two roots of phi_2(X, lambda) (the U_2 preimages of [lambda]).
std::pair<Fq2, Fq2> u2_preimages(const SupersingularSet& ss, Fq2 lam);

struct CheckResult {
  std::string id;
  bool pass = false;
};

// lambda^(N-1) H'(mu1) H'(mu2) = lambda^2 (lambda-1)/4 * H'(lambda)^2 at every
// lambda in L (mu_i the roots of phi_2(X, lambda)), plus the polynomial
// identity Res_X(H(X), phi_2(X,Y)) = H(Y)^2.
std::vector<CheckResult> verify_u2_multiplicative(const SupersingularSet& ss);

// Orbit-indexed coefficients of 12 e_1: Log(P(j(E))) per orbit (p >= 5).
struct E1Element {
  std::vector<u64> coeff_times_12;  // per orbit
  std::vector<u64> coeff;           // Log(P(j(E)))/12
};
E1Element e1_element(const SupersingularSet& ss, const Fq2LogMap& lg);

u64 pairing_e1_e0(const SupersingularSet& ss, const Fq2LogMap& lg);
// requires pairing_e1_e0 = 0
u64 pairing_e1_e1(const SupersingularSet& ss, const Fq2LogMap& lg);

// The degree-ell Legendre isogeny correspondence computed by Velu's formulas
// from the ell-division polynomial (ell in {3,5}): images[i] lists the ell+1
// lambda' isogenous to lambdas[i], with multiplicity.
struct LegendreHecke {
  u64 ell = 0;
  std::vector<std::vector<int>> images;  // indices into ss.lambdas
};
LegendreHecke legendre_hecke(const SupersingularSet& ss, u64 ell);

// prod_{lambda' ~ lambda} H'(lambda') = ell^(ell-1) H'(lambda)^(ell+1).
std::vector<CheckResult> verify_hprime_product(const SupersingularSet& ss, u64 ell);

struct ConjectureVerdict {
  std::string id;
  bool proposition = false;  // propositions must pass; conjectures are findings
  bool applicable = true;
  bool pass = false;
};

// Conjectural and proved identities for the supersingular lambda-invariants:
// the p >= 5 items (i)-(v), the square item for N = 1 mod 4, the cube and
// fourth-power propositions, and the p = 3 items at the lifted modulus.
std::vector<ConjectureVerdict> conjecture_suite(const SupersingularSet& ss, u64 p, int r);

// The Gamma(2)-level Eisenstein vectors e_0^0, e_0^1, e_0^2, e_1^2 on L and
// their Hecke relations (p >= 5).
struct Gamma2Elements {
  std::vector<u64> e00, e01, e02, e12;
  std::vector<CheckResult> checks;
};
Gamma2Elements gamma2_eisenstein_elements(const SupersingularSet& ss, const Fq2LogMap& lg);

// Verification-only variants of the first higher Eisenstein vector at p = 3
// (modulus 3^(r+1)) and p = 2 (modulus 2^(t+3)).
std::vector<CheckResult> verify_e1_p3(const SupersingularSet& ss, int r);
std::vector<CheckResult> verify_e1_p2(const SupersingularSet& ss);

}  // namespace eis
