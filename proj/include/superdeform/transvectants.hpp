#pragma once
// Supertransvectants: the bilinear osp(1|2)-invariant maps
//   J^{alpha,beta}_k : F_alpha (x) F_beta -> F_{alpha+beta+k},
// one for each half-integer level k >= 0, realized in etabar normal form with
// falling-factorial binomial coefficients over Q(lam).  Level k enters as
// twok = 2k, following the doubled-integer convention for half-integers.

#include <string>

#include "superdeform/bilinops.hpp"
#include "superdeform/densities.hpp"

namespace superdeform {

// C(n, m) for integer upper argument, zero when m > n >= 0 or m < 0.
Rational binom_int(int n, int m);

// Falling-factorial binomial C(P, m) = P (P-1) ... (P-m+1) / m! over Q[lam].
LamPoly binom_poly(const LamPoly& p, int m);

// The level-(twok/2) supertransvectant with Q(lam) coefficients, normalized so
// the etabar^{2k}(f) g term has coefficient 1.  Throws std::domain_error when
// a denominator binomial vanishes identically, which happens only at isolated
// numeric weights where this normalization degenerates.
BilinOp transvectant(const Weight& alpha, const Weight& beta, int twok);

// Invariance under the projective subalgebra spanned by v_1, v_x, v_{x^2},
// v_th, v_{x th}.  An operator T of order twok has intrinsic parity
// p(T) = twok mod 2, and invariance reads
//   L^{alpha+beta+k}_X(T(f,g)) = (-1)^{p(X)p(T)} (
//       T(L^alpha_X f, g) + (-1)^{p(X)p(f)} T(f, L^beta_X g) ),
// checked here on monomial arguments up to degree cap.
bool check_osp_invariance(const BilinOp& op, const Weight& alpha,
                          const Weight& beta, int cap,
                          std::string* report = nullptr);

}  // namespace superdeform
