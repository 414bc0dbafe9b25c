#pragma once
// Chevalley-Eilenberg machinery for the contact algebra acting on differential
// operators between density modules.  Cochains take their values in the
// operators D_{src,dst}; the contact field slot is the adjoint module realized
// as densities of weight -1, so an n-cochain of weight shift k lives at total
// etabar order 2(k + n).
//
// All solving happens in exact coefficient space over Q(lam).  Gaussian
// elimination records every polynomial it divides by; results are claimed for
// lam away from those factors, and an optional modulus reruns a solve in the
// residue field Q[lam]/(m) to settle what happens on a locus.

#include <optional>
#include <string>
#include <vector>

#include "superdeform/bilinops.hpp"
#include "superdeform/densities.hpp"

namespace superdeform {

struct Cochain0 {
  LinOp op;
  Weight src;

  int two_shift() const { return op.order; }
  Weight dst() const { return src.plus(half(op.order)); }
  Parity parity() const { return parity_of_order(op.order); }
};

struct Cochain1 {
  BilinOp op;  // slot 1: contact generator, slot 2: the density argument
  Weight src;

  int two_shift() const { return op.order - 2; }
  Weight dst() const { return src.plus(half(op.order - 2)); }
  Parity parity() const { return parity_of_order(op.order); }
  bool is_zero() const { return op.is_zero(); }
  SuperPoly eval(const SuperPoly& G, const SuperPoly& phi) const {
    return op.apply(G, phi);
  }
};

struct Cochain2 {
  TriOp op;  // slots 1, 2: contact generators, slot 3: the density argument
  Weight src;

  int two_shift() const { return op.order - 4; }
  Weight dst() const { return src.plus(half(op.order - 4)); }
  Parity parity() const { return parity_of_order(op.order); }
  bool is_zero() const { return op.is_zero(); }
  SuperPoly eval(const SuperPoly& G, const SuperPoly& H,
                 const SuperPoly& phi) const {
    return op.apply(G, H, phi);
  }
};

// The action of v_G on an operator A in D_{src,dst}, evaluated at phi:
//   (G . A)(phi) = L^dst_G(A(phi)) - (-1)^{p(A)p(G)} A(L^src_G(phi)).
SuperPoly act_on_operator(const SuperPoly& G, const LinEval& A, Parity pA,
                          const RatFunc& wsrc, const RatFunc& wdst,
                          const SuperPoly& phi);

// (delta A)(G) = (-1)^{p(G)p(A)} (G . A).
Cochain1 delta0(const Cochain0& A);

// (delta g)(G,H) = g({G,H}) - (-1)^{p(G)p(g)} G . g(H)
//                + (-1)^{p(H)(p(G)+p(g))} H . g(G).
Cochain2 delta1(const Cochain1& g);

// Value of (delta c)(G,H,K)(phi) for a 2-cochain; no 3-cochain type is
// materialized, the value feeds the closedness checks directly.
SuperPoly delta2_eval(const Cochain2& c, const SuperPoly& G,
                      const SuperPoly& H, const SuperPoly& K,
                      const SuperPoly& phi);

bool check_cocycle1(const Cochain1& g);
// Closedness of a 2-cochain, checked on monomial quadruples up to degree cap.
bool check_cocycle2(const Cochain2& c, int cap, std::string* report = nullptr);
// c(G,H) + (-1)^{p(G)p(H)} c(H,G) = 0 on monomials up to degree cap.
bool check_antisymmetry2(const Cochain2& c, int cap);

// The cup product [[g1, g2]](G,H) =
//   (-1)^{p(G)p(g2)} g1(G) o g2(H) - (-1)^{p(H)(p(G)+p(g2))} g1(H) o g2(G),
// defined when g2 lands where g1 starts; asserts composability.
Cochain2 cup(const Cochain1& g1, const Cochain1& g2);

// Enumeration of the homogeneous constant-coefficient cochain spaces at a
// given weight shift: one basis element per canonical admissible key.
std::vector<Cochain0> cochain0_basis(const Weight& src, int two_shift);
std::vector<Cochain1> cochain1_basis(const Weight& src, int two_shift);

struct FailingTriple {
  SuperPoly G, H, phi;
  SuperPoly value;  // (B - delta(witness)) evaluated there, nonzero
};

struct CoboundaryResult {
  bool trivial = false;         // B = delta(witness) over Q(lam) off the loci
  Cochain1 witness;             // exact when trivial, best reduction otherwise
  std::vector<LamPoly> loci;    // irreducible factors divided by on the way
  std::vector<RatFunc> residue; // leftover coordinates, empty iff trivial
  std::optional<FailingTriple> counterexample;  // present when not trivial
  std::string summary;
};

// Decide B = delta(b) for a constant-coefficient 1-cochain b by direct
// Gaussian elimination on the coefficient-space system.  With a modulus m the
// whole solve runs over Q[lam]/(m) instead (m irreducible); coefficients of B
// whose denominators vanish mod m raise std::domain_error.
CoboundaryResult solve_coboundary(const Cochain2& B,
                                  const LamPoly* modulus = nullptr);

// Same decision through an independent path: an echelon basis of the image of
// delta1 is built first, then B is reduced against it; the residue coordinates
// are reported in that fixed basis.
CoboundaryResult class_decompose(const Cochain2& B,
                                 const LamPoly* modulus = nullptr);

struct H1Analysis {
  std::vector<Cochain1> cocycles;      // basis of Z^1 at this shift
  std::vector<Cochain1> coboundaries;  // basis of B^1
  std::vector<Cochain1> classes;       // cocycle representatives spanning H^1
  std::vector<LamPoly> loci;
};

// Kernel and quotient computation for the full homogeneous cochain space at
// one weight shift; the engine behind both catalog verification and the
// kernel-determined catalog entries.
H1Analysis h1_analysis(const Weight& src, int two_shift,
                       const LamPoly* modulus = nullptr);

struct NontrivialityReport {
  bool cocycle = false;
  bool trivial = false;  // lies in the image of delta0
  std::vector<LamPoly> loci;
  std::string detail;
};

NontrivialityReport verify_nontrivial_cocycle(const Cochain1& g,
                                              const LamPoly* modulus = nullptr);

// True when no nonzero linear combination of the given cochains (all at one
// weight and shift) lies in the image of delta0.
bool independent_mod_coboundaries(const std::vector<Cochain1>& gs,
                                  const LamPoly* modulus = nullptr);

}  // namespace superdeform
