#pragma once
// Shared builders for the deformation analysis: the generic cocycle families
// rebased to arbitrary source weights, the transvectant witnesses attached to
// coboundary blocks, and cached chain-level cup decompositions that all
// obstruction orders read from.

#include <optional>
#include <vector>

#include "superdeform/catalog.hpp"
#include "superdeform/cohomology.hpp"

namespace superdeform {

// Shifts carrying a generic one-parameter class: 0, 3/2, 2, 5/2.
const std::vector<Rational>& generic_shifts();

bool is_generic_shift(const Rational& s);

// Catalog name of the generic family at the given shift.
const char* family_name(const Rational& shift);

// The family cocycle at an arbitrary source weight.  Symbolic sources shift
// the catalog entry; fixed sources specialize its coefficients at that weight.
Cochain1 family_cocycle(const Rational& shift, const Weight& src);

// The transvectant 1-cochain J^{-1,src}_{k+1}, the canonical witness
// candidate for a coboundary block of shift k.
Cochain1 block_witness(const Weight& src, const Rational& k);

// Coefficient substitution lam -> lam + off.
BilinOp shift_coeffs(const BilinOp& op, const Rational& off);
TriOp shift_coeffs(const TriOp& op, const Rational& off);
CoboundaryResult shift_coeffs(const CoboundaryResult& r, const Rational& off);

// One ordered chain (lower leg j1, then upper leg j2) of a second-order block:
// the cup of the upper family at src+j1 with the lower family at src, and its
// class decomposition.  witness_factor is set when the cup equals exactly
// that multiple of delta applied to the block witness.
struct ChainCup {
  Rational j1, j2;
  Cochain2 cup;
  CoboundaryResult dec;
  std::optional<RatFunc> witness_factor;
};

// All ordered chains (j1, j2) of generic shifts with j1 + j2 = k, at the given
// source.  Symbolic sources are served from a canonical-base cache and
// shifted; fixed sources are computed directly.
std::vector<ChainCup> second_order_chains(const Weight& src, const Rational& k);

// Single chain accessor, same cache.
ChainCup chain_cup(const Weight& src, const Rational& j1, const Rational& j2);

// The exact multiple of delta applied to the block witness that equals c, if
// one exists.
std::optional<RatFunc> exact_witness_factor(const Cochain2& c,
                                            const Weight& src,
                                            const Rational& k);

// Cup of a generic family with a block witness, used by the third-order
// channels: leg "witness below" composes J at src with the family at src+k,
// leg "witness above" composes the family at src with J at src+j.
struct ChannelCup {
  Rational j;        // family shift
  Rational s;        // witness block shift
  bool witness_lower;
  Cochain2 cup;
  CoboundaryResult dec;
};
ChannelCup third_order_channel(const Weight& src, const Rational& j,
                               const Rational& s, bool witness_lower);

// Cup of two block witnesses (fourth order): upper J_{sa+1} at src+sb with
// lower J_{sb+1} at src.
struct WitnessCup {
  Rational sa, sb;
  Cochain2 cup;
  CoboundaryResult dec;
};
WitnessCup fourth_order_channel(const Weight& src, const Rational& sa,
                                const Rational& sb);

// Reduced row echelon splitting over Q(lam): for the input matrix M returns
// the nonzero RREF rows R (pivots 1, pivot columns cleared) and the profile C
// with M = C * R exactly; C is read off the pivot columns of M.
struct EchelonSplit {
  std::vector<std::vector<RatFunc>> rows;
  std::vector<std::vector<RatFunc>> cols;
  std::vector<int> pivots;
};
EchelonSplit echelon_split(const std::vector<std::vector<RatFunc>>& m);

}  // namespace superdeform
