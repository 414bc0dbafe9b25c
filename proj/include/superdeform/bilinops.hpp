#pragma once
// Constant-coefficient multilinear differential operators between density
// modules, stored in etabar normal form: sums of terms
//   c * etabar^i(arg1) * etabar^j(arg2) * ...
// with one coefficient per parity sector of the arguments.  A term whose
// factors would contain two or more th's vanishes identically and is never
// stored (admissibility).
//
// The companion reconstruction routines recover such an operator exactly from
// a black-box evaluator, and fail loudly when the evaluator is not of this
// shape.  They are the bridge from sign-safe evaluation to closed formulas.

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "superdeform/superspace.hpp"

namespace superdeform {

struct LKey {
  int j;
  Parity p;
  auto operator<=>(const LKey&) const = default;
};

struct BKey {
  int i, j;
  Parity p1, p2;
  auto operator<=>(const BKey&) const = default;
};

struct TKey {
  int i, j, l;
  Parity p1, p2, p3;
  auto operator<=>(const TKey&) const = default;
};

inline bool admissible(const BKey& k) {
  return !((k.i + int(k.p1)) % 2 == 1 && (k.j + int(k.p2)) % 2 == 1);
}
inline bool admissible(const TKey& k) {
  int odd = ((k.i + int(k.p1)) % 2) + ((k.j + int(k.p2)) % 2) + ((k.l + int(k.p3)) % 2);
  return odd <= 1;
}

// Distinct exponent tuples can denote the same operator (the lone th factor
// commutes freely, e.g. etabar^2(f) * g th = etabar(f) etabar(g th)), so
// operators are stored with the th drawn from the earliest capable argument.
// These return that representative for an admissible key.
BKey canonical_key(const BKey& k);
TKey canonical_key(const TKey& k);

struct LinOp {
  int order = 0;  // the single etabar power
  std::map<LKey, RatFunc> terms;

  bool is_zero() const;
  void set(Parity p, const RatFunc& c);
  SuperPoly apply(const SuperPoly& phi) const;
  LinOp& operator+=(const LinOp& o);
  friend LinOp operator*(const RatFunc& s, LinOp a);
  friend bool operator==(const LinOp& a, const LinOp& b);
};

struct BilinOp {
  int order = 0;  // total degree i + j of every term
  std::map<BKey, RatFunc> terms;

  bool is_zero() const;
  // Both normalize through canonical_key; inadmissible terms are dropped as
  // the zero operators they are.  set overwrites, add_term accumulates.
  void set(int i, int j, Parity p1, Parity p2, const RatFunc& c);
  void add_term(int i, int j, Parity p1, Parity p2, const RatFunc& c);
  RatFunc coeff(const BKey& k) const;
  SuperPoly apply(const SuperPoly& G, const SuperPoly& H) const;
  BilinOp& operator+=(const BilinOp& o);
  BilinOp& operator-=(const BilinOp& o);
  friend BilinOp operator*(const RatFunc& s, BilinOp a);
  friend bool operator==(const BilinOp& a, const BilinOp& b);
  void prune();  // drop exact zeros and inadmissible keys
};

struct TriOp {
  int order = 0;
  std::map<TKey, RatFunc> terms;

  bool is_zero() const;
  void set(const TKey& k, const RatFunc& c);
  void add_term(const TKey& k, const RatFunc& c);
  SuperPoly apply(const SuperPoly& G, const SuperPoly& H, const SuperPoly& phi) const;
  TriOp& operator+=(const TriOp& o);
  TriOp& operator-=(const TriOp& o);
  friend TriOp operator*(const RatFunc& s, TriOp a);
  friend bool operator==(const TriOp& a, const TriOp& b);
  void prune();
};

std::string bilinop_str(const BilinOp& op);

class ReconstructError : public std::runtime_error {
 public:
  explicit ReconstructError(const std::string& what) : std::runtime_error(what) {}
};

using LinEval = std::function<SuperPoly(const SuperPoly&)>;
using BilinEval = std::function<SuperPoly(const SuperPoly&, const SuperPoly&)>;
using TriEval = std::function<SuperPoly(const SuperPoly&, const SuperPoly&, const SuperPoly&)>;

// Recover the unique operator of the given total order agreeing with the
// evaluator on homogeneous monomials.  Throws ReconstructError if no such
// operator exists (wrong order, non-constant coefficients, inhomogeneity).
LinOp reconstruct_linear(int order, const LinEval& E);
BilinOp reconstruct_bilinear(int order, const BilinEval& E);
TriOp reconstruct_trilinear(int order, const TriEval& E);

// Colexicographic list of admissible keys of a given order, used both by the
// reconstruction and by the cochain-space enumerations.
std::vector<BKey> bilinear_keys(int order);
std::vector<TKey> trilinear_keys(int order);

}  // namespace superdeform
