#pragma once
// Formal deformation parameters and the supercommutative polynomial ring they
// generate over Q(lam).  Each parameter is attached to one cohomology class
// gamma_{src,dst} and inherits its parity; odd parameters anticommute and
// square to zero, so monomials are kept as sorted multisets with Koszul signs
// absorbed into the coefficients.

#include <map>
#include <string>
#include <vector>

#include "superdeform/densities.hpp"

namespace superdeform {

enum class Variant { Plain, Tilde };

struct ParamName {
  Weight src, dst;
  Variant variant = Variant::Plain;
  Parity parity = Parity::Even;

  // Builds the parameter for the class gamma_{src,dst}; the parity is the one
  // of a 1-cochain at that shift (odd for half-integer shifts).
  static ParamName make(const Weight& src, const Weight& dst,
                        Variant variant = Variant::Plain);

  Rational shift() const { return dst - src; }
  bool odd() const { return parity == Parity::Odd; }

  friend bool operator==(const ParamName& s, const ParamName& t) {
    return s.src == t.src && s.dst == t.dst && s.variant == t.variant;
  }
  friend bool operator!=(const ParamName& s, const ParamName& t) { return !(s == t); }
  bool operator<(const ParamName& t) const;
};

std::string param_str(const ParamName& t);

// A monomial is a product of parameters stored in ascending name order.
using ParamMono = std::vector<ParamName>;

// Degree-lexicographic order; the empty monomial (scalar) is smallest.
struct MonoLess {
  bool operator()(const ParamMono& a, const ParamMono& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Sorts a raw factor list into canonical order.  Returns the Koszul sign
// (+1 or -1), or 0 when the product vanishes because an odd parameter repeats.
int normalize_mono(ParamMono& names);

struct ParamPoly {
  std::map<ParamMono, RatFunc, MonoLess> terms;  // no zero coefficients

  ParamPoly() = default;
  static ParamPoly scalar(const RatFunc& c);
  static ParamPoly var(const ParamName& t);

  bool is_zero() const { return terms.empty(); }
  int degree() const;  // largest monomial length, -1 for the zero polynomial
  RatFunc coeff(const ParamMono& m) const;

  // Adds c times the product of the given factors, in any order.
  void add_term(ParamMono names, const RatFunc& c);

  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { a += b; return a; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { a -= b; return a; }
  friend ParamPoly operator*(const RatFunc& s, ParamPoly a);
  friend ParamPoly operator-(ParamPoly a) { return RatFunc(-1) * std::move(a); }
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
    return a.terms == b.terms;
  }
  friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }
};

ParamPoly param_mul(const ParamPoly& a, const ParamPoly& b);

std::string mono_str(const ParamMono& m);
std::string param_poly_str(const ParamPoly& p);

// Where a relation comes from: the order of the obstruction that produced it,
// the shift of the block it was read off, and the weight window (stated on the
// doubled shift of the top component) in which that block exists.
struct RelationProvenance {
  int order = 2;        // 2, 3, or 4
  Rational shift = 0;   // dst - src of the obstruction block
  std::string window;   // e.g. "2(delta-lam) in {7..n}"
};

struct Relation {
  ParamPoly poly;
  RelationProvenance prov;
};

struct RelationIdeal {
  std::vector<Relation> generators;
};

// Normal form of p modulo the ideal: rewrites any term divisible by the
// leading monomial of a generator until none is.  The generators produced by
// the obstruction analysis are monomials and binomials, for which this
// rewriting terminates and a full Groebner engine is unnecessary.
ParamPoly reduce_mod_ideal(const ParamPoly& p, const RelationIdeal& ideal);

}  // namespace superdeform
