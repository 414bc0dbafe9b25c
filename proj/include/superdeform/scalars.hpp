#pragma once
// Exact scalar arithmetic: arbitrary-precision rationals, univariate
// polynomials in the formal weight parameter `lam`, and rational functions
// Q(lam) kept in a canonical form (coprime, monic denominator).

#include <gmpxx.h>

#include <cassert>
#include <optional>
#include <string>
#include <vector>

namespace superdeform {

using Int = mpz_class;
using Rational = mpq_class;

// All Rational values in this codebase are kept canonical (lowest terms,
// positive denominator).  The raw two-argument mpq_class constructor does not
// canonicalize, so fractions must be built through rat() or half().
inline Rational rat(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rational& r);

// Half-integers are carried as doubled integers throughout (tw = 2*value).
bool is_half_integer(const Rational& r);
int twice_of(const Rational& r);        // asserts half-integer, returns 2*r as int
Rational half(int tw);                  // tw/2 as a Rational
std::string half_str(int tw);           // "2", "-3/2", ...

struct LamPoly {
  // c[i] is the coefficient of lam^i; invariant: c is empty or c.back() != 0.
  std::vector<Rational> c;

  LamPoly() = default;
  explicit LamPoly(const Rational& r);
  explicit LamPoly(long n);
  static LamPoly lam();
  static LamPoly affine(const Rational& a, const Rational& b);  // a*lam + b

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Rational coeff(int i) const;
  const Rational& lc() const;
  void trim();

  Rational eval(const Rational& x) const;
  LamPoly derivative() const;
  LamPoly shifted(const Rational& off) const;  // substitute lam -> lam + off

  LamPoly& operator+=(const LamPoly& o);
  LamPoly& operator-=(const LamPoly& o);
  friend LamPoly operator+(LamPoly a, const LamPoly& b) { a += b; return a; }
  friend LamPoly operator-(LamPoly a, const LamPoly& b) { a -= b; return a; }
  friend LamPoly operator*(const LamPoly& a, const LamPoly& b);
  friend LamPoly operator*(const Rational& s, LamPoly a);
  friend LamPoly operator-(LamPoly a);
  friend bool operator==(const LamPoly& a, const LamPoly& b) { return a.c == b.c; }
  friend bool operator!=(const LamPoly& a, const LamPoly& b) { return !(a == b); }
  bool operator<(const LamPoly& o) const;  // ordering for use as map keys
};

// Quotient and remainder of exact division over Q; b must be nonzero.
std::pair<LamPoly, LamPoly> divrem(const LamPoly& a, const LamPoly& b);
LamPoly poly_div_exact(const LamPoly& a, const LamPoly& b);
bool divides(const LamPoly& b, const LamPoly& a);
LamPoly poly_gcd(LamPoly a, LamPoly b);  // monic, gcd(0,0) = 0
LamPoly monic(const LamPoly& p);
LamPoly poly_pow(const LamPoly& p, int e);

// Integer-primitive scaling: q * p has coprime integer coefficients and
// positive leading coefficient; returns that integer version.
LamPoly primitive_scaled(const LamPoly& p);

// Distinct monic factors adequate for locus bookkeeping: full over the
// rationals up to degree 2 per squarefree part; a higher-degree part that has
// no rational root and is not a rational quadratic split is returned whole.
std::vector<LamPoly> distinct_irreducible_factors(const LamPoly& p);
bool is_irreducible_quadratic(const LamPoly& p);

std::string poly_str(const LamPoly& p, const std::string& var = "lam");

struct RatFunc {
  // Invariants: den is monic and nonzero, gcd(num, den) = 1, zero is 0/1.
  LamPoly num, den;

  RatFunc();
  RatFunc(const Rational& r);  // NOLINT: implicit by design
  RatFunc(long n);             // NOLINT
  explicit RatFunc(const LamPoly& p);
  RatFunc(LamPoly n, LamPoly d);  // normalizes

  static RatFunc lam() { return RatFunc(LamPoly::lam()); }

  bool is_zero() const { return num.is_zero(); }
  bool is_polynomial() const { return den.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num.degree() <= 0; }
  Rational as_rational() const;  // asserts is_constant
  LamPoly as_poly() const;       // asserts is_polynomial

  std::optional<Rational> eval(const Rational& x) const;  // nullopt at a pole
  RatFunc shifted(const Rational& off) const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { a += b; return a; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { a -= b; return a; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { a *= b; return a; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { a /= b; return a; }
  friend RatFunc operator-(RatFunc a);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
  bool operator<(const RatFunc& o) const;
};

RatFunc inverse(const RatFunc& r);
std::string ratfunc_str(const RatFunc& r, const std::string& var = "lam");

// The residue field Q[lam]/(m) for a monic irreducible modulus m.  Elements
// are represented by their reduced LamPoly of degree < deg m.
class ResidueField {
 public:
  explicit ResidueField(LamPoly modulus);
  const LamPoly& modulus() const { return m_; }
  LamPoly reduce(const LamPoly& p) const;
  LamPoly add(const LamPoly& a, const LamPoly& b) const { return reduce(a + b); }
  LamPoly sub(const LamPoly& a, const LamPoly& b) const { return reduce(a - b); }
  LamPoly mul(const LamPoly& a, const LamPoly& b) const { return reduce(a * b); }
  LamPoly inv(const LamPoly& a) const;  // asserts gcd(a, m) = 1
  LamPoly div(const LamPoly& a, const LamPoly& b) const { return mul(a, inv(b)); }
  // Image of a rational function whose denominator is invertible mod m.
  std::optional<LamPoly> from_ratfunc(const RatFunc& r) const;

 private:
  LamPoly m_;
};

}  // namespace superdeform
