#pragma once
// Polynomial functions on the 1|1-dimensional superline: F = f0(x) + f1(x)*th
// with th^2 = 0, together with the odd derivations
//   eta    = d/dth + th*d/dx   (squares to +d/dx)
//   etabar = d/dth - th*d/dx   (squares to -d/dx, anticommutes with eta).
// Coefficients live in Q(lam) so weight-dependent objects can be carried
// symbolically.

#include <string>
#include <vector>

#include "superdeform/scalars.hpp"

namespace superdeform {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return Parity((static_cast<int>(a) + static_cast<int>(b)) % 2);
}
inline int sign_pow(int e) { return (e % 2 == 0) ? 1 : -1; }
inline int koszul(Parity a, Parity b) {
  return (a == Parity::Odd && b == Parity::Odd) ? -1 : 1;
}
inline Parity parity_of_order(int n) { return n % 2 == 0 ? Parity::Even : Parity::Odd; }

struct XPoly {
  // c[i] is the coefficient of x^i; invariant: empty or c.back() != 0.
  std::vector<RatFunc> c;

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  RatFunc coeff(int i) const;
  void trim();
  static XPoly monomial(const RatFunc& a, int n);

  XPoly& operator+=(const XPoly& o);
  XPoly& operator-=(const XPoly& o);
  friend XPoly operator+(XPoly a, const XPoly& b) { a += b; return a; }
  friend XPoly operator-(XPoly a, const XPoly& b) { a -= b; return a; }
  friend XPoly operator*(const XPoly& a, const XPoly& b);
  friend XPoly operator*(const RatFunc& s, XPoly a);
  friend XPoly operator-(XPoly a);
  friend bool operator==(const XPoly& a, const XPoly& b) { return a.c == b.c; }
  XPoly dx() const;
};

struct SuperPoly {
  XPoly ev;  // coefficient of 1
  XPoly od;  // coefficient of th

  bool is_zero() const { return ev.is_zero() && od.is_zero(); }
  bool is_even() const { return od.is_zero(); }
  bool is_odd() const { return ev.is_zero(); }
  bool is_homogeneous() const { return is_even() || is_odd(); }
  // Parity of a homogeneous element; zero counts as even.
  Parity parity() const;

  static SuperPoly zero() { return {}; }
  static SuperPoly x_pow(int n, const RatFunc& a = RatFunc(1L));
  static SuperPoly th_x_pow(int n, const RatFunc& a = RatFunc(1L));
  // The basis monomial of given parity and x-degree.
  static SuperPoly monomial(Parity p, int n);

  SuperPoly& operator+=(const SuperPoly& o);
  SuperPoly& operator-=(const SuperPoly& o);
  friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { a += b; return a; }
  friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { a -= b; return a; }
  friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b);
  friend SuperPoly operator*(const RatFunc& s, SuperPoly a);
  friend SuperPoly operator-(SuperPoly a);
  friend bool operator==(const SuperPoly& a, const SuperPoly& b) {
    return a.ev == b.ev && a.od == b.od;
  }
  friend bool operator!=(const SuperPoly& a, const SuperPoly& b) { return !(a == b); }

  SuperPoly dx() const;
  SuperPoly dth() const;
  SuperPoly eta() const;
  SuperPoly etabar() const;
  SuperPoly etabar_pow(int k) const;
};

std::string superpoly_str(const SuperPoly& f);

}  // namespace superdeform
