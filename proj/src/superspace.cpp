#include "superdeform/superspace.hpp"

#include <sstream>

namespace superdeform {

RatFunc XPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c.size())) return RatFunc();
  return c[i];
}

void XPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

XPoly XPoly::monomial(const RatFunc& a, int n) {
  XPoly p;
  if (a.is_zero()) return p;
  p.c.assign(n + 1, RatFunc());
  p.c[n] = a;
  return p;
}

XPoly& XPoly::operator+=(const XPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size());
  for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
  trim();
  return *this;
}

XPoly& XPoly::operator-=(const XPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size());
  for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
  trim();
  return *this;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
  XPoly p;
  if (a.is_zero() || b.is_zero()) return p;
  p.c.assign(a.c.size() + b.c.size() - 1, RatFunc());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].is_zero()) continue;
      p.c[i + j] += a.c[i] * b.c[j];
    }
  }
  p.trim();
  return p;
}

XPoly operator*(const RatFunc& s, XPoly a) {
  if (s.is_zero()) return XPoly();
  for (auto& x : a.c) x *= s;
  a.trim();
  return a;
}

XPoly operator-(XPoly a) {
  for (auto& x : a.c) x = -x;
  return a;
}

XPoly XPoly::dx() const {
  XPoly d;
  for (size_t i = 1; i < c.size(); ++i) d.c.push_back(RatFunc(Rational(long(i))) * c[i]);
  d.trim();
  return d;
}

Parity SuperPoly::parity() const {
  assert(is_homogeneous());
  return is_odd() && !is_zero() ? Parity::Odd : Parity::Even;
}

SuperPoly SuperPoly::x_pow(int n, const RatFunc& a) {
  SuperPoly f;
  f.ev = XPoly::monomial(a, n);
  return f;
}

SuperPoly SuperPoly::th_x_pow(int n, const RatFunc& a) {
  SuperPoly f;
  f.od = XPoly::monomial(a, n);
  return f;
}

SuperPoly SuperPoly::monomial(Parity p, int n) {
  return p == Parity::Even ? x_pow(n) : th_x_pow(n);
}

SuperPoly& SuperPoly::operator+=(const SuperPoly& o) {
  ev += o.ev;
  od += o.od;
  return *this;
}

SuperPoly& SuperPoly::operator-=(const SuperPoly& o) {
  ev -= o.ev;
  od -= o.od;
  return *this;
}

SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
  // (f0 + f1 th)(g0 + g1 th) = f0 g0 + (f0 g1 + f1 g0) th; the th*th term dies.
  SuperPoly p;
  p.ev = a.ev * b.ev;
  p.od = a.ev * b.od + a.od * b.ev;
  return p;
}

SuperPoly operator*(const RatFunc& s, SuperPoly a) {
  a.ev = s * a.ev;
  a.od = s * a.od;
  return a;
}

SuperPoly operator-(SuperPoly a) {
  a.ev = -a.ev;
  a.od = -a.od;
  return a;
}

SuperPoly SuperPoly::dx() const {
  SuperPoly d;
  d.ev = ev.dx();
  d.od = od.dx();
  return d;
}

SuperPoly SuperPoly::dth() const {
  SuperPoly d;
  d.ev = od;
  return d;
}

SuperPoly SuperPoly::eta() const {
  // eta(f0 + f1 th) = f1 + f0' th
  SuperPoly r;
  r.ev = od;
  r.od = ev.dx();
  return r;
}

SuperPoly SuperPoly::etabar() const {
  // etabar(f0 + f1 th) = f1 - f0' th
  SuperPoly r;
  r.ev = od;
  r.od = -ev.dx();
  return r;
}

SuperPoly SuperPoly::etabar_pow(int k) const {
  assert(k >= 0);
  SuperPoly r = *this;
  for (int i = 0; i < k; ++i) r = r.etabar();
  return r;
}

std::string superpoly_str(const SuperPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const XPoly& part, bool with_th) {
    for (int i = part.degree(); i >= 0; --i) {
      RatFunc a = part.coeff(i);
      if (a.is_zero()) continue;
      if (!first) os << " + ";
      os << "(" << ratfunc_str(a) << ")";
      if (i > 0) os << "*x^" << i;
      if (with_th) os << "*th";
      first = false;
    }
  };
  emit(f.ev, false);
  emit(f.od, true);
  return os.str();
}

}  // namespace superdeform
