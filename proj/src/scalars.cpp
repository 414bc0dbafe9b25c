#include "superdeform/scalars.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace superdeform {

std::string rat_str(const Rational& r) { return r.get_str(); }

bool is_half_integer(const Rational& r) {
  return r.get_den() == 1 || r.get_den() == 2;
}

int twice_of(const Rational& r) {
  assert(is_half_integer(r));
  Rational t = r * 2;
  assert(t.get_den() == 1);
  assert(t.get_num().fits_slong_p());
  return static_cast<int>(t.get_num().get_si());
}

Rational half(int tw) {
  Rational r(tw, 2);
  r.canonicalize();
  return r;
}

std::string half_str(int tw) {
  if (tw % 2 == 0) return std::to_string(tw / 2);
  return std::to_string(tw) + "/2";
}

LamPoly::LamPoly(const Rational& r) {
  if (r != 0) c.push_back(r);
}

LamPoly::LamPoly(long n) {
  if (n != 0) c.push_back(Rational(n));
}

LamPoly LamPoly::lam() {
  LamPoly p;
  p.c = {Rational(0), Rational(1)};
  return p;
}

LamPoly LamPoly::affine(const Rational& a, const Rational& b) {
  LamPoly p;
  p.c = {b, a};
  p.trim();
  return p;
}

Rational LamPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c.size())) return Rational(0);
  return c[i];
}

const Rational& LamPoly::lc() const {
  assert(!c.empty());
  return c.back();
}

void LamPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational LamPoly::eval(const Rational& x) const {
  Rational v(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

LamPoly LamPoly::derivative() const {
  LamPoly d;
  for (size_t i = 1; i < c.size(); ++i) d.c.push_back(Rational(long(i)) * c[i]);
  d.trim();
  return d;
}

LamPoly LamPoly::shifted(const Rational& off) const {
  // Horner in (lam + off).
  LamPoly base = LamPoly::affine(Rational(1), off);
  LamPoly out;
  for (auto it = c.rbegin(); it != c.rend(); ++it) out = out * base + LamPoly(*it);
  return out;
}

LamPoly& LamPoly::operator+=(const LamPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size(), Rational(0));
  for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
  trim();
  return *this;
}

LamPoly& LamPoly::operator-=(const LamPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size(), Rational(0));
  for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
  trim();
  return *this;
}

LamPoly operator*(const LamPoly& a, const LamPoly& b) {
  if (a.is_zero() || b.is_zero()) return LamPoly();
  LamPoly p;
  p.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) p.c[i + j] += a.c[i] * b.c[j];
  p.trim();
  return p;
}

LamPoly operator*(const Rational& s, LamPoly a) {
  for (auto& x : a.c) x *= s;
  a.trim();
  return a;
}

LamPoly operator-(LamPoly a) {
  for (auto& x : a.c) x = -x;
  return a;
}

bool LamPoly::operator<(const LamPoly& o) const {
  if (c.size() != o.c.size()) return c.size() < o.c.size();
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] != o.c[i]) return c[i] < o.c[i];
  }
  return false;
}

std::pair<LamPoly, LamPoly> divrem(const LamPoly& a, const LamPoly& b) {
  assert(!b.is_zero());
  LamPoly q, r = a;
  int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    int k = r.degree() - db;
    Rational f = r.lc() / b.lc();
    if (static_cast<int>(q.c.size()) < k + 1) q.c.resize(k + 1, Rational(0));
    q.c[k] += f;
    for (int i = 0; i <= db; ++i) {
      if (b.c[i] == 0) continue;
      r.c[i + k] -= f * b.c[i];
    }
    r.trim();
  }
  q.trim();
  return {q, r};
}

LamPoly poly_div_exact(const LamPoly& a, const LamPoly& b) {
  auto [q, r] = divrem(a, b);
  assert(r.is_zero());
  return q;
}

bool divides(const LamPoly& b, const LamPoly& a) {
  if (b.is_zero()) return a.is_zero();
  return divrem(a, b).second.is_zero();
}

LamPoly monic(const LamPoly& p) {
  if (p.is_zero()) return p;
  return (Rational(1) / p.lc()) * p;
}

LamPoly poly_gcd(LamPoly a, LamPoly b) {
  while (!b.is_zero()) {
    LamPoly r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

LamPoly poly_pow(const LamPoly& p, int e) {
  assert(e >= 0);
  LamPoly out(1L);
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

LamPoly primitive_scaled(const LamPoly& p) {
  if (p.is_zero()) return p;
  Int den_lcm(1);
  for (const auto& x : p.c) {
    Int d = x.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / g * d;
  }
  LamPoly q = Rational(den_lcm) * p;
  Int num_gcd(0);
  for (const auto& x : q.c) {
    Int n = x.get_num();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  if (num_gcd != 0) q = Rational(Int(1), num_gcd) * q;
  if (q.lc() < 0) q = -q;
  return q;
}

namespace {

std::vector<Int> positive_divisors(Int n) {
  if (n < 0) n = -n;
  assert(n != 0);
  std::vector<Int> out;
  for (Int d(1); d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

bool is_irreducible_quadratic(const LamPoly& p) {
  if (p.degree() != 2) return false;
  Rational a = p.coeff(2), b = p.coeff(1), c0 = p.coeff(0);
  Rational disc = b * b - 4 * a * c0;
  if (disc < 0) return true;
  // Reducible over Q exactly when disc is a square of a rational.
  Int dn = disc.get_num(), dd = disc.get_den();
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), dn.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), dd.get_mpz_t());
  return !(rn * rn == dn && rd * rd == dd);
}

std::vector<LamPoly> distinct_irreducible_factors(const LamPoly& p) {
  std::vector<LamPoly> out;
  if (p.degree() <= 0) return out;
  // Radical: product of the distinct irreducible factors, each once.
  LamPoly rad = monic(poly_div_exact(p, poly_gcd(p, p.derivative())));
  // Pull out rational roots.
  while (true) {
    if (rad.degree() <= 0) return out;
    if (rad.degree() == 1) {
      out.push_back(monic(rad));
      return out;
    }
    LamPoly zp = primitive_scaled(rad);
    if (zp.coeff(0) == 0) {
      out.push_back(LamPoly::lam());
      rad = poly_div_exact(rad, LamPoly::lam());
      continue;
    }
    bool found = false;
    for (const Int& pn : positive_divisors(zp.coeff(0).get_num())) {
      for (const Int& qd : positive_divisors(zp.lc().get_num())) {
        for (int s : {1, -1}) {
          Rational root(s * pn, qd);
          root.canonicalize();
          if (zp.eval(root) == 0) {
            LamPoly lin = LamPoly::affine(Rational(1), -root);
            out.push_back(lin);
            rad = poly_div_exact(rad, lin);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  if (rad.degree() == 2) {
    // No rational roots remain, so a quadratic is irreducible here.
    out.push_back(monic(rad));
  } else if (rad.degree() > 0) {
    out.push_back(monic(rad));  // rootless higher-degree part, kept whole
  }
  return out;
}

std::string poly_str(const LamPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    Rational a = p.coeff(i);
    if (a == 0) continue;
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? "-" : "+");
    }
    Rational mag = abs(a);
    bool unit = (mag == 1);
    if (i == 0) {
      os << rat_str(mag);
    } else {
      if (!unit) os << rat_str(mag) << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

RatFunc::RatFunc() : num(), den(1L) {}
RatFunc::RatFunc(const Rational& r) : num(r), den(1L) {}
RatFunc::RatFunc(long n) : num(n), den(1L) {}
RatFunc::RatFunc(const LamPoly& p) : num(p), den(1L) {}

RatFunc::RatFunc(LamPoly n, LamPoly d) {
  assert(!d.is_zero());
  if (n.is_zero()) {
    num = LamPoly();
    den = LamPoly(1L);
    return;
  }
  if (d.degree() == 0) {
    Rational s = Rational(1) / d.lc();
    num = s == 1 ? std::move(n) : s * n;
    den = LamPoly(1L);
    return;
  }
  LamPoly g = poly_gcd(n, d);
  if (g.degree() > 0) {
    n = poly_div_exact(n, g);
    d = poly_div_exact(d, g);
  }
  Rational s = Rational(1) / d.lc();
  num = s * n;
  den = s * d;
}

Rational RatFunc::as_rational() const {
  assert(is_constant());
  return num.coeff(0);
}

LamPoly RatFunc::as_poly() const {
  assert(is_polynomial());
  return num;
}

std::optional<Rational> RatFunc::eval(const Rational& x) const {
  Rational d = den.eval(x);
  if (d == 0) return std::nullopt;
  return num.eval(x) / d;
}

RatFunc RatFunc::shifted(const Rational& off) const {
  return RatFunc(num.shifted(off), den.shifted(off));
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  // Polynomial operands (monic den == 1) add without gcd normalization.
  if (den.degree() == 0 && o.den.degree() == 0) {
    num += o.num;
    return *this;
  }
  *this = RatFunc(num * o.den + o.num * den, den * o.den);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  if (den.degree() == 0 && o.den.degree() == 0) {
    num -= o.num;
    return *this;
  }
  *this = RatFunc(num * o.den - o.num * den, den * o.den);
  return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (den.degree() == 0 && o.den.degree() == 0) {
    num = num * o.num;
    return *this;
  }
  // Cross-cancel before multiplying to keep intermediates small.
  LamPoly g1 = poly_gcd(num, o.den), g2 = poly_gcd(o.num, den);
  LamPoly n1 = g1.degree() > 0 ? poly_div_exact(num, g1) : num;
  LamPoly d2 = g1.degree() > 0 ? poly_div_exact(o.den, g1) : o.den;
  LamPoly n2 = g2.degree() > 0 ? poly_div_exact(o.num, g2) : o.num;
  LamPoly d1 = g2.degree() > 0 ? poly_div_exact(den, g2) : den;
  *this = RatFunc(n1 * n2, d1 * d2);
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  assert(!o.is_zero());
  *this *= RatFunc(o.den, o.num);
  return *this;
}

RatFunc operator-(RatFunc a) {
  a.num = -a.num;
  return a;
}

bool RatFunc::operator<(const RatFunc& o) const {
  if (!(den == o.den)) return den < o.den;
  return num < o.num;
}

RatFunc inverse(const RatFunc& r) {
  assert(!r.is_zero());
  return RatFunc(r.den, r.num);
}

std::string ratfunc_str(const RatFunc& r, const std::string& var) {
  if (r.is_polynomial()) return poly_str(r.num, var);
  return "(" + poly_str(r.num, var) + ")/(" + poly_str(r.den, var) + ")";
}

ResidueField::ResidueField(LamPoly modulus) : m_(monic(modulus)) {
  assert(m_.degree() >= 1);
}

LamPoly ResidueField::reduce(const LamPoly& p) const { return divrem(p, m_).second; }

LamPoly ResidueField::inv(const LamPoly& a) const {
  // Extended Euclid in Q[lam]: find u with u*a + v*m = gcd.
  LamPoly r0 = m_, r1 = reduce(a);
  assert(!r1.is_zero());
  LamPoly u0, u1(1L);
  while (!r1.is_zero()) {
    auto [q, r2] = divrem(r0, r1);
    LamPoly u2 = u0 - q * u1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  assert(r0.degree() == 0);  // coprime to the modulus
  return reduce((Rational(1) / r0.coeff(0)) * u0);
}

std::optional<LamPoly> ResidueField::from_ratfunc(const RatFunc& r) const {
  LamPoly d = reduce(r.den);
  if (poly_gcd(d, m_).degree() > 0) return std::nullopt;
  return mul(reduce(r.num), inv(d));
}

}  // namespace superdeform
