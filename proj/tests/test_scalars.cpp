#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "superdeform/scalars.hpp"

using namespace superdeform;

namespace {

LamPoly random_poly(std::mt19937_64& rng, int maxdeg) {
  std::uniform_int_distribution<int> dd(0, maxdeg), dc(-6, 6), dn(1, 3);
  LamPoly p;
  int d = dd(rng);
  p.c.resize(d + 1, Rational(0));
  for (int i = 0; i <= d; ++i) p.c[i] = rat(dc(rng), dn(rng));
  p.trim();
  return p;
}

}  // namespace

TEST_CASE("half-integer helpers") {
  CHECK(is_half_integer(rat(3, 2)));
  CHECK(is_half_integer(Rational(-4)));
  CHECK(!is_half_integer(rat(1, 3)));
  CHECK(twice_of(rat(5, 2)) == 5);
  CHECK(twice_of(Rational(-3)) == -6);
  CHECK(half(7) == rat(7, 2));
  CHECK(half_str(4) == "2");
  CHECK(half_str(-3) == "-3/2");
}

TEST_CASE("polynomial arithmetic and evaluation agree") {
  std::mt19937_64 rng(12345);
  for (int it = 0; it < 200; ++it) {
    LamPoly a = random_poly(rng, 5), b = random_poly(rng, 5);
    Rational x = rat(it - 100, 7);
    CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
    CHECK((a - b).eval(x) == a.eval(x) - b.eval(x));
    CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
  }
}

TEST_CASE("shift substitutes the variable") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 50; ++it) {
    LamPoly p = random_poly(rng, 6);
    Rational off = rat(it - 25, 2), x = rat(3, 5);
    CHECK(p.shifted(off).eval(x) == p.eval(x + off));
    CHECK(p.shifted(off).shifted(-off) == p);
  }
}

TEST_CASE("derivative satisfies the product rule") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    LamPoly a = random_poly(rng, 4), b = random_poly(rng, 4);
    CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
  }
}

TEST_CASE("division with remainder") {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 200; ++it) {
    LamPoly a = random_poly(rng, 7), b = random_poly(rng, 4);
    if (b.is_zero()) continue;
    auto [q, r] = divrem(a, b);
    CHECK(a == q * b + r);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("gcd picks up common factors") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 60; ++it) {
    LamPoly a = random_poly(rng, 3), b = random_poly(rng, 3), c = random_poly(rng, 3);
    if (c.degree() < 1) continue;
    LamPoly g = poly_gcd(a * c, b * c);
    CHECK(divides(monic(c), g));
    CHECK(divides(g, a * c));
    CHECK(divides(g, b * c));
  }
  LamPoly x = LamPoly::lam();
  CHECK(poly_gcd(x + LamPoly(1L), x + LamPoly(2L)).degree() == 0);
}

TEST_CASE("primitive integer scaling") {
  LamPoly p = LamPoly::affine(rat(-4, 6), rat(-2, 9));  // -(2/3)lam - 2/9
  LamPoly z = primitive_scaled(p);
  CHECK(z.coeff(1) == 3);
  CHECK(z.coeff(0) == 1);
}

TEST_CASE("factor split: linear and quadratic pieces") {
  LamPoly lam = LamPoly::lam();
  LamPoly p = (lam + LamPoly(1L)) * (LamPoly(2L) * lam + LamPoly(1L));
  auto fs = distinct_irreducible_factors(p);
  REQUIRE(fs.size() == 2);
  CHECK(((fs[0] == lam + LamPoly(1L)) || (fs[1] == lam + LamPoly(1L))));
  LamPoly half_root = LamPoly::affine(Rational(1), rat(1, 2));
  CHECK(((fs[0] == half_root) || (fs[1] == half_root)));

  // 2*lam^2 + 7*lam + 2 has discriminant 33, not a square: irreducible.
  LamPoly m;
  m.c = {Rational(2), Rational(7), Rational(2)};
  CHECK(is_irreducible_quadratic(m));
  auto fm = distinct_irreducible_factors(m);
  REQUIRE(fm.size() == 1);
  CHECK(fm[0] == monic(m));

  // Repeated factors appear once.
  LamPoly q = (lam - LamPoly(2L)) * (lam - LamPoly(2L)) * (m);
  auto fq = distinct_irreducible_factors(q);
  REQUIRE(fq.size() == 2);

  // A split quadratic is not flagged irreducible.
  LamPoly s;
  s.c = {Rational(-1), Rational(0), Rational(1)};  // lam^2 - 1
  CHECK(!is_irreducible_quadratic(s));
  CHECK(distinct_irreducible_factors(s).size() == 2);
}

TEST_CASE("rational function canonical form") {
  LamPoly lam = LamPoly::lam();
  RatFunc r(LamPoly(2L) * lam + LamPoly(2L), LamPoly(4L) * lam * lam - LamPoly(4L));
  // (2lam+2)/(4lam^2-4) = 1/(2(lam-1)) with monic denominator lam-1.
  CHECK(r.den == lam - LamPoly(1L));
  CHECK(r.num == LamPoly(rat(1, 2)));
  CHECK(poly_gcd(r.num, r.den).degree() == 0);

  RatFunc z(LamPoly(), LamPoly(5L));
  CHECK(z.is_zero());
  CHECK(z.den == LamPoly(1L));
}

TEST_CASE("rational function field identities") {
  std::mt19937_64 rng(555);
  for (int it = 0; it < 80; ++it) {
    LamPoly a = random_poly(rng, 3), b = random_poly(rng, 3);
    LamPoly c = random_poly(rng, 2), d = random_poly(rng, 2);
    if (b.is_zero() || d.is_zero()) continue;
    RatFunc x(a, b), y(c, d);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK(x - x == RatFunc());
    CHECK((x + y) - y == x);
    if (!y.is_zero()) {
      CHECK((x / y) * y == x);
      CHECK(y * inverse(y) == RatFunc(Rational(1)));
    }
    Rational pt = rat(it + 2, 3);
    auto ex = x.eval(pt), ey = y.eval(pt), es = (x + y).eval(pt);
    if (ex && ey && es) CHECK(*es == *ex + *ey);
  }
}

TEST_CASE("rational function shift is a field map") {
  LamPoly lam = LamPoly::lam();
  RatFunc r(lam, lam + LamPoly(1L));
  RatFunc s = r.shifted(rat(3, 2));
  CHECK(s == RatFunc(lam + LamPoly(rat(3, 2)), lam + LamPoly(rat(5, 2))));
  std::mt19937_64 rng(42);
  for (int it = 0; it < 40; ++it) {
    RatFunc x(random_poly(rng, 3), LamPoly(1L));
    RatFunc y(random_poly(rng, 2), LamPoly(1L));
    Rational off = rat(it - 20, 2);
    CHECK((x * y).shifted(off) == x.shifted(off) * y.shifted(off));
    CHECK((x + y).shifted(off) == x.shifted(off) + y.shifted(off));
  }
}

TEST_CASE("display forms") {
  LamPoly lam = LamPoly::lam();
  LamPoly p = LamPoly(2L) * lam * lam + LamPoly(7L) * lam + LamPoly(2L);
  CHECK(poly_str(p) == "2*lam^2+7*lam+2");
  CHECK(poly_str(-lam + LamPoly(rat(1, 2))) == "-lam+1/2");
  CHECK(poly_str(LamPoly()) == "0");
  RatFunc r(LamPoly(1L), lam + LamPoly(1L));
  CHECK(ratfunc_str(r) == "(1)/(lam+1)");
}

TEST_CASE("residue field arithmetic mod an irreducible quadratic") {
  LamPoly m;
  m.c = {Rational(2), Rational(7), Rational(2)};
  ResidueField F(m);
  LamPoly lam = LamPoly::lam();
  std::mt19937_64 rng(8);
  for (int it = 0; it < 40; ++it) {
    LamPoly a = F.reduce(random_poly(rng, 4));
    if (a.is_zero()) continue;
    CHECK(F.mul(a, F.inv(a)) == LamPoly(1L));
  }
  // In the quotient, 2*lam^2 = -7*lam - 2.
  CHECK(F.reduce(LamPoly(2L) * lam * lam) == LamPoly(-7L) * lam - LamPoly(2L));
  auto im = F.from_ratfunc(RatFunc(LamPoly(1L), lam + LamPoly(1L)));
  REQUIRE(im.has_value());
  CHECK(F.mul(*im, lam + LamPoly(1L)) == LamPoly(1L));
  // Denominator divisible by the modulus has no image.
  CHECK(!F.from_ratfunc(RatFunc(LamPoly(1L), m)).has_value());
}
