#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superdeform/params.hpp"

using namespace superdeform;

namespace {

ParamName t(const Rational& from, const Rational& to) {
  return ParamName::make(Weight::sym(from), Weight::sym(to));
}

ParamName t_fixed(const Rational& from, const Rational& to,
                  Variant v = Variant::Plain) {
  return ParamName::make(Weight::fixed(from), Weight::fixed(to), v);
}

ParamPoly mono(std::initializer_list<ParamName> names, const RatFunc& c = RatFunc(1)) {
  ParamPoly p;
  p.add_term(ParamMono(names), c);
  return p;
}

}  // namespace

TEST_CASE("parameter parity follows the shift of the underlying class") {
  CHECK(t(0, 0).parity == Parity::Even);
  CHECK(t(0, rat(3, 2)).parity == Parity::Odd);
  CHECK(t(0, 2).parity == Parity::Even);
  CHECK(t(0, rat(5, 2)).parity == Parity::Odd);
  CHECK(t(0, 3).parity == Parity::Even);
  CHECK(t(0, 4).parity == Parity::Even);
  CHECK(t_fixed(0, rat(1, 2)).parity == Parity::Odd);
  CHECK(t_fixed(0, rat(1, 2), Variant::Tilde).parity == Parity::Odd);
  CHECK(t(0, rat(3, 2)).shift() == rat(3, 2));
}

TEST_CASE("parameters render with their weight interval") {
  CHECK(param_str(t(0, 2)) == "t[lam->lam+2]");
  CHECK(param_str(t(rat(3, 2), 3)) == "t[lam+3/2->lam+3]");
  CHECK(param_str(t_fixed(0, rat(1, 2))) == "t[0->1/2]");
  CHECK(param_str(t_fixed(0, rat(1, 2), Variant::Tilde)) == "tt[0->1/2]");
  CHECK(param_str(ParamName::make(Weight::fixed(rat(-5, 2)), Weight::fixed(rat(1, 2)))) ==
        "t[-5/2->1/2]");
}

TEST_CASE("even parameters commute and odd parameters anticommute") {
  ParamPoly a = ParamPoly::var(t(0, 0));
  ParamPoly b = ParamPoly::var(t(0, 2));
  CHECK(param_mul(a, b) == param_mul(b, a));

  ParamPoly u = ParamPoly::var(t(0, rat(3, 2)));
  ParamPoly v = ParamPoly::var(t(rat(3, 2), 3));
  CHECK(v.terms.begin()->first[0].odd());
  CHECK(param_mul(u, v) == -param_mul(v, u));

  // Odd times even commutes without a sign.
  CHECK(param_mul(u, a) == param_mul(a, u));
}

TEST_CASE("odd parameters square to zero") {
  ParamPoly u = ParamPoly::var(t(0, rat(5, 2)));
  CHECK(param_mul(u, u).is_zero());

  // The two half-shift parameters at weight zero are distinct odd names, so
  // their product survives while each square dies.
  ParamPoly s = ParamPoly::var(t_fixed(0, rat(1, 2)));
  ParamPoly st = ParamPoly::var(t_fixed(0, rat(1, 2), Variant::Tilde));
  CHECK(param_mul(s, s).is_zero());
  CHECK(param_mul(st, st).is_zero());
  CHECK_FALSE(param_mul(s, st).is_zero());
  CHECK(param_mul(s, st) == -param_mul(st, s));
}

TEST_CASE("the Koszul sign rule holds for every homogeneous pair") {
  std::vector<ParamPoly> gens = {
      ParamPoly::var(t(0, 0)),          ParamPoly::var(t(0, rat(3, 2))),
      ParamPoly::var(t(0, 2)),          ParamPoly::var(t(rat(3, 2), 3)),
      ParamPoly::var(t(0, rat(5, 2))),  ParamPoly::var(t(2, 4)),
  };
  for (const ParamPoly& a : gens)
    for (const ParamPoly& b : gens) {
      bool both_odd = a.terms.begin()->first[0].odd() && b.terms.begin()->first[0].odd();
      ParamPoly rhs = param_mul(b, a);
      if (both_odd) rhs = -rhs;
      CHECK(param_mul(a, b) == rhs);
    }
}

TEST_CASE("monomials normalize to a sorted product with the sign absorbed") {
  ParamName a = t(0, 0), b = t(0, rat(3, 2)), c = t(rat(3, 2), 3);
  REQUIRE(a < b);
  REQUIRE(b < c);

  ParamMono m = {c, b, a};
  int sign = normalize_mono(m);
  CHECK(m == ParamMono{a, b, c});
  CHECK(sign == -1);  // one odd-odd transposition: c past b

  ParamMono dup = {b, a, b};
  CHECK(normalize_mono(dup) == 0);

  // Building through add_term gives the same canonical term.
  ParamPoly p;
  p.add_term({c, b, a}, RatFunc(2));
  CHECK(p.coeff({a, b, c}) == RatFunc(-2));
}

TEST_CASE("polynomial arithmetic drops cancelled terms") {
  ParamName a = t(0, 0), b = t(0, 2);
  ParamPoly p = mono({a, b}) + mono({a}, RatFunc(rat(1, 2)));
  ParamPoly q = mono({b, a}, RatFunc(-1));
  ParamPoly s = p + q;
  CHECK(s == mono({a}, RatFunc(rat(1, 2))));
  CHECK(s.degree() == 1);
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);

  ParamPoly r = RatFunc(LamPoly::lam()) * mono({a});
  CHECK(r.coeff({a}) == RatFunc(LamPoly::lam()));
}

TEST_CASE("polynomials render deterministically") {
  ParamName a = t(0, 0), b = t(0, 2), u = t(0, rat(3, 2));
  ParamPoly p = mono({a, b}) - mono({u}, RatFunc(rat(3, 2))) +
                ParamPoly::scalar(RatFunc(LamPoly::affine(1, 1)));
  CHECK(param_poly_str(p) ==
        "t[lam->lam]*t[lam->lam+2] - 3/2*t[lam->lam+3/2] + (lam+1)");
  CHECK(param_poly_str(ParamPoly{}) == "0");
  ParamPoly q = mono({a}, RatFunc(LamPoly::affine(2, 0)));
  CHECK(param_poly_str(q) == "(2*lam)*t[lam->lam]");
}

TEST_CASE("reduction by a monomial relation kills its multiples only") {
  // Single relation of the n = 3 module: the top diagonal parameter times
  // the odd connector.
  ParamName diag = t(3, 3), conn = t(rat(3, 2), 3);
  RelationIdeal ideal;
  ideal.generators.push_back({mono({diag, conn}), {2, rat(7, 2), "2(delta-lam) in {7..7}"}});

  ParamPoly inside = mono({conn, diag}, RatFunc(5));
  CHECK(reduce_mod_ideal(inside, ideal).is_zero());

  ParamPoly bigger = param_mul(mono({t(0, rat(3, 2))}), mono({diag, conn}));
  CHECK(reduce_mod_ideal(bigger, ideal).is_zero());

  ParamPoly outside = mono({diag}) + mono({conn}, RatFunc(7));
  CHECK(reduce_mod_ideal(outside, ideal) == outside);
}

TEST_CASE("reduction by a binomial relation rewrites toward the smaller monomial") {
  // Relation shaped like the order-two quadric at shift 3/2:
  //   (t[lam+3/2->lam+3/2] - t[lam->lam]) * t[lam->lam+3/2].
  ParamName d0 = t(0, 0), d32 = t(rat(3, 2), rat(3, 2)), c = t(0, rat(3, 2));
  ParamPoly gen = mono({d32, c}) - mono({c, d0});
  RelationIdeal ideal;
  ideal.generators.push_back({gen, {2, rat(3, 2), "2(delta-lam) in {3..n}"}});

  ParamPoly lhs = mono({d32, c}, RatFunc(4));
  ParamPoly red = reduce_mod_ideal(lhs, ideal);
  CHECK(red == mono({c, d0}, RatFunc(4)));

  // The difference of the two monomials reduces to zero.
  CHECK(reduce_mod_ideal(gen, ideal).is_zero());

  // Reduction is idempotent.
  CHECK(reduce_mod_ideal(red, ideal) == red);
}

TEST_CASE("reduction is idempotent on mixed polynomials") {
  ParamName d0 = t(0, 0), d2 = t(2, 2), c2 = t(0, 2), u = t(0, rat(3, 2));
  RelationIdeal ideal;
  ideal.generators.push_back(
      {mono({d2, c2}) - mono({c2, d0}), {2, 2, "2(delta-lam) in {4..n}"}});
  ideal.generators.push_back({mono({u, d0}), {2, rat(3, 2), "2(delta-lam) in {3..n}"}});

  ParamPoly p = mono({d2, c2}, RatFunc(LamPoly::lam())) + mono({u, d0}, RatFunc(3)) +
                mono({u}) + ParamPoly::scalar(RatFunc(rat(1, 3)));
  ParamPoly once = reduce_mod_ideal(p, ideal);
  CHECK(once == mono({c2, d0}, RatFunc(LamPoly::lam())) + mono({u}) +
                    ParamPoly::scalar(RatFunc(rat(1, 3))));
  CHECK(reduce_mod_ideal(once, ideal) == once);
}

TEST_CASE("a unit relation collapses the whole ring") {
  RelationIdeal ideal;
  ideal.generators.push_back({ParamPoly::scalar(RatFunc(1)), {2, 0, ""}});
  ParamPoly p = mono({t(0, 0)}) + ParamPoly::scalar(RatFunc(5));
  CHECK(reduce_mod_ideal(p, ideal).is_zero());
}
