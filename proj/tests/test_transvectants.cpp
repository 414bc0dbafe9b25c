#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superdeform/transvectants.hpp"

using namespace superdeform;

TEST_CASE("binomial helpers") {
  CHECK(binom_int(5, 2) == Rational(10));
  CHECK(binom_int(5, 0) == Rational(1));
  CHECK(binom_int(5, 6) == Rational(0));
  CHECK(binom_int(-2, 1) == Rational(-2));
  CHECK(binom_int(-2, 2) == Rational(3));
  CHECK(binom_int(3, -1) == Rational(0));

  LamPoly two_lam = LamPoly::affine(2, 0);
  LamPoly want;  // C(2 lam, 2) = lam (2 lam - 1)
  want = LamPoly::affine(2, 0) * LamPoly::affine(1, 0) - LamPoly::affine(1, 0);
  CHECK(binom_poly(two_lam, 2) == want);
  CHECK(binom_poly(two_lam, 0) == LamPoly(1L));
  CHECK(binom_poly(LamPoly(Rational(4)), 2) == LamPoly(Rational(6)));
}

TEST_CASE("level zero is multiplication") {
  BilinOp op = transvectant(Weight::sym(0), Weight::sym(rat(1, 2)), 0);
  for (int a = 0; a <= 4; ++a) {
    for (int fa = 0; fa <= 1; ++fa) {
      SuperPoly f = fa ? SuperPoly::th_x_pow(a) : SuperPoly::x_pow(a);
      for (int b = 0; b <= 4; ++b) {
        for (int gb = 0; gb <= 1; ++gb) {
          SuperPoly g = gb ? SuperPoly::th_x_pow(b) : SuperPoly::x_pow(b);
          CHECK((op.apply(f, g) - f * g).is_zero());
        }
      }
    }
  }
}

TEST_CASE("levels 1/2 and 1 in closed form") {
  const Parity E = Parity::Even, O = Parity::Odd;
  Weight alpha = Weight::sym(0);
  Weight beta = Weight::sym(rat(3, 2));
  RatFunc qa = alpha.value(), qb = beta.value();

  BilinOp h = transvectant(alpha, beta, 1);
  BilinOp want_h;
  want_h.order = 1;
  for (Parity p2 : {E, O}) {
    want_h.add_term(1, 0, E, p2, RatFunc(1L));
    want_h.add_term(1, 0, O, p2, RatFunc(1L));
    want_h.add_term(0, 1, E, p2, -(qa / qb));
    want_h.add_term(0, 1, O, p2, qa / qb);
  }
  want_h.prune();
  CHECK(h == want_h);

  BilinOp one = transvectant(alpha, beta, 2);
  BilinOp want_one;
  want_one.order = 2;
  RatFunc inv2b = RatFunc(1L) / (RatFunc(2L) * qb);
  for (Parity p2 : {E, O}) {
    want_one.add_term(2, 0, E, p2, RatFunc(1L));
    want_one.add_term(2, 0, O, p2, RatFunc(1L));
    want_one.add_term(1, 1, E, p2, inv2b);
    want_one.add_term(1, 1, O, p2, -inv2b);
    want_one.add_term(0, 2, E, p2, -(qa / qb));
    want_one.add_term(0, 2, O, p2, -(qa / qb));
  }
  want_one.prune();
  CHECK(one == want_one);
}

TEST_CASE("level one at weight -1 is the contact bracket") {
  BilinOp op = transvectant(Weight::fixed(-1), Weight::fixed(-1), 2);
  for (int a = 0; a <= 5; ++a) {
    for (int fa = 0; fa <= 1; ++fa) {
      SuperPoly f = fa ? SuperPoly::th_x_pow(a) : SuperPoly::x_pow(a);
      for (int b = 0; b <= 5; ++b) {
        for (int gb = 0; gb <= 1; ++gb) {
          SuperPoly g = gb ? SuperPoly::th_x_pow(b) : SuperPoly::x_pow(b);
          CHECK((op.apply(f, g) - contact_bracket(f, g)).is_zero());
        }
      }
    }
  }
}

TEST_CASE("invariance under the projective subalgebra") {
  std::string report;
  std::vector<std::pair<Weight, Weight>> pairs = {
      {Weight::sym(0), Weight::sym(0)},
      {Weight::sym(0), Weight::sym(rat(3, 2))},
      {Weight::sym(rat(-1, 2)), Weight::sym(2)},
      {Weight::sym(0), Weight::fixed(rat(-5, 2))},
      {Weight::fixed(rat(-5, 2)), Weight::sym(rat(1, 2))},
      {Weight::fixed(1), Weight::fixed(3)},
  };
  for (int twok = 0; twok <= 7; ++twok) {
    for (const auto& [alpha, beta] : pairs) {
      BilinOp op = transvectant(alpha, beta, twok);
      bool ok = check_osp_invariance(op, alpha, beta, 3, &report);
      CAPTURE(twok);
      CAPTURE(weight_str(alpha));
      CAPTURE(weight_str(beta));
      CAPTURE(report);
      CHECK(ok);
    }
  }
}

TEST_CASE("invariance pins the operator at its level") {
  // Perturbing any single coefficient of a transvectant breaks invariance.
  Weight alpha = Weight::sym(0), beta = Weight::sym(rat(3, 2));
  for (int twok : {2, 3}) {
    BilinOp op = transvectant(alpha, beta, twok);
    for (const auto& [key, c] : op.terms) {
      BilinOp bad = op;
      bad.set(key.i, key.j, key.p1, key.p2, c + RatFunc(1L));
      CHECK_FALSE(check_osp_invariance(bad, alpha, beta, 3));
    }
  }
}

TEST_CASE("degenerate numeric weights are rejected") {
  CHECK_THROWS_AS(transvectant(Weight::sym(0), Weight::fixed(0), 2),
                  std::domain_error);
  CHECK_THROWS_AS(transvectant(Weight::sym(0), Weight::fixed(rat(-1, 2)), 4),
                  std::domain_error);
  // Negative enough weights never degenerate.
  CHECK_NOTHROW(transvectant(Weight::sym(0), Weight::fixed(rat(-5, 2)), 7));
}
