#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superdeform/densities.hpp"

using namespace superdeform;

namespace {

// Independent componentwise oracle, expanded by hand from the definition.
// For even F = f(x):      L(g0 + g1 th) = f g0' + w f' g0 + (f g1' + (w + 1/2) f' g1) th
// For odd  F = f(x) th:   L(g0 + g1 th) = (1/2) f g1 + ((1/2) f g0' + w f' g0) th
SuperPoly oracle_act(const SuperPoly& F, const SuperPoly& phi, const RatFunc& w) {
  XPoly g0 = phi.ev, g1 = phi.od;
  SuperPoly out;
  if (F.is_even()) {
    XPoly f = F.ev;
    out.ev = f * g0.dx() + w * (f.dx() * g0);
    out.od = f * g1.dx() + ((w + RatFunc(rat(1, 2))) * (f.dx() * g1));
    return out;
  }
  XPoly f = F.od;
  out.ev = RatFunc(rat(1, 2)) * (f * g1);
  out.od = RatFunc(rat(1, 2)) * (f * g0.dx()) + w * (f.dx() * g0);
  return out;
}

}  // namespace

TEST_CASE("weights are affine in lam with half-integer offsets") {
  Weight w = Weight::sym(rat(-3, 2));
  CHECK(w.value() == RatFunc(LamPoly::affine(Rational(1), rat(-3, 2))));
  CHECK(weight_str(w) == "lam-3/2");
  CHECK(weight_str(Weight::fixed(Rational(3))) == "3");
  CHECK(weight_str(Weight::sym()) == "lam");
  CHECK(w.plus(rat(3, 2)) == Weight::sym());
  CHECK(Weight::sym(Rational(2)) - Weight::sym() == Rational(2));
}

TEST_CASE("action matches the componentwise oracle") {
  RatFunc lam = RatFunc::lam();
  std::vector<RatFunc> weights = {lam, lam + RatFunc(rat(3, 2)), RatFunc(), RatFunc(-1L),
                                  RatFunc(rat(5, 2))};
  for (const RatFunc& w : weights) {
    for (int p = 0; p <= 1; ++p) {
      for (int m = 0; m <= 5; ++m) {
        SuperPoly F = SuperPoly::monomial(Parity(p), m);
        for (int q = 0; q <= 1; ++q) {
          for (int n = 0; n <= 5; ++n) {
            SuperPoly phi = SuperPoly::monomial(Parity(q), n);
            CHECK(act_weight(F, phi, w) == oracle_act(F, phi, w));
          }
        }
      }
    }
  }
}

TEST_CASE("action is a representation, symbolically in lam") {
  std::string rep;
  CHECK_MESSAGE(check_representation(RatFunc::lam(), 4, &rep), rep);
}

TEST_CASE("action is a representation at special weights") {
  std::string rep;
  for (long tw : {0L, 1L, -5L, 6L}) {
    CHECK_MESSAGE(check_representation(RatFunc(half(int(tw))), 4, &rep), rep);
  }
}

TEST_CASE("adjoint module sits at weight -1") {
  std::string rep;
  CHECK_MESSAGE(check_adjoint_is_weight_minus_one(6, &rep), rep);
}

TEST_CASE("hand values of the action") {
  RatFunc lam = RatFunc::lam();
  // L_{v_x}(x^n) = (n + w) x^n for even F = x.
  for (int n = 0; n <= 4; ++n) {
    SuperPoly got = act_weight(SuperPoly::x_pow(1), SuperPoly::x_pow(n), lam);
    CHECK(got == SuperPoly::x_pow(n, RatFunc(Rational(n)) + lam));
  }
  // L_{v_th}(th x^n) = (1/2) x^n.
  for (int n = 0; n <= 4; ++n) {
    SuperPoly got = act_weight(SuperPoly::th_x_pow(0), SuperPoly::th_x_pow(n), lam);
    CHECK(got == SuperPoly::x_pow(n, RatFunc(rat(1, 2))));
  }
  // L_{v_th}(x^n) = (1/2) n x^(n-1) th + lam * 0: odd generator sends evens to odds.
  SuperPoly got = act_weight(SuperPoly::th_x_pow(0), SuperPoly::x_pow(3), lam);
  CHECK(got == SuperPoly::th_x_pow(2, RatFunc(rat(3, 2))));
}
