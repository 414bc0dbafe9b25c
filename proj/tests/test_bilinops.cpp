#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "superdeform/bilinops.hpp"
#include "superdeform/contact.hpp"

using namespace superdeform;

namespace {

RatFunc random_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dc(-4, 4), pick(0, 3);
  RatFunc base(Rational(dc(rng)));
  if (pick(rng) == 0) base += RatFunc::lam() * RatFunc(Rational(dc(rng)));
  return base;
}

BilinOp random_bilinop(std::mt19937_64& rng, int order) {
  std::uniform_int_distribution<int> keep(0, 2);
  BilinOp op;
  op.order = order;
  for (const BKey& k : bilinear_keys(order)) {
    if (keep(rng) == 0) continue;
    op.set(k.i, k.j, k.p1, k.p2, random_coeff(rng));
  }
  return op;
}

TriOp random_triop(std::mt19937_64& rng, int order) {
  std::uniform_int_distribution<int> keep(0, 3);
  TriOp op;
  op.order = order;
  for (const TKey& k : trilinear_keys(order)) {
    if (keep(rng) != 0) continue;
    op.set(k, random_coeff(rng));
  }
  return op;
}

}  // namespace

TEST_CASE("inadmissible terms vanish identically") {
  // A term with two th-bearing factors is the zero operator.
  for (int i = 0; i <= 4; ++i) {
    for (int a = 0; a <= 6; ++a) {
      for (int b = 0; b <= 6; ++b) {
        SuperPoly f = SuperPoly::th_x_pow(a).etabar_pow(2 * i);      // stays odd
        SuperPoly g = SuperPoly::x_pow(b).etabar_pow(2 * i + 1);     // becomes odd
        CHECK((f * g).is_zero());
      }
    }
  }
}

TEST_CASE("linear operator round-trip") {
  std::mt19937_64 rng(101);
  for (int order = 0; order <= 7; ++order) {
    LinOp op;
    op.order = order;
    op.set(Parity::Even, random_coeff(rng));
    op.set(Parity::Odd, random_coeff(rng));
    LinOp back = reconstruct_linear(order, [&](const SuperPoly& f) { return op.apply(f); });
    CHECK(back == op);
  }
}

TEST_CASE("bilinear operator round-trip") {
  std::mt19937_64 rng(202);
  for (int order = 0; order <= 9; ++order) {
    for (int rep = 0; rep < 3; ++rep) {
      BilinOp op = random_bilinop(rng, order);
      BilinOp back = reconstruct_bilinear(
          order, [&](const SuperPoly& g, const SuperPoly& h) { return op.apply(g, h); });
      CHECK(back == op);
    }
  }
}

TEST_CASE("trilinear operator round-trip") {
  std::mt19937_64 rng(303);
  for (int order : {0, 1, 2, 3, 4, 5, 6, 7, 10}) {
    TriOp op = random_triop(rng, order);
    TriOp back = reconstruct_trilinear(
        order, [&](const SuperPoly& g, const SuperPoly& h, const SuperPoly& f) {
          return op.apply(g, h, f);
        });
    CHECK(back == op);
  }
}

TEST_CASE("the contact bracket in etabar normal form") {
  BilinOp b = reconstruct_bilinear(
      2, [](const SuperPoly& f, const SuperPoly& g) { return contact_bracket(f, g); });
  // F G' = -eb^0(F) eb^2(G), -F' G = eb^2(F) eb^0(G), plus the cross term
  // (1/2)(-1)^{p(F)+1} eb(F) eb(G): accumulated per sector through the
  // canonical form, where e.g. eb^2(F) eb^0(G) and eb^1(F) eb^1(G) coincide
  // on the (even, odd) sector.
  BilinOp want;
  want.order = 2;
  const Parity E = Parity::Even, O = Parity::Odd;
  want.add_term(0, 2, E, E, RatFunc(-1L));
  want.add_term(2, 0, E, E, RatFunc(1L));
  want.add_term(0, 2, E, O, RatFunc(-1L));
  want.add_term(2, 0, E, O, RatFunc(1L));
  want.add_term(1, 1, E, O, RatFunc(rat(-1, 2)));
  want.add_term(0, 2, O, E, RatFunc(-1L));
  want.add_term(2, 0, O, E, RatFunc(1L));
  want.add_term(1, 1, O, E, RatFunc(rat(1, 2)));
  want.add_term(1, 1, O, O, RatFunc(rat(1, 2)));
  CHECK(b == want);
  // Spot-check the merged sectors directly.
  CHECK(b.coeff(BKey{1, 1, E, O}) == RatFunc(rat(1, 2)));
  CHECK(b.coeff(BKey{0, 2, E, O}) == RatFunc(-1L));
  CHECK(b.coeff(BKey{0, 2, O, E}) == RatFunc(rat(-1, 2)));
  CHECK(b.coeff(BKey{2, 0, O, E}) == RatFunc(1L));
  CHECK(b.coeff(BKey{1, 1, O, O}) == RatFunc(rat(1, 2)));
}

TEST_CASE("reconstruction rejects a wrong order claim") {
  auto bracket_eval = [](const SuperPoly& f, const SuperPoly& g) {
    return contact_bracket(f, g);
  };
  CHECK_THROWS_AS(reconstruct_bilinear(4, bracket_eval), ReconstructError);
  CHECK_THROWS_AS(reconstruct_bilinear(3, bracket_eval), ReconstructError);
}

TEST_CASE("reconstruction rejects non-constant coefficients") {
  auto skew = [](const SuperPoly& f, const SuperPoly& g) {
    return SuperPoly::x_pow(1) * contact_bracket(f, g);
  };
  CHECK_THROWS_AS(reconstruct_bilinear(2, skew), ReconstructError);
}

TEST_CASE("apply is linear in scalar multiples") {
  std::mt19937_64 rng(404);
  BilinOp op = random_bilinop(rng, 5);
  RatFunc s = RatFunc::lam() + RatFunc(rat(1, 2));
  SuperPoly g = SuperPoly::th_x_pow(3), h = SuperPoly::x_pow(2);
  CHECK(op.apply(s * g, h) == s * op.apply(g, h));
  CHECK(op.apply(g, s * h) == s * op.apply(g, h));
}

TEST_CASE("key enumerations respect admissibility") {
  for (int order = 0; order <= 8; ++order) {
    for (const BKey& k : bilinear_keys(order)) {
      CHECK(k.i + k.j == order);
      CHECK(admissible(k));
    }
    for (const TKey& k : trilinear_keys(order)) {
      CHECK(k.i + k.j + k.l == order);
      CHECK(admissible(k));
    }
  }
}
