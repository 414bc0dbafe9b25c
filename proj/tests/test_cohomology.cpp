#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "superdeform/cohomology.hpp"
#include "superdeform/contact.hpp"

using namespace superdeform;

namespace {

constexpr unsigned kSeed = 20240817u;

RatFunc small_rat(std::mt19937& rng) {
  long n = long(rng() % 9) - 4;
  long d = 1 + long(rng() % 3);
  return RatFunc(rat(n, d));
}

Cochain0 random_cochain0(std::mt19937& rng, const Weight& src, int shift) {
  Cochain0 A{{}, src};
  A.op.order = shift;
  A.op.set(Parity::Even, small_rat(rng));
  A.op.set(Parity::Odd, small_rat(rng));
  return A;
}

Cochain1 random_cochain1(std::mt19937& rng, const Weight& src, int two_shift) {
  Cochain1 g{{}, src};
  g.op.order = two_shift + 2;
  for (const Cochain1& b : cochain1_basis(src, two_shift))
    g.op += small_rat(rng) * b.op;
  g.op.prune();
  return g;
}

// The multiplication generator at weight shift zero: v_G acts on densities of
// any weight by multiplication with G', i.e. -etabar^2(G).
Cochain1 mult_generator(const Weight& src) {
  Cochain1 g{{}, src};
  g.op.order = 2;
  for (Parity p1 : {Parity::Even, Parity::Odd})
    for (Parity p2 : {Parity::Even, Parity::Odd})
      g.op.add_term(2, 0, p1, p2, RatFunc(-1L));
  return g;
}

// Independent evaluation of (delta g)(G,H)(phi) straight from the formula,
// bypassing the reconstruction that delta1 performs.
SuperPoly delta1_direct(const Cochain1& g, const SuperPoly& G,
                        const SuperPoly& H, const SuperPoly& phi) {
  Parity pG = G.parity(), pH = H.parity(), pg = g.parity();
  RatFunc ws = g.src.value(), wd = g.dst().value();
  SuperPoly out = g.op.apply(contact_bracket(G, H), phi);
  LinEval gH = [&](const SuperPoly& f) { return g.op.apply(H, f); };
  LinEval gG = [&](const SuperPoly& f) { return g.op.apply(G, f); };
  SuperPoly t1 = act_on_operator(G, gH, pg + pH, ws, wd, phi);
  SuperPoly t2 = act_on_operator(H, gG, pg + pG, ws, wd, phi);
  if (koszul(pG, pg) < 0) out += t1; else out -= t1;
  if (koszul(pH, pG + pg) < 0) out -= t2; else out += t2;
  return out;
}

}  // namespace

TEST_CASE("delta of a zero-cochain is killed by delta again") {
  std::mt19937 rng(kSeed);
  std::vector<Weight> srcs = {Weight::sym(0), Weight::sym(rat(1, 2)),
                              Weight::sym(rat(-3, 2)), Weight::fixed(2),
                              Weight::fixed(rat(-5, 2))};
  int n = 0;
  for (int pass = 0; n < 200; ++pass) {
    for (int shift = 0; shift <= 6 && n < 200; ++shift) {
      const Weight& w = srcs[(pass + shift) % srcs.size()];
      Cochain0 A = random_cochain0(rng, w, shift);
      Cochain2 dd = delta1(delta0(A));
      CHECK(dd.op.is_zero());
      ++n;
    }
  }
  CHECK(n == 200);
}

TEST_CASE("delta of a one-cochain is killed by delta-squared evaluation") {
  std::mt19937 rng(kSeed + 1);
  for (int ts = 0; ts <= 3; ++ts) {
    for (const Weight& w : {Weight::sym(0), Weight::fixed(rat(-1, 2))}) {
      Cochain1 g = random_cochain1(rng, w, ts);
      Cochain2 dg = delta1(g);
      CHECK(check_cocycle2(dg, 2));
    }
  }
}

TEST_CASE("delta images are antisymmetric in the contact slots") {
  std::mt19937 rng(kSeed + 2);
  for (int ts : {0, 1, 2, 3}) {
    Cochain1 g = random_cochain1(rng, Weight::sym(0), ts);
    CHECK(check_antisymmetry2(delta1(g), 2));
  }
}

TEST_CASE("cup square of the multiplication generator vanishes") {
  Cochain1 g = mult_generator(Weight::sym(0));
  CHECK(check_cocycle1(g));

  Cochain2 q = cup(g, g);
  CHECK(q.op.order == 4);
  CHECK(q.two_shift() == 0);
  // v_G and v_H act here by multiplication with G' and H'; the two
  // compositions cancel under the Koszul signs.
  CHECK(q.op.is_zero());
}

TEST_CASE("cup of a coboundary with a cocycle has trivial class") {
  std::mt19937 rng(kSeed + 3);
  for (int shift : {0, 1, 2}) {
    Cochain0 A = random_cochain0(rng, Weight::sym(0), shift);
    Cochain1 dA = delta0(A);

    Cochain1 left = mult_generator(dA.dst());
    Cochain2 q1 = cup(left, dA);
    CHECK(check_cocycle2(q1, 2));
    CoboundaryResult r1 = class_decompose(q1);
    CHECK(r1.trivial);

    Cochain1 right = mult_generator(Weight::sym(0));
    Cochain2 q2 = cup(dA, right);
    CHECK(check_cocycle2(q2, 2));
    CoboundaryResult r2 = class_decompose(q2);
    CHECK(r2.trivial);
  }
}

TEST_CASE("coboundary solving round-trips exact coboundaries") {
  std::mt19937 rng(kSeed + 4);
  for (int ts : {1, 2, 3}) {
    Cochain1 g = random_cochain1(rng, Weight::sym(0), ts);
    Cochain2 B = delta1(g);

    CoboundaryResult s = solve_coboundary(B);
    REQUIRE(s.trivial);
    CHECK(s.residue.empty());
    CHECK(delta1(s.witness).op == B.op);

    CoboundaryResult d = class_decompose(B);
    REQUIRE(d.trivial);
    CHECK(d.residue.empty());
    CHECK(delta1(d.witness).op == B.op);
  }
}

TEST_CASE("non-coboundaries are refused with a checkable counterexample") {
  std::mt19937 rng(kSeed + 5);
  for (int ts : {1, 2}) {
    Cochain1 g = random_cochain1(rng, Weight::sym(0), ts);
    Cochain2 B = delta1(g);
    std::vector<TKey> keys = trilinear_keys(B.op.order);
    REQUIRE(!keys.empty());
    B.op.add_term(keys[0], RatFunc(rat(1, 3)));
    B.op.prune();

    CoboundaryResult s = solve_coboundary(B);
    CoboundaryResult d = class_decompose(B);
    REQUIRE(!s.trivial);
    CHECK(s.trivial == d.trivial);
    CHECK(!d.residue.empty());

    REQUIRE(s.counterexample.has_value());
    const FailingTriple& ce = *s.counterexample;
    CHECK(!ce.value.is_zero());
    TriOp R = B.op;
    R -= delta1(s.witness).op;
    CHECK(R.apply(ce.G, ce.H, ce.phi) == ce.value);
  }
}

TEST_CASE("coboundary solving works in a residue field") {
  std::mt19937 rng(kSeed + 6);
  Cochain1 g = random_cochain1(rng, Weight::sym(0), 2);
  Cochain2 B = delta1(g);
  LamPoly m = LamPoly::affine(1, 1);  // lam + 1
  CoboundaryResult s = solve_coboundary(B, &m);
  CHECK(s.trivial);
  CoboundaryResult d = class_decompose(B, &m);
  CHECK(d.trivial);
}

TEST_CASE("one-cohomology dimensions at a generic symbolic weight") {
  // Weight shifts are carried doubled; classes counts the independent cocycle
  // classes modulo coboundaries at each shift.
  const int expected[] = {1, 0, 0, 1, 1, 1, 0};
  for (int ts = 0; ts <= 6; ++ts) {
    H1Analysis h = h1_analysis(Weight::sym(0), ts);
    CHECK(h.classes.size() == size_t(expected[ts]));
    for (const Cochain1& z : h.cocycles) CHECK(check_cocycle1(z));
  }

  H1Analysis h0 = h1_analysis(Weight::sym(0), 0);
  REQUIRE(h0.classes.size() == 1);
  CHECK(h0.cocycles.size() == 2);
  CHECK(h0.coboundaries.size() == 1);

  // The shift-zero class is the multiplication generator up to scale.
  Cochain1 g = mult_generator(Weight::sym(0));
  const Cochain1& c = h0.classes[0];
  RatFunc s = c.op.coeff(BKey{2, 0, Parity::Even, Parity::Even}) /
              g.op.coeff(BKey{2, 0, Parity::Even, Parity::Even});
  CHECK(!s.is_zero());
  CHECK(c.op == s * g.op);
}

TEST_CASE("nontriviality reports distinguish generators from coboundaries") {
  Cochain1 g = mult_generator(Weight::sym(0));
  NontrivialityReport rep = verify_nontrivial_cocycle(g);
  CHECK(rep.cocycle);
  CHECK(!rep.trivial);

  std::mt19937 rng(kSeed + 7);
  Cochain0 A = random_cochain0(rng, Weight::sym(0), 2);
  NontrivialityReport rep2 = verify_nontrivial_cocycle(delta0(A));
  CHECK(rep2.cocycle);
  CHECK(rep2.trivial);
}

TEST_CASE("reconstruction degree caps lose nothing at higher degrees") {
  std::mt19937 rng(kSeed + 8);
  for (int ts : {0, 1, 2}) {
    Cochain1 g = random_cochain1(rng, Weight::sym(0), ts);
    Cochain2 R = delta1(g);
    // The grid behind delta1 stops at x-degree order+1; re-evaluate both
    // sides well above it.
    int lo = R.op.order + 3, hi = R.op.order + 6;
    for (int trial = 0; trial < 12; ++trial) {
      auto pick = [&]() {
        int deg = lo + int(rng() % unsigned(hi - lo + 1));
        Parity p = (rng() & 1) ? Parity::Odd : Parity::Even;
        return SuperPoly::monomial(p, deg);
      };
      SuperPoly G = pick(), H = pick(), phi = pick();
      CHECK(R.op.apply(G, H, phi) == delta1_direct(g, G, H, phi));
    }
  }
}
