#include "superdeform/catalog.hpp"

#include <cassert>
#include <sstream>

namespace superdeform {

namespace {

// Spread a coefficient over all parity sectors of a raw key; with flip the
// odd-contact sectors get the opposite sign.  Inadmissible sectors drop out
// and stored keys are canonical, so one call can touch several table rows.
void put(BilinOp& op, int i, int j, const RatFunc& c, bool flip) {
  for (Parity p1 : {Parity::Even, Parity::Odd})
    for (Parity p2 : {Parity::Even, Parity::Odd}) {
      RatFunc v = (flip && p1 == Parity::Odd) ? -c : c;
      op.add_term(i, j, p1, p2, v);
    }
}

RatFunc aff(long a, const Rational& b) {
  return RatFunc(LamPoly::affine(Rational(a), b));
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> v;

  {
    Cochain1 g{{}, Weight::sym(0)};
    g.op.order = 2;
    put(g.op, 2, 0, -RatFunc(1L), false);
    v.push_back({"gamma[lam,lam]", g, std::nullopt,
                 "v_G acts by G'F; nontrivial at every weight"});
  }
  {
    Cochain1 g{{}, Weight::sym(0)};
    g.op.order = 5;
    put(g.op, 5, 0, RatFunc(1L), false);
    v.push_back({"gamma[lam,lam+3/2]", g, std::nullopt,
                 "body etabar(G'')F; becomes a coboundary at lam = -1/2, "
                 "where gamma[-1/2,1] spans the slot instead"});
  }
  {
    Cochain1 g{{}, Weight::sym(0)};
    g.op.order = 6;
    put(g.op, 6, 0, aff(-2, 0), false);
    put(g.op, 5, 1, -RatFunc(3L), true);
    v.push_back({"gamma[lam,lam+2]", g, std::nullopt,
                 "body 2 lam G'''F - 3 (-1)^p(G) etabar(G'')etabar(F); the "
                 "sign of the mixed term is forced by closedness; the class "
                 "survives specialization to lam = -1"});
  }
  {
    Cochain1 g{{}, Weight::sym(0)};
    g.op.order = 7;
    g.op.set(4, 3, Parity::Odd, Parity::Odd, -RatFunc(27L));
    g.op.set(5, 2, Parity::Even, Parity::Even, -RatFunc(36L));
    g.op.set(5, 2, Parity::Odd, Parity::Even, -RatFunc(27L));
    g.op.set(6, 1, Parity::Even, Parity::Odd, -RatFunc(9L));
    g.op.set(6, 1, Parity::Odd, Parity::Odd, aff(18, 9));
    g.op.set(7, 0, Parity::Even, Parity::Even, aff(18, 0));
    g.op.set(7, 0, Parity::Odd, Parity::Even, aff(18, 0));
    v.push_back({"gamma[lam,lam+5/2]", g, std::nullopt,
                 "kernel representative with poles cleared; becomes a "
                 "coboundary at lam = -1, where a different generator spans "
                 "the slot; scaled so the second-order square chain through "
                 "the shift-2 family carries weight 1/3 against this family's "
                 "chains"});
  }
  {
    Cochain1 g{{}, Weight::sym(0)};
    g.op.order = 10;
    g.op.set(4, 6, Parity::Odd, Parity::Even, aff(40, 130));
    g.op.set(5, 5, Parity::Even, Parity::Odd, aff(-60, -190));
    g.op.set(5, 5, Parity::Odd, Parity::Odd, aff(40, 130));
    g.op.set(6, 4, Parity::Even, Parity::Even, aff(-20, -60));
    g.op.set(6, 4, Parity::Odd, Parity::Even, aff(-60, -180));
    g.op.set(7, 3, Parity::Even, Parity::Odd, aff(40, 130));
    g.op.set(7, 3, Parity::Odd, Parity::Odd, aff(-40, -120));
    g.op.set(8, 2, Parity::Even, Parity::Even, RatFunc(10L));
    g.op.set(8, 2, Parity::Odd, Parity::Even, RatFunc(15L));
    g.op.set(9, 1, Parity::Even, Parity::Odd, aff(-2, -5));
    g.op.set(9, 1, Parity::Odd, Parity::Odd, RatFunc(5L));
    g.op.set(10, 0, Parity::Even, Parity::Even, aff(-2, 0));
    g.op.set(10, 0, Parity::Odd, Parity::Even, aff(-2, 0));
    LamPoly m;
    m.c = {rat(2), rat(7), rat(2)};
    v.push_back({"gamma[lam,lam+4]", g, m,
                 "defined only on the locus 2 lam^2 + 7 lam + 2 = 0; off the "
                 "locus the slot has empty cohomology"});
  }
  {
    Cochain1 g{{}, Weight::fixed(0)};
    g.op.order = 3;
    put(g.op, 3, 0, RatFunc(1L), false);
    v.push_back({"gamma[0,1/2]", g, std::nullopt, "body etabar^3(G)F"});
  }
  {
    Cochain1 g{{}, Weight::fixed(0)};
    g.op.order = 3;
    put(g.op, 3, 0, RatFunc(1L), false);
    put(g.op, 2, 1, RatFunc(1L), true);
    v.push_back({"gamma~[0,1/2]", g, std::nullopt,
                 "body etabar^3(G)F + (-1)^p(G) etabar^2(G)etabar(F); "
                 "together with gamma[0,1/2] it spans the two-dimensional "
                 "slot at weight 0"});
  }
  {
    Cochain1 g{{}, Weight::fixed(0)};
    g.op.order = 8;
    put(g.op, 7, 1, -RatFunc(1L), true);
    put(g.op, 6, 2, RatFunc(1L), false);
    put(g.op, 5, 3, RatFunc(3L), true);
    v.push_back({"gamma[0,3]", g, std::nullopt,
                 "unique class on the keys (7,1),(6,2),(5,3), normalized so "
                 "the G'''F' part has coefficient 1; no closed combination "
                 "at this slot carries the top key (8,0)"});
  }
  {
    Cochain1 g{{}, Weight::fixed(rat(-5, 2))};
    g.op.order = 8;
    put(g.op, 8, 0, RatFunc(1L), false);
    put(g.op, 7, 1, RatFunc(rat(-4, 5)), true);
    put(g.op, 6, 2, RatFunc(rat(4, 5)), false);
    put(g.op, 5, 3, RatFunc(rat(-3, 5)), true);
    v.push_back({"gamma[-5/2,1/2]", g, std::nullopt,
                 "coefficients forced by closedness on the four-key support, "
                 "top coefficient normalized to 1"});
  }
  {
    Cochain1 g{{}, Weight::fixed(rat(-1, 2))};
    g.op.order = 5;
    g.op.set(2, 3, Parity::Odd, Parity::Odd, RatFunc(1L));
    g.op.set(3, 2, Parity::Even, Parity::Even, RatFunc(2L));
    g.op.set(3, 2, Parity::Odd, Parity::Even, RatFunc(1L));
    g.op.set(4, 1, Parity::Even, Parity::Odd, RatFunc(1L));
    g.op.set(5, 0, Parity::Even, Parity::Even, RatFunc(1L));
    g.op.set(5, 0, Parity::Odd, Parity::Even, RatFunc(1L));
    v.push_back({"gamma[-1/2,1]", g, std::nullopt,
                 "generator at the weight where the shift-3/2 family "
                 "degenerates"});
  }
  return v;
}

}  // namespace

const std::vector<CatalogEntry>& cocycle_catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const CatalogEntry& e : cocycle_catalog())
    if (e.name == name) return e;
  throw UnknownCocycle(name);
}

Cochain1 rebase(const CatalogEntry& e, const Weight& src) {
  const Cochain1& g = e.cocycle;
  if (e.modulus)
    throw std::invalid_argument(e.name + " lives on a residue locus and does "
                                         "not rebase");
  if (!g.src.is_symbolic()) {
    if (!(src == g.src))
      throw std::invalid_argument(e.name + " is pinned to weight " +
                                  weight_str(g.src));
    return g;
  }
  if (!src.is_symbolic())
    throw std::invalid_argument(e.name + " is a symbolic family; rebase "
                                         "target must be symbolic too");
  const Rational off = src - g.src;
  Cochain1 out{{}, src};
  out.op.order = g.op.order;
  for (const auto& [k, c] : g.op.terms)
    out.op.set(k.i, k.j, k.p1, k.p2, c.shifted(off));
  return out;
}

CatalogVerification verify_catalog_entry(const CatalogEntry& e) {
  CatalogVerification out;
  const LamPoly* m = e.modulus ? &*e.modulus : nullptr;
  out.report = verify_nontrivial_cocycle(e.cocycle, m);
  out.slot_record = h1_analysis(e.cocycle.src, e.cocycle.two_shift()).loci;
  std::ostringstream os;
  os << e.name << ": " << out.report.detail;
  if (!out.slot_record.empty()) {
    os << "; slot analysis divided by";
    for (const LamPoly& f : out.slot_record) os << " (" << poly_str(f) << ")";
  }
  out.summary = os.str();
  return out;
}

}  // namespace superdeform
