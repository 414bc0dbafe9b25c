#include "superdeform/families.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "superdeform/transvectants.hpp"

namespace superdeform {

const std::vector<Rational>& generic_shifts() {
  static const std::vector<Rational> s = {Rational(0), rat(3, 2), Rational(2),
                                          rat(5, 2)};
  return s;
}

bool is_generic_shift(const Rational& s) {
  for (const auto& g : generic_shifts())
    if (g == s) return true;
  return false;
}

const char* family_name(const Rational& shift) {
  if (shift == Rational(0)) return "gamma[lam,lam]";
  if (shift == rat(3, 2)) return "gamma[lam,lam+3/2]";
  if (shift == Rational(2)) return "gamma[lam,lam+2]";
  if (shift == rat(5, 2)) return "gamma[lam,lam+5/2]";
  throw std::invalid_argument("no generic family at shift " + shift.get_str());
}

namespace {

RatFunc specialize(const RatFunc& c, const Rational& value) {
  auto n = c.num.eval(value);
  auto d = c.den.eval(value);
  if (d == 0) throw std::domain_error("family coefficient pole at lam = " + value.get_str());
  return RatFunc(n / d);
}

}  // namespace

Cochain1 family_cocycle(const Rational& shift, const Weight& src) {
  const CatalogEntry& e = catalog_entry(family_name(shift));
  if (src.is_symbolic()) return rebase(e, src);
  Cochain1 g = e.cocycle;
  Cochain1 out{{}, src};
  out.op.order = g.op.order;
  for (const auto& [k, c] : g.op.terms)
    out.op.set(k.i, k.j, k.p1, k.p2, specialize(c, src.b));
  out.op.prune();
  return out;
}

Cochain1 block_witness(const Weight& src, const Rational& k) {
  Rational twok = 2 * k;
  assert(twok.get_den() == 1);
  int order = static_cast<int>(twok.get_num().get_si()) + 2;
  return Cochain1{transvectant(Weight::fixed(-1), src, order), src};
}

BilinOp shift_coeffs(const BilinOp& op, const Rational& off) {
  BilinOp out;
  out.order = op.order;
  for (const auto& [k, c] : op.terms) out.terms.emplace(k, c.shifted(off));
  return out;
}

TriOp shift_coeffs(const TriOp& op, const Rational& off) {
  TriOp out;
  out.order = op.order;
  for (const auto& [k, c] : op.terms) out.terms.emplace(k, c.shifted(off));
  return out;
}

CoboundaryResult shift_coeffs(const CoboundaryResult& r, const Rational& off) {
  CoboundaryResult out;
  out.trivial = r.trivial;
  out.witness.src = Weight(r.witness.src.a, r.witness.src.b + off);
  out.witness.op = shift_coeffs(r.witness.op, off);
  for (const auto& l : r.loci) out.loci.push_back(l.shifted(off));
  for (const auto& c : r.residue) out.residue.push_back(c.shifted(off));
  out.summary = r.summary;
  return out;
}

std::optional<RatFunc> exact_witness_factor(const Cochain2& c,
                                            const Weight& src,
                                            const Rational& k) {
  Cochain2 w = delta1(block_witness(src, k));
  if (w.op.is_zero()) return std::nullopt;
  const auto& [key, wc] = *w.op.terms.begin();
  auto it = c.op.terms.find(key);
  RatFunc f = (it == c.op.terms.end()) ? RatFunc() : it->second / wc;
  TriOp diff = c.op;
  diff -= f * w.op;
  diff.prune();
  if (!diff.is_zero()) return std::nullopt;
  return f;
}

namespace {

ChainCup make_chain(const Weight& src, const Rational& j1, const Rational& j2) {
  ChainCup ch;
  ch.j1 = j1;
  ch.j2 = j2;
  Cochain1 lower = family_cocycle(j1, src);
  Cochain1 upper = family_cocycle(j2, src.plus(j1));
  ch.cup = cup(upper, lower);
  ch.dec = class_decompose(ch.cup);
  if (ch.dec.trivial)
    ch.witness_factor = exact_witness_factor(ch.cup, src, j1 + j2);
  return ch;
}

ChainCup shift_chain(const ChainCup& ch, const Rational& off) {
  ChainCup out;
  out.j1 = ch.j1;
  out.j2 = ch.j2;
  out.cup.src = Weight(ch.cup.src.a, ch.cup.src.b + off);
  out.cup.op = shift_coeffs(ch.cup.op, off);
  out.dec = shift_coeffs(ch.dec, off);
  if (ch.witness_factor) out.witness_factor = ch.witness_factor->shifted(off);
  return out;
}

std::mutex cache_mx;

}  // namespace

ChainCup chain_cup(const Weight& src, const Rational& j1, const Rational& j2) {
  if (!src.is_symbolic()) return make_chain(src, j1, j2);
  static std::map<std::pair<Rational, Rational>, ChainCup> cache;
  std::pair<Rational, Rational> key{j1, j2};
  {
    std::lock_guard<std::mutex> g(cache_mx);
    auto it = cache.find(key);
    if (it != cache.end()) return shift_chain(it->second, src.b);
  }
  ChainCup ch = make_chain(Weight::sym(0), j1, j2);
  std::lock_guard<std::mutex> g(cache_mx);
  auto [it, fresh] = cache.emplace(key, std::move(ch));
  return shift_chain(it->second, src.b);
}

std::vector<ChainCup> second_order_chains(const Weight& src, const Rational& k) {
  std::vector<ChainCup> out;
  for (const auto& j1 : generic_shifts()) {
    Rational j2 = k - j1;
    if (!is_generic_shift(j2)) continue;
    out.push_back(chain_cup(src, j1, j2));
  }
  return out;
}

namespace {

ChannelCup make_channel(const Weight& src, const Rational& j, const Rational& s,
                        bool witness_lower) {
  ChannelCup ch;
  ch.j = j;
  ch.s = s;
  ch.witness_lower = witness_lower;
  if (witness_lower) {
    Cochain1 lower = block_witness(src, s);
    Cochain1 upper = family_cocycle(j, src.plus(s));
    ch.cup = cup(upper, lower);
  } else {
    Cochain1 lower = family_cocycle(j, src);
    Cochain1 upper = block_witness(src.plus(j), s);
    ch.cup = cup(upper, lower);
  }
  ch.dec = class_decompose(ch.cup);
  return ch;
}

ChannelCup shift_channel(const ChannelCup& ch, const Rational& off) {
  ChannelCup out;
  out.j = ch.j;
  out.s = ch.s;
  out.witness_lower = ch.witness_lower;
  out.cup.src = Weight(ch.cup.src.a, ch.cup.src.b + off);
  out.cup.op = shift_coeffs(ch.cup.op, off);
  out.dec = shift_coeffs(ch.dec, off);
  return out;
}

}  // namespace

ChannelCup third_order_channel(const Weight& src, const Rational& j,
                               const Rational& s, bool witness_lower) {
  if (src.is_symbolic()) {
    static std::map<std::tuple<Rational, Rational, bool>, ChannelCup> cache;
    std::tuple<Rational, Rational, bool> key{j, s, witness_lower};
    {
      std::lock_guard<std::mutex> g(cache_mx);
      auto it = cache.find(key);
      if (it != cache.end()) return shift_channel(it->second, src.b);
    }
    ChannelCup ch = make_channel(Weight::sym(0), j, s, witness_lower);
    std::lock_guard<std::mutex> g(cache_mx);
    auto [it, fresh] = cache.emplace(key, std::move(ch));
    return shift_channel(it->second, src.b);
  }
  return make_channel(src, j, s, witness_lower);
}

WitnessCup fourth_order_channel(const Weight& src, const Rational& sa,
                                const Rational& sb) {
  auto make = [](const Weight& base, const Rational& a, const Rational& b) {
    WitnessCup w;
    w.sa = a;
    w.sb = b;
    Cochain1 lower = block_witness(base, b);
    Cochain1 upper = block_witness(base.plus(b), a);
    w.cup = cup(upper, lower);
    w.dec = class_decompose(w.cup);
    return w;
  };
  if (src.is_symbolic()) {
    static std::map<std::pair<Rational, Rational>, WitnessCup> cache;
    std::pair<Rational, Rational> key{sa, sb};
    {
      std::lock_guard<std::mutex> g(cache_mx);
      auto it = cache.find(key);
      if (it != cache.end()) {
        WitnessCup out = it->second;
        out.cup.src = Weight(out.cup.src.a, out.cup.src.b + src.b);
        out.cup.op = shift_coeffs(out.cup.op, src.b);
        out.dec = shift_coeffs(out.dec, src.b);
        return out;
      }
    }
    WitnessCup w = make(Weight::sym(0), sa, sb);
    std::lock_guard<std::mutex> g(cache_mx);
    auto [it, fresh] = cache.emplace(key, std::move(w));
    WitnessCup out = it->second;
    out.cup.src = Weight(out.cup.src.a, out.cup.src.b + src.b);
    out.cup.op = shift_coeffs(out.cup.op, src.b);
    out.dec = shift_coeffs(out.dec, src.b);
    return out;
  }
  return make(src, sa, sb);
}

EchelonSplit echelon_split(const std::vector<std::vector<RatFunc>>& m) {
  EchelonSplit out;
  if (m.empty()) return out;
  size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<RatFunc>> w = m;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && w[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(w[r], w[piv]);
    RatFunc inv = inverse(w[r][c]);
    for (size_t j = c; j < cols; ++j) w[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || w[i][c].is_zero()) continue;
      RatFunc f = w[i][c];
      for (size_t j = c; j < cols; ++j) w[i][j] -= f * w[r][j];
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.rows.assign(w.begin(), w.begin() + r);
  for (size_t i = 0; i < rows; ++i) {
    std::vector<RatFunc> ci;
    ci.reserve(r);
    for (size_t d = 0; d < r; ++d) ci.push_back(m[i][out.pivots[d]]);
    out.cols.push_back(std::move(ci));
  }
  return out;
}

}  // namespace superdeform
