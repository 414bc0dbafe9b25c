#include "superdeform/deformation.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "superdeform/catalog.hpp"
#include "superdeform/cohomology.hpp"
#include "superdeform/contact.hpp"

namespace superdeform {

std::vector<Weight> SymbolModule::components() const {
  std::vector<Weight> out;
  out.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    out.push_back(Weight(delta.a, delta.b - rat(i, 2)));
  return out;
}

namespace {

const Weight kAnchor = Weight::sym(0);

int thread_count() {
  if (const char* s = std::getenv("SUPERDEFORM_THREADS")) {
    int v = std::atoi(s);
    if (v >= 1) return v;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

void run_parallel(std::vector<std::function<void()>> tasks) {
  int nt = std::min(thread_count(), static_cast<int>(tasks.size()));
  if (nt <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nt));
  for (int i = 0; i < nt; ++i)
    pool.emplace_back([&] {
      for (size_t u = next++; u < tasks.size(); u = next++) tasks[u]();
    });
  for (auto& th : pool) th.join();
}

int twice_int(const Rational& q) {
  Rational t = 2 * q;
  assert(t.get_den() == 1);
  return static_cast<int>(t.get_num().get_si());
}

Parity shift_parity(const Rational& j) {
  return twice_int(j) % 2 == 0 ? Parity::Even : Parity::Odd;
}

int pair_sign(Parity a, Parity b) {
  return a == Parity::Odd && b == Parity::Odd ? -1 : 1;
}

ParamMono translate_mono(const ParamMono& m, const Rational& off) {
  ParamMono out;
  out.reserve(m.size());
  for (const auto& t : m)
    out.push_back(ParamName::make(Weight(t.src.a, t.src.b + off),
                                  Weight(t.dst.a, t.dst.b + off), t.variant));
  return out;
}

ParamPoly translate_poly(const ParamPoly& p, const Rational& off) {
  ParamPoly out;
  for (const auto& [m, c] : p.terms)
    out.terms.emplace(translate_mono(m, off), c.shifted(off));
  return out;
}

ParamPoly mono_poly(const ParamMono& m) {
  ParamPoly p;
  p.terms.emplace(m, RatFunc(1L));
  return p;
}

void add_residue(std::vector<RatFunc>& acc, const std::vector<RatFunc>& v,
                 const RatFunc& c) {
  if (v.empty()) return;
  if (acc.size() < v.size()) acc.resize(v.size(), RatFunc(0L));
  for (size_t i = 0; i < v.size(); ++i) acc[i] += c * v[i];
}

void merge_loci(std::vector<LamPoly>& acc, const std::vector<LamPoly>& more) {
  for (const auto& l : more) {
    bool seen = false;
    for (const auto& h : acc)
      if (h.c == l.c) {
        seen = true;
        break;
      }
    if (!seen) acc.push_back(l);
  }
}

std::vector<LamPoly> shift_loci(const std::vector<LamPoly>& loci,
                                const Rational& off) {
  std::vector<LamPoly> out;
  out.reserve(loci.size());
  for (const auto& l : loci) out.push_back(l.shifted(off));
  return out;
}

// Accumulated bracket data of one weight block, keyed by the parameter
// monomial in front of each cochain contribution.
struct MonoData {
  std::optional<TriOp> rhs;
  std::vector<RatFunc> residue;
  std::optional<RatFunc> wfactor;  // accumulated exact delta-witness factor
  bool wfactor_ok = true;
};

struct BlockAccum {
  std::map<ParamMono, MonoData, MonoLess> monos;
  std::vector<LamPoly> loci;
};

void accumulate(BlockAccum& blk, ParamMono mono, RatFunc coeff,
                const TriOp& op, const CoboundaryResult& dec,
                const std::optional<RatFunc>& wf) {
  int s = normalize_mono(mono);
  if (s == 0) return;
  if (s < 0) coeff = -coeff;
  MonoData& d = blk.monos[mono];
  if (!d.rhs)
    d.rhs = coeff * op;
  else
    *d.rhs += coeff * op;
  add_residue(d.residue, dec.residue, coeff);
  if (wf) {
    if (!d.wfactor) d.wfactor = RatFunc(0L);
    *d.wfactor += coeff * *wf;
  } else {
    d.wfactor_ok = false;
  }
  merge_loci(blk.loci, dec.loci);
}

struct Extraction {
  std::vector<ParamPoly> rels;
  std::vector<std::vector<RatFunc>> classes;
};

Extraction extract(const BlockAccum& blk) {
  Extraction ex;
  size_t dim = 0;
  for (const auto& [m, d] : blk.monos) dim = std::max(dim, d.residue.size());
  if (dim == 0) return ex;
  std::vector<const ParamMono*> cols;
  std::vector<std::vector<RatFunc>> mat(dim);
  for (const auto& [m, d] : blk.monos) {
    cols.push_back(&m);
    for (size_t i = 0; i < dim; ++i)
      mat[i].push_back(i < d.residue.size() ? d.residue[i] : RatFunc(0L));
  }
  EchelonSplit es = echelon_split(mat);
  for (size_t r = 0; r < es.rows.size(); ++r) {
    ParamPoly p;
    for (size_t c = 0; c < cols.size(); ++c)
      if (!es.rows[r][c].is_zero()) p.terms.emplace(*cols[c], es.rows[r][c]);
    std::vector<RatFunc> cls;
    cls.reserve(dim);
    for (size_t i = 0; i < dim; ++i) cls.push_back(es.cols[i][r]);
    ex.rels.push_back(std::move(p));
    ex.classes.push_back(std::move(cls));
  }
  return ex;
}

std::string window_str(const Rational& k) {
  std::ostringstream os;
  os << "2(delta-lam) in {" << twice_int(k) << "..n}";
  return os.str();
}

bool transvectant_part_shift(const Rational& s) {
  return s == rat(7, 2) || s == Rational(4) || s == rat(9, 2);
}

// Shifts that admit an exact transvectant quadratic term.
bool witness_block_shift(const Rational& k) {
  return k == Rational(3) || transvectant_part_shift(k);
}

std::string jlabel(const Rational& k) {
  return "J_" + (k + 1).get_str();
}

// Solves the reduced right side of one block: transvectant multiples where
// the accumulated factor is exact, coboundary witnesses otherwise.  Returns
// false when a residue survives the relations, which leaves the order open.
bool solve_block_l2(const Weight& base, const Rational& k,
                    const BlockAccum& blk, const Extraction& ex,
                    std::map<ParamMono, Cochain1, MonoLess>& l2,
                    std::vector<WitnessPart>& parts, std::string& fpoly_str,
                    std::string& err) {
  RelationIdeal local;
  for (const auto& p : ex.rels)
    local.generators.push_back({p, {2, k, window_str(k)}});
  std::map<ParamMono, TriOp, MonoLess> red;
  for (const auto& [m, d] : blk.monos) {
    if (!d.rhs) continue;
    TriOp op = *d.rhs;
    op.prune();
    if (op.is_zero()) continue;
    ParamPoly nf = reduce_mod_ideal(mono_poly(m), local);
    for (const auto& [m2, c2] : nf.terms) {
      auto it = red.find(m2);
      if (it == red.end())
        red.emplace(m2, c2 * op);
      else
        it->second += c2 * op;
    }
  }
  ParamPoly fpoly;
  for (auto& [m, op] : red) {
    op.prune();
    if (op.is_zero()) continue;
    const MonoData* orig = nullptr;
    auto it = blk.monos.find(m);
    if (it != blk.monos.end()) orig = &it->second;
    if (ex.rels.empty() && orig && orig->wfactor_ok && orig->wfactor &&
        witness_block_shift(k)) {
      Cochain1 jw = block_witness(base, k);
      l2.emplace(m, Cochain1{*orig->wfactor * jw.op, base});
      if (transvectant_part_shift(k))
        parts.push_back({m, *orig->wfactor, k, base});
      fpoly.add_term(m, *orig->wfactor);
      continue;
    }
    CoboundaryResult dec = class_decompose(Cochain2{op, base});
    if (!dec.trivial) {
      err = "residue survives the block relations at shift " + k.get_str();
      return false;
    }
    l2.emplace(m, dec.witness);
  }
  if (!fpoly.is_zero()) fpoly_str = param_poly_str(fpoly);
  return true;
}

ObstructionReport relation_report(const Weight& base, const Rational& k,
                                  int order, const ParamPoly& rel,
                                  std::vector<RatFunc> cls,
                                  std::vector<LamPoly> loci) {
  ObstructionReport r;
  r.base = base;
  r.shift = k;
  r.order = order;
  r.relation = rel;
  r.residue_class = std::move(cls);
  r.loci = std::move(loci);
  r.summary = "obstructed: " + param_poly_str(rel) + " = 0 forced on " +
              window_str(k);
  return r;
}

ObstructionReport witness_report(const Weight& base, const Rational& k,
                                 int order, const std::string& fpoly_str,
                                 std::optional<Cochain1> w) {
  ObstructionReport r;
  r.base = base;
  r.shift = k;
  r.order = order;
  r.witness = std::move(w);
  if (!fpoly_str.empty())
    r.summary =
        "split: quadratic term (" + fpoly_str + ") (x) " + jlabel(k);
  else
    r.summary = "split: solved by a coboundary quadratic term";
  return r;
}

}  // namespace

DeformationState build_infinitesimal(const SymbolModule& m, BuildMode mode) {
  DeformationState st;
  st.module = m;
  st.mode = mode;
  std::vector<Weight> comps = m.components();
  auto has = [&comps](const Weight& w) {
    for (const auto& c : comps)
      if (c == w) return true;
    return false;
  };
  for (const Weight& src : comps) {
    for (const Rational& j : generic_shifts()) {
      Weight dst = src.plus(j);
      if (!has(dst)) continue;
      try {
        st.l1.emplace(ParamName::make(src, dst), family_cocycle(j, src));
      } catch (const std::domain_error&) {
        // family undefined at this fixed weight
      }
    }
  }
  if (mode == BuildMode::Full && !m.delta.is_symbolic()) {
    struct Sp {
      const char* name;
      Rational src, dst;
      Variant var;
    };
    const Sp specials[] = {
        {"gamma[0,1/2]", Rational(0), rat(1, 2), Variant::Plain},
        {"gamma~[0,1/2]", Rational(0), rat(1, 2), Variant::Tilde},
        {"gamma[0,3]", Rational(0), Rational(3), Variant::Plain},
        {"gamma[-5/2,1/2]", rat(-5, 2), rat(1, 2), Variant::Plain},
        {"gamma[-1/2,1]", rat(-1, 2), Rational(1), Variant::Plain},
    };
    for (const auto& sp : specials) {
      Weight s = Weight::fixed(sp.src), d = Weight::fixed(sp.dst);
      if (!has(s) || !has(d)) continue;
      st.l1.emplace(ParamName::make(s, d, sp.var),
                    catalog_entry(sp.name).cocycle);
    }
    const CatalogEntry& f4 = catalog_entry("gamma[lam,lam+4]");
    if (f4.modulus && f4.modulus->c.size() == 2) {
      Rational r = -f4.modulus->c[0] / f4.modulus->c[1];
      Weight s = Weight::fixed(r), d = Weight::fixed(r + 4);
      if (has(s) && has(d)) {
        Cochain1 g{{}, s};
        g.op.order = f4.cocycle.op.order;
        bool ok = true;
        for (const auto& [key, c] : f4.cocycle.op.terms) {
          auto v = c.eval(r);
          if (!v) {
            ok = false;
            break;
          }
          g.op.set(key.i, key.j, key.p1, key.p2, RatFunc(*v));
        }
        if (ok) {
          g.op.prune();
          st.l1.emplace(ParamName::make(s, d), g);
        }
      }
    }
  }
  st.order_closed = 1;
  return st;
}

namespace {

// Canonical second-order block at the anchor weight.
BlockAccum canon_block2(const Rational& k) {
  BlockAccum blk;
  for (const Rational& j1 : generic_shifts()) {
    Rational j2 = k - j1;
    if (!is_generic_shift(j2)) continue;
    ChainCup ch = chain_cup(kAnchor, j1, j2);
    ParamMono raw{ParamName::make(kAnchor.plus(j1), kAnchor.plus(k)),
                  ParamName::make(kAnchor, kAnchor.plus(j1))};
    RatFunc coeff(
        static_cast<long>(pair_sign(shift_parity(j2), shift_parity(j1))));
    accumulate(blk, std::move(raw), coeff, ch.cup.op, ch.dec,
               ch.witness_factor);
  }
  return blk;
}

std::vector<Rational> order2_shifts() {
  std::vector<Rational> ks;
  for (const Rational& a : generic_shifts())
    for (const Rational& b : generic_shifts()) {
      Rational k = a + b;
      bool seen = false;
      for (const Rational& x : ks)
        if (x == k) seen = true;
      if (!seen) ks.push_back(k);
    }
  std::sort(ks.begin(), ks.end());
  return ks;
}

struct CanonSecond {
  Rational k = 0;
  BlockAccum blk;
  Extraction ex;
  std::map<ParamMono, Cochain1, MonoLess> l2;
  std::vector<WitnessPart> parts;
  std::string fpoly_str;
  std::string err;
  bool ok = true;
};

void stamp_relations(DeformationState& st, const std::vector<ParamPoly>& rels,
                     int order, const Rational& k) {
  int two_k = twice_int(k);
  for (int i = two_k; i <= st.module.n; ++i) {
    Rational off = st.module.delta.b - rat(i, 2);
    for (const auto& p : rels)
      st.relations.generators.push_back(
          {translate_poly(p, off), {order, k, window_str(k)}});
  }
}

// The ideal generated by the accumulated relations, re-anchored and then
// instantiated at every half-integer offset up to max_top so that reduction
// of anchored monomials can rewrite interior sub-chains.
RelationIdeal anchored_translates(const DeformationState& st,
                                  const Rational& max_top);

std::vector<ObstructionReport> second_order_symbolic(DeformationState& st) {
  std::vector<ObstructionReport> reports;
  assert(st.module.delta.a == 1);
  std::vector<Rational> ks;
  for (const Rational& k : order2_shifts())
    if (twice_int(k) <= st.module.n) ks.push_back(k);
  std::vector<CanonSecond> cbs(ks.size());
  std::vector<std::function<void()>> tasks;
  for (size_t i = 0; i < ks.size(); ++i) {
    tasks.push_back([&cbs, &ks, i] {
      CanonSecond& cb = cbs[i];
      cb.k = ks[i];
      cb.blk = canon_block2(cb.k);
      cb.ex = extract(cb.blk);
      cb.ok = solve_block_l2(kAnchor, cb.k, cb.blk, cb.ex, cb.l2, cb.parts,
                             cb.fpoly_str, cb.err);
    });
  }
  run_parallel(std::move(tasks));
  bool all_ok = true;
  for (CanonSecond& cb : cbs) {
    int two_k = twice_int(cb.k);
    Rational off0 = st.module.delta.b - rat(two_k, 2);
    Weight base0(st.module.delta.a, off0);
    stamp_relations(st, cb.ex.rels, 2, cb.k);
    for (int i = two_k; i <= st.module.n; ++i) {
      Rational off = st.module.delta.b - rat(i, 2);
      Weight base(st.module.delta.a, off);
      for (const auto& [m, c] : cb.l2)
        st.l2.emplace(translate_mono(m, off),
                      Cochain1{shift_coeffs(c.op, off), base});
      for (const auto& p : cb.parts)
        st.l2_parts.push_back(
            {translate_mono(p.mono, off), p.factor.shifted(off), p.s, base});
    }
    for (size_t r = 0; r < cb.ex.rels.size(); ++r) {
      std::vector<RatFunc> cls;
      for (const auto& c : cb.ex.classes[r]) cls.push_back(c.shifted(off0));
      reports.push_back(relation_report(base0, cb.k, 2,
                                        translate_poly(cb.ex.rels[r], off0),
                                        std::move(cls),
                                        shift_loci(cb.blk.loci, off0)));
    }
    if (!cb.l2.empty()) {
      std::optional<Cochain1> w;
      auto it = st.l2.find(translate_mono(cb.l2.begin()->first, off0));
      if (it != st.l2.end()) w = it->second;
      reports.push_back(
          witness_report(base0, cb.k, 2, cb.fpoly_str, std::move(w)));
    }
    if (!cb.ok) {
      all_ok = false;
      ObstructionReport r;
      r.base = base0;
      r.shift = cb.k;
      r.order = 2;
      r.summary = "unresolved: " + cb.err;
      reports.push_back(std::move(r));
    }
  }
  if (all_ok) st.order_closed = 2;
  return reports;
}

std::vector<ObstructionReport> second_order_general(DeformationState& st) {
  std::vector<ObstructionReport> reports;
  struct BlockKey {
    Weight base;
    Rational k;
    bool operator<(const BlockKey& o) const {
      if (!(base == o.base)) return base < o.base;
      return k < o.k;
    }
  };
  std::map<BlockKey, BlockAccum> blocks;
  for (const auto& [na, ca] : st.l1)
    for (const auto& [nb, cb] : st.l1) {
      if (!(cb.dst() == ca.src)) continue;
      Rational k = half(ca.two_shift() + cb.two_shift());
      Cochain2 cc = cup(ca, cb);
      CoboundaryResult dec = class_decompose(cc);
      std::optional<RatFunc> wf;
      if (witness_block_shift(k)) wf = exact_witness_factor(cc, cb.src, k);
      ParamMono raw{na, nb};
      RatFunc coeff(static_cast<long>(pair_sign(ca.parity(), cb.parity())));
      accumulate(blocks[{cb.src, k}], std::move(raw), coeff, cc.op, dec, wf);
    }
  bool all_ok = true;
  for (auto& [key, blk] : blocks) {
    Extraction ex = extract(blk);
    for (const auto& p : ex.rels)
      st.relations.generators.push_back({p, {2, key.k, window_str(key.k)}});
    CanonSecond cb;
    cb.ok = solve_block_l2(key.base, key.k, blk, ex, cb.l2, cb.parts,
                           cb.fpoly_str, cb.err);
    for (const auto& [m, c] : cb.l2) st.l2.emplace(m, c);
    for (const auto& p : cb.parts) st.l2_parts.push_back(p);
    for (size_t r = 0; r < ex.rels.size(); ++r)
      reports.push_back(relation_report(key.base, key.k, 2, ex.rels[r],
                                        ex.classes[r], blk.loci));
    if (!cb.l2.empty()) {
      std::optional<Cochain1> w = cb.l2.begin()->second;
      reports.push_back(
          witness_report(key.base, key.k, 2, cb.fpoly_str, std::move(w)));
    }
    if (!cb.ok) {
      all_ok = false;
      ObstructionReport r;
      r.base = key.base;
      r.shift = key.k;
      r.order = 2;
      r.summary = "unresolved: " + cb.err;
      reports.push_back(std::move(r));
    }
  }
  if (all_ok) st.order_closed = 2;
  return reports;
}

RelationIdeal anchored_translates(const DeformationState& st,
                                  const Rational& max_top) {
  RelationIdeal out;
  std::vector<std::string> seen;
  for (const auto& r : st.relations.generators) {
    if (r.poly.is_zero()) continue;
    Rational base = r.poly.terms.begin()->first.front().src.b;
    ParamPoly anchored = translate_poly(r.poly, -base);
    std::string key = std::to_string(r.prov.order) + "|" +
                      r.prov.shift.get_str() + "|" + param_poly_str(anchored);
    bool dup = false;
    for (const auto& s : seen)
      if (s == key) dup = true;
    if (dup) continue;
    seen.push_back(key);
    for (Rational q = 0; q + r.prov.shift <= max_top; q += rat(1, 2))
      out.generators.push_back(
          {translate_poly(anchored, q), {r.prov.order, r.prov.shift, r.prov.window}});
  }
  return out;
}

struct CPart {
  ParamMono mono;
  RatFunc factor;
};

// Block key for higher orders: base weight of the composite and total shift.
// Symbolic runs anchor every block, fixed runs keep real bases apart.
struct HKey {
  Weight base;
  Rational k;
  bool operator<(const HKey& o) const {
    if (base != o.base) return base < o.base;
    return k < o.k;
  }
};

// The canonical transvectant parts of the quadratic term, per block shift.
std::vector<std::pair<Rational, std::vector<CPart>>> canonical_parts() {
  std::vector<std::pair<Rational, std::vector<CPart>>> out;
  for (const Rational& s : {rat(7, 2), Rational(4), rat(9, 2)}) {
    BlockAccum blk = canon_block2(s);
    std::vector<CPart> ps;
    for (const auto& [m, d] : blk.monos) {
      if (!d.wfactor_ok || !d.wfactor || d.wfactor->is_zero()) continue;
      ps.push_back({m, *d.wfactor});
    }
    out.emplace_back(s, std::move(ps));
  }
  return out;
}

// Reduces every monomial of the block and re-accumulates cochains and
// residues on the normal forms.
BlockAccum reduce_block(const BlockAccum& blk, const RelationIdeal& ideal) {
  BlockAccum out;
  out.loci = blk.loci;
  for (const auto& [m, d] : blk.monos) {
    if (!d.rhs) continue;
    ParamPoly nf = reduce_mod_ideal(mono_poly(m), ideal);
    for (const auto& [m2, c2] : nf.terms) {
      MonoData& t = out.monos[m2];
      if (!t.rhs)
        t.rhs = c2 * *d.rhs;
      else
        *t.rhs += c2 * *d.rhs;
      add_residue(t.residue, d.residue, c2);
    }
  }
  return out;
}

// True when every reduced monomial of the block carries an exactly zero
// cochain, certifying that the order contributes no further term.
bool block_vanishes(const BlockAccum& blk, const RelationIdeal& ideal,
                    std::string& err, const Rational& k) {
  std::map<ParamMono, TriOp, MonoLess> red;
  for (const auto& [m, d] : blk.monos) {
    if (!d.rhs) continue;
    ParamPoly nf = reduce_mod_ideal(mono_poly(m), ideal);
    for (const auto& [m2, c2] : nf.terms) {
      auto it = red.find(m2);
      if (it == red.end())
        red.emplace(m2, c2 * *d.rhs);
      else
        it->second += c2 * *d.rhs;
    }
  }
  for (auto& [m, op] : red) {
    op.prune();
    if (!op.is_zero()) {
      err = "remainder at shift " + k.get_str() + " on " + mono_str(m);
      return false;
    }
  }
  return true;
}

void settle_block(DeformationState& st, int order, const Rational& k,
                  const Weight& fixed_base, const BlockAccum& blk,
                  bool symbolic, std::vector<ObstructionReport>& reports,
                  bool& all_ok) {
  RelationIdeal ideal =
      symbolic ? anchored_translates(st, Rational(9)) : st.relations;
  BlockAccum red = reduce_block(blk, ideal);
  Extraction ex = extract(red);
  Weight base0 = symbolic
                     ? Weight(st.module.delta.a, st.module.delta.b - k)
                     : fixed_base;
  if (symbolic) {
    stamp_relations(st, ex.rels, order, k);
  } else {
    for (const auto& p : ex.rels)
      st.relations.generators.push_back({p, {order, k, window_str(k)}});
  }
  Rational off0 = symbolic ? base0.b : Rational(0);
  for (size_t r = 0; r < ex.rels.size(); ++r) {
    std::vector<RatFunc> cls;
    for (const auto& c : ex.classes[r])
      cls.push_back(symbolic ? c.shifted(off0) : c);
    reports.push_back(relation_report(
        base0, k, order,
        symbolic ? translate_poly(ex.rels[r], off0) : ex.rels[r],
        std::move(cls), symbolic ? shift_loci(red.loci, off0) : red.loci));
  }
  RelationIdeal after =
      symbolic ? anchored_translates(st, Rational(9)) : st.relations;
  std::string err;
  if (!block_vanishes(red, after, err, k)) {
    all_ok = false;
    ObstructionReport r;
    r.base = base0;
    r.shift = k;
    r.order = order;
    r.summary = std::string(order == 3 ? "unresolved cubic "
                                       : "unresolved quartic ") +
                err;
    reports.push_back(std::move(r));
  }
}

}  // namespace

std::vector<ObstructionReport> third_order(DeformationState& st) {
  std::vector<ObstructionReport> reports;
  assert(st.order_closed >= 2);
  bool symbolic = st.module.delta.is_symbolic();
  std::map<HKey, BlockAccum> blocks;
  if (symbolic) {
    auto parts = canonical_parts();
    for (const auto& [s, ps] : parts) {
      if (ps.empty()) continue;
      for (const Rational& j : generic_shifts()) {
        Rational k = j + s;
        if (twice_int(k) > st.module.n) continue;
        ChannelCup up = third_order_channel(kAnchor, j, s, true);
        ChannelCup lo = third_order_channel(kAnchor, j, s, false);
        int sgn = pair_sign(shift_parity(j), shift_parity(s));
        for (const CPart& p : ps) {
          ParamMono raw{ParamName::make(kAnchor.plus(s), kAnchor.plus(k))};
          raw.insert(raw.end(), p.mono.begin(), p.mono.end());
          accumulate(blocks[{kAnchor, k}], std::move(raw),
                     RatFunc(static_cast<long>(sgn)) * p.factor, up.cup.op,
                     up.dec, std::nullopt);
          ParamMono raw2 = translate_mono(p.mono, j);
          raw2.push_back(ParamName::make(kAnchor, kAnchor.plus(j)));
          accumulate(blocks[{kAnchor, k}], std::move(raw2),
                     RatFunc(static_cast<long>(sgn)) * p.factor.shifted(j),
                     lo.cup.op, lo.dec, std::nullopt);
        }
      }
    }
  } else {
    for (const WitnessPart& p : st.l2_parts) {
      Cochain1 wc{p.factor * block_witness(p.src, p.s).op, p.src};
      for (const auto& [nf, cf] : st.l1) {
        Rational jf = half(cf.two_shift());
        if (cf.src == wc.dst()) {
          Cochain2 cc = cup(cf, wc);
          ParamMono raw{nf};
          raw.insert(raw.end(), p.mono.begin(), p.mono.end());
          accumulate(blocks[{wc.src, p.s + jf}], std::move(raw),
                     RatFunc(static_cast<long>(
                         pair_sign(cf.parity(), wc.parity()))),
                     cc.op, class_decompose(cc), std::nullopt);
        }
        if (wc.src == cf.dst()) {
          Cochain2 cc = cup(wc, cf);
          ParamMono raw = p.mono;
          raw.push_back(nf);
          accumulate(blocks[{cf.src, p.s + jf}], std::move(raw),
                     RatFunc(static_cast<long>(
                         pair_sign(wc.parity(), cf.parity()))),
                     cc.op, class_decompose(cc), std::nullopt);
        }
      }
    }
  }
  bool all_ok = true;
  for (auto& [key, blk] : blocks)
    settle_block(st, 3, key.k, key.base, blk, symbolic, reports, all_ok);
  if (all_ok && st.order_closed == 2) st.order_closed = 3;
  return reports;
}

std::vector<ObstructionReport> fourth_order(DeformationState& st) {
  std::vector<ObstructionReport> reports;
  assert(st.order_closed >= 3);
  bool symbolic = st.module.delta.is_symbolic();
  std::map<HKey, BlockAccum> blocks;
  if (symbolic) {
    auto parts = canonical_parts();
    for (const auto& [sa, pa] : parts)
      for (const auto& [sb, pb] : parts) {
        Rational k = sa + sb;
        if (twice_int(k) > st.module.n) continue;
        if (pa.empty() || pb.empty()) continue;
        WitnessCup ch = fourth_order_channel(kAnchor, sa, sb);
        int sgn = pair_sign(shift_parity(sa), shift_parity(sb));
        for (const CPart& a : pa)
          for (const CPart& b : pb) {
            ParamMono raw = translate_mono(a.mono, sb);
            raw.insert(raw.end(), b.mono.begin(), b.mono.end());
            accumulate(blocks[{kAnchor, k}], std::move(raw),
                       RatFunc(static_cast<long>(sgn)) *
                           a.factor.shifted(sb) * b.factor,
                       ch.cup.op, ch.dec, std::nullopt);
          }
      }
  } else {
    for (const WitnessPart& a : st.l2_parts)
      for (const WitnessPart& b : st.l2_parts) {
        Cochain1 wa{a.factor * block_witness(a.src, a.s).op, a.src};
        Cochain1 wb{b.factor * block_witness(b.src, b.s).op, b.src};
        if (!(wa.src == wb.dst())) continue;
        Cochain2 cc = cup(wa, wb);
        ParamMono raw = a.mono;
        raw.insert(raw.end(), b.mono.begin(), b.mono.end());
        accumulate(blocks[{wb.src, a.s + b.s}], std::move(raw),
                   RatFunc(static_cast<long>(
                       pair_sign(wa.parity(), wb.parity()))),
                   cc.op, class_decompose(cc), std::nullopt);
      }
  }
  bool all_ok = true;
  for (auto& [key, blk] : blocks)
    settle_block(st, 4, key.k, key.base, blk, symbolic, reports, all_ok);
  if (all_ok && st.order_closed == 3) st.order_closed = 4;
  return reports;
}

std::vector<ObstructionReport> second_order(DeformationState& st) {
  if (st.module.delta.is_symbolic()) return second_order_symbolic(st);
  return second_order_general(st);
}

RelationIdeal emit_ideal(const DeformationState& st) {
  struct Entry {
    Relation rel;
    std::string key;
  };
  std::vector<Entry> entries;
  bool symbolic = st.module.delta.is_symbolic();
  for (const auto& r : st.relations.generators) {
    if (r.poly.is_zero()) continue;
    Relation a = r;
    if (symbolic) {
      Rational base = r.poly.terms.begin()->first.front().src.b;
      a.poly = translate_poly(r.poly, -base);
    }
    std::ostringstream key;
    key << a.prov.order << "|" << twice_int(a.prov.shift) << "|"
        << param_poly_str(a.poly);
    bool dup = false;
    for (const auto& e : entries)
      if (e.key == key.str()) dup = true;
    if (!dup) entries.push_back({std::move(a), key.str()});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.rel.prov.order != y.rel.prov.order)
      return x.rel.prov.order < y.rel.prov.order;
    if (!(x.rel.prov.shift == y.rel.prov.shift))
      return x.rel.prov.shift < y.rel.prov.shift;
    return x.key < y.key;
  });
  RelationIdeal out;
  for (auto& e : entries) out.generators.push_back(std::move(e.rel));
  return out;
}

bool check_order2_closure(const DeformationState& st, int cap,
                          std::string* report) {
  std::vector<std::pair<ParamMono, Cochain2>> dl2;
  for (const auto& [m, c] : st.l2) dl2.emplace_back(m, delta1(c));
  struct BTerm {
    ParamMono mono;
    RatFunc coeff;
    Cochain2 cupc;
  };
  std::vector<BTerm> bterms;
  for (const auto& [na, ca] : st.l1)
    for (const auto& [nb, cb] : st.l1) {
      if (!(cb.dst() == ca.src)) continue;
      ParamMono raw{na, nb};
      int s = normalize_mono(raw);
      if (s == 0) continue;
      RatFunc coeff(static_cast<long>(s * pair_sign(ca.parity(), cb.parity())));
      bterms.push_back({std::move(raw), coeff, cup(ca, cb)});
    }
  std::vector<ContactField> gens = contact_basis(cap);
  std::vector<SuperPoly> phis;
  for (int d = 0; d <= cap; ++d) {
    phis.push_back(SuperPoly::monomial(Parity::Even, d));
    phis.push_back(SuperPoly::monomial(Parity::Odd, d));
  }
  for (const Weight& w : st.module.components()) {
    std::vector<const std::pair<ParamMono, Cochain2>*> dl;
    for (const auto& e : dl2)
      if (e.second.src == w) dl.push_back(&e);
    std::vector<const BTerm*> bl;
    for (const auto& b : bterms)
      if (b.cupc.src == w) bl.push_back(&b);
    if (dl.empty() && bl.empty()) continue;
    for (const ContactField& G : gens)
      for (const ContactField& H : gens)
        for (const SuperPoly& phi : phis) {
          std::map<ParamMono, SuperPoly, MonoLess> defect;
          for (const auto* e : dl) {
            SuperPoly v = e->second.eval(G.f, H.f, phi);
            if (v.is_zero()) continue;
            defect[e->first] += v;
          }
          for (const auto* b : bl) {
            SuperPoly v = b->cupc.eval(G.f, H.f, phi);
            if (v.is_zero()) continue;
            defect[b->mono] += -(b->coeff * v);
          }
          std::map<ParamMono, SuperPoly, MonoLess> reduced;
          for (const auto& [m, v] : defect) {
            if (v.is_zero()) continue;
            ParamPoly nf = reduce_mod_ideal(mono_poly(m), st.relations);
            for (const auto& [m2, c2] : nf.terms) reduced[m2] += c2 * v;
          }
          for (const auto& [m, v] : reduced) {
            if (v.is_zero()) continue;
            if (report) {
              std::ostringstream os;
              os << "order-2 defect at component " << weight_str(w)
                 << " on (" << superpoly_str(G.f) << ", "
                 << superpoly_str(H.f) << "; " << superpoly_str(phi)
                 << "): coefficient of " << mono_str(m) << " is "
                 << superpoly_str(v);
              *report = os.str();
            }
            return false;
          }
        }
  }
  return true;
}

std::string obstruction_report_str(const ObstructionReport& r) {
  std::ostringstream os;
  os << "[order " << r.order << ", base " << weight_str(r.base) << ", shift "
     << r.shift.get_str() << "] " << r.summary;
  if (!r.loci.empty()) {
    os << "; loci:";
    for (const auto& l : r.loci)
      os << " (" << ratfunc_str(RatFunc(l)) << ")";
  }
  return os.str();
}

}  // namespace superdeform
