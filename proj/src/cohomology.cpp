#include "superdeform/cohomology.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "superdeform/contact.hpp"

namespace superdeform {

SuperPoly act_on_operator(const SuperPoly& G, const LinEval& A, Parity pA,
                          const RatFunc& wsrc, const RatFunc& wdst,
                          const SuperPoly& phi) {
  SuperPoly r = act_weight(G, A(phi), wdst);
  SuperPoly t = A(act_weight(G, phi, wsrc));
  if (koszul(pA, G.parity()) < 0) t = -t;
  return r - t;
}

Cochain1 delta0(const Cochain0& A) {
  const RatFunc ws = A.src.value();
  const RatFunc wd = A.dst().value();
  const Parity pA = A.parity();
  const LinOp op = A.op;
  const LinEval Ae = [op](const SuperPoly& p) { return op.apply(p); };
  BilinEval E = [Ae, pA, ws, wd](const SuperPoly& G, const SuperPoly& phi) {
    SuperPoly v = act_on_operator(G, Ae, pA, ws, wd, phi);
    if (koszul(G.parity(), pA) < 0) v = -v;
    return v;
  };
  return {reconstruct_bilinear(A.op.order + 2, E), A.src};
}

Cochain2 delta1(const Cochain1& g) {
  const RatFunc ws = g.src.value();
  const RatFunc wd = g.dst().value();
  const Parity pg = g.parity();
  const BilinOp op = g.op;
  TriEval E = [op, pg, ws, wd](const SuperPoly& G, const SuperPoly& H,
                               const SuperPoly& phi) {
    const Parity pG = G.parity(), pH = H.parity();
    SuperPoly r = op.apply(contact_bracket(G, H), phi);
    {
      const LinEval gH = [&op, &H](const SuperPoly& p) { return op.apply(H, p); };
      SuperPoly t = act_on_operator(G, gH, pg + pH, ws, wd, phi);
      if (koszul(pG, pg) < 0) t = -t;
      r -= t;
    }
    {
      const LinEval gG = [&op, &G](const SuperPoly& p) { return op.apply(G, p); };
      SuperPoly t = act_on_operator(H, gG, pg + pG, ws, wd, phi);
      if (koszul(pH, pG + pg) < 0) t = -t;
      r += t;
    }
    return r;
  };
  return {reconstruct_trilinear(g.op.order + 2, E), g.src};
}

SuperPoly delta2_eval(const Cochain2& c, const SuperPoly& G, const SuperPoly& H,
                      const SuperPoly& K, const SuperPoly& phi) {
  const RatFunc ws = c.src.value();
  const RatFunc wd = c.dst().value();
  const Parity pc = c.parity();
  const Parity pG = G.parity(), pH = H.parity(), pK = K.parity();

  SuperPoly r = c.op.apply(contact_bracket(G, H), K, phi);
  {
    SuperPoly t = c.op.apply(contact_bracket(G, K), H, phi);
    if (koszul(pH, pK) < 0) t = -t;
    r -= t;
  }
  {
    SuperPoly t = c.op.apply(contact_bracket(H, K), G, phi);
    if (koszul(pG, pH + pK) < 0) t = -t;
    r += t;
  }
  {
    const LinEval cHK = [&](const SuperPoly& p) { return c.op.apply(H, K, p); };
    SuperPoly t = act_on_operator(G, cHK, pc + pH + pK, ws, wd, phi);
    if (koszul(pG, pc) < 0) t = -t;
    r -= t;
  }
  {
    const LinEval cGK = [&](const SuperPoly& p) { return c.op.apply(G, K, p); };
    SuperPoly t = act_on_operator(H, cGK, pc + pG + pK, ws, wd, phi);
    if (koszul(pH, pc + pG) < 0) t = -t;
    r += t;
  }
  {
    const LinEval cGH = [&](const SuperPoly& p) { return c.op.apply(G, H, p); };
    SuperPoly t = act_on_operator(K, cGH, pc + pG + pH, ws, wd, phi);
    if (koszul(pK, pc + pG + pH) < 0) t = -t;
    r -= t;
  }
  return r;
}

bool check_cocycle1(const Cochain1& g) { return delta1(g).op.is_zero(); }

namespace {

std::vector<SuperPoly> monomials_up_to(int cap) {
  std::vector<SuperPoly> v;
  for (int a = 0; a <= cap; ++a) {
    v.push_back(SuperPoly::x_pow(a));
    v.push_back(SuperPoly::th_x_pow(a));
  }
  return v;
}

}  // namespace

bool check_cocycle2(const Cochain2& c, int cap, std::string* report) {
  const auto args = monomials_up_to(cap);
  for (const SuperPoly& G : args)
    for (const SuperPoly& H : args)
      for (const SuperPoly& K : args)
        for (const SuperPoly& phi : args) {
          SuperPoly v = delta2_eval(c, G, H, K, phi);
          if (!v.is_zero()) {
            if (report) {
              std::ostringstream os;
              os << "not closed at G = " << superpoly_str(G)
                 << ", H = " << superpoly_str(H) << ", K = " << superpoly_str(K)
                 << ", phi = " << superpoly_str(phi)
                 << ": value " << superpoly_str(v);
              *report = os.str();
            }
            return false;
          }
        }
  return true;
}

bool check_antisymmetry2(const Cochain2& c, int cap) {
  const auto args = monomials_up_to(cap);
  for (const SuperPoly& G : args)
    for (const SuperPoly& H : args)
      for (const SuperPoly& phi : args) {
        SuperPoly v = c.op.apply(G, H, phi);
        SuperPoly w = c.op.apply(H, G, phi);
        if (koszul(G.parity(), H.parity()) < 0) w = -w;
        if (!(v + w).is_zero()) return false;
      }
  return true;
}

Cochain2 cup(const Cochain1& g1, const Cochain1& g2) {
  assert(g1.src == g2.dst());
  const Parity p2 = g2.parity();
  const BilinOp a = g1.op, b = g2.op;
  TriEval E = [a, b, p2](const SuperPoly& G, const SuperPoly& H,
                         const SuperPoly& phi) {
    const Parity pG = G.parity(), pH = H.parity();
    SuperPoly t1 = a.apply(G, b.apply(H, phi));
    if (koszul(pG, p2) < 0) t1 = -t1;
    SuperPoly t2 = a.apply(H, b.apply(G, phi));
    if (koszul(pH, pG + p2) < 0) t2 = -t2;
    return t1 - t2;
  };
  return {reconstruct_trilinear(a.order + b.order, E), g2.src};
}

std::vector<Cochain0> cochain0_basis(const Weight& src, int two_shift) {
  assert(two_shift >= 0);
  std::vector<Cochain0> v;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    LinOp op;
    op.order = two_shift;
    op.set(p, RatFunc(1L));
    v.push_back({op, src});
  }
  return v;
}

std::vector<Cochain1> cochain1_basis(const Weight& src, int two_shift) {
  std::vector<Cochain1> v;
  for (const BKey& k : bilinear_keys(two_shift + 2)) {
    BilinOp op;
    op.order = two_shift + 2;
    op.set(k.i, k.j, k.p1, k.p2, RatFunc(1L));
    v.push_back({op, src});
  }
  return v;
}

namespace {

// Shared delta1 images of the canonical cochain basis, keyed by weight+shift.
std::mutex d1_mx;
std::map<std::pair<Weight, int>, std::shared_ptr<const std::vector<Cochain2>>>
    d1_cache;

std::shared_ptr<const std::vector<Cochain2>> delta1_images(const Weight& src,
                                                           int two_shift) {
  const std::pair<Weight, int> key{src, two_shift};
  {
    std::lock_guard<std::mutex> g(d1_mx);
    auto it = d1_cache.find(key);
    if (it != d1_cache.end()) return it->second;
  }
  auto imgs = std::make_shared<std::vector<Cochain2>>();
  for (const Cochain1& e : cochain1_basis(src, two_shift))
    imgs->push_back(delta1(e));
  std::lock_guard<std::mutex> g(d1_mx);
  auto [it, fresh] = d1_cache.emplace(key, imgs);
  (void)fresh;
  return it->second;
}

// Field adapters for the elimination routines.
struct QlamOps {
  using V = RatFunc;
  std::set<LamPoly>* loci = nullptr;

  bool is_zero(const V& v) const { return v.is_zero(); }
  V zero() const { return RatFunc(); }
  V from_ratfunc(const RatFunc& r) const { return r; }
  RatFunc to_ratfunc(const V& v) const { return v; }
  V sub_mul(const V& a, const V& c, const V& b) const { return a - c * b; }
  V mul(const V& a, const V& b) const { return a * b; }
  V inv(const V& v) {
    if (loci) {
      for (const LamPoly& f : distinct_irreducible_factors(v.num))
        if (f.degree() >= 1) loci->insert(f);
      for (const LamPoly& f : distinct_irreducible_factors(v.den))
        if (f.degree() >= 1) loci->insert(f);
    }
    return RatFunc(1L) / v;
  }
  void note_value(const V& v) {
    if (!loci) return;
    for (const LamPoly& f : distinct_irreducible_factors(v.den))
      if (f.degree() >= 1) loci->insert(f);
  }
};

struct ModOps {
  using V = LamPoly;
  const ResidueField* rf = nullptr;

  bool is_zero(const V& v) const { return v.is_zero(); }
  V zero() const { return LamPoly(); }
  V from_ratfunc(const RatFunc& r) const {
    auto v = rf->from_ratfunc(r);
    if (!v)
      throw std::domain_error("coefficient " + ratfunc_str(r) +
                              " has a pole on the locus " +
                              poly_str(rf->modulus()));
    return *v;
  }
  RatFunc to_ratfunc(const V& v) const { return RatFunc(v); }
  V sub_mul(const V& a, const V& c, const V& b) const {
    return rf->sub(a, rf->mul(c, b));
  }
  V mul(const V& a, const V& b) const { return rf->mul(a, b); }
  V inv(const V& v) { return rf->inv(v); }
  void note_value(const V&) {}
};

// Reduced row-echelon store with expression tracking: every row v satisfies
//   v = sum_k expr[k] * (k-th inserted generator).
template <class F>
struct Echelon {
  F ops;
  int dim = 0;
  int nexp = 0;
  struct Row {
    std::vector<typename F::V> v, expr;
    int lead = -1;
  };
  std::vector<Row> rows;
  std::vector<typename F::V> last_dependency;

  void reduce(std::vector<typename F::V>& v,
              std::vector<typename F::V>& expr) const {
    for (const auto& r : rows) {
      const auto c = v[r.lead];
      if (ops.is_zero(c)) continue;
      for (int t = r.lead; t < dim; ++t) v[t] = ops.sub_mul(v[t], c, r.v[t]);
      for (int t = 0; t < nexp; ++t)
        expr[t] = ops.sub_mul(expr[t], c, r.expr[t]);
    }
  }

  bool insert(std::vector<typename F::V> v, std::vector<typename F::V> expr) {
    reduce(v, expr);
    int lead = -1;
    for (int t = 0; t < dim; ++t)
      if (!ops.is_zero(v[t])) {
        lead = t;
        break;
      }
    if (lead < 0) {
      last_dependency = std::move(expr);
      return false;
    }
    const auto s = ops.inv(v[lead]);
    for (int t = lead; t < dim; ++t) v[t] = ops.mul(v[t], s);
    for (int t = 0; t < nexp; ++t) expr[t] = ops.mul(expr[t], s);
    for (auto& r : rows) {
      const auto c = r.v[lead];
      if (ops.is_zero(c)) continue;
      for (int t = lead; t < dim; ++t) r.v[t] = ops.sub_mul(r.v[t], c, v[t]);
      for (int t = 0; t < nexp; ++t)
        r.expr[t] = ops.sub_mul(r.expr[t], c, expr[t]);
    }
    Row row{std::move(v), std::move(expr), lead};
    auto pos = std::lower_bound(
        rows.begin(), rows.end(), row,
        [](const Row& a, const Row& b) { return a.lead < b.lead; });
    rows.insert(pos, std::move(row));
    return true;
  }
};

template <class F, class Key>
std::vector<typename F::V> to_vec(const F& ops,
                                  const std::map<Key, RatFunc>& terms,
                                  const std::map<Key, int>& index, int dim) {
  std::vector<typename F::V> v(dim, ops.zero());
  for (const auto& [k, c] : terms) {
    auto it = index.find(k);
    assert(it != index.end());
    v[it->second] = ops.from_ratfunc(c);
  }
  return v;
}

template <class Key>
std::map<Key, int> frame_index(const std::vector<Key>& keys) {
  std::map<Key, int> m;
  for (size_t t = 0; t < keys.size(); ++t) m.emplace(keys[t], int(t));
  return m;
}

template <class F>
Cochain1 cochain1_from_coords(const F& ops,
                              const std::vector<typename F::V>& coords,
                              const std::vector<BKey>& keys, int order,
                              const Weight& src, bool negate) {
  BilinOp op;
  op.order = order;
  for (size_t t = 0; t < keys.size(); ++t) {
    if (ops.is_zero(coords[t])) continue;
    RatFunc c = ops.to_ratfunc(coords[t]);
    if (negate) c = -c;
    op.set(keys[t].i, keys[t].j, keys[t].p1, keys[t].p2, c);
  }
  return {op, src};
}

// First monomial triple where a nonzero trilinear operator evaluates to a
// value that is nonzero (in the residue field when one is given).
std::optional<FailingTriple> find_failing_triple(const TriOp& R,
                                                 const ResidueField* rf) {
  const int cap = R.order / 2 + 2;
  const auto args = monomials_up_to(cap);
  for (const SuperPoly& G : args)
    for (const SuperPoly& H : args)
      for (const SuperPoly& phi : args) {
        SuperPoly v = R.apply(G, H, phi);
        if (v.is_zero()) continue;
        if (rf) {
          bool nz = false;
          for (const XPoly* part : {&v.ev, &v.od})
            for (const RatFunc& c : part->c)
              if (!c.is_zero() && !rf->from_ratfunc(c).value_or(LamPoly(1L)).is_zero())
                nz = true;
          if (!nz) continue;
        }
        return FailingTriple{G, H, phi, v};
      }
  return std::nullopt;
}

template <class F>
CoboundaryResult solve_coboundary_impl(F ops, const Cochain2& B) {
  CoboundaryResult out;
  const int order1 = B.op.order - 2;
  const auto basis_keys = bilinear_keys(order1);
  const auto images = delta1_images(B.src, B.two_shift());
  const auto frame = trilinear_keys(B.op.order);
  const auto index = frame_index(frame);
  const int dim = int(frame.size());
  const int n = int(basis_keys.size());
  assert(int(images->size()) == n);

  // Augmented rows: one per trilinear key, columns are the basis coboundaries.
  std::vector<std::vector<typename F::V>> cols;
  cols.reserve(n);
  for (const Cochain2& img : *images)
    cols.push_back(to_vec(ops, img.op.terms, index, dim));
  std::vector<typename F::V> rhs = to_vec(ops, B.op.terms, index, dim);

  std::vector<std::vector<typename F::V>> rows(
      dim, std::vector<typename F::V>(n + 1, ops.zero()));
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < n; ++c) rows[r][c] = cols[c][r];
    rows[r][n] = rhs[r];
  }

  std::vector<int> pivot_row_of_col(n, -1);
  int rank = 0;
  for (int c = 0; c < n && rank < dim; ++c) {
    int pr = -1;
    for (int r = rank; r < dim; ++r)
      if (!ops.is_zero(rows[r][c])) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(rows[rank], rows[pr]);
    const auto s = ops.inv(rows[rank][c]);
    for (int t = c; t <= n; ++t) rows[rank][t] = ops.mul(rows[rank][t], s);
    for (int r = 0; r < dim; ++r) {
      if (r == rank) continue;
      const auto f = rows[r][c];
      if (ops.is_zero(f)) continue;
      for (int t = c; t <= n; ++t)
        rows[r][t] = ops.sub_mul(rows[r][t], f, rows[rank][t]);
    }
    pivot_row_of_col[c] = rank;
    ++rank;
  }

  bool consistent = true;
  for (int r = rank; r < dim; ++r)
    if (!ops.is_zero(rows[r][n])) consistent = false;

  std::vector<typename F::V> x(n, ops.zero());
  for (int c = 0; c < n; ++c)
    if (pivot_row_of_col[c] >= 0) x[c] = rows[pivot_row_of_col[c]][n];
  for (const auto& xc : x) ops.note_value(xc);

  out.witness = cochain1_from_coords(ops, x, basis_keys, order1, B.src, false);
  out.trivial = consistent;
  return out;
}

template <class F>
CoboundaryResult class_decompose_impl(F ops, const Cochain2& B) {
  CoboundaryResult out;
  const int order1 = B.op.order - 2;
  const auto basis_keys = bilinear_keys(order1);
  const auto images = delta1_images(B.src, B.two_shift());
  const auto frame = trilinear_keys(B.op.order);
  const auto index = frame_index(frame);
  const int dim = int(frame.size());
  const int n = int(basis_keys.size());

  Echelon<F> ech;
  ech.ops = ops;
  ech.dim = dim;
  ech.nexp = n;
  for (int k = 0; k < n; ++k) {
    std::vector<typename F::V> expr(n, ops.zero());
    expr[k] = ops.from_ratfunc(RatFunc(1L));
    ech.insert(to_vec(ops, (*images)[k].op.terms, index, dim),
               std::move(expr));
  }

  std::vector<typename F::V> v = to_vec(ops, B.op.terms, index, dim);
  std::vector<typename F::V> expr(n, ops.zero());
  ech.reduce(v, expr);

  bool zero = true;
  for (int t = 0; t < dim; ++t)
    if (!ops.is_zero(v[t])) {
      zero = false;
      out.residue.push_back(ops.to_ratfunc(v[t]));
    }
  out.trivial = zero;
  // v = B + sum expr[k] img_k, so the witness combination is -expr.
  for (const auto& e : expr) ops.note_value(e);
  out.witness = cochain1_from_coords(ops, expr, basis_keys, order1, B.src, true);
  return out;
}

void finish_result(CoboundaryResult& out, const Cochain2& B,
                   const std::set<LamPoly>& loci, const ResidueField* rf) {
  for (const LamPoly& f : loci) out.loci.push_back(f);
  TriOp R = B.op;
  R -= delta1(out.witness).op;
  if (rf) {
    TriOp Rred;
    Rred.order = R.order;
    for (const auto& [k, c] : R.terms) {
      auto red = rf->from_ratfunc(c);
      if (!red)
        throw std::domain_error("residual coefficient has a pole on the locus");
      if (!red->is_zero()) Rred.set(k, RatFunc(*red));
    }
    R = Rred;
  }
  if (out.trivial) {
    if (!R.is_zero())
      throw std::logic_error("claimed witness fails exact recheck");
    out.residue.clear();
    out.counterexample.reset();
  } else {
    out.counterexample = find_failing_triple(R, rf);
    if (!out.counterexample)
      throw std::logic_error("nontrivial residual evaluated to zero everywhere");
  }
  std::ostringstream os;
  if (rf) os << "over Q[lam]/(" << poly_str(rf->modulus()) << "): ";
  if (out.trivial) {
    os << "coboundary";
    if (!out.loci.empty()) {
      os << " away from";
      for (const LamPoly& f : out.loci) os << " (" << poly_str(f) << ")";
    }
  } else {
    os << "not a coboundary: residual nonzero, e.g. at G = "
       << superpoly_str(out.counterexample->G) << ", H = "
       << superpoly_str(out.counterexample->H) << ", phi = "
       << superpoly_str(out.counterexample->phi);
  }
  out.summary = os.str();
}

}  // namespace

CoboundaryResult solve_coboundary(const Cochain2& B, const LamPoly* modulus) {
  if (modulus) {
    ResidueField rf(*modulus);
    ModOps ops{&rf};
    CoboundaryResult out = solve_coboundary_impl(ops, B);
    finish_result(out, B, {}, &rf);
    return out;
  }
  std::set<LamPoly> loci;
  QlamOps ops{&loci};
  CoboundaryResult out = solve_coboundary_impl(ops, B);
  finish_result(out, B, loci, nullptr);
  return out;
}

CoboundaryResult class_decompose(const Cochain2& B, const LamPoly* modulus) {
  if (modulus) {
    ResidueField rf(*modulus);
    ModOps ops{&rf};
    CoboundaryResult out = class_decompose_impl(ops, B);
    finish_result(out, B, {}, &rf);
    return out;
  }
  std::set<LamPoly> loci;
  QlamOps ops{&loci};
  CoboundaryResult out = class_decompose_impl(ops, B);
  finish_result(out, B, loci, nullptr);
  return out;
}

namespace {

template <class F>
H1Analysis h1_analysis_impl(F ops, const Weight& src, int two_shift) {
  H1Analysis out;
  const int order1 = two_shift + 2;
  const auto basis_keys = bilinear_keys(order1);
  const auto images = delta1_images(src, two_shift);
  const auto frame2 = trilinear_keys(order1 + 2);
  const auto index2 = frame_index(frame2);
  const int dim2 = int(frame2.size());
  const int n = int(basis_keys.size());

  // Kernel of delta1: dependencies among the image vectors.
  Echelon<F> img_ech;
  img_ech.ops = ops;
  img_ech.dim = dim2;
  img_ech.nexp = n;
  std::vector<std::vector<typename F::V>> kernel;
  for (int k = 0; k < n; ++k) {
    std::vector<typename F::V> expr(n, ops.zero());
    expr[k] = ops.from_ratfunc(RatFunc(1L));
    if (!img_ech.insert(to_vec(ops, (*images)[k].op.terms, index2, dim2),
                        std::move(expr)))
      kernel.push_back(img_ech.last_dependency);
  }
  for (const auto& z : kernel)
    out.cocycles.push_back(
        cochain1_from_coords(ops, z, basis_keys, order1, src, false));

  // Image of delta0 inside the same coordinate frame.
  const auto index1 = frame_index(basis_keys);
  Echelon<F> cob_ech;
  cob_ech.ops = ops;
  cob_ech.dim = n;
  cob_ech.nexp = 0;
  for (const Cochain0& A : cochain0_basis(src, two_shift)) {
    Cochain1 d = delta0(A);
    if (d.op.is_zero()) continue;
    std::vector<typename F::V> v = to_vec(ops, d.op.terms, index1, n);
    std::vector<typename F::V> none;
    if (cob_ech.insert(std::move(v), std::move(none)))
      out.coboundaries.push_back(d);
  }

  // Classes: reduce each kernel vector modulo the coboundary echelon, keep
  // the independent remainders as representatives.
  Echelon<F> cls_ech;
  cls_ech.ops = ops;
  cls_ech.dim = n;
  cls_ech.nexp = 0;
  for (const auto& r : cob_ech.rows) {
    std::vector<typename F::V> none;
    cls_ech.insert(r.v, none);
  }
  for (const auto& z : kernel) {
    std::vector<typename F::V> v = z;
    std::vector<typename F::V> none;
    cls_ech.reduce(v, none);
    bool nz = false;
    for (const auto& c : v)
      if (!ops.is_zero(c)) nz = true;
    if (!nz) continue;
    out.classes.push_back(
        cochain1_from_coords(ops, v, basis_keys, order1, src, false));
    cls_ech.insert(std::move(v), std::move(none));
  }
  return out;
}

}  // namespace

H1Analysis h1_analysis(const Weight& src, int two_shift,
                       const LamPoly* modulus) {
  if (modulus) {
    ResidueField rf(*modulus);
    ModOps ops{&rf};
    return h1_analysis_impl(ops, src, two_shift);
  }
  std::set<LamPoly> loci;
  QlamOps ops{&loci};
  H1Analysis out = h1_analysis_impl(ops, src, two_shift);
  for (const LamPoly& f : loci) out.loci.push_back(f);
  return out;
}

namespace {

template <class F>
struct Delta0Solve {
  bool exact = false;
  Cochain0 witness;
  std::vector<typename F::V> remainder;  // of g against the delta0 image
};

template <class F>
Delta0Solve<F> express_as_delta0(F ops, const Cochain1& g) {
  const auto basis_keys = bilinear_keys(g.op.order);
  const auto index = frame_index(basis_keys);
  const int dim = int(basis_keys.size());
  Echelon<F> ech;
  ech.ops = ops;
  ech.dim = dim;
  const auto c0 = cochain0_basis(g.src, g.two_shift());
  ech.nexp = int(c0.size());
  std::vector<Cochain1> imgs;
  for (size_t k = 0; k < c0.size(); ++k) {
    imgs.push_back(delta0(c0[k]));
    std::vector<typename F::V> expr(c0.size(), ops.zero());
    expr[k] = ops.from_ratfunc(RatFunc(1L));
    ech.insert(to_vec(ops, imgs.back().op.terms, index, dim), std::move(expr));
  }
  Delta0Solve<F> out;
  out.witness = Cochain0{{}, g.src};
  std::vector<typename F::V> v = to_vec(ops, g.op.terms, index, dim);
  std::vector<typename F::V> expr(c0.size(), ops.zero());
  ech.reduce(v, expr);
  out.remainder = v;
  for (const auto& c : v)
    if (!ops.is_zero(c)) return out;
  out.exact = true;
  out.witness.op.order = g.two_shift();
  for (size_t k = 0; k < c0.size(); ++k) {
    if (ops.is_zero(expr[k])) continue;
    for (const auto& [lk, lc] : c0[k].op.terms)
      out.witness.op.set(lk.p, -ops.to_ratfunc(expr[k]) * lc);
  }
  return out;
}

}  // namespace

namespace {

NontrivialityReport verify_nontrivial_impl(const Cochain1& g,
                                           const LamPoly* modulus,
                                           const Cochain2* dg_hint) {
  NontrivialityReport out;
  std::optional<ResidueField> rf;
  if (modulus) rf.emplace(*modulus);

  Cochain2 dg = dg_hint ? *dg_hint : delta1(g);
  if (!rf) {
    out.cocycle = dg.op.is_zero();
  } else {
    out.cocycle = true;
    for (const auto& [k, c] : dg.op.terms) {
      auto red = rf->from_ratfunc(c);
      if (!red || !red->is_zero()) out.cocycle = false;
    }
  }
  if (!out.cocycle) {
    out.detail = "not a cocycle: delta1 has " +
                 std::to_string(dg.op.terms.size()) + " surviving terms";
    return out;
  }

  std::set<LamPoly> loci;
  bool trivial;
  std::vector<RatFunc> remainder;
  if (rf) {
    ModOps ops{&*rf};
    trivial = express_as_delta0(ops, g).exact;
  } else {
    QlamOps ops{&loci};
    auto sol = express_as_delta0(ops, g);
    trivial = sol.exact;
    remainder = std::move(sol.remainder);
  }
  out.trivial = trivial;

  std::ostringstream os;
  if (rf) os << "over Q[lam]/(" << poly_str(rf->modulus()) << "): ";
  os << "cocycle, " << (trivial ? "a coboundary" : "nontrivial");

  if (!rf && !trivial) {
    // A class that is nontrivial over Q(lam) can still degenerate at special
    // weights.  Candidates are every factor the elimination divided by plus
    // every factor of the leftover coordinates; each is retested in the
    // residue field and kept only if the class really degenerates there.
    std::set<LamPoly> cand = loci;
    for (const RatFunc& c : remainder)
      if (!c.is_zero())
        for (const LamPoly& f : distinct_irreducible_factors(c.num))
          if (f.degree() >= 1) cand.insert(f);
    for (const LamPoly& f : cand) {
      bool keep = true;
      try {
        NontrivialityReport sub = verify_nontrivial_impl(g, &f, &dg);
        keep = !(sub.cocycle && !sub.trivial);
      } catch (const std::domain_error&) {
        keep = true;
      }
      if (keep) out.loci.push_back(f);
    }
    if (!out.loci.empty()) {
      os << "; degenerates at";
      for (const LamPoly& f : out.loci) os << " (" << poly_str(f) << ")";
    }
  } else {
    for (const LamPoly& f : loci) out.loci.push_back(f);
    if (!out.loci.empty()) {
      os << "; elimination divided by";
      for (const LamPoly& f : out.loci) os << " (" << poly_str(f) << ")";
    }
  }
  out.detail = os.str();
  return out;
}

}  // namespace

NontrivialityReport verify_nontrivial_cocycle(const Cochain1& g,
                                              const LamPoly* modulus) {
  return verify_nontrivial_impl(g, modulus, nullptr);
}

namespace {

template <class F>
bool independent_impl(F ops, const std::vector<Cochain1>& gs) {
  if (gs.empty()) return true;
  const Weight src = gs[0].src;
  const int order = gs[0].op.order;
  const auto keys = bilinear_keys(order);
  const auto index = frame_index(keys);
  const int dim = int(keys.size());
  Echelon<F> ech;
  ech.ops = ops;
  ech.dim = dim;
  ech.nexp = 0;
  for (const Cochain0& A : cochain0_basis(src, order - 2)) {
    std::vector<typename F::V> none;
    ech.insert(to_vec(ops, delta0(A).op.terms, index, dim), std::move(none));
  }
  for (const Cochain1& g : gs) {
    assert(g.src == src && g.op.order == order);
    std::vector<typename F::V> none;
    if (!ech.insert(to_vec(ops, g.op.terms, index, dim), std::move(none)))
      return false;
  }
  return true;
}

}  // namespace

bool independent_mod_coboundaries(const std::vector<Cochain1>& gs,
                                  const LamPoly* modulus) {
  if (modulus) {
    ResidueField rf(*modulus);
    ModOps ops{&rf};
    return independent_impl(ops, gs);
  }
  QlamOps ops;
  return independent_impl(ops, gs);
}

}  // namespace superdeform
