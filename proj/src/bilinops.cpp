#include "superdeform/bilinops.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace superdeform {

namespace {

// Signature of one etabar power on an argument of parity p: the number of
// plain x-derivatives d and the output parity q.  Distinct (i, p) pairs can
// produce the same superfunction once the th factor commutes into place, so
// operators are canonicalized through signatures: the th (odd output) is
// always drawn from the earliest factor that can supply it.
struct FactorSig {
  int d;
  int q;  // output parity: 1 when the factor output carries th
};

FactorSig factor_sig(int p, int i) {
  if (p == 0) return i % 2 == 0 ? FactorSig{i / 2, 0} : FactorSig{(i + 1) / 2, 1};
  return i % 2 == 0 ? FactorSig{i / 2, 1} : FactorSig{(i - 1) / 2, 0};
}

// Exponent realizing a signature; -1 when impossible (even argument, odd
// output, no derivative to give up).
int sig_exponent(int p, int d, int q) {
  if (p == 0) {
    if (q == 0) return 2 * d;
    return d >= 1 ? 2 * d - 1 : -1;
  }
  return q == 1 ? 2 * d : 2 * d + 1;
}

// Rewrites the exponent tuple so that any odd output comes from the earliest
// capable factor.  Returns false for inadmissible tuples (two or more th's).
bool canonical_exponents(const std::vector<int>& parities, std::vector<int>& exps) {
  int arity = static_cast<int>(parities.size());
  std::vector<FactorSig> sig(arity);
  int odd = 0;
  for (int m = 0; m < arity; ++m) {
    sig[m] = factor_sig(parities[m], exps[m]);
    odd += sig[m].q;
  }
  if (odd > 1) return false;
  if (odd == 1) {
    int u = -1;
    for (int m = 0; m < arity; ++m) {
      if (parities[m] == 1 || sig[m].d >= 1) {
        u = m;
        break;
      }
    }
    assert(u >= 0);
    for (int m = 0; m < arity; ++m) sig[m].q = (m == u) ? 1 : 0;
  }
  for (int m = 0; m < arity; ++m) {
    exps[m] = sig_exponent(parities[m], sig[m].d, sig[m].q);
    assert(exps[m] >= 0);
  }
  return true;
}

}  // namespace

BKey canonical_key(const BKey& k) {
  std::vector<int> exps{k.i, k.j};
  bool ok = canonical_exponents({int(k.p1), int(k.p2)}, exps);
  assert(ok);
  (void)ok;
  return BKey{exps[0], exps[1], k.p1, k.p2};
}

TKey canonical_key(const TKey& k) {
  std::vector<int> exps{k.i, k.j, k.l};
  bool ok = canonical_exponents({int(k.p1), int(k.p2), int(k.p3)}, exps);
  assert(ok);
  (void)ok;
  return TKey{exps[0], exps[1], exps[2], k.p1, k.p2, k.p3};
}

bool LinOp::is_zero() const {
  for (const auto& [k, c] : terms)
    if (!c.is_zero()) return false;
  return true;
}

void LinOp::set(Parity p, const RatFunc& c) {
  if (c.is_zero())
    terms.erase(LKey{order, p});
  else
    terms[LKey{order, p}] = c;
}

SuperPoly LinOp::apply(const SuperPoly& phi) const {
  assert(phi.is_homogeneous());
  auto it = terms.find(LKey{order, phi.parity()});
  if (it == terms.end()) return SuperPoly::zero();
  return it->second * phi.etabar_pow(order);
}

LinOp& LinOp::operator+=(const LinOp& o) {
  assert(order == o.order || o.is_zero() || is_zero());
  for (const auto& [k, c] : o.terms) {
    auto [it, fresh] = terms.emplace(k, c);
    if (!fresh) it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
  return *this;
}

LinOp operator*(const RatFunc& s, LinOp a) {
  if (s.is_zero()) {
    a.terms.clear();
    return a;
  }
  for (auto& [k, c] : a.terms) c *= s;
  return a;
}

bool operator==(const LinOp& a, const LinOp& b) {
  LinOp d = a;
  d += RatFunc(-1L) * b;
  return d.is_zero();
}

bool BilinOp::is_zero() const {
  for (const auto& [k, c] : terms)
    if (!c.is_zero()) return false;
  return true;
}

void BilinOp::set(int i, int j, Parity p1, Parity p2, const RatFunc& c) {
  assert(i + j == order);
  BKey raw{i, j, p1, p2};
  if (!admissible(raw)) return;  // identically zero term
  BKey k = canonical_key(raw);
  if (c.is_zero()) {
    terms.erase(k);
    return;
  }
  terms[k] = c;
}

void BilinOp::add_term(int i, int j, Parity p1, Parity p2, const RatFunc& c) {
  BKey raw{i, j, p1, p2};
  if (!admissible(raw) || c.is_zero()) return;
  BKey k = canonical_key(raw);
  auto [it, fresh] = terms.emplace(k, c);
  if (!fresh) it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

RatFunc BilinOp::coeff(const BKey& k) const {
  auto it = terms.find(k);
  return it == terms.end() ? RatFunc() : it->second;
}

SuperPoly BilinOp::apply(const SuperPoly& G, const SuperPoly& H) const {
  assert(G.is_homogeneous() && H.is_homogeneous());
  Parity p1 = G.parity(), p2 = H.parity();
  SuperPoly out;
  for (const auto& [k, c] : terms) {
    if (k.p1 != p1 || k.p2 != p2) continue;
    out += c * (G.etabar_pow(k.i) * H.etabar_pow(k.j));
  }
  return out;
}

BilinOp& BilinOp::operator+=(const BilinOp& o) {
  assert(order == o.order || o.is_zero() || is_zero());
  for (const auto& [k, c] : o.terms) {
    auto [it, fresh] = terms.emplace(k, c);
    if (!fresh) it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
  return *this;
}

BilinOp& BilinOp::operator-=(const BilinOp& o) {
  *this += RatFunc(-1L) * o;
  return *this;
}

BilinOp operator*(const RatFunc& s, BilinOp a) {
  if (s.is_zero()) {
    a.terms.clear();
    return a;
  }
  for (auto& [k, c] : a.terms) c *= s;
  return a;
}

bool operator==(const BilinOp& a, const BilinOp& b) {
  BilinOp d = a;
  d -= b;
  return d.is_zero();
}

void BilinOp::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero() || !admissible(it->first))
      it = terms.erase(it);
    else
      ++it;
  }
}

bool TriOp::is_zero() const {
  for (const auto& [k, c] : terms)
    if (!c.is_zero()) return false;
  return true;
}

void TriOp::set(const TKey& raw, const RatFunc& c) {
  assert(raw.i + raw.j + raw.l == order);
  if (!admissible(raw)) return;
  TKey k = canonical_key(raw);
  if (c.is_zero()) {
    terms.erase(k);
    return;
  }
  terms[k] = c;
}

void TriOp::add_term(const TKey& raw, const RatFunc& c) {
  if (!admissible(raw) || c.is_zero()) return;
  TKey k = canonical_key(raw);
  auto [it, fresh] = terms.emplace(k, c);
  if (!fresh) it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

SuperPoly TriOp::apply(const SuperPoly& G, const SuperPoly& H, const SuperPoly& phi) const {
  assert(G.is_homogeneous() && H.is_homogeneous() && phi.is_homogeneous());
  Parity p1 = G.parity(), p2 = H.parity(), p3 = phi.parity();
  SuperPoly out;
  for (const auto& [k, c] : terms) {
    if (k.p1 != p1 || k.p2 != p2 || k.p3 != p3) continue;
    out += c * (G.etabar_pow(k.i) * (H.etabar_pow(k.j) * phi.etabar_pow(k.l)));
  }
  return out;
}

TriOp& TriOp::operator+=(const TriOp& o) {
  assert(order == o.order || o.is_zero() || is_zero());
  for (const auto& [k, c] : o.terms) {
    auto [it, fresh] = terms.emplace(k, c);
    if (!fresh) it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
  return *this;
}

TriOp& TriOp::operator-=(const TriOp& o) {
  assert(order == o.order || o.is_zero() || is_zero());
  for (const auto& [k, c] : o.terms) {
    auto [it, fresh] = terms.emplace(k, -c);
    if (!fresh) {
      it->second -= c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  return *this;
}

TriOp operator*(const RatFunc& s, TriOp a) {
  if (s.is_zero()) {
    a.terms.clear();
    return a;
  }
  for (auto& [k, c] : a.terms) c *= s;
  return a;
}

bool operator==(const TriOp& a, const TriOp& b) {
  TriOp d = a;
  d += RatFunc(-1L) * b;
  return d.is_zero();
}

void TriOp::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero() || !admissible(it->first))
      it = terms.erase(it);
    else
      ++it;
  }
}

std::string bilinop_str(const BilinOp& op) {
  if (op.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : op.terms) {
    if (!first) os << " + ";
    os << "(" << ratfunc_str(c) << ")*eb" << k.i << "(" << (k.p1 == Parity::Odd ? "od" : "ev")
       << ")*eb" << k.j << "(" << (k.p2 == Parity::Odd ? "od" : "ev") << ")";
    first = false;
  }
  return os.str();
}

std::vector<BKey> bilinear_keys(int order) {
  std::set<BKey> s;
  for (int p1 = 0; p1 <= 1; ++p1)
    for (int p2 = 0; p2 <= 1; ++p2)
      for (int i = 0; i <= order; ++i) {
        BKey k{i, order - i, Parity(p1), Parity(p2)};
        if (admissible(k)) s.insert(canonical_key(k));
      }
  return {s.begin(), s.end()};
}

std::vector<TKey> trilinear_keys(int order) {
  std::set<TKey> s;
  for (int p1 = 0; p1 <= 1; ++p1)
    for (int p2 = 0; p2 <= 1; ++p2)
      for (int p3 = 0; p3 <= 1; ++p3)
        for (int i = 0; i <= order; ++i)
          for (int j = 0; i + j <= order; ++j) {
            TKey k{i, j, order - i - j, Parity(p1), Parity(p2), Parity(p3)};
            if (admissible(k)) s.insert(canonical_key(k));
          }
  return {s.begin(), s.end()};
}

namespace {

struct Slot {
  int xdeg;
  bool th;
  bool operator==(const Slot&) const = default;
};

// Checks that v is supported at the single position `s` (or is zero) and
// returns the coefficient there.
std::optional<RatFunc> coeff_at_only(const SuperPoly& v, const Slot& s) {
  RatFunc out;
  for (int d = 0; d <= v.ev.degree(); ++d) {
    RatFunc c = v.ev.coeff(d);
    if (c.is_zero()) continue;
    if (s.th || d != s.xdeg) return std::nullopt;
    out = c;
  }
  for (int d = 0; d <= v.od.degree(); ++d) {
    RatFunc c = v.od.coeff(d);
    if (c.is_zero()) continue;
    if (!s.th || d != s.xdeg) return std::nullopt;
    out = c;
  }
  return out;
}

// Reduced-row-echelon accumulator for systems with rational coefficient
// matrix and Q(lam)-valued right-hand sides.
class QSolver {
 public:
  explicit QSolver(int n) : n_(n) {}

  void insert(std::vector<Rational> row, RatFunc rhs, const std::string& tag) {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Rational& x = row[pivot_[r]];
      if (x == 0) continue;
      Rational f = x;  // pivot is 1
      for (int c = pivot_[r]; c < n_; ++c) row[c] -= f * rows_[r][c];
      rhs -= RatFunc(f) * rhs_[r];
    }
    int p = -1;
    for (int c = 0; c < n_; ++c)
      if (row[c] != 0) {
        p = c;
        break;
      }
    if (p < 0) {
      if (!rhs.is_zero())
        throw ReconstructError("inconsistent evaluation at " + tag);
      return;
    }
    Rational inv = 1 / row[p];
    for (int c = p; c < n_; ++c) row[c] *= inv;
    rhs = RatFunc(inv) * rhs;
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Rational& x = rows_[r][p];
      if (x == 0) continue;
      Rational f = x;
      for (int c = p; c < n_; ++c) rows_[r][c] -= f * row[c];
      rhs_[r] -= RatFunc(f) * rhs;
    }
    rows_.push_back(std::move(row));
    rhs_.push_back(std::move(rhs));
    pivot_.push_back(p);
  }

  bool full_rank() const { return static_cast<int>(rows_.size()) == n_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  std::vector<RatFunc> solution() const {
    assert(full_rank());
    std::vector<RatFunc> sol(n_);
    for (size_t r = 0; r < rows_.size(); ++r) sol[pivot_[r]] = rhs_[r];
    return sol;
  }

 private:
  int n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<RatFunc> rhs_;
  std::vector<int> pivot_;
};

using TupleEval = std::function<SuperPoly(const std::vector<SuperPoly>&)>;

// Shared reconstruction over a parity sector.  The independent unknowns are
// the tuples of per-argument derivative orders d (with the th presence forced
// by order and sector); each maps back to a canonical exponent tuple.  Every
// evaluation of a term lands in a single output position, with scalar
// coefficient prod_m (-1)^{d_m} (a_m)_{d_m}, independent of where the th
// sits, which is exactly why signatures and not raw exponents are the right
// coordinates.
std::map<std::vector<int>, RatFunc> reconstruct_sector(int arity, int order,
                                                       const std::vector<Parity>& sector,
                                                       const TupleEval& E) {
  int nodd = 0;
  for (Parity p : sector) nodd += (p == Parity::Odd) ? 1 : 0;
  const int diff = order - nodd;
  const bool hasth = ((diff % 2) + 2) % 2 == 1;
  const int dsum = hasth ? (diff + 1) / 2 : diff / 2;

  auto sector_zero_check = [&](const std::string& why) {
    std::vector<SuperPoly> args(arity);
    for (int d = 2; d <= 4; ++d) {
      for (int m = 0; m < arity; ++m) args[m] = SuperPoly::monomial(sector[m], d);
      if (!E(args).is_zero()) throw ReconstructError(why);
    }
  };

  if (dsum < 0) {
    sector_zero_check("evaluator nonzero on a sector with no admissible terms");
    return {};
  }

  // Derivative tuples with the given total.
  std::vector<std::vector<int>> dtuples;
  std::vector<int> cur(arity, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == arity - 1) {
      cur[pos] = left;
      dtuples.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, dsum);

  // Canonical exponent tuple per derivative tuple; drop the unrealizable ones
  // (a th demanded that no factor can supply).
  std::vector<std::vector<int>> keys;
  std::vector<std::vector<int>> dvecs;
  for (const auto& dv : dtuples) {
    std::vector<int> exps(arity);
    if (hasth) {
      int u = -1;
      for (int m = 0; m < arity; ++m) {
        if (sector[m] == Parity::Odd || dv[m] >= 1) {
          u = m;
          break;
        }
      }
      if (u < 0) continue;
      bool ok = true;
      for (int m = 0; m < arity; ++m) {
        exps[m] = sig_exponent(int(sector[m]), dv[m], m == u ? 1 : 0);
        if (exps[m] < 0) ok = false;
      }
      if (!ok) continue;
    } else {
      for (int m = 0; m < arity; ++m) exps[m] = sig_exponent(int(sector[m]), dv[m], 0);
    }
    int tot = 0;
    for (int e : exps) tot += e;
    assert(tot == order);
    keys.push_back(exps);
    dvecs.push_back(dv);
  }

  const int n = static_cast<int>(keys.size());
  if (n == 0) {
    sector_zero_check("evaluator nonzero on a sector with no admissible terms");
    return {};
  }

  const int amax = dsum + 1;
  // Falling factorials ff[a][d] = a(a-1)...(a-d+1).
  std::vector<std::vector<Rational>> ff(amax + 1, std::vector<Rational>(dsum + 1, Rational(1)));
  for (int a = 0; a <= amax; ++a)
    for (int d = 1; d <= dsum; ++d) ff[a][d] = ff[a][d - 1] * Rational(a - d + 1);

  // Grid tuples ordered by total degree so the echelon grows triangularly.
  std::vector<std::vector<int>> grid;
  std::vector<int> g(arity, 0);
  auto gen = [&](auto&& self, int pos) -> void {
    if (pos == arity) {
      grid.push_back(g);
      return;
    }
    for (int a = 0; a <= amax; ++a) {
      g[pos] = a;
      self(self, pos + 1);
    }
  };
  gen(gen, 0);
  std::stable_sort(grid.begin(), grid.end(), [](const auto& u, const auto& v) {
    int su = 0, sv = 0;
    for (int x : u) su += x;
    for (int x : v) sv += x;
    return su < sv;
  });

  QSolver solver(n);
  for (const auto& pt : grid) {
    std::vector<Rational> row(n, Rational(0));
    bool any = false;
    int xdeg = 0;
    for (int m = 0; m < arity; ++m) xdeg += pt[m];
    xdeg -= dsum;
    for (int u = 0; u < n; ++u) {
      Rational c(1);
      bool dead = false;
      int sgn = 0;
      for (int m = 0; m < arity; ++m) {
        int d = dvecs[u][m];
        if (pt[m] < d) {
          dead = true;
          break;
        }
        c *= ff[pt[m]][d];
        sgn += d;
      }
      if (dead) continue;
      row[u] = Rational(sign_pow(sgn)) * c;
      any = true;
    }

    std::vector<SuperPoly> args(arity);
    for (int m = 0; m < arity; ++m) args[m] = SuperPoly::monomial(sector[m], pt[m]);
    SuperPoly val = E(args);

    std::ostringstream tag;
    tag << "(";
    for (int m = 0; m < arity; ++m)
      tag << (m ? "," : "") << (sector[m] == Parity::Odd ? "th*" : "") << "x^" << pt[m];
    tag << ")";

    if (!any) {
      if (!val.is_zero())
        throw ReconstructError("evaluation not reachable by any admissible term at " + tag.str());
      continue;
    }
    Slot slot{xdeg, hasth};
    if (xdeg < 0) {
      if (!val.is_zero())
        throw ReconstructError("evaluation below the reachable degree at " + tag.str());
      continue;
    }
    auto rhs = coeff_at_only(val, slot);
    if (!rhs)
      throw ReconstructError("evaluation violates the homogeneity slot at " + tag.str());
    solver.insert(std::move(row), std::move(*rhs), tag.str());
  }
  if (!solver.full_rank()) {
    std::ostringstream os;
    os << "reconstruction grid left the system underdetermined (rank " << solver.rank()
       << " of " << n << ", order " << order << ", arity " << arity << ")";
    throw ReconstructError(os.str());
  }

  auto sol = solver.solution();
  std::map<std::vector<int>, RatFunc> out;
  for (int u = 0; u < n; ++u)
    if (!sol[u].is_zero()) out[keys[u]] = sol[u];
  return out;
}

}  // namespace

LinOp reconstruct_linear(int order, const LinEval& E) {
  LinOp op;
  op.order = order;
  for (int p = 0; p <= 1; ++p) {
    auto sec = reconstruct_sector(
        1, order, {Parity(p)}, [&](const std::vector<SuperPoly>& a) { return E(a[0]); });
    for (const auto& [k, c] : sec) op.set(Parity(p), c);
  }
  return op;
}

BilinOp reconstruct_bilinear(int order, const BilinEval& E) {
  BilinOp op;
  op.order = order;
  for (int p1 = 0; p1 <= 1; ++p1)
    for (int p2 = 0; p2 <= 1; ++p2) {
      auto sec = reconstruct_sector(2, order, {Parity(p1), Parity(p2)},
                                    [&](const std::vector<SuperPoly>& a) { return E(a[0], a[1]); });
      for (const auto& [k, c] : sec) op.set(k[0], k[1], Parity(p1), Parity(p2), c);
    }
  return op;
}

TriOp reconstruct_trilinear(int order, const TriEval& E) {
  TriOp op;
  op.order = order;
  for (int p1 = 0; p1 <= 1; ++p1)
    for (int p2 = 0; p2 <= 1; ++p2)
      for (int p3 = 0; p3 <= 1; ++p3) {
        auto sec = reconstruct_sector(
            3, order, {Parity(p1), Parity(p2), Parity(p3)},
            [&](const std::vector<SuperPoly>& a) { return E(a[0], a[1], a[2]); });
        for (const auto& [k, c] : sec)
          op.set(TKey{k[0], k[1], k[2], Parity(p1), Parity(p2), Parity(p3)}, c);
      }
  return op;
}

}  // namespace superdeform
