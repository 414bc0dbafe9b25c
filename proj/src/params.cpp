#include "superdeform/params.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

namespace superdeform {

namespace {

bool allowed_shift(int tw) {
  return tw == 0 || tw == 1 || tw == 3 || tw == 4 || tw == 5 || tw == 6 || tw == 8;
}

}  // namespace

ParamName ParamName::make(const Weight& src, const Weight& dst, Variant variant) {
  ParamName t;
  t.src = src;
  t.dst = dst;
  t.variant = variant;
  int tw = twice_of(dst - src);
  assert(allowed_shift(tw));
  t.parity = parity_of_order(tw);
  return t;
}

bool ParamName::operator<(const ParamName& t) const {
  if (src != t.src) return src < t.src;
  if (dst != t.dst) return dst < t.dst;
  return static_cast<int>(variant) < static_cast<int>(t.variant);
}

std::string param_str(const ParamName& t) {
  std::ostringstream os;
  os << (t.variant == Variant::Tilde ? "tt[" : "t[");
  os << weight_str(t.src) << "->" << weight_str(t.dst) << "]";
  return os.str();
}

int normalize_mono(ParamMono& names) {
  int sign = 1;
  for (size_t i = 1; i < names.size(); ++i) {
    size_t j = i;
    while (j > 0 && names[j] < names[j - 1]) {
      if (names[j].odd() && names[j - 1].odd()) sign = -sign;
      std::swap(names[j], names[j - 1]);
      --j;
    }
  }
  for (size_t i = 1; i < names.size(); ++i)
    if (names[i].odd() && names[i] == names[i - 1]) return 0;
  return sign;
}

ParamPoly ParamPoly::scalar(const RatFunc& c) {
  ParamPoly p;
  if (!c.is_zero()) p.terms.emplace(ParamMono{}, c);
  return p;
}

ParamPoly ParamPoly::var(const ParamName& t) {
  ParamPoly p;
  p.terms.emplace(ParamMono{t}, RatFunc(1));
  return p;
}

int ParamPoly::degree() const {
  if (terms.empty()) return -1;
  return static_cast<int>(terms.rbegin()->first.size());
}

RatFunc ParamPoly::coeff(const ParamMono& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? RatFunc() : it->second;
}

void ParamPoly::add_term(ParamMono names, const RatFunc& c) {
  if (c.is_zero()) return;
  int sign = normalize_mono(names);
  if (sign == 0) return;
  RatFunc v = sign == 1 ? c : -c;
  auto [it, fresh] = terms.emplace(std::move(names), v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) terms.erase(it);
  }
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms) add_term(m, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms) add_term(m, -c);
  return *this;
}

ParamPoly operator*(const RatFunc& s, ParamPoly a) {
  if (s.is_zero()) return ParamPoly{};
  for (auto& [m, c] : a.terms) c *= s;
  return a;
}

ParamPoly param_mul(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      ParamMono m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add_term(std::move(m), ca * cb);
    }
  return out;
}

std::string mono_str(const ParamMono& m) {
  std::ostringstream os;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) os << "*";
    os << param_str(m[i]);
  }
  return os.str();
}

namespace {

std::string term_str(const ParamMono& m, const RatFunc& c) {
  if (m.empty()) {
    std::string s = ratfunc_str(c);
    if (!c.is_constant() && c.is_polynomial()) return "(" + s + ")";
    return s;
  }
  if (c == RatFunc(1)) return mono_str(m);
  if (c == RatFunc(-1)) return "-" + mono_str(m);
  if (c.is_constant()) return rat_str(c.as_rational()) + "*" + mono_str(m);
  return "(" + ratfunc_str(c) + ")*" + mono_str(m);
}

}  // namespace

std::string param_poly_str(const ParamPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    std::string t = term_str(it->first, it->second);
    if (first) {
      os << t;
      first = false;
    } else if (!t.empty() && t[0] == '-') {
      os << " - " << t.substr(1);
    } else {
      os << " + " << t;
    }
  }
  return os.str();
}

namespace {

// Multiset inclusion of sorted vectors.
bool mono_divides(const ParamMono& d, const ParamMono& m) {
  size_t i = 0;
  for (const ParamName& t : d) {
    while (i < m.size() && m[i] < t) ++i;
    if (i == m.size() || !(m[i] == t)) return false;
    ++i;
  }
  return true;
}

ParamMono mono_quotient(const ParamMono& m, const ParamMono& d) {
  ParamMono q;
  size_t i = 0;
  for (const ParamName& t : m) {
    if (i < d.size() && t == d[i]) {
      ++i;
      continue;
    }
    q.push_back(t);
  }
  assert(i == d.size());
  return q;
}

}  // namespace

ParamPoly reduce_mod_ideal(const ParamPoly& p, const RelationIdeal& ideal) {
  struct Rule {
    ParamMono lead;
    const ParamPoly* gen;
  };
  std::vector<Rule> rules;
  for (const Relation& r : ideal.generators) {
    if (r.poly.is_zero()) continue;
    const ParamMono& lead = r.poly.terms.rbegin()->first;
    if (lead.empty()) return ParamPoly{};  // a unit generates everything
    rules.push_back({lead, &r.poly});
  }

  ParamPoly out = p;
  for (;;) {
    ParamMono target;
    RatFunc c;
    const Rule* hit = nullptr;
    for (auto it = out.terms.rbegin(); it != out.terms.rend() && !hit; ++it)
      for (const Rule& rule : rules)
        if (mono_divides(rule.lead, it->first)) {
          target = it->first;
          c = it->second;
          hit = &rule;
          break;
        }
    if (!hit) return out;
    ParamPoly cofactor;
    cofactor.add_term(mono_quotient(target, hit->lead), RatFunc(1));
    ParamPoly s = param_mul(cofactor, *hit->gen);
    RatFunc cm = s.coeff(target);
    assert(!cm.is_zero());
    out -= (c / cm) * s;
  }
}

}  // namespace superdeform
