#pragma once
// Weighted densities: the module F_w of superfunctions of weight w, with the
// contact action
//   L^w_{v_F}(phi) = F phi' + (1/2)(-1)^{p(F)+1} etabar(F) etabar(phi) + w F' phi.
// Weights are affine expressions a*lam + b with a in {0,1} and half-integer b,
// so a single symbolic computation covers every generic weight; the underlying
// action accepts an arbitrary Q(lam) weight value.

#include <string>

#include "superdeform/contact.hpp"
#include "superdeform/superspace.hpp"

namespace superdeform {

struct Weight {
  int a = 0;        // coefficient of lam; restricted to {0, 1}
  Rational b = 0;   // half-integer offset

  Weight() = default;
  Weight(int a_, Rational b_) : a(a_), b(std::move(b_)) {
    assert(a == 0 || a == 1);
    assert(is_half_integer(b));
  }
  static Weight sym(Rational off = 0) { return Weight(1, std::move(off)); }
  static Weight fixed(Rational v) { return Weight(0, std::move(v)); }

  RatFunc value() const { return RatFunc(LamPoly::affine(Rational(a), b)); }
  bool is_symbolic() const { return a == 1; }
  Weight plus(const Rational& off) const { return Weight(a, b + off); }
  // Difference of two weights on the same lam-line, as a half-integer offset.
  friend Rational operator-(const Weight& u, const Weight& v) {
    assert(u.a == v.a);
    return u.b - v.b;
  }
  friend bool operator==(const Weight& u, const Weight& v) { return u.a == v.a && u.b == v.b; }
  friend bool operator!=(const Weight& u, const Weight& v) { return !(u == v); }
  bool operator<(const Weight& o) const { return a != o.a ? a < o.a : b < o.b; }
};

std::string weight_str(const Weight& w);

struct Density {
  SuperPoly f;
  Weight w;
};

// Core action with an explicit weight value (needed for composite weights such
// as sums arising in pairing invariance checks).
SuperPoly act_weight(const SuperPoly& F, const SuperPoly& phi, const RatFunc& w);

Density act(const ContactField& F, const Density& phi);

// Commutator-equals-bracket, for both parities of F and G up to degree cap.
bool check_representation(const RatFunc& w, int cap, std::string* report = nullptr);

// At weight -1 the action reproduces the contact bracket itself.
bool check_adjoint_is_weight_minus_one(int cap, std::string* report = nullptr);

}  // namespace superdeform
