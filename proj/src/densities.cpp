#include "superdeform/densities.hpp"

#include <sstream>

namespace superdeform {

std::string weight_str(const Weight& w) {
  if (w.a == 0) return rat_str(w.b);
  if (w.b == 0) return "lam";
  std::ostringstream os;
  os << "lam" << (w.b > 0 ? "+" : "-") << rat_str(abs(w.b));
  return os.str();
}

SuperPoly act_weight(const SuperPoly& F, const SuperPoly& phi, const RatFunc& w) {
  assert(F.is_homogeneous());
  int s = (F.parity() == Parity::Even) ? -1 : 1;  // (-1)^{p(F)+1}
  return F * phi.dx() + RatFunc(rat(s, 2)) * (F.etabar() * phi.etabar()) +
         w * (F.dx() * phi);
}

Density act(const ContactField& F, const Density& phi) {
  return Density{act_weight(F.f, phi.f, phi.w.value()), phi.w};
}

bool check_representation(const RatFunc& w, int cap, std::string* report) {
  auto basis = contact_basis(cap);
  for (const ContactField& A : basis) {
    for (const ContactField& B : basis) {
      int s = koszul(A.parity(), B.parity());
      for (int p = 0; p <= 1; ++p) {
        for (int n = 0; n <= cap; ++n) {
          SuperPoly phi = SuperPoly::monomial(Parity(p), n);
          SuperPoly lhs = act_weight(A.f, act_weight(B.f, phi, w), w) -
                          RatFunc(Rational(s)) * act_weight(B.f, act_weight(A.f, phi, w), w);
          SuperPoly rhs = act_weight(contact_bracket(A.f, B.f), phi, w);
          if (lhs != rhs) {
            if (report) {
              std::ostringstream os;
              os << "commutator mismatch at F=" << superpoly_str(A.f)
                 << " G=" << superpoly_str(B.f) << " phi=" << superpoly_str(phi);
              *report = os.str();
            }
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool check_adjoint_is_weight_minus_one(int cap, std::string* report) {
  RatFunc minus_one(-1L);
  auto basis = contact_basis(cap);
  for (const ContactField& A : basis) {
    for (const ContactField& B : basis) {
      if (act_weight(A.f, B.f, minus_one) != contact_bracket(A.f, B.f)) {
        if (report)
          *report = "adjoint mismatch at " + superpoly_str(A.f) + ", " + superpoly_str(B.f);
        return false;
      }
    }
  }
  return true;
}

}  // namespace superdeform
