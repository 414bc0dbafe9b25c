#include "superdeform/contact.hpp"

#include <sstream>

namespace superdeform {

SuperPoly contact_bracket(const SuperPoly& F, const SuperPoly& G) {
  assert(F.is_homogeneous() && G.is_homogeneous());
  int s = (F.parity() == Parity::Even) ? -1 : 1;  // (-1)^{p(F)+1}
  return F * G.dx() - F.dx() * G + (RatFunc(rat(s, 2)) * (F.etabar() * G.etabar()));
}

ContactField bracket(const ContactField& a, const ContactField& b) {
  return ContactField(contact_bracket(a.f, b.f));
}

std::vector<ContactField> contact_basis(int max_deg) {
  std::vector<ContactField> out;
  for (int n = 0; n <= max_deg; ++n) out.emplace_back(SuperPoly::x_pow(n));
  for (int n = 0; n <= max_deg; ++n) out.emplace_back(SuperPoly::th_x_pow(n));
  return out;
}

std::vector<ContactField> osp_basis() {
  return {ContactField(SuperPoly::x_pow(0)), ContactField(SuperPoly::x_pow(1)),
          ContactField(SuperPoly::x_pow(2)), ContactField(SuperPoly::th_x_pow(0)),
          ContactField(SuperPoly::th_x_pow(1))};
}

bool check_super_antisymmetry(int cap, std::string* report) {
  for (const ContactField& a : contact_basis(cap)) {
    for (const ContactField& b : contact_basis(cap)) {
      int s = koszul(a.parity(), b.parity());
      SuperPoly lhs = contact_bracket(a.f, b.f);
      SuperPoly rhs = RatFunc(Rational(-s)) * contact_bracket(b.f, a.f);
      if (lhs != rhs) {
        if (report)
          *report = "antisymmetry fails at " + superpoly_str(a.f) + ", " + superpoly_str(b.f);
        return false;
      }
    }
  }
  return true;
}

bool check_super_jacobi(int cap, std::string* report) {
  auto basis = contact_basis(cap);
  for (const ContactField& a : basis) {
    for (const ContactField& b : basis) {
      for (const ContactField& c : basis) {
        int sa = koszul(a.parity(), c.parity());
        int sb = koszul(b.parity(), a.parity());
        int sc = koszul(c.parity(), b.parity());
        SuperPoly j = RatFunc(Rational(sa)) * contact_bracket(a.f, contact_bracket(b.f, c.f)) +
                      RatFunc(Rational(sb)) * contact_bracket(b.f, contact_bracket(c.f, a.f)) +
                      RatFunc(Rational(sc)) * contact_bracket(c.f, contact_bracket(a.f, b.f));
        if (!j.is_zero()) {
          if (report) {
            std::ostringstream os;
            os << "jacobi fails at " << superpoly_str(a.f) << ", " << superpoly_str(b.f)
               << ", " << superpoly_str(c.f) << ": " << superpoly_str(j);
            *report = os.str();
          }
          return false;
        }
      }
    }
  }
  return true;
}

bool check_osp_closure(std::string* report) {
  // Each bracket of the five generators must land back in their span; the
  // span is exactly {x-degree <= 2 even, x-degree <= 1 odd}.
  for (const ContactField& a : osp_basis()) {
    for (const ContactField& b : osp_basis()) {
      SuperPoly r = contact_bracket(a.f, b.f);
      if (r.ev.degree() > 2 || r.od.degree() > 1) {
        if (report)
          *report = "closure fails at " + superpoly_str(a.f) + ", " + superpoly_str(b.f) +
                    " -> " + superpoly_str(r);
        return false;
      }
    }
  }
  return true;
}

}  // namespace superdeform
