#pragma once
// Contact vector fields on the superline, presented through their generating
// functions: v_F corresponds to the homogeneous superfunction F, and
//   {F, G} = F G' - F' G + (1/2) (-1)^{p(F)+1} etabar(F) etabar(G)
// generates the bracket [v_F, v_G] = v_{F,G}.

#include <string>
#include <vector>

#include "superdeform/superspace.hpp"

namespace superdeform {

struct ContactField {
  SuperPoly f;  // homogeneous generating function

  explicit ContactField(SuperPoly g) : f(std::move(g)) { assert(f.is_homogeneous()); }
  Parity parity() const { return f.parity(); }
};

SuperPoly contact_bracket(const SuperPoly& F, const SuperPoly& G);
ContactField bracket(const ContactField& a, const ContactField& b);

// Basis generators x^n and th*x^n for 0 <= n <= max_deg.
std::vector<ContactField> contact_basis(int max_deg);

// Generating functions {1, x, x^2, th, x*th} span the small subalgebra that
// fixes the projective structure; invariance under it pins the transvectants.
std::vector<ContactField> osp_basis();

bool check_super_antisymmetry(int cap, std::string* report = nullptr);
bool check_super_jacobi(int cap, std::string* report = nullptr);
bool check_osp_closure(std::string* report = nullptr);

}  // namespace superdeform
