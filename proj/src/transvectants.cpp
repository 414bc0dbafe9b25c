#include "superdeform/transvectants.hpp"

#include <sstream>
#include <stdexcept>

namespace superdeform {

Rational binom_int(int n, int m) {
  if (m < 0) return 0;
  Rational r = 1;
  for (int t = 0; t < m; ++t) r *= rat(n - t, t + 1);
  return r;
}

LamPoly binom_poly(const LamPoly& p, int m) {
  if (m < 0) return LamPoly(0L);
  LamPoly r(1L);
  Rational fact = 1;
  for (int t = 0; t < m; ++t) {
    r = r * (p - LamPoly(Rational(t)));
    fact *= (t + 1);
  }
  return rat(1, 1) / fact * r;
}

BilinOp transvectant(const Weight& alpha, const Weight& beta, int twok) {
  assert(twok >= 0);
  BilinOp op;
  op.order = twok;
  const bool half = (twok % 2) != 0;
  const int kfloor = twok / 2;    // [k]
  const int kmh = half ? kfloor : kfloor - 1;  // [k - 1/2]
  const LamPoly two_alpha = LamPoly::affine(Rational(2 * alpha.a), 2 * alpha.b);
  const LamPoly two_beta = LamPoly::affine(Rational(2 * beta.a), 2 * beta.b);

  for (int j = 0; j <= twok; ++j) {
    const int i = twok - j;
    const int jp1h = (j + 1) / 2;
    const int jh = j / 2;
    const int jm1h = (j == 0) ? -1 : (j - 1) / 2;
    const int b1 = half ? jh : jp1h;
    const int b2 = half ? jp1h : jh;
    const Rational num1 = binom_int(kfloor, b1);
    const LamPoly num2 = binom_poly(two_alpha + LamPoly(Rational(kmh)), b2);
    const LamPoly den = binom_poly(two_beta + LamPoly(Rational(jm1h)), jp1h);
    if (den.is_zero()) {
      std::ostringstream os;
      os << "transvectant level " << half_str(twok) << " degenerates at beta = "
         << weight_str(beta) << " (vanishing denominator binomial at j = " << j
         << ")";
      throw std::domain_error(os.str());
    }
    const RatFunc base = RatFunc(num1 * num2, den);
    for (Parity p1 : {Parity::Even, Parity::Odd}) {
      const int e = jp1h + j * (i + (p1 == Parity::Odd ? 1 : 0));
      const RatFunc c = (e % 2 != 0) ? -base : base;
      for (Parity p2 : {Parity::Even, Parity::Odd}) op.add_term(i, j, p1, p2, c);
    }
  }
  op.prune();
  return op;
}

bool check_osp_invariance(const BilinOp& op, const Weight& alpha,
                          const Weight& beta, int cap, std::string* report) {
  const RatFunc wa = alpha.value();
  const RatFunc wb = beta.value();
  const RatFunc wout = wa + wb + RatFunc(half(op.order));
  const bool op_odd = (op.order % 2) != 0;

  std::vector<SuperPoly> args;
  for (int a = 0; a <= cap; ++a) {
    args.push_back(SuperPoly::x_pow(a));
    args.push_back(SuperPoly::th_x_pow(a));
  }

  for (const ContactField& X : osp_basis()) {
    const bool x_odd = (X.parity() == Parity::Odd);
    for (const SuperPoly& f : args) {
      const bool f_odd = (f.parity() == Parity::Odd);
      for (const SuperPoly& g : args) {
        SuperPoly lhs = act_weight(X.f, op.apply(f, g), wout);
        SuperPoly r1 = op.apply(act_weight(X.f, f, wa), g);
        SuperPoly r2 = op.apply(f, act_weight(X.f, g, wb));
        if (x_odd && f_odd) r2 = -r2;
        SuperPoly rhs = r1 + r2;
        if (x_odd && op_odd) rhs = -rhs;
        if (!(lhs - rhs).is_zero()) {
          if (report) {
            std::ostringstream os;
            os << "invariance fails for X = " << superpoly_str(X.f)
               << ", f = " << superpoly_str(f) << ", g = " << superpoly_str(g)
               << ": lhs - rhs = " << superpoly_str(lhs - rhs);
            *report = os.str();
          }
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace superdeform
