#pragma once

#include <vector>

#include "bargweyl/phase_space.hpp"

namespace bargweyl {

// Entire function of the closed form u(x) = p(x) exp(q(x)/h), with p a
// polynomial and q(x) = q2 x^2 + q1 x + q0 (n = 1). The family is closed
// under translation, multiplication by polynomials and by exp of linear or
// quadratic forms over h, and under d/dx; magnetic translations act on it
// exactly.
struct HoloFunction {
  std::vector<cplx> p{cplx(0.0)};  // ascending coefficients, p[k] x^k
  cplx q2{0.0}, q1{0.0}, q0{0.0};
  double h{1.0};

  int degree() const { return static_cast<int>(p.size()) - 1; }
  cplx operator()(cplx x) const;

  HoloFunction translated(cplx z) const;  // x -> u(x - z)
  HoloFunction times_exp_linear(cplx a1, cplx a0) const;    // * exp((a1 x + a0)/h)
  HoloFunction times_exp_quadratic(cplx a2, cplx a1, cplx a0) const;
  HoloFunction times_poly(const std::vector<cplx>& coeffs) const;
  HoloFunction times_x() const;
  HoloFunction scaled(cplx c) const;
  HoloFunction d_dx() const;  // exact: (p' + p (2 q2 x + q1)/h) e^{q/h}
  HoloFunction hD() const;    // (h/i) d/dx

  static HoloFunction zero(double h);
  static HoloFunction monomial(int k, cplx q2, double h);  // x^k e^{q2 x^2 / h}
  static HoloFunction expq(cplx q2, cplx q1, cplx q0, cplx amp, double h);
};

HoloFunction operator+(const HoloFunction& u, const HoloFunction& v);  // requires equal q

// margin of Gaussian domination for |u| |v| e^{-2 Phi0}: the quadratic form
// 2 Phi0 - Re(q2_u x^2) - Re(q2_v x^2) is positive definite iff the returned
// margin 2L - |q2_u + q2_v - 2Q| is > 0.
double gaussian_decay_margin(cplx q2_u, cplx q2_v, const QuadraticWeight& w);

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> poly_translate(const std::vector<cplx>& p, cplx z);  // p(x - z)
cplx poly_eval(const std::vector<cplx>& p, cplx x);

}  // namespace bargweyl
