#include "bargweyl/weight.hpp"

#include <cmath>

namespace bargweyl {

namespace {
constexpr double kFdStep = 1e-6;
}

double WeightFunction::f(cplx x) const {
  if (!perturbed()) return 0.0;
  return scale_ * pert_->g(x - shift_);
}

cplx WeightFunction::f_dx(cplx x) const {
  if (!perturbed()) return 0.0;
  const cplx y = x - shift_;
  if (pert_->grad) return scale_ * pert_->grad(y);
  const double d = kFdStep;
  double du = (pert_->g(y + d) - pert_->g(y - d)) / (2.0 * d);
  double dv = (pert_->g(y + cplx(0.0, d)) - pert_->g(y - cplx(0.0, d))) / (2.0 * d);
  return scale_ * 0.5 * cplx(du, -dv);
}

WeightFunction WeightFunction::transported(cplx xstar) const { return hj_flow(xstar, 1.0); }

WeightFunction WeightFunction::hj_flow(cplx xstar, double t) const {
  WeightFunction out = *this;
  out.shift_ += t * xstar;
  return out;
}

Perturbation default_perturbation() {
  Perturbation p;
  p.g = [](cplx x) {
    double u = x.real(), v = x.imag();
    return std::tanh(u) * std::exp(-(u * u + v * v) / 25.0);
  };
  p.grad = [](cplx x) -> cplx {
    double u = x.real(), v = x.imag();
    double e = std::exp(-(u * u + v * v) / 25.0);
    double th = std::tanh(u);
    double gu = (1.0 - th * th) * e + th * e * (-2.0 * u / 25.0);
    double gv = th * e * (-2.0 * v / 25.0);
    return 0.5 * cplx(gu, -gv);
  };
  p.b0 = 0.84;  // sup attained near Re x ~ 2.2 on the real axis
  p.b1 = 1.01;  // Lipschitz bound; real-gradient sup is 1 at the origin
  return p;
}

Perturbation sine_perturbation(double eps) {
  Perturbation p;
  p.g = [eps](cplx x) { return eps * std::sin(x.real()); };
  p.grad = [eps](cplx x) -> cplx { return eps * 0.5 * std::cos(x.real()); };
  p.b0 = eps;
  p.b1 = eps;
  return p;
}

}  // namespace bargweyl
