#pragma once

#include <functional>
#include <optional>

#include "bargweyl/phase_space.hpp"

namespace bargweyl {

// Bounded perturbation shape g with recorded sup bounds; the weight applies
// an overall scale so that f = scale * g( . - shift).
struct Perturbation {
  std::function<double(cplx)> g;
  std::function<cplx(cplx)> grad;  // Wirtinger dg/dx; empty -> central differences
  double b0 = 0.0;                 // >= sup |g|
  double b1 = 0.0;                 // >= Lip(g) = sup of the real gradient norm = 2 sup|dg/dx|
};

// Records when the scale is meant as h^{1-1/s}/C.
struct HCoupling {
  double s = 2.0;
  double C = 1.0;
};

// Phi = Phi0 + f,  f(x) = scale * g(x - shift).
class WeightFunction {
 public:
  explicit WeightFunction(QuadraticWeight base)
      : base_(std::move(base)) {}
  WeightFunction(QuadraticWeight base, Perturbation pert, double scale,
                 std::optional<HCoupling> coupling = std::nullopt)
      : base_(std::move(base)), pert_(std::move(pert)), scale_(scale),
        coupling_(coupling) {}

  const QuadraticWeight& base() const { return base_; }
  bool perturbed() const { return pert_.has_value() && scale_ != 0.0; }
  double scale() const { return scale_; }
  cplx shift() const { return shift_; }
  const std::optional<HCoupling>& coupling() const { return coupling_; }

  double f(cplx x) const;
  cplx f_dx(cplx x) const;  // Wirtinger derivative of f
  double operator()(cplx x) const { return base_.value(x) + f(x); }
  cplx d_dx(cplx x) const { return base_.d_dx(x) + f_dx(x); }

  double b0() const { return pert_ ? std::abs(scale_) * pert_->b0 : 0.0; }
  double b1() const { return pert_ ? std::abs(scale_) * pert_->b1 : 0.0; }

  // Prop 2.1 weight transport: Phi2 = Phi0 + f(. - xstar); bounds carry over.
  WeightFunction transported(cplx xstar) const;
  // Hamilton-Jacobi flow value Psi(.,t) = Phi0 + f(. - t xstar)
  WeightFunction hj_flow(cplx xstar, double t) const;

 private:
  QuadraticWeight base_;
  std::optional<Perturbation> pert_;
  double scale_ = 0.0;
  cplx shift_ = 0.0;
  std::optional<HCoupling> coupling_;
};

// default experiment perturbation g(x) = tanh(Re x) exp(-|x|^2/25):
// bounded, bounded gradient, non-pluriharmonic
Perturbation default_perturbation();

// smooth compact-free test bump  g(x) = sin(Re x) exp(-|x|^2/9)
Perturbation sine_perturbation(double eps = 1.0);

}  // namespace bargweyl
