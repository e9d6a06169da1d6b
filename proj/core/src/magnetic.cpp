#include "bargweyl/magnetic.hpp"

#include <cmath>
#include <stdexcept>

namespace bargweyl {

MagneticTranslation::MagneticTranslation(LinearFormOnLambda f, QuadraticWeight w, double h_,
                                         int sign_)
    : form(std::move(f)), weight(std::move(w)), h(h_), sign(sign_) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("MagneticTranslation: sign is +-1");
  if (h <= 0.0) throw std::invalid_argument("MagneticTranslation: h > 0");
  if (form.dim() != 1) throw std::invalid_argument("MagneticTranslation: n = 1 only");
}

MagneticTranslation MagneticTranslation::W(cplx y, const QuadraticWeight& w, double h) {
  return {linear_form(y, w), w, h, -1};
}

MagneticTranslation MagneticTranslation::W2(cplx y, const QuadraticWeight& w, double h) {
  return {linear_form(2.0 * y, w), w, h, -1};
}

MagneticTranslation MagneticTranslation::inverse() const {
  return {form, weight, h, -sign};
}

HoloFunction apply(const MagneticTranslation& t, const HoloFunction& u) {
  if (u.h != t.h) throw std::invalid_argument("apply: mismatched h");
  // e^{-i ell/h} u(x) = e^{(i/2h) lx.lxi} e^{-(i/h) lx.x} u(x - lxi)  (ell_eff = sign*ell)
  const cplx lx = double(t.sign) * t.form.ell_x1();
  const cplx lxi = double(t.sign) * t.form.xstar1();
  return u.translated(lxi).times_exp_linear(-kI * lx, 0.5 * kI * lx * lxi);
}

std::pair<MagneticTranslation, cplx> compose_cocycle(const MagneticTranslation& t1,
                                                     const MagneticTranslation& t2) {
  if (t1.h != t2.h) throw std::invalid_argument("compose_cocycle: mismatched h");
  if ((t1.weight.Q() - t2.weight.Q()).norm() > 1e-14 ||
      (t1.weight.L() - t2.weight.L()).norm() > 1e-14)
    throw std::invalid_argument("compose_cocycle: mismatched weights");
  const cplx A1 = t1.w_param(), A2 = t2.w_param();
  const PhasePoint P1 = lift(A1, t1.weight);
  const PhasePoint P2 = lift(A2, t1.weight);
  const cplx s = sigma(P1, P2);
  const cplx phase = std::exp(kI * s / (2.0 * t1.h));
  MagneticTranslation sum{linear_form(A1 + A2, t1.weight), t1.weight, t1.h, -1};
  return {sum, phase};
}

WeightFunction transport_weight(const WeightFunction& Phi1, cplx xstar) {
  return Phi1.transported(xstar);
}

WeightFunction hj_solution(const WeightFunction& Phi1, cplx xstar, double t) {
  return Phi1.hj_flow(xstar, t);
}

double hj_residual(const WeightFunction& Phi1, const LinearFormOnLambda& ell, cplx x,
                   double t, double dt) {
  const cplx xstar = ell.xstar1();
  const auto psi = [&](double tt) { return Phi1.hj_flow(xstar, tt)(x); };
  const double dpsi_dt = (psi(t + dt) - psi(t - dt)) / (2.0 * dt);
  const WeightFunction Psi_t = Phi1.hj_flow(xstar, t);
  const cplx xi = (2.0 / kI) * Psi_t.d_dx(x);
  const cplx ellval = ell(PhasePoint::make(x, xi));
  return std::abs(dpsi_dt - ellval.imag());
}

NormBound norm_bound_on_weighted(const MagneticTranslation& t, const WeightFunction& Phi1,
                                 double sample_radius, int samples) {
  // the translation maps H_Phi1 -> H_Phi2 unitarily with Phi2 - Phi1 =
  // f(. - xstar_eff) - f, so its norm on H_Phi1 is at most
  // exp(||Phi2 - Phi1||_inf / h)
  const cplx shift = double(t.sign) * t.form.xstar1();
  double sup = 0.0;
  const int side = std::max(2, static_cast<int>(std::lround(std::sqrt(double(samples)))));
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const cplx x(-sample_radius + 2.0 * sample_radius * i / (side - 1),
                   -sample_radius + 2.0 * sample_radius * j / (side - 1));
      sup = std::max(sup, std::abs(Phi1.f(x - shift) - Phi1.f(x)));
    }
  NormBound out;
  out.sampled = std::exp(sup / t.h);
  out.envelope = std::exp(std::min(2.0 * Phi1.b0(), Phi1.b1() * std::abs(shift)) / t.h);
  return out;
}

HoloFunction apply_linear_form_operator(const LinearFormOnLambda& ell, const HoloFunction& u) {
  // ell(x, hD) u = ell_x . (x u) + xstar . (hD u)
  HoloFunction xu = u.times_x().scaled(ell.ell_x1());
  HoloFunction du = u.hD().scaled(ell.xstar1());
  // both share the exponent of u
  return xu + du;
}

std::pair<cplx, cplx> quantization_multiplication(const LinearFormOnLambda& ell,
                                                  const HoloFunction& u,
                                                  const WeightFunction& Psi,
                                                  const QuadRule& rule) {
  const HoloFunction lu = apply_linear_form_operator(ell, u);
  const cplx lhs = inner_product(lu, u, Psi, rule);
  // rhs: int ell(x, (2/i) dPsi/dx) |u|^2 e^{-2Psi/h}
  const double h = u.h;
  cplx rhs = 0.0;
  const int M = rule.M();
  for (int i = 0; i < M; ++i) {
    cplx row = 0.0;
    for (int j = 0; j < M; ++j) {
      const cplx x(rule.node1d(i), rule.node1d(j));
      const cplx xi = (2.0 / kI) * Psi.d_dx(x);
      const cplx lv = ell(PhasePoint::make(x, xi));
      row += rule.weight1d(j) * lv * std::norm(u(x)) * std::exp(-2.0 * Psi(x) / h);
    }
    rhs += rule.weight1d(i) * row;
  }
  return {lhs, rhs};
}

}  // namespace bargweyl
