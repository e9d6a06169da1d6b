#pragma once

#include "bargweyl/bargmann.hpp"
#include "bargweyl/holo.hpp"
#include "bargweyl/weight.hpp"

namespace bargweyl {

// The operator e^{-sign * i ell(x, hD_x)/h} for a linear form ell real on
// Lambda_{Phi0}. Every such operator equals e^{i ell_A(x,hD)/h} = W(A) for
// A = -sign * H_ell; compositions obey W(A) W(B) = e^{i sigma(A,B)/2h} W(A+B).
struct MagneticTranslation {
  LinearFormOnLambda form;
  QuadraticWeight weight;
  double h;
  int sign;  // +1: e^{-i ell/h},  -1: e^{+i ell/h}

  MagneticTranslation(LinearFormOnLambda f, QuadraticWeight w, double h_, int sign_ = +1);

  // pi_x coordinate of the W-parameter A (n = 1)
  cplx w_param() const { return -double(sign) * form.xstar1(); }

  // W(y): e^{i sigma((x,hD), Y)/h} for Y on Lambda above y
  static MagneticTranslation W(cplx y, const QuadraticWeight& w, double h);
  // e^{2 i sigma((x,hD), Y)/h}, the operator of the Fourier superposition
  static MagneticTranslation W2(cplx y, const QuadraticWeight& w, double h);

  MagneticTranslation inverse() const;
};

// exact action on the HoloFunction class (eq. of motion: phase * shift)
HoloFunction apply(const MagneticTranslation& t, const HoloFunction& u);

// composition law: t1 * t2 = phase * W(A1 + A2); returns the combined
// translation and the scalar phase e^{i sigma(A1,A2)/2h}
std::pair<MagneticTranslation, cplx> compose_cocycle(const MagneticTranslation& t1,
                                                     const MagneticTranslation& t2);

// Prop 2.1: exp(H_ell)(Lambda_{Phi1}) = Lambda_{Phi2}, Phi2 = Phi0 + f(. - xstar)
WeightFunction transport_weight(const WeightFunction& Phi1, cplx xstar);

// unique C^{1,1} solution Psi(x,t) = Phi0(x) + f(x - t xstar) of the
// Hamilton-Jacobi equation  dPsi/dt = Im ell(x, (2/i) dPsi/dx)
WeightFunction hj_solution(const WeightFunction& Phi1, cplx xstar, double t);

// residual of the Hamilton-Jacobi equation at (x, t), by central differences
// in t against the exact right-hand side
double hj_residual(const WeightFunction& Phi1, const LinearFormOnLambda& ell, cplx x,
                   double t, double dt = 1e-5);

struct NormBound {
  double sampled;   // exp(sup_samples |f(.-shift) - f| / h)
  double envelope;  // exp(min(2 b0, b1 |shift|)/h)
};

// operator norm bound of t on L(H_Phi1, H_Phi1) from the weight distortion;
// the envelope is the translation-invariant sup-norm bound
NormBound norm_bound_on_weighted(const MagneticTranslation& t, const WeightFunction& Phi1,
                                 double sample_radius = 8.0, int samples = 4096);

// exact quantization-multiplication identity: returns the pair
//   ( (ell(x,hD)u, u)_{H_Psi},  int ell(x, (2/i) dPsi/dx) |u|^2 e^{-2Psi/h} )
std::pair<cplx, cplx> quantization_multiplication(const LinearFormOnLambda& ell,
                                                  const HoloFunction& u,
                                                  const WeightFunction& Psi,
                                                  const QuadRule& rule);

// apply ell(x, hD) to u exactly within the class
HoloFunction apply_linear_form_operator(const LinearFormOnLambda& ell, const HoloFunction& u);

}  // namespace bargweyl
