#pragma once

#include <Eigen/Dense>

#include "bargweyl/phase_space.hpp"

namespace bargweyl {

using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;
using Vec2d = Eigen::Vector2d;

// dense bivariate polynomial, c(i,j) z1^i z2^j
struct Poly2 {
  CMat c;  // (d1+1) x (d2+1)

  Poly2() : c(CMat::Zero(1, 1)) {}
  explicit Poly2(cplx v) : c(CMat::Constant(1, 1, v)) {}

  int deg1() const { return static_cast<int>(c.rows()) - 1; }
  int deg2() const { return static_cast<int>(c.cols()) - 1; }
  cplx eval(const Vec2d& z) const;
  bool is_constant() const { return c.rows() == 1 && c.cols() == 1; }

  Poly2& operator+=(const Poly2& o);
  Poly2 operator*(const Poly2& o) const;
  Poly2 scaled(cplx s) const;
  static Poly2 affine(cplx c0, cplx c1, cplx c2);  // c0 + c1 z1 + c2 z2
  Poly2 shifted(const Vec2d& t) const;             // p(z - t) ... p evaluated at z+? see impl
};

// p(z) exp(-z^T A z + b^T z + c) on R^2 (pi_x coordinates of Lambda);
// A complex symmetric. Integrable iff Re A is positive definite.
struct PSGauss {
  Mat2c A = Mat2c::Zero();
  Vec2c b = Vec2c::Zero();
  cplx c = 0.0;
  Poly2 p = Poly2(cplx(1.0));

  cplx eval(const Vec2d& z) const;
  bool integrable() const;
  int degree() const { return p.deg1() + p.deg2(); }

  // centered isotropic Gaussian amp * exp(-w |z - z0|^2)
  static PSGauss isotropic(double w, const Vec2d& z0, cplx amp = 1.0);
  static PSGauss isotropic(double w, cplx z0, cplx amp = 1.0);

  PSGauss translated(const Vec2d& t) const;  // z -> value(z - t)
  PSGauss translated(cplx t) const;
  PSGauss times(const PSGauss& o) const;     // pointwise product
  PSGauss times_phase(const Vec2c& lin, cplx c0) const;  // * exp(lin^T z + c0)
  PSGauss scaled(cplx s) const;
};

inline Vec2d to_vec2(cplx z) { return {z.real(), z.imag()}; }
inline cplx to_cplx(const Vec2d& v) { return {v.x(), v.y()}; }

// sqrt(det A) with the branch continued from Re A (Re A pos. def. required)
cplx sqrt_det_continued(const Mat2c& A);

// Lebesgue integral over R^2 of p exp(-z^T A z + b^T z + c)
cplx psg_integral(const PSGauss& u);

// moments of exp(-z^T A z + b^T z) relative to its own integral:
// E[z^alpha] as polynomials via the recursion 2 A E[z^{a+e}] = ...
// (used internally; exposed for tests)
CMat psg_raw_moments(const Mat2c& A, const Vec2c& b, int dmax);

// closed-form semiclassical symplectic Fourier transform on Lambda:
// (F_h u)(Z) = (dens/(pi h)^n) int e^{2 i sigma(Z,S)/h} u(S) dS(Lebesgue),
// dens = 4L. Exact for any polynomial degree.
PSGauss psg_fourier(const PSGauss& u, double Lmix, double h);

// closed-form twisted convolution (degree-0 factors only):
// (u *_sigma v)(X) = int e^{2 i sigma(X,Y)/h} u(X-Y) v(Y) dY, dY = dens * Lebesgue
PSGauss psg_twisted_conv(const PSGauss& u, const PSGauss& v, double Lmix, double h);

}  // namespace bargweyl
