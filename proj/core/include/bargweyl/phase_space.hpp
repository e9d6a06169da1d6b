#pragma once

#include <Eigen/Dense>
#include <complex>

namespace bargweyl {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};

// Strictly plurisubharmonic quadratic weight
//   Phi0(x) = Re(x^T Q x) + conj(x)^T L x,  x in C^n,
// with Q complex symmetric and L Hermitian positive definite.
// The mixed Hessian d^2Phi0/dxbar dx equals L; d^2/dx^2 equals Q.
class QuadraticWeight {
 public:
  QuadraticWeight(CMat Q, CMat L);

  int dim() const { return n_; }
  const CMat& Q() const { return Q_; }
  const CMat& L() const { return L_; }

  double value(const CVec& x) const;
  // Wirtinger derivative dPhi0/dx = Q x + L^T conj(x)
  CVec d_dx(const CVec& x) const;

  // n = 1 fast path
  cplx q_scalar() const { return Q_(0, 0); }
  double l_scalar() const { return L_(0, 0).real(); }
  double value(cplx x) const;
  cplx d_dx(cplx x) const;

  // density of the symplectic volume on Lambda_{Phi0} against Lebesgue
  // measure in the pi_x coordinates: 4^n det L
  double lambda_density() const;

  // Phi0(x) = (Im x)^2 / 2  <->  (Q, L) = (-1/4, 1/4)
  static QuadraticWeight fbi();
  // Phi0(x) = |x|^2 / 2     <->  (Q, L) = (0, 1/2)
  static QuadraticWeight bargmann();

 private:
  int n_;
  CMat Q_, L_;
};

// Point of C^{2n}. Whether it lies on Lambda_{Phi0} is a predicate, not an
// invariant of the type.
struct PhasePoint {
  CVec x;
  CVec xi;

  int dim() const { return static_cast<int>(x.size()); }
  static PhasePoint make(cplx x, cplx xi);
  cplx x1() const { return x(0); }
  cplx xi1() const { return xi(0); }
};

PhasePoint operator+(const PhasePoint& a, const PhasePoint& b);
PhasePoint operator-(const PhasePoint& a, const PhasePoint& b);
PhasePoint operator*(cplx c, const PhasePoint& a);

// lift(x) = (x, (2/i) dPhi0/dx(x)), the point of Lambda_{Phi0} above x
PhasePoint lift(const CVec& x, const QuadraticWeight& w);
PhasePoint lift(cplx x, const QuadraticWeight& w);

// residual of the defining relation xi = (2/i) dPhi0/dx(x)
double on_lambda_residual(const PhasePoint& X, const QuadraticWeight& w);

// complex symplectic form, convention sigma = sum dxi_j ^ dx_j:
//   sigma(U, V) = xi_U . x_V - x_U . xi_V
cplx sigma(const PhasePoint& U, const PhasePoint& V);

// sigma restricted to Lambda_{Phi0}, closed form -4 Im(xs^H L x); real there.
// Throws if either point is off Lambda (residual above tol).
double sigma_on_lambda(const PhasePoint& X, const PhasePoint& Xs,
                       const QuadraticWeight& w, double tol = 1e-10);

// Complex linear form ell(x,xi) = ell_x . x + xstar . xi with ell real on
// Lambda_{Phi0}; parametrized by the unique xstar = ell'_xi, with
// ell_x = -(2/i) dPhi0/dx(xstar). The Hamilton vector H_ell = (xstar, -ell_x)
// lies on Lambda_{Phi0}, and ell(X) = sigma(X, H_ell).
class LinearFormOnLambda {
 public:
  LinearFormOnLambda(CVec xstar, const QuadraticWeight& w);

  int dim() const { return static_cast<int>(xstar_.size()); }
  const CVec& xstar() const { return xstar_; }
  const CVec& ell_x() const { return ell_x_; }
  PhasePoint hamilton_vector() const;

  cplx operator()(const PhasePoint& X) const;

  // n = 1
  cplx xstar1() const { return xstar_(0); }
  cplx ell_x1() const { return ell_x_(0); }

 private:
  CVec xstar_, ell_x_;
};

LinearFormOnLambda linear_form(const CVec& xstar, const QuadraticWeight& w);
LinearFormOnLambda linear_form(cplx xstar, const QuadraticWeight& w);

}  // namespace bargweyl
