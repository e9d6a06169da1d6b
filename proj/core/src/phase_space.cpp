#include "bargweyl/phase_space.hpp"

#include <stdexcept>

namespace bargweyl {

QuadraticWeight::QuadraticWeight(CMat Q, CMat L) : Q_(std::move(Q)), L_(std::move(L)) {
  if (Q_.rows() != Q_.cols() || L_.rows() != L_.cols() || Q_.rows() != L_.rows())
    throw std::invalid_argument("QuadraticWeight: Q and L must be square of equal size");
  n_ = static_cast<int>(Q_.rows());
  if ((Q_ - Q_.transpose()).norm() > 1e-12 * (1.0 + Q_.norm()))
    throw std::invalid_argument("QuadraticWeight: Q must be complex symmetric");
  if ((L_ - L_.adjoint()).norm() > 1e-12 * (1.0 + L_.norm()))
    throw std::invalid_argument("QuadraticWeight: L must be Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(L_);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("QuadraticWeight: L must be positive definite (strict psh)");
}

double QuadraticWeight::value(const CVec& x) const {
  cplx quad = x.transpose() * Q_ * x;
  cplx mixed = x.adjoint() * L_ * x;
  return quad.real() + mixed.real();
}

CVec QuadraticWeight::d_dx(const CVec& x) const {
  return Q_ * x + L_.transpose() * x.conjugate();
}

double QuadraticWeight::value(cplx x) const {
  return (Q_(0, 0) * x * x).real() + L_(0, 0).real() * std::norm(x);
}

cplx QuadraticWeight::d_dx(cplx x) const {
  return Q_(0, 0) * x + L_(0, 0).real() * std::conj(x);
}

double QuadraticWeight::lambda_density() const {
  double detL = L_.determinant().real();
  return std::pow(4.0, n_) * detL;
}

QuadraticWeight QuadraticWeight::fbi() {
  CMat Q(1, 1), L(1, 1);
  Q(0, 0) = -0.25;
  L(0, 0) = 0.25;
  return {Q, L};
}

QuadraticWeight QuadraticWeight::bargmann() {
  CMat Q(1, 1), L(1, 1);
  Q(0, 0) = 0.0;
  L(0, 0) = 0.5;
  return {Q, L};
}

PhasePoint PhasePoint::make(cplx x, cplx xi) {
  PhasePoint p;
  p.x = CVec::Constant(1, x);
  p.xi = CVec::Constant(1, xi);
  return p;
}

PhasePoint operator+(const PhasePoint& a, const PhasePoint& b) { return {a.x + b.x, a.xi + b.xi}; }
PhasePoint operator-(const PhasePoint& a, const PhasePoint& b) { return {a.x - b.x, a.xi - b.xi}; }
PhasePoint operator*(cplx c, const PhasePoint& a) { return {c * a.x, c * a.xi}; }

PhasePoint lift(const CVec& x, const QuadraticWeight& w) {
  PhasePoint p;
  p.x = x;
  p.xi = (2.0 / kI) * w.d_dx(x);
  return p;
}

PhasePoint lift(cplx x, const QuadraticWeight& w) {
  return lift(CVec::Constant(1, x), w);
}

double on_lambda_residual(const PhasePoint& X, const QuadraticWeight& w) {
  CVec expect = (2.0 / kI) * w.d_dx(X.x);
  return (X.xi - expect).lpNorm<Eigen::Infinity>();
}

cplx sigma(const PhasePoint& U, const PhasePoint& V) {
  return U.xi.cwiseProduct(V.x).sum() - U.x.cwiseProduct(V.xi).sum();
}

double sigma_on_lambda(const PhasePoint& X, const PhasePoint& Xs,
                       const QuadraticWeight& w, double tol) {
  if (on_lambda_residual(X, w) > tol || on_lambda_residual(Xs, w) > tol)
    throw std::invalid_argument("sigma_on_lambda: input point off Lambda_{Phi0}");
  // sigma(X, X*) = -4 Im( (x*)^H L x )
  cplx s = Xs.x.adjoint() * w.L() * X.x;
  return -4.0 * s.imag();
}

LinearFormOnLambda::LinearFormOnLambda(CVec xstar, const QuadraticWeight& w)
    : xstar_(std::move(xstar)) {
  if (xstar_.size() != w.dim())
    throw std::invalid_argument("LinearFormOnLambda: dimension mismatch");
  ell_x_ = -(2.0 / kI) * w.d_dx(xstar_);
}

PhasePoint LinearFormOnLambda::hamilton_vector() const { return {xstar_, -ell_x_}; }

cplx LinearFormOnLambda::operator()(const PhasePoint& X) const {
  return ell_x_.cwiseProduct(X.x).sum() + xstar_.cwiseProduct(X.xi).sum();
}

LinearFormOnLambda linear_form(const CVec& xstar, const QuadraticWeight& w) {
  return {xstar, w};
}

LinearFormOnLambda linear_form(cplx xstar, const QuadraticWeight& w) {
  return {CVec::Constant(1, xstar), w};
}

}  // namespace bargweyl
