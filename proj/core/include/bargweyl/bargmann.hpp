#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "bargweyl/holo.hpp"
#include "bargweyl/quad.hpp"
#include "bargweyl/weight.hpp"

namespace bargweyl {

// numerical-conditioning failures (Gram breakdown, operator-norm Gram too
// ill-conditioned); the CLI maps these to exit code 3
struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Holomorphic quadratic phase phi(x,y) = (a/2)x^2 + b x y + (c/2)y^2 with
// Im phi''_yy = Im c > 0 and det phi''_xy = b != 0. kappa_phi maps R^2 onto
// Lambda_{Phi0} for the weight produced by derive_weight().
struct BargmannPhase {
  cplx a, b, c;

  BargmannPhase(cplx a_, cplx b_, cplx c_);

  // phi = i (x - y)^2 / 2  ->  Phi0 = (Im x)^2 / 2
  static BargmannPhase fbi();
  // phi = i (x^2/2 - sqrt2 x y + y^2/2)  ->  Phi0 = |x|^2 / 2
  static BargmannPhase bargmann();
};

// kappa_phi: (y, -phi'_y(x,y)) -> (x, phi'_x(x,y)); complex linear on C^2
PhasePoint kappa_phi(cplx y, cplx eta, const BargmannPhase& phi);
std::pair<cplx, cplx> kappa_phi_inverse(const PhasePoint& X, const BargmannPhase& phi);

// Phi0(x) = max_{y real} -Im phi(x,y): Q = i a/2 - b^2/(4 Im c), L = |b|^2/(4 Im c)
QuadraticWeight derive_weight(const BargmannPhase& phi);

// real-side Gaussian p(y) exp(-(alpha y^2 + beta y + gamma)/h), Re alpha > 0
struct RealGaussian {
  std::vector<cplx> p{cplx(1.0)};
  cplx alpha{0.5}, beta{0.0}, gamma{0.0};
  double h{1.0};
};

// ground state e0 = pi^{-1/4} h^{-1/4} exp(-y^2/2h), unit L^2 norm
RealGaussian e0(double h);
// L^2-normalized semiclassical Hermite function of index k
RealGaussian hermite_function(int k, double h);

// T g(x) = const * h^{-3/4} int exp(i phi(x,y)/h) g(y) dy, exactly integrated.
// `amp` multiplies the result (1.0 = uncalibrated).
HoloFunction bargmann_transform_gaussian(const RealGaussian& g, const BargmannPhase& phi,
                                         cplx amp = 1.0);

// weighted inner product (u, v)_{H_Phi} = int u conj(v) e^{-2Phi/h}, by quadrature
cplx inner_product(const HoloFunction& u, const HoloFunction& v, const WeightFunction& Phi,
                   const QuadRule& rule);
double norm_hphi(const HoloFunction& u, const WeightFunction& Phi, const QuadRule& rule);

// closed form of the same for the unperturbed weight when u.q2 == v.q2 == Q
cplx inner_product_exact(const HoloFunction& u, const HoloFunction& v,
                         const QuadraticWeight& w);

// moments M_{b,a} = int x^b conj(x)^a exp(D x + E conj(x) + C x conj(x)) L(dx),
// C = -2L/h; the workhorse behind every closed-form inner product here
CMat pair_moments(cplx D, cplx E, double Lmix, double h, int bmax, int amax);

// Monomial-family orthonormal basis of H_Phi at degree <= N: generators
// x^a exp(Q x^2/h) prescaled to unit unperturbed norm, Gram assembled by
// quadrature and Cholesky-orthonormalized.
class GramBasis {
 public:
  GramBasis(WeightFunction Phi, double h, int N, QuadRule rule);

  int size() const { return N_ + 1; }
  int max_degree() const { return N_; }
  double h() const { return h_; }
  const WeightFunction& weight() const { return Phi_; }
  const QuadRule& rule() const { return rule_; }
  cplx family_q2() const { return Phi_.base().q_scalar(); }

  // e_j = sum_a coeff_raw(a,j) x^a exp(Q x^2/h)
  const CMat& coeff_raw() const { return coeff_raw_; }
  HoloFunction basis_function(int j) const;
  double gram_condition() const { return gram_cond_; }
  const CMat& gram_raw() const { return gram_raw_; }

  const std::vector<cplx>& xnodes() const { return xnodes_; }
  const Eigen::VectorXd& wtab() const { return wtab_; }
  const CMat& grid() const { return grid_; }  // K x B orthonormal basis values

  // coefficients (u, e_k), k = 0..N
  CVec project_grid(const HoloFunction& u) const;
  CVec project_exact(const HoloFunction& u) const;  // requires f == 0 and u.q2 == Q

 private:
  WeightFunction Phi_;
  double h_;
  int N_;
  QuadRule rule_;
  std::vector<cplx> xnodes_;
  Eigen::VectorXd wtab_;
  CMat coeff_raw_;
  CMat grid_;
  CMat gram_raw_;
  double gram_cond_;
};

// Gram of the same basis functions under another weight (for operator norms
// on H_Phi1, H_Phi2): G(k,j) such that (u,v) = d^H G c for coefficient
// vectors c, d in this basis.
CMat gram_matrix_under(const GramBasis& basis, const WeightFunction& other,
                       const QuadRule& rule);

// Calibrated generalized Bargmann transform for one (phase, h): the constant
// is fixed numerically so that ||T e0||_{H_Phi0} = 1; it is h-independent.
class BargmannTransform {
 public:
  BargmannTransform(const BargmannPhase& phi, double h, const QuadRule& rule);

  const BargmannPhase& phase() const { return phi_; }
  const QuadraticWeight& weight() const { return w_; }
  double h() const { return h_; }
  double calibration() const { return amp_; }

  HoloFunction transform(const RealGaussian& g) const;
  const HoloFunction& v0() const { return v0_; }

 private:
  BargmannPhase phi_;
  QuadraticWeight w_;
  double h_;
  double amp_;
  HoloFunction v0_;
};

}  // namespace bargweyl
