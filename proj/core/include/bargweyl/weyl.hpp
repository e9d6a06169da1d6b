#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bargweyl/bargmann.hpp"
#include "bargweyl/magnetic.hpp"
#include "bargweyl/symbol.hpp"

namespace bargweyl {

// dense matrix of an operator in a GramBasis, entries(k,j) = (Op e_j, e_k)
struct OperatorMatrix {
  CMat entries;
  double h = 1.0;
  int N = 0;
  std::string basis_tag;
};

struct WeylParams {
  double trunc = 1e-10;            // relative decay threshold for boxes
  double pts_per_wavelength = 6.0; // oscillatory sampling rule
  int min_M = 96;                  // per-axis floor for auto-sized rules
  int max_M = 4096;                // per-axis cap
  std::vector<std::string>* warnings = nullptr;  // oscillation-rule violations
};

// ---- symplectic Fourier transform -------------------------------------

// closed form; GaussianPoly only
Symbol fourier_symplectic_closed(const Symbol& a);
// pointwise, by quadrature over the given input rule
cplx fourier_symplectic_at(const Symbol& a, const Vec2d& Z, const QuadRule& rule,
                           const WeylParams& params = {});
// GridSampled output on out_grid (closed form used when available)
Symbol fourier_symplectic(const Symbol& a, const QuadRule& out_grid,
                          const WeylParams& params = {});
// rule adapted to the symbol's decay and to oscillation at |Z| <= maxZ
QuadRule rule_for_symbol(const Symbol& a, double maxZ, const WeylParams& params = {});

// ---- twisted convolution and composition ------------------------------

cplx twisted_convolution_at(const Symbol& u, const Symbol& v, const Vec2d& X,
                            const QuadRule& rule, const WeylParams& params = {});
Symbol twisted_convolution(const Symbol& u, const Symbol& v, const QuadRule& out_grid,
                           const WeylParams& params = {});

// comp15 at one point, factored O(M^3) summation of the 4-real-dim quadrature
cplx compose_direct(const Symbol& a, const Symbol& b, const Vec2d& X, const QuadRule& rule,
                    const WeylParams& params = {});

// c = (pi h)^{-n} a *_sigma F_h b
cplx compose_fourier_at(const Symbol& a, const Symbol& b, const Vec2d& X,
                        const QuadRule& rule, const WeylParams& params = {});
Symbol compose_fourier(const Symbol& a, const Symbol& b, const QuadRule& out_grid,
                       const WeylParams& params = {});
// closed form for degree-0 Gaussian pairs
PSGauss compose_sharp_gaussian(const PSGauss& a, const PSGauss& b, double fourL, double h);

enum class Side { Left, Right };
// e^{i ell/h} # a = e^{i ell(X)/h} a(X + H_ell/2); Right: a # e^{i ell/h}
Symbol compose_plane_wave(const LinearFormOnLambda& ell, const Symbol& a, Side side,
                          const QuadraticWeight& w);

// ---- quantization ------------------------------------------------------

// matrix of a magnetic translation in the basis (exact when the basis weight
// is unperturbed, grid projection otherwise)
CMat magnetic_matrix(const MagneticTranslation& t, const GramBasis& basis);

// exact Weyl quantization of a holomorphic polynomial of degree <= 2 in
// (x, xi), applied to u (x -> x*, xi -> hD, symmetrized cross term)
HoloFunction apply_quadratic_weyl(const std::vector<cplx>& cxx_cxxi_cxixi_cx_cxi_c1,
                                  const HoloFunction& u);

// polynomial symbol (in pi_x coordinates, degree <= 2) -> exact matrix
CMat quantize_polynomial(const Poly2& p, const GramBasis& basis);

OperatorMatrix quantize_superposition(const Symbol& a, const GramBasis& basis,
                                      const WeylParams& params = {});

// contour quantization (intr3/intr4): Op(a)u at the point x
cplx quantize_direct(const Symbol& a, const HoloFunction& u, cplx x, const QuadraticWeight& w,
                     const QuadRule& yrule, const WeylParams& params = {});
OperatorMatrix quantize_direct_matrix(const Symbol& a, const GramBasis& basis,
                                      const QuadRule& yrule, const WeylParams& params = {});

// ---- rank one structure ------------------------------------------------

// coefficients of W(z) v0 in the basis (closed form when v0.q2 == Q)
CVec coherent_coefficients(cplx z, const BargmannTransform& T, const GramBasis& basis);

// P u = (u, v0) v0
OperatorMatrix rank_one_projection(const BargmannTransform& T, const GramBasis& basis);

// chi0 = phi0 o kappa_phi^{-1} (the projection's symbol before h-scaling):
// 2^n exp(-|kappa^{-1} X|^2); `hscale` divides the argument by sqrt(h)
Symbol projection_window_symbol(const BargmannTransform& T, bool hscale);

// b_{Y,T}(X) = e^{2 i sigma(X,Y)/h} chi0((X - T)/sqrt h)
Symbol modulated_window_symbol(const BargmannTransform& T, cplx Y, cplx Tc);
// its exact rank-one matrix e^{i sigma(T,Y)/h} coh(Y-T) coh(-(Y+T))^H
CMat modulated_window_rank_one(const BargmannTransform& T, cplx Y, cplx Tc,
                               const GramBasis& basis);

struct RankOneResult {
  OperatorMatrix op;
  double Mh = 0.0;       // window-mass normalization, ~ h^n
  double C_const = 0.0;  // frozen Jacobian constant of the decomposition
};

// superposition of rank-one kernels; Gaussian symbols (closed-form windowed
// transform) only
RankOneResult rank_one_decomposition(const Symbol& a, const GramBasis& basis,
                                     const BargmannTransform& T,
                                     const WeylParams& params = {});

double window_mass(const BargmannTransform& T);  // M(h), exact Gaussian integral

// ---- norms and kernel reports -------------------------------------------

// largest generalized singular value of A against the Gram matrix G of the
// target weight: max ||A c||_G / ||c||_G
double operator_norm(const OperatorMatrix& A, const CMat& gram);

struct SchurReport {
  double s = 0.0, C = 0.0, h = 0.0;
  double I1 = 0.0, I2 = 0.0, total = 0.0;
  double I2_bound_factor = 0.0;  // exp(Ctilde h^{1-2/s}/C)
  double J_fourier = 0.0;        // h^{-2n} int exp(h^{-1/s}(-|y|^{1/s} + (2/C)min(1,|y|)))
};

SchurReport schur_kernel_report(double s, double C, double h);

}  // namespace bargweyl
