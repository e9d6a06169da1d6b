#pragma once

#include <utility>
#include <vector>

#include "bargweyl/weyl.hpp"

namespace bargweyl {

// lattice partition of unity chi_j = psi(. - j)/sum_k psi(. - k) over
// Gamma = Z e1 + Z e2, built from a Gevrey-s bump covering a cell with margin
class LatticePartition {
 public:
  LatticePartition(Eigen::Matrix2d basis, double s, double support_factor = 1.35);

  const Eigen::Matrix2d& lattice() const { return basis_; }
  const GevreyBump& bump() const { return psi_; }
  int halo() const { return halo_; }

  double chi0(const Vec2d& z) const;
  double chij(const Vec2d& z, int j1, int j2) const;  // chi0(z - gamma_j)
  // sum over translates |j| <= extent (== 1 on covered points)
  double sum_translates(const Vec2d& z, int extent) const;

 private:
  double denom(const Vec2d& z) const;
  Eigen::Matrix2d basis_;
  GevreyBump psi_;
  int halo_;
};

LatticePartition partition_of_unity(const Eigen::Matrix2d& lattice, double s,
                                    double support_factor = 1.35);

enum class WindowKind { Gaussian, GevreyBump };

// window profile centered at 0: the L^2-normalized Gaussian (2/pi)^{1/2} e^{-|z|^2}
// scale^2 ... at m = 2, or a Gevrey bump of index s_window
Symbol make_window(WindowKind kind, double s_window, double fourL, double h);

// translate a closed-form symbol (GaussianPoly / GevreyBump) by t
Symbol translate_symbol(const Symbol& a, const Vec2d& t);

// F_h(chi_T a) at Z: closed form when both factors are Gaussian, otherwise
// quadrature over the given rule
cplx windowed_transform_at(const Symbol& a, const Vec2d& T, const Symbol& window,
                           const Vec2d& Z, const QuadRule& rule,
                           const WeylParams& params = {});
// the full transform as a Symbol on out_grid
Symbol windowed_transform(const Symbol& a, const Vec2d& T, const Symbol& window,
                          const QuadRule& out_grid, const WeylParams& params = {});

// stretched-exponential fit  |v| = A exp(-r^rho / C)
struct DecayFit {
  double rho = 0.0;
  double C = 0.0;
  double A = 0.0;
  double residual = 0.0;  // rms in log(-log(|v|/A)) space
  bool clamped = false;   // inner slope left (0, 1]
  bool flagged = false;   // clamped or residual above threshold
};

DecayFit decay_fit(const std::vector<std::pair<double, double>>& samples,
                   double residual_threshold = 0.1, bool enforce_decade = true);

struct WienerFitSamples {
  std::vector<std::pair<double, double>> samples;  // (radius, sup modulus)
  double peak = 0.0;
};

// sup over a (2k+1)^2 T-grid and over directions of |F_h(chi_T a)(r e_theta)|
WienerFitSamples wiener_samples(const Symbol& a, WindowKind wk, double s_window,
                                const std::vector<double>& radii, double t_spacing = 1.0,
                                int t_halfwidth = 2, int directions = 4,
                                const WeylParams& params = {});

// select the fitting window (moduli within [lo, hi] relative to the peak)
std::vector<std::pair<double, double>> select_fit_window(const WienerFitSamples& s,
                                                         double lo = 1e-12, double hi = 1e-2);

struct WienerFit {
  DecayFit fit;
  int n_used = 0;
  double r_lo = 0.0, r_hi = 0.0;
  bool window_fallback = false;  // moduli window did not span a decade
};

// end-to-end Wiener-characterization fit: sup_T windowed transforms over a
// geometric radius ladder, moduli-window selection, stretched-exponential fit
WienerFit wiener_rho_fit(const Symbol& a, WindowKind wk, double s_window,
                         int t_halfwidth = 2, const WeylParams& params = {});

}  // namespace bargweyl
