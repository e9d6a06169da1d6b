#pragma once

#include <vector>

#include "bargweyl/phase_space.hpp"

namespace bargweyl {

// Tensor trapezoid rule on [-R, R]^2 (n = 1: the two real coordinates of x).
// Spectrally accurate for smooth Gaussian-decaying integrands that die out
// before the box edge.
class QuadRule {
 public:
  QuadRule(double R, int M);

  double R() const { return R_; }
  int M() const { return M_; }
  int size() const { return M_ * M_; }
  double node1d(int i) const { return nodes_[i]; }
  double weight1d(int i) const { return weights_[i]; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double spacing() const { return nodes_[1] - nodes_[0]; }

  // |int_box e^{-|x|^2/h} - pi h| / (pi h); sanity anchor for defaults
  double gaussian_exactness_residual(double h) const;

  // smallest M for which the phase exp(i omega * coordinate) is sampled with
  // >= pts_per_wavelength points across this box
  static int min_M_for_oscillation(double R, double omega, double pts_per_wavelength = 6.0);

  // box sized so that r^{2 maxdeg} exp(-2 lambda r^2 / h) at the edge is below
  // exp(-40) of its peak; extra is added to R for translated integrands.
  static QuadRule for_gaussian_decay(double lambda_min, double h, int maxdeg,
                                     double extra = 0.0, int M = 128);

 private:
  double R_;
  int M_;
  std::vector<double> nodes_, weights_;
};

bool oscillation_safe(const QuadRule& rule, double omega, double pts_per_wavelength = 6.0);

}  // namespace bargweyl
