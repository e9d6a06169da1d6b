#include "bargweyl/quad.hpp"

#include <cmath>
#include <stdexcept>

namespace bargweyl {

QuadRule::QuadRule(double R, int M) : R_(R), M_(M) {
  if (R <= 0.0 || M < 2) throw std::invalid_argument("QuadRule: need R > 0, M >= 2");
  nodes_.resize(M);
  weights_.resize(M);
  const double d = 2.0 * R / (M - 1);
  for (int i = 0; i < M; ++i) {
    nodes_[i] = -R + i * d;
    weights_[i] = d;
  }
  weights_.front() *= 0.5;
  weights_.back() *= 0.5;
}

double QuadRule::gaussian_exactness_residual(double h) const {
  double acc = 0.0;
  for (int i = 0; i < M_; ++i) {
    double row = 0.0;
    for (int j = 0; j < M_; ++j)
      row += weights_[j] * std::exp(-(nodes_[i] * nodes_[i] + nodes_[j] * nodes_[j]) / h);
    acc += weights_[i] * row;
  }
  const double exact = M_PI * h;
  return std::abs(acc - exact) / exact;
}

int QuadRule::min_M_for_oscillation(double R, double omega, double pts_per_wavelength) {
  if (omega <= 0.0) return 2;
  const double wavelength = 2.0 * M_PI / omega;
  return static_cast<int>(std::ceil(2.0 * R / (wavelength / pts_per_wavelength))) + 1;
}

QuadRule QuadRule::for_gaussian_decay(double lambda_min, double h, int maxdeg,
                                      double extra, int M) {
  if (lambda_min <= 0.0) throw std::invalid_argument("for_gaussian_decay: lambda_min > 0");
  const double drop = 40.0;  // target: tail below e^{-40} of peak
  double R2;
  if (maxdeg <= 0) {
    R2 = drop * h / (2.0 * lambda_min);
  } else {
    // peak of r^{2N} e^{-2 lambda r^2/h} at r*^2 = N h/(2 lambda); solve
    // N (ln t - t + 1) = -drop for t = R^2/r*^2 by Newton
    const double N = maxdeg;
    double t = 3.0;
    for (int it = 0; it < 60; ++it) {
      double f = N * (std::log(t) - t + 1.0) + drop;
      double df = N * (1.0 / t - 1.0);
      double step = f / df;
      t -= step;
      if (t < 1.0 + 1e-9) t = 1.0 + 1e-9;
      if (std::abs(step) < 1e-12) break;
    }
    R2 = t * N * h / (2.0 * lambda_min);
    R2 = std::max(R2, drop * h / (2.0 * lambda_min));
  }
  return QuadRule(std::sqrt(R2) + extra, M);
}

bool oscillation_safe(const QuadRule& rule, double omega, double pts_per_wavelength) {
  if (omega <= 0.0) return true;
  return rule.spacing() <= (2.0 * M_PI / omega) / pts_per_wavelength;
}

}  // namespace bargweyl
