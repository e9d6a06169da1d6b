#include "bargweyl/symbol.hpp"

#include <cmath>
#include <limits>

namespace bargweyl {

double GevreyBump::eval(const Vec2d& z) const {
  const double u2 = (z - center).squaredNorm() / (r * r);
  if (u2 >= 1.0) return 0.0;
  return amplitude * std::exp(-std::pow(1.0 - u2, -1.0 / (s - 1.0)));
}

GevreyBump gevrey_bump(double s, double r, Vec2d center, double amplitude) {
  if (s <= 1.0) throw std::invalid_argument("gevrey_bump: need s > 1");
  if (r <= 0.0) throw std::invalid_argument("gevrey_bump: need r > 0");
  return {s, r, center, amplitude};
}

cplx Symbol::eval(const Vec2d& z) const {
  switch (kind_) {
    case SymbolKind::GaussianPoly:
      return psg_.eval(z);
    case SymbolKind::PlaneWave: {
      // exp(i ell(X)/h), ell(X) = sigma(X, H_ell) = 4L (z1 xs2 - z2 xs1)
      const double lv = fourL_ * (z.x() * xstar_.imag() - z.y() * xstar_.real());
      return std::exp(kI * lv / h_);
    }
    case SymbolKind::GevreyBump:
      return bump_.eval(z);
    case SymbolKind::Windowed:
      return win_->eval(z) * base_->eval(Vec2d(z - shift_));
    case SymbolKind::GridSampled: {
      // bilinear interpolation; exact at nodes
      const QuadRule& g = *grid_;
      const double d = g.spacing();
      const double fx = (z.x() + g.R()) / d;
      const double fy = (z.y() + g.R()) / d;
      const int i = static_cast<int>(std::floor(fx));
      const int j = static_cast<int>(std::floor(fy));
      if (i < 0 || j < 0 || i + 1 >= g.M() || j + 1 >= g.M()) return 0.0;
      const double tx = fx - i, ty = fy - j;
      const int M = g.M();
      const cplx v00 = vals_[i * M + j], v10 = vals_[(i + 1) * M + j];
      const cplx v01 = vals_[i * M + j + 1], v11 = vals_[(i + 1) * M + j + 1];
      return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
    }
  }
  return 0.0;
}

bool Symbol::integrable() const {
  switch (kind_) {
    case SymbolKind::GaussianPoly:
      return psg_.integrable();
    case SymbolKind::PlaneWave:
      return false;
    case SymbolKind::GevreyBump:
    case SymbolKind::GridSampled:
      return true;
    case SymbolKind::Windowed:
      return win_->integrable() || base_->integrable();
  }
  return false;
}

bool Symbol::polynomial_atom() const {
  return kind_ == SymbolKind::GaussianPoly && psg_.A.norm() == 0.0 && psg_.b.norm() == 0.0;
}

Symbol Symbol::gaussian(PSGauss g, double fourL, double h) {
  Symbol s;
  s.kind_ = SymbolKind::GaussianPoly;
  s.psg_ = std::move(g);
  s.fourL_ = fourL;
  s.h_ = h;
  return s;
}

Symbol Symbol::plane_wave(cplx xstar, double fourL, double h) {
  Symbol s;
  s.kind_ = SymbolKind::PlaneWave;
  s.xstar_ = xstar;
  s.fourL_ = fourL;
  s.h_ = h;
  return s;
}

Symbol Symbol::bump(GevreyBump b, double fourL, double h) {
  Symbol s;
  s.kind_ = SymbolKind::GevreyBump;
  s.bump_ = b;
  s.fourL_ = fourL;
  s.h_ = h;
  return s;
}

Symbol Symbol::windowed(Symbol window, Symbol base, Vec2d base_shift) {
  if (window.h() != base.h())
    throw std::invalid_argument("Symbol::windowed: mismatched h");
  Symbol s;
  s.kind_ = SymbolKind::Windowed;
  s.h_ = window.h();
  s.fourL_ = window.fourL();
  s.win_ = std::make_shared<Symbol>(std::move(window));
  s.base_ = std::make_shared<Symbol>(std::move(base));
  s.shift_ = base_shift;
  return s;
}

Symbol Symbol::grid_sampled(QuadRule grid, std::vector<cplx> values, double fourL, double h) {
  if (static_cast<int>(values.size()) != grid.size())
    throw std::invalid_argument("Symbol::grid_sampled: value count != grid size");
  Symbol s;
  s.kind_ = SymbolKind::GridSampled;
  s.grid_ = std::make_shared<QuadRule>(std::move(grid));
  s.vals_ = std::move(values);
  s.fourL_ = fourL;
  s.h_ = h;
  return s;
}

double Symbol::decay_radius(double trunc) const {
  if (kind_ == SymbolKind::PlaneWave) return std::numeric_limits<double>::infinity();
  if (kind_ == SymbolKind::GevreyBump) return bump_.r + bump_.center.norm();
  if (kind_ == SymbolKind::GridSampled) return grid_->R();
  // probe along rays, starting well inside so narrow peaks are not skipped
  double peak = std::abs(eval(Vec2d::Zero()));
  double rout = 1e-3;
  double last_above = 1e-3;
  for (; rout < 64.0; rout *= 1.12) {
    double m = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double th = 2.0 * M_PI * k / 16.0;
      m = std::max(m, std::abs(eval(Vec2d(rout * std::cos(th), rout * std::sin(th)))));
    }
    peak = std::max(peak, m);
    if (m >= trunc * peak)
      last_above = rout;
    else if (rout > 4.0 * last_above && peak > 0.0)
      break;  // a full decade past the last live radius
  }
  return std::min(rout, 1.25 * last_above + 1e-3);
}

}  // namespace bargweyl
