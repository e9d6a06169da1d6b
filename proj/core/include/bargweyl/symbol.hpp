#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "bargweyl/psgauss.hpp"
#include "bargweyl/quad.hpp"

namespace bargweyl {

// compactly supported Gevrey-s profile on Lambda ~ R^2:
//   amplitude * exp(-(1 - |z-center|^2/r^2)^{-1/(s-1)})  inside,  0 outside
struct GevreyBump {
  double s = 2.0;
  double r = 1.0;
  Vec2d center = Vec2d::Zero();
  double amplitude = 1.0;

  double eval(const Vec2d& z) const;
};

GevreyBump gevrey_bump(double s, double r, Vec2d center = Vec2d::Zero(),
                       double amplitude = 1.0);

enum class SymbolKind { GaussianPoly, PlaneWave, GevreyBump, Windowed, GridSampled };

// A symbol on Lambda_{Phi0} ~ C^n (n = 1), evaluated in pi_x coordinates.
class Symbol {
 public:
  SymbolKind kind() const { return kind_; }
  double h() const { return h_; }
  double fourL() const { return fourL_; }  // sigma density on Lambda

  cplx eval(const Vec2d& z) const;
  cplx eval(cplx z) const { return eval(to_vec2(z)); }

  // integrable against the twisted Fourier transform (PlaneWave is not;
  // GaussianPoly with vanishing quadratic part is a polynomial atom)
  bool integrable() const;
  bool polynomial_atom() const;

  static Symbol gaussian(PSGauss g, double fourL, double h);
  static Symbol plane_wave(cplx xstar, double fourL, double h);
  static Symbol bump(GevreyBump b, double fourL, double h);
  static Symbol windowed(Symbol window, Symbol base, Vec2d base_shift);
  static Symbol grid_sampled(QuadRule grid, std::vector<cplx> values, double fourL, double h);

  const PSGauss& psg() const { return req(kind_ == SymbolKind::GaussianPoly), psg_; }
  cplx plane_xstar() const { return req(kind_ == SymbolKind::PlaneWave), xstar_; }
  const GevreyBump& bump_payload() const { return req(kind_ == SymbolKind::GevreyBump), bump_; }
  const Symbol& window_factor() const { return req(kind_ == SymbolKind::Windowed), *win_; }
  const Symbol& windowed_base() const { return req(kind_ == SymbolKind::Windowed), *base_; }
  const Vec2d& base_shift() const { return req(kind_ == SymbolKind::Windowed), shift_; }
  const QuadRule& grid() const { return req(kind_ == SymbolKind::GridSampled), *grid_; }
  const std::vector<cplx>& values() const { return req(kind_ == SymbolKind::GridSampled), vals_; }

  // radius beyond which |a| < trunc * (peak |a|), probed on the axes;
  // infinity for PlaneWave
  double decay_radius(double trunc = 1e-10) const;

 private:
  Symbol() = default;
  static bool req(bool ok) {
    if (!ok) throw std::logic_error("Symbol: wrong payload access");
    return ok;
  }

  SymbolKind kind_ = SymbolKind::GaussianPoly;
  double h_ = 1.0;
  double fourL_ = 2.0;
  PSGauss psg_;
  cplx xstar_ = 0.0;
  GevreyBump bump_;
  std::shared_ptr<const Symbol> win_, base_;
  Vec2d shift_ = Vec2d::Zero();
  std::shared_ptr<const QuadRule> grid_;
  std::vector<cplx> vals_;
};

}  // namespace bargweyl
