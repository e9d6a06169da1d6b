#include "bargweyl/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bargweyl {

LatticePartition::LatticePartition(Eigen::Matrix2d basis, double s, double support_factor)
    : basis_(std::move(basis)) {
  if (s <= 1.0) throw std::invalid_argument("LatticePartition: need s > 1");
  const Vec2d e1 = basis_.col(0), e2 = basis_.col(1);
  if (std::abs(basis_.determinant()) < 1e-12)
    throw std::invalid_argument("LatticePartition: degenerate lattice");
  const double half_diag = 0.5 * std::max((e1 + e2).norm(), (e1 - e2).norm());
  const double r = support_factor * half_diag;
  psi_ = gevrey_bump(s, r);
  const double smin = basis_.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV)
                          .singularValues()
                          .minCoeff();
  halo_ = static_cast<int>(std::ceil(r / smin)) + 1;
  // the denominator must be bounded away from zero on a cell
  double dmin = 1e300;
  for (int i = 0; i <= 16; ++i)
    for (int j = 0; j <= 16; ++j) {
      const Vec2d z = basis_ * Vec2d(i / 16.0 - 0.5, j / 16.0 - 0.5);
      dmin = std::min(dmin, denom(z));
    }
  if (dmin < 1e-12)
    throw std::invalid_argument("LatticePartition: bump support too small for the cell");
}

double LatticePartition::denom(const Vec2d& z) const {
  double acc = 0.0;
  for (int i = -halo_; i <= halo_; ++i)
    for (int j = -halo_; j <= halo_; ++j)
      acc += psi_.eval(z - basis_ * Vec2d(double(i), double(j)));
  return acc;
}

double LatticePartition::chi0(const Vec2d& z) const {
  const double p = psi_.eval(z);
  if (p == 0.0) return 0.0;
  return p / denom(z);
}

double LatticePartition::chij(const Vec2d& z, int j1, int j2) const {
  return chi0(z - basis_ * Vec2d(double(j1), double(j2)));
}

double LatticePartition::sum_translates(const Vec2d& z, int extent) const {
  double acc = 0.0;
  for (int i = -extent; i <= extent; ++i)
    for (int j = -extent; j <= extent; ++j) acc += chij(z, i, j);
  return acc;
}

LatticePartition partition_of_unity(const Eigen::Matrix2d& lattice, double s,
                                    double support_factor) {
  return LatticePartition(lattice, s, support_factor);
}

Symbol make_window(WindowKind kind, double s_window, double fourL, double h) {
  if (kind == WindowKind::Gaussian) {
    PSGauss g = PSGauss::isotropic(1.0, Vec2d::Zero(), std::sqrt(2.0 / M_PI));
    return Symbol::gaussian(std::move(g), fourL, h);
  }
  return Symbol::bump(gevrey_bump(s_window, 1.25), fourL, h);
}

Symbol translate_symbol(const Symbol& a, const Vec2d& t) {
  switch (a.kind()) {
    case SymbolKind::GaussianPoly:
      return Symbol::gaussian(a.psg().translated(t), a.fourL(), a.h());
    case SymbolKind::GevreyBump: {
      GevreyBump b = a.bump_payload();
      b.center += t;
      return Symbol::bump(b, a.fourL(), a.h());
    }
    default:
      throw std::invalid_argument("translate_symbol: closed-form kinds only");
  }
}

cplx windowed_transform_at(const Symbol& a, const Vec2d& T, const Symbol& window,
                           const Vec2d& Z, const QuadRule& rule, const WeylParams& params) {
  if (a.kind() == SymbolKind::GaussianPoly && window.kind() == SymbolKind::GaussianPoly) {
    PSGauss prod = window.psg().translated(T).times(a.psg());
    PSGauss F = psg_fourier(prod, a.fourL() / 4.0, a.h());
    return F.eval(Z);
  }
  Symbol wt = translate_symbol(window, T);
  Symbol prod = Symbol::windowed(std::move(wt), a, Vec2d::Zero());
  return fourier_symplectic_at(prod, Z, rule, params);
}

Symbol windowed_transform(const Symbol& a, const Vec2d& T, const Symbol& window,
                          const QuadRule& out_grid, const WeylParams& params) {
  if (a.kind() == SymbolKind::GaussianPoly && window.kind() == SymbolKind::GaussianPoly) {
    PSGauss prod = window.psg().translated(T).times(a.psg());
    PSGauss F = psg_fourier(prod, a.fourL() / 4.0, a.h());
    return Symbol::gaussian(std::move(F), a.fourL(), a.h());
  }
  Symbol wt = translate_symbol(window, T);
  Symbol prod = Symbol::windowed(std::move(wt), a, Vec2d::Zero());
  return fourier_symplectic(prod, out_grid, params);
}

namespace {

struct LinFit {
  double slope = 0.0, intercept = 0.0, sse = 0.0;
  int n = 0;
};

LinFit linreg(const std::vector<double>& x, const std::vector<double>& y) {
  LinFit f;
  f.n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < f.n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double d = f.n * sxx - sx * sx;
  f.slope = (f.n * sxy - sx * sy) / d;
  f.intercept = (sy - f.slope * sx) / f.n;
  for (int i = 0; i < f.n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    f.sse += r * r;
  }
  return f;
}

// inner regression for fixed A: y = log(-log(|v|/A)) against log r
double fit_sse_for_A(const std::vector<std::pair<double, double>>& s, double A, LinFit* out) {
  std::vector<double> x, y;
  x.reserve(s.size());
  y.reserve(s.size());
  for (const auto& [r, m] : s) {
    const double t = -std::log(m / A);
    if (t <= 0.0) return 1e300;
    x.push_back(std::log(r));
    y.push_back(std::log(t));
  }
  LinFit f = linreg(x, y);
  if (out) *out = f;
  return f.sse;
}

}  // namespace

DecayFit decay_fit(const std::vector<std::pair<double, double>>& samples,
                   double residual_threshold, bool enforce_decade) {
  if (samples.size() < 8)
    throw std::invalid_argument("decay_fit: need at least 8 radii");
  double rmin = 1e300, rmax = 0.0, mmax = 0.0;
  for (const auto& [r, m] : samples) {
    if (!(m > 0.0)) throw std::invalid_argument("decay_fit: moduli must be positive");
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    mmax = std::max(mmax, m);
  }
  if (enforce_decade && rmax / rmin < 9.99)
    throw std::invalid_argument("decay_fit: radii must span at least one decade");

  // outer search over the amplitude A in log space; the SSE profile can have
  // a shallow far tail, so bracket the basin with a coarse scan first
  const double blo = std::log(mmax * (1.0 + 1e-9));
  const double bhi = std::log(mmax) + 4.0;
  const int n_scan = 160;
  int best = 1;
  double best_sse = 1e300;
  for (int k = 0; k <= n_scan; ++k) {
    const double la = blo + (bhi - blo) * k / n_scan;
    const double sse = fit_sse_for_A(samples, std::exp(la), nullptr);
    if (sse < best_sse) {
      best_sse = sse;
      best = k;
    }
  }
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = blo + (bhi - blo) * std::max(0, best - 1) / n_scan;
  double hi = blo + (bhi - blo) * std::min(n_scan, best + 1) / n_scan;
  double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
  double f1 = fit_sse_for_A(samples, std::exp(x1), nullptr);
  double f2 = fit_sse_for_A(samples, std::exp(x2), nullptr);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = fit_sse_for_A(samples, std::exp(x1), nullptr);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = fit_sse_for_A(samples, std::exp(x2), nullptr);
    }
  }
  const double A = std::exp(0.5 * (lo + hi));
  LinFit f;
  fit_sse_for_A(samples, A, &f);

  DecayFit out;
  out.A = A;
  out.rho = f.slope;
  out.clamped = false;
  if (out.rho > 1.0) {
    out.rho = 1.0;
    out.clamped = true;
  }
  if (out.rho <= 0.0) {
    out.rho = 1e-6;
    out.clamped = true;
  }
  // refit log C at the (possibly clamped) rho
  double acc = 0.0;
  int n = 0;
  for (const auto& [r, m] : samples) {
    const double y = std::log(-std::log(m / A));
    acc += out.rho * std::log(r) - y;
    ++n;
  }
  const double logC = acc / n;
  out.C = std::exp(logC);
  double sse = 0.0;
  for (const auto& [r, m] : samples) {
    const double y = std::log(-std::log(m / A));
    const double res = y - (out.rho * std::log(r) - logC);
    sse += res * res;
  }
  out.residual = std::sqrt(sse / n);
  out.flagged = out.clamped || out.residual > residual_threshold;
  return out;
}

WienerFitSamples wiener_samples(const Symbol& a, WindowKind wk, double s_window,
                                const std::vector<double>& radii, double t_spacing,
                                int t_halfwidth, int directions, const WeylParams& params) {
  const Symbol window = make_window(wk, s_window, a.fourL(), a.h());
  const bool closed =
      a.kind() == SymbolKind::GaussianPoly && window.kind() == SymbolKind::GaussianPoly;

  WienerFitSamples out;
  out.samples.reserve(radii.size());

  std::vector<Vec2d> tpts;
  for (int i = -t_halfwidth; i <= t_halfwidth; ++i)
    for (int j = -t_halfwidth; j <= t_halfwidth; ++j)
      tpts.emplace_back(t_spacing * i, t_spacing * j);

  std::vector<Symbol> prods;
  double Rbox = 0.0;
  if (!closed) {
    prods.reserve(tpts.size());
    for (const auto& T : tpts) {
      Symbol wt = translate_symbol(window, T);
      Symbol prod = Symbol::windowed(std::move(wt), a, Vec2d::Zero());
      Rbox = std::max(Rbox, prod.decay_radius(params.trunc));
      prods.push_back(std::move(prod));
    }
  }

  for (double r : radii) {
    double sup = 0.0;
    // the oscillatory axis is sized per radius (the rotated-frame transform
    // resolves the phase on one axis only)
    int M2 = 0;
    if (!closed) {
      const double omega = 2.0 * a.fourL() * r / a.h();
      M2 = std::max(params.min_M,
                    QuadRule::min_M_for_oscillation(Rbox, omega, params.pts_per_wavelength));
      M2 = std::min(M2, params.max_M);
    }
    for (std::size_t ti = 0; ti < tpts.size(); ++ti) {
      for (int k = 0; k < directions; ++k) {
        const double th = M_PI * k / directions;  // modulus has antipodal symmetry
        const Vec2d Z(r * std::cos(th), r * std::sin(th));
        cplx v;
        if (closed) {
          PSGauss prod = window.psg().translated(tpts[ti]).times(a.psg());
          v = psg_fourier(prod, a.fourL() / 4.0, a.h()).eval(Z);
        } else {
          const QuadRule rule(Rbox, M2);
          v = fourier_symplectic_at(prods[ti], Z, rule, params);
        }
        sup = std::max(sup, std::abs(v));
      }
    }
    out.samples.emplace_back(r, sup);
    out.peak = std::max(out.peak, sup);
  }
  return out;
}

std::vector<std::pair<double, double>> select_fit_window(const WienerFitSamples& s, double lo,
                                                         double hi) {
  std::vector<std::pair<double, double>> out;
  for (const auto& [r, m] : s.samples)
    if (m >= lo * s.peak && m <= hi * s.peak) out.emplace_back(r, m);
  return out;
}

WienerFit wiener_rho_fit(const Symbol& a, WindowKind wk, double s_window, int t_halfwidth,
                         const WeylParams& params_in) {
  WeylParams params = params_in;
  params.pts_per_wavelength = std::max(params.pts_per_wavelength, 9.0);
  params.max_M = std::max(params.max_M, 8192);
  std::vector<double> radii;
  const int n_radii = 26;
  for (int k = 0; k < n_radii; ++k)
    radii.push_back(0.1 * std::pow(200.0, double(k) / (n_radii - 1)));  // 0.1 .. 20
  WienerFitSamples ws = wiener_samples(a, wk, s_window, radii, 0.7, t_halfwidth, 4, params);
  auto win = select_fit_window(ws);
  WienerFit out;
  out.window_fallback = win.size() < 8 || win.back().first / win.front().first < 9.9;
  if (out.window_fallback) {
    // pad with the nearest samples below the window (the fast-decaying case:
    // the moduli range cannot span a radius decade)
    std::vector<std::pair<double, double>> padded;
    for (const auto& [r, m] : ws.samples)
      if (m >= 1e-13 * ws.peak && m <= 2e-1 * ws.peak) padded.emplace_back(r, m);
    if (padded.size() >= 8) {
      win = std::move(padded);
    } else {
      win.clear();
      for (const auto& [r, m] : ws.samples)
        if (m > 0.0) win.emplace_back(r, m);
    }
  }
  out.fit = decay_fit(win, 0.35, /*enforce_decade=*/false);
  out.fit.flagged = out.fit.flagged || out.window_fallback;
  out.n_used = static_cast<int>(win.size());
  out.r_lo = win.front().first;
  out.r_hi = win.back().first;
  return out;
}

}  // namespace bargweyl
