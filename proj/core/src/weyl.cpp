#include "bargweyl/weyl.hpp"

#include <cmath>
#include <stdexcept>

namespace bargweyl {

namespace {

void warn(const WeylParams& p, const std::string& msg) {
  if (p.warnings) p.warnings->push_back(msg);
}

double sigma_lambda_coords(double fourL, const Vec2d& z, const Vec2d& s) {
  return fourL * (z.x() * s.y() - z.y() * s.x());
}

}  // namespace

// ---- symplectic Fourier transform --------------------------------------

Symbol fourier_symplectic_closed(const Symbol& a) {
  if (a.kind() != SymbolKind::GaussianPoly)
    throw std::invalid_argument("fourier_symplectic_closed: GaussianPoly only");
  PSGauss out = psg_fourier(a.psg(), a.fourL() / 4.0, a.h());
  return Symbol::gaussian(std::move(out), a.fourL(), a.h());
}

cplx fourier_symplectic_at(const Symbol& a, const Vec2d& Z, const QuadRule& rule,
                           const WeylParams& params) {
  if (!a.integrable())
    throw std::invalid_argument("fourier_symplectic: non-integrable symbol (plane wave)");
  const double h = a.h();
  const double fourL = a.fourL();
  const double omega = 2.0 * fourL * Z.norm() / h;
  if (!oscillation_safe(rule, omega, params.pts_per_wavelength))
    warn(params, "fourier_symplectic_at: quadrature under-resolves the oscillation");
  // integrate in the frame aligned with Z: the phase is 2 sigma(Z,S)/h =
  // (2 fourL |Z|/h) t2 there, so only the t2 axis needs the oscillatory
  // resolution; the t1 axis resolves the symbol alone
  const double r = Z.norm();
  Vec2d e1(1.0, 0.0), e2(0.0, 1.0);
  if (r > 0.0) {
    e1 = Z / r;
    e2 = Vec2d(-e1.y(), e1.x());
  }
  const int M2 = rule.M();
  const int M1 = std::min(M2, std::max(params.min_M, 128));
  const QuadRule smooth(rule.R(), M1);
  cplx acc = 0.0;
  for (int j = 0; j < M2; ++j) {
    const double t2 = rule.node1d(j);
    const cplx ph = std::exp(kI * (omega * t2));
    cplx row = 0.0;
    for (int i = 0; i < M1; ++i) {
      const double t1 = smooth.node1d(i);
      row += smooth.weight1d(i) * a.eval(Vec2d(t1 * e1 + t2 * e2));
    }
    acc += rule.weight1d(j) * ph * row;
  }
  return acc * fourL / (M_PI * h);
}

QuadRule rule_for_symbol(const Symbol& a, double maxZ, const WeylParams& params) {
  const double R = a.decay_radius(params.trunc);
  if (!std::isfinite(R)) throw std::invalid_argument("rule_for_symbol: symbol does not decay");
  const double omega = 2.0 * a.fourL() * maxZ / a.h();
  int M = QuadRule::min_M_for_oscillation(R, omega, params.pts_per_wavelength);
  M = std::max(M, params.min_M);
  if (M > params.max_M) {
    warn(params, "rule_for_symbol: clamped M from " + std::to_string(M));
    M = params.max_M;
  }
  return QuadRule(R, M);
}

Symbol fourier_symplectic(const Symbol& a, const QuadRule& out_grid, const WeylParams& params) {
  if (a.kind() == SymbolKind::GaussianPoly) {
    Symbol closed = fourier_symplectic_closed(a);
    std::vector<cplx> vals(out_grid.size());
    const int M = out_grid.M();
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j)
        vals[i * M + j] = closed.eval(Vec2d(out_grid.node1d(i), out_grid.node1d(j)));
    return Symbol::grid_sampled(out_grid, std::move(vals), a.fourL(), a.h());
  }
  const QuadRule in_rule = rule_for_symbol(a, out_grid.R() * std::sqrt(2.0), params);
  std::vector<cplx> vals(out_grid.size());
  const int M = out_grid.M();
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      vals[i * M + j] =
          fourier_symplectic_at(a, Vec2d(out_grid.node1d(i), out_grid.node1d(j)), in_rule, params);
  return Symbol::grid_sampled(out_grid, std::move(vals), a.fourL(), a.h());
}

// ---- twisted convolution and composition --------------------------------

cplx twisted_convolution_at(const Symbol& u, const Symbol& v, const Vec2d& X,
                            const QuadRule& rule, const WeylParams& params) {
  if (!u.integrable() && !v.integrable())
    throw std::invalid_argument("twisted_convolution: both factors non-integrable");
  const double h = u.h();
  const double fourL = u.fourL();
  const double omega = 2.0 * fourL * X.norm() / h;
  if (!oscillation_safe(rule, omega, params.pts_per_wavelength))
    warn(params, "twisted_convolution_at: quadrature under-resolves the oscillation");
  const double F = 2.0 * fourL / h;
  cplx acc = 0.0;
  const int M = rule.M();
  for (int i = 0; i < M; ++i) {
    const double y1 = rule.node1d(i);
    cplx row = 0.0;
    for (int j = 0; j < M; ++j) {
      const double y2 = rule.node1d(j);
      const double phase = F * (X.x() * y2 - X.y() * y1);
      row += rule.weight1d(j) * std::exp(kI * phase) *
             u.eval(Vec2d(X.x() - y1, X.y() - y2)) * v.eval(Vec2d(y1, y2));
    }
    acc += rule.weight1d(i) * row;
  }
  return acc * fourL;  // dY = 4L * Lebesgue
}

Symbol twisted_convolution(const Symbol& u, const Symbol& v, const QuadRule& out_grid,
                           const WeylParams& params) {
  const double Rv = v.integrable() ? v.decay_radius(params.trunc) : 0.0;
  const double Ru = u.integrable() ? u.decay_radius(params.trunc) : 0.0;
  double Rin;
  if (u.integrable() && v.integrable())
    Rin = std::min(Rv, Ru + out_grid.R());
  else if (v.integrable())
    Rin = Rv;
  else
    Rin = Ru + out_grid.R();
  const double omega = 2.0 * u.fourL() * out_grid.R() / u.h();
  int M = std::max(params.min_M, QuadRule::min_M_for_oscillation(Rin, omega, params.pts_per_wavelength));
  if (M > params.max_M) {
    warn(params, "twisted_convolution: clamped M");
    M = params.max_M;
  }
  QuadRule in_rule(Rin, M);
  std::vector<cplx> vals(out_grid.size());
  const int Mo = out_grid.M();
  for (int i = 0; i < Mo; ++i)
    for (int j = 0; j < Mo; ++j)
      vals[i * Mo + j] = twisted_convolution_at(
          u, v, Vec2d(out_grid.node1d(i), out_grid.node1d(j)), in_rule, params);
  return Symbol::grid_sampled(out_grid, std::move(vals), u.fourL(), u.h());
}

cplx compose_direct(const Symbol& a, const Symbol& b, const Vec2d& X, const QuadRule& rule,
                    const WeylParams& params) {
  // comp15: (pi h)^{-2n} II e^{-2 i sigma(Y,Z)/h} a(X+Y) b(X+Z) dY dZ.
  // The inner transform runs over the integrable factor; the summation is
  // factored through the separable phase, O(M^3) for the M^2 x M^2 grid.
  const Symbol* inner = &a;
  const Symbol* outer = &b;
  double phase_sign = -1.0;  // e^{-2 i sigma(Y,Z)/h}, Y the inner variable
  if (!inner->integrable()) {
    std::swap(inner, outer);
    phase_sign = 1.0;  // sigma(Z,Y) = -sigma(Y,Z)
    if (!inner->integrable())
      throw std::invalid_argument("compose_direct: no integrable factor");
  }
  const double h = a.h();
  const double fourL = a.fourL();
  const double F = 2.0 * fourL / h;
  const int M = rule.M();
  const double omega = F * rule.R();
  if (!oscillation_safe(rule, omega, params.pts_per_wavelength))
    warn(params, "compose_direct: quadrature under-resolves the oscillation");

  // inner-factor values with weights
  CMat av(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      av(i, j) = rule.weight1d(i) * rule.weight1d(j) *
                 inner->eval(Vec2d(X.x() + rule.node1d(i), X.y() + rule.node1d(j)));
  // phase table T(i,j) = exp(i * sgn * F * t_i t_j)
  CMat pt(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      pt(i, j) = std::exp(kI * (phase_sign * F * rule.node1d(i) * rule.node1d(j)));
  // inner(z1,z2) = sum_{y1,y2} e^{sgn i F (y1 z2 - y2 z1)} av(y1,y2)
  // step 1 over y1: G(z2, y2) = sum_{y1} pt(y1, z2) av(y1, y2)
  CMat G = pt.transpose() * av;
  // step 2 over y2: inner(z1, z2) = sum_{y2} conj(pt(y2, z1)) G(z2, y2)
  // conj(pt(y2,z1)) = exp(-sgn i F y2 z1)
  CMat innerM = (pt.adjoint() * G.transpose());  // (z1, z2)
  cplx acc = 0.0;
  for (int i = 0; i < M; ++i) {
    cplx row = 0.0;
    for (int j = 0; j < M; ++j)
      row += rule.weight1d(j) * innerM(i, j) *
             outer->eval(Vec2d(X.x() + rule.node1d(i), X.y() + rule.node1d(j)));
    acc += rule.weight1d(i) * row;
  }
  const double pref = fourL * fourL / std::pow(M_PI * h, 2.0);
  return acc * pref;
}

cplx compose_fourier_at(const Symbol& a, const Symbol& b, const Vec2d& X,
                        const QuadRule& rule, const WeylParams& params) {
  const double h = a.h();
  if (b.kind() == SymbolKind::GaussianPoly) {
    Symbol Fb = fourier_symplectic_closed(b);
    return twisted_convolution_at(a, Fb, X, rule, params) / (M_PI * h);
  }
  const QuadRule bgrid = rule_for_symbol(b, rule.R() + X.norm() + 1.0, params);
  Symbol Fb = fourier_symplectic(b, bgrid, params);
  return twisted_convolution_at(a, Fb, X, rule, params) / (M_PI * h);
}

Symbol compose_fourier(const Symbol& a, const Symbol& b, const QuadRule& out_grid,
                       const WeylParams& params) {
  const double h = a.h();
  Symbol Fb = (b.kind() == SymbolKind::GaussianPoly)
                  ? fourier_symplectic_closed(b)
                  : fourier_symplectic(b, rule_for_symbol(b, out_grid.R() * 2.0, params), params);
  const double Rv = Fb.decay_radius(params.trunc);
  const double Ru = a.integrable() ? a.decay_radius(params.trunc) : 0.0;
  const double Rin = a.integrable() ? std::min(Rv, Ru + out_grid.R()) : Rv;
  const double omega = 2.0 * a.fourL() * out_grid.R() / h;
  int M = std::max(params.min_M, QuadRule::min_M_for_oscillation(Rin, omega, params.pts_per_wavelength));
  M = std::min(M, params.max_M);
  QuadRule in_rule(Rin, M);
  std::vector<cplx> vals(out_grid.size());
  const int Mo = out_grid.M();
  for (int i = 0; i < Mo; ++i)
    for (int j = 0; j < Mo; ++j)
      vals[i * Mo + j] = twisted_convolution_at(
                             a, Fb, Vec2d(out_grid.node1d(i), out_grid.node1d(j)), in_rule,
                             params) /
                         (M_PI * h);
  return Symbol::grid_sampled(out_grid, std::move(vals), a.fourL(), a.h());
}

PSGauss compose_sharp_gaussian(const PSGauss& a, const PSGauss& b, double fourL, double h) {
  const double Lmix = fourL / 4.0;
  PSGauss Fb = psg_fourier(b, Lmix, h);
  PSGauss conv = psg_twisted_conv(a, Fb, Lmix, h);
  return conv.scaled(1.0 / (M_PI * h));
}

Symbol compose_plane_wave(const LinearFormOnLambda& ell, const Symbol& a, Side side,
                          const QuadraticWeight& w) {
  (void)w;
  const cplx xs = ell.xstar1();
  Symbol pw = Symbol::plane_wave(xs, a.fourL(), a.h());
  // e^{i ell/h} # a = e^{i ell(X)/h} a(X + H_ell/2): base evaluated at z + xs/2
  const Vec2d shift = (side == Side::Left) ? Vec2d(-to_vec2(xs) / 2.0) : Vec2d(to_vec2(xs) / 2.0);
  return Symbol::windowed(std::move(pw), a, shift);
}

// ---- quantization --------------------------------------------------------

CMat magnetic_matrix(const MagneticTranslation& t, const GramBasis& basis) {
  const int B = basis.size();
  const double h = basis.h();
  const cplx Q = basis.family_q2();
  const cplx lx = double(t.sign) * t.form.ell_x1();
  const cplx lxi = double(t.sign) * t.form.xstar1();
  const cplx z = lxi;
  const cplx dq1 = -2.0 * Q * z - kI * lx;
  const cplx dq0 = Q * z * z + 0.5 * kI * lx * lxi;
  if (!basis.weight().perturbed()) {
    const double L = basis.weight().base().l_scalar();
    const CMat Mom = pair_moments(dq1 / h, cplx(0.0), L, h, B - 1, B - 1);
    const CMat Mt = Mom * basis.coeff_raw().conjugate();  // (c,k)
    CMat T = CMat::Zero(B, B);
    for (int a = 0; a < B; ++a) {
      cplx zp = 1.0;
      double bin = 1.0;
      for (int j = 0; j <= a; ++j) {  // T(a, a-j) = C(a,j)(-z)^j
        T(a, a - j) = bin * zp;
        zp *= -z;
        bin = bin * double(a - j) / double(j + 1);
      }
    }
    const CMat Wgen = std::exp(dq0 / h) * (T * Mt);  // (a,k)
    return Wgen.transpose() * basis.coeff_raw();     // (k,j)
  }
  // perturbed weight: grid projection of exact applications
  CMat out(B, B);
  for (int j = 0; j < B; ++j) {
    const HoloFunction wj = apply(t, basis.basis_function(j));
    out.col(j) = basis.project_grid(wj);
  }
  return out;
}

HoloFunction apply_quadratic_weyl(const std::vector<cplx>& c, const HoloFunction& u) {
  if (c.size() != 6) throw std::invalid_argument("apply_quadratic_weyl: want 6 coefficients");
  // c = {xx, x xi, xi xi, x, xi, 1}
  const HoloFunction xu = u.times_x();
  const HoloFunction xxu = xu.times_x();
  const HoloFunction du = u.hD();
  const HoloFunction ddu = du.hD();
  const HoloFunction xdu = du.times_x();
  const HoloFunction dxu = xu.hD();
  HoloFunction out = xxu.scaled(c[0]);
  out = out + ddu.scaled(c[2]);
  out = out + (xdu + dxu).scaled(0.5 * c[1]);
  out = out + xu.scaled(c[3]);
  out = out + du.scaled(c[4]);
  out = out + u.scaled(c[5]);
  return out;
}

CMat quantize_polynomial(const Poly2& p, const GramBasis& basis) {
  int total_deg = 0;
  for (int i = 0; i <= p.deg1(); ++i)
    for (int j = 0; j <= p.deg2(); ++j)
      if (p.c(i, j) != cplx(0.0)) total_deg = std::max(total_deg, i + j);
  if (total_deg > 2)
    throw std::invalid_argument("quantize_polynomial: degree <= 2 only");
  const cplx Q = basis.weight().base().q_scalar();
  const double L = basis.weight().base().l_scalar();
  // z1 = ((L-Q)x + (i/2)xi)/(2L);  z2 = ((L+Q)x - (i/2)xi)/(2iL)
  const cplx a1 = (L - Q) / (2.0 * L), b1 = kI / (4.0 * L);
  const cplx a2 = (L + Q) / (2.0 * kI * L), b2 = -1.0 / (4.0 * L);
  // accumulate holomorphic quadratic {xx, x xi, xi xi, x, xi, 1}
  std::vector<cplx> c(6, cplx(0.0));
  auto add_lin = [&](cplx coef, cplx ax, cplx axi) {
    c[3] += coef * ax;
    c[4] += coef * axi;
  };
  auto add_quad = [&](cplx coef, cplx ax, cplx axi, cplx bx, cplx bxi) {
    c[0] += coef * ax * bx;
    c[1] += coef * (ax * bxi + axi * bx);
    c[2] += coef * axi * bxi;
  };
  for (int i = 0; i <= p.deg1(); ++i)
    for (int j = 0; j <= p.deg2(); ++j) {
      const cplx coef = p.c(i, j);
      if (coef == cplx(0.0)) continue;
      const int d = i + j;
      if (d == 0) c[5] += coef;
      else if (d == 1) {
        if (i == 1) add_lin(coef, a1, b1);
        else add_lin(coef, a2, b2);
      } else {
        if (i == 2) add_quad(coef, a1, b1, a1, b1);
        else if (j == 2) add_quad(coef, a2, b2, a2, b2);
        else add_quad(coef, a1, b1, a2, b2);
      }
    }
  const int B = basis.size();
  CMat out(B, B);
  const bool exact = !basis.weight().perturbed();
  for (int j = 0; j < B; ++j) {
    const HoloFunction v = apply_quadratic_weyl(c, basis.basis_function(j));
    out.col(j) = exact ? basis.project_exact(v) : basis.project_grid(v);
  }
  return out;
}

OperatorMatrix quantize_superposition(const Symbol& a, const GramBasis& basis,
                                      const WeylParams& params) {
  const double h = basis.h();
  if (a.h() != h) throw std::invalid_argument("quantize_superposition: mismatched h");
  const QuadraticWeight& w = basis.weight().base();
  OperatorMatrix out;
  out.h = h;
  out.N = basis.max_degree();
  out.basis_tag = "H_Phi0 gram basis";

  if (a.kind() == SymbolKind::PlaneWave) {
    // Op(e^{i ell/h}) = e^{i ell(x,hD)/h} = W(H_ell), exactly
    MagneticTranslation t{linear_form(a.plane_xstar(), w), w, h, -1};
    out.entries = magnetic_matrix(t, basis);
    return out;
  }
  if (a.polynomial_atom()) {
    out.entries = quantize_polynomial(a.psg().p, basis);
    return out;
  }
  if (!a.integrable())
    throw std::invalid_argument("quantize_superposition: symbol not integrable");

  const double L = w.l_scalar();
  const double dens = a.fourL();
  // reach of the compressed magnetic matrices: basis radius + coherent width
  const double reach =
      std::sqrt(double(basis.max_degree() + 1) * h / L) + std::sqrt(h * 40.0 / L) + 0.5;

  const bool closed = (a.kind() == SymbolKind::GaussianPoly);
  Symbol Fa = closed ? fourier_symplectic_closed(a) : a;  // numeric path samples below
  double Ry;
  double fwidth = 0.0;  // Gaussian width of F_h a when known
  if (closed) {
    Ry = std::min(Fa.decay_radius(params.trunc), reach / 2.0);
    const double lmax = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(Fa.psg().A.real())
                            .eigenvalues()
                            .maxCoeff();
    if (lmax > 0.0) fwidth = 1.0 / std::sqrt(lmax);
  } else {
    Ry = reach / 2.0;
  }
  const double omega_y = (2.0 * dens / h) * std::min(reach, std::sqrt(double(out.N) * h / L) + 1.0);
  int My = std::max(24, QuadRule::min_M_for_oscillation(Ry, omega_y, params.pts_per_wavelength));
  if (fwidth > 0.0)  // resolve the transform's own profile
    My = std::max(My, static_cast<int>(std::ceil(2.0 * Ry / (fwidth / 3.0))) + 1);
  if (My > params.max_M) {
    warn(params, "quantize_superposition: clamped Y-grid");
    My = params.max_M;
  }
  QuadRule yrule(Ry, My);

  // F_h a on the Y grid
  CMat fvals(My, My);
  if (closed) {
    for (int i = 0; i < My; ++i)
      for (int j = 0; j < My; ++j)
        fvals(i, j) = Fa.eval(Vec2d(yrule.node1d(i), yrule.node1d(j)));
  } else {
    const QuadRule in_rule = rule_for_symbol(a, Ry, params);
    for (int i = 0; i < My; ++i)
      for (int j = 0; j < My; ++j)
        fvals(i, j) =
            fourier_symplectic_at(a, Vec2d(yrule.node1d(i), yrule.node1d(j)), in_rule, params);
  }
  const double fmax = fvals.cwiseAbs().maxCoeff();

  const int B = basis.size();
  CMat acc = CMat::Zero(B, B);
  for (int i = 0; i < My; ++i)
    for (int j = 0; j < My; ++j) {
      const cplx f = fvals(i, j);
      if (std::abs(f) < params.trunc * fmax) continue;
      const cplx wgt = f * yrule.weight1d(i) * yrule.weight1d(j) * dens / (M_PI * h);
      const cplx y(yrule.node1d(i), yrule.node1d(j));
      acc += wgt * magnetic_matrix(MagneticTranslation::W2(y, w, h), basis);
    }
  out.entries = std::move(acc);
  return out;
}

namespace {
// contour kernel at (x, y): (2L/(2 pi h)) e^{(i/h)(x-y) theta((x+y)/2)} a((x+y)/2)
inline cplx contour_theta(const QuadraticWeight& w, cplx xm) {
  return (2.0 / kI) * (w.q_scalar() * xm + w.l_scalar() * std::conj(xm));
}
}  // namespace

cplx quantize_direct(const Symbol& a, const HoloFunction& u, cplx x, const QuadraticWeight& w,
                     const QuadRule& yrule, const WeylParams& params) {
  const double h = a.h();
  if (u.h != h) throw std::invalid_argument("quantize_direct: mismatched h");
  const double omega =
      2.0 * (std::abs(w.q_scalar()) + w.l_scalar()) * (std::abs(x) + 2.0 * yrule.R()) / h;
  if (!oscillation_safe(yrule, omega, params.pts_per_wavelength))
    warn(params, "quantize_direct: y-grid under-resolves the kernel oscillation");
  const double pref = 2.0 * w.l_scalar() / (2.0 * M_PI * h);
  const int M = yrule.M();
  cplx acc = 0.0;
  for (int i = 0; i < M; ++i) {
    cplx row = 0.0;
    for (int j = 0; j < M; ++j) {
      const cplx y(yrule.node1d(i), yrule.node1d(j));
      const cplx xm = 0.5 * (x + y);
      const cplx th = contour_theta(w, xm);
      row += yrule.weight1d(j) * std::exp(kI / h * (x - y) * th) * a.eval(xm) * u(y);
    }
    acc += yrule.weight1d(i) * row;
  }
  return acc * pref;
}

OperatorMatrix quantize_direct_matrix(const Symbol& a, const GramBasis& basis,
                                      const QuadRule& yrule, const WeylParams& params) {
  const double h = basis.h();
  if (a.h() != h) throw std::invalid_argument("quantize_direct_matrix: mismatched h");
  const QuadraticWeight& w = basis.weight().base();
  const double J = 2.0 * w.l_scalar();
  const int My = yrule.M();
  const int Ky = My * My;
  const int B = basis.size();
  const double omega =
      2.0 * (std::abs(w.q_scalar()) + w.l_scalar()) * (basis.rule().R() + yrule.R()) / h;
  if (!oscillation_safe(yrule, omega, params.pts_per_wavelength))
    warn(params, "quantize_direct_matrix: y-grid under-resolves the kernel oscillation");

  // basis values on the y grid
  CMat Ey(Ky, B);
  std::vector<cplx> ynodes(Ky);
  Eigen::VectorXd wy(Ky);
  {
    std::vector<HoloFunction> fs;
    fs.reserve(B);
    for (int j = 0; j < B; ++j) fs.push_back(basis.basis_function(j));
    for (int i = 0; i < My; ++i)
      for (int j = 0; j < My; ++j) {
        const int k = i * My + j;
        ynodes[k] = cplx(yrule.node1d(i), yrule.node1d(j));
        wy(k) = yrule.weight1d(i) * yrule.weight1d(j);
        for (int b = 0; b < B; ++b) Ey(k, b) = fs[b](ynodes[k]);
      }
  }
  const auto& xnodes = basis.xnodes();
  const int Kx = static_cast<int>(xnodes.size());
  CMat op_vals(Kx, B);
  Eigen::VectorXcd ker(Ky);
  const double pref = J / (2.0 * M_PI * h);
  for (int ix = 0; ix < Kx; ++ix) {
    const cplx x = xnodes[ix];
    for (int k = 0; k < Ky; ++k) {
      const cplx y = ynodes[k];
      const cplx xm = 0.5 * (x + y);
      const cplx th = contour_theta(w, xm);
      ker(k) = pref * wy(k) * std::exp(kI / h * (x - y) * th) * a.eval(xm);
    }
    op_vals.row(ix) = (ker.transpose() * Ey);
  }
  OperatorMatrix out;
  out.h = h;
  out.N = basis.max_degree();
  out.basis_tag = "H_Phi0 gram basis";
  out.entries = basis.grid().adjoint() * basis.wtab().asDiagonal() * op_vals;
  return out;
}

// ---- rank one structure ---------------------------------------------------

CVec coherent_coefficients(cplx z, const BargmannTransform& T, const GramBasis& basis) {
  const MagneticTranslation Wz =
      MagneticTranslation::W(z, basis.weight().base(), basis.h());
  const HoloFunction u = apply(Wz, T.v0());
  const bool exact = !basis.weight().perturbed() &&
                     std::abs(u.q2 - basis.family_q2()) < 1e-13;
  return exact ? basis.project_exact(u) : basis.project_grid(u);
}

namespace {

// allocation-free coherent projector for the rank-one assembly:
// (W(z) v0, e_k) = amp e^{q0/h} (pi h / 2L) sum_a conj(coeff_raw(a,k)) (q1/2L)^a,
// valid when v0 = amp e^{Q x^2 / h} and the weight is unperturbed
class CoherentProjector {
 public:
  CoherentProjector(const BargmannTransform& T, const GramBasis& basis)
      : Q_(basis.family_q2()),
        L_(basis.weight().base().l_scalar()),
        h_(basis.h()),
        amp_(T.v0().p.at(0)),
        Cc_(basis.coeff_raw().conjugate()),
        wpow_(basis.size()) {
    usable_ = !basis.weight().perturbed() && T.v0().degree() == 0 &&
              std::abs(T.v0().q2 - Q_) < 1e-13 && std::abs(T.v0().q1) == 0.0 &&
              std::abs(T.v0().q0) == 0.0;
  }

  bool usable() const { return usable_; }

  void at(cplx z, CVec& out) const {
    // W(z): shift by -z then exp((q1 x + q0)/h) with the magnetic phases
    const cplx lx = -(2.0 / kI) * (Q_ * z + L_ * std::conj(z));
    const cplx zsh = -z;
    const cplx q1 = -2.0 * Q_ * zsh + kI * lx;
    const cplx q0 = Q_ * zsh * zsh + 0.5 * kI * lx * z;
    const cplx w = q1 / (2.0 * L_);
    cplx p = 1.0;
    for (int a = 0; a < wpow_.size(); ++a) {
      wpow_(a) = p;
      p *= w;
    }
    const cplx fac = amp_ * std::exp(q0 / h_) * (M_PI * h_ / (2.0 * L_));
    out.noalias() = Cc_.transpose() * wpow_;
    out *= fac;
  }

 private:
  cplx Q_;
  double L_, h_;
  cplx amp_;
  CMat Cc_;
  mutable CVec wpow_;
  bool usable_ = false;
};

}  // namespace

OperatorMatrix rank_one_projection(const BargmannTransform& T, const GramBasis& basis) {
  const bool exact = !basis.weight().perturbed() &&
                     std::abs(T.v0().q2 - basis.family_q2()) < 1e-13;
  const CVec v0c = exact ? basis.project_exact(T.v0()) : basis.project_grid(T.v0());
  OperatorMatrix out;
  out.h = basis.h();
  out.N = basis.max_degree();
  out.basis_tag = "H_Phi0 gram basis";
  out.entries = v0c * v0c.adjoint();
  return out;
}

namespace {
Eigen::Matrix2d kappa_inverse_matrix(const BargmannPhase& phi, const QuadraticWeight& w) {
  // real-linear map z -> (y, eta) with kappa(y,eta) = lift(z)
  Eigen::Matrix2d K;
  const auto p1 = kappa_phi_inverse(lift(cplx(1.0, 0.0), w), phi);
  const auto p2 = kappa_phi_inverse(lift(cplx(0.0, 1.0), w), phi);
  K << p1.first.real(), p2.first.real(), p1.second.real(), p2.second.real();
  return K;
}
}  // namespace

Symbol projection_window_symbol(const BargmannTransform& T, bool hscale) {
  const QuadraticWeight& w = T.weight();
  const Eigen::Matrix2d K = kappa_inverse_matrix(T.phase(), w);
  PSGauss g;
  g.A = (K.transpose() * K).cast<cplx>();
  if (hscale) g.A /= T.h();
  g.p = Poly2(cplx(2.0));  // (4 pi)^{n/2} C^2 = 2 at n = 1 for unit-norm e0
  return Symbol::gaussian(std::move(g), 4.0 * w.l_scalar(), T.h());
}

Symbol modulated_window_symbol(const BargmannTransform& T, cplx Y, cplx Tc) {
  const double h = T.h();
  const double fourL = 4.0 * T.weight().l_scalar();
  Symbol chi = projection_window_symbol(T, true);
  PSGauss g = chi.psg().translated(Tc);
  // times e^{2 i sigma(X,Y)/h}: linear coefficients (2*fourL/h)(y2, -y1)
  Vec2c lin;
  lin << kI * (2.0 * fourL / h) * Y.imag(), -kI * (2.0 * fourL / h) * Y.real();
  g = g.times_phase(lin, 0.0);
  return Symbol::gaussian(std::move(g), fourL, h);
}

CMat modulated_window_rank_one(const BargmannTransform& T, cplx Y, cplx Tc,
                               const GramBasis& basis) {
  const double h = basis.h();
  const double fourL = 4.0 * basis.weight().base().l_scalar();
  const double s = sigma_lambda_coords(fourL, to_vec2(Tc), to_vec2(Y));
  const CVec cy = coherent_coefficients(Y - Tc, T, basis);
  const CVec dt = coherent_coefficients(-(Y + Tc), T, basis);
  return std::exp(kI * s / h) * (cy * dt.adjoint());
}

double window_mass(const BargmannTransform& T) {
  Symbol chi = projection_window_symbol(T, false);
  Symbol chih = projection_window_symbol(T, true);
  PSGauss prod = chi.psg().times(chih.psg());
  const cplx m = psg_integral(prod) * (4.0 * T.weight().l_scalar());
  return m.real();
}

RankOneResult rank_one_decomposition(const Symbol& a, const GramBasis& basis,
                                     const BargmannTransform& T, const WeylParams& params) {
  if (a.kind() != SymbolKind::GaussianPoly)
    throw std::invalid_argument(
        "rank_one_decomposition: closed-form windowed transform requires a Gaussian symbol");
  const double h = basis.h();
  const QuadraticWeight& w = basis.weight().base();
  const double L = w.l_scalar();
  const double fourL = 4.0 * L;
  const double Lmix = L;
  const Symbol chi = projection_window_symbol(T, false);

  // weight g(s,d) = F_h(chi(.+s) a)(d); probe boxes
  auto transform_at_s = [&](const Vec2d& s) {
    PSGauss prod = chi.psg().translated(-s).times(a.psg());
    return psg_fourier(prod, Lmix, h);
  };
  // peak modulus of a Gaussian exp(-d^T A d + b^T d + c) over real d
  auto peak_abs = [](const PSGauss& g) {
    const Eigen::Matrix2d Ar = g.A.real();
    const Eigen::Vector2d br = g.b.real();
    const Eigen::Vector2d dstar = 0.5 * Ar.ldlt().solve(br);
    return std::abs(g.eval(dstar));
  };
  double wmax = peak_abs(transform_at_s(Vec2d::Zero()));
  // the integrand carries c(s+d) c(s-d) ~ e^{-L(|s|^2+|d|^2)/h} past the basis
  const double reach =
      std::sqrt(double(basis.size()) * h / L) + std::sqrt(h * 23.0 / L) + 0.4;
  double Rs = 0.4;
  for (; Rs < 3.0 * reach; Rs *= 1.15) {
    double m = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double th = 2.0 * M_PI * k / 8.0;
      const Vec2d s(Rs * std::cos(th), Rs * std::sin(th));
      m = std::max(m, peak_abs(transform_at_s(s)));
      wmax = std::max(wmax, m);
    }
    if (m < params.trunc * wmax) break;
  }
  Rs = std::min(Rs, reach);
  double Rd = 0.2 * h;
  {
    PSGauss F0 = transform_at_s(Vec2d::Zero());
    const double m0 = std::abs(F0.eval(Vec2d::Zero()));
    for (; Rd < reach; Rd *= 1.2) {
      double m = 0.0;
      for (int k = 0; k < 8; ++k) {
        const double th = 2.0 * M_PI * k / 8.0;
        m = std::max(m, std::abs(F0.eval(Vec2d(Rd * std::cos(th), Rd * std::sin(th)))));
      }
      if (m < params.trunc * m0) break;
    }
  }
  // resolutions: oscillation e^{-i sigma(s,d)/h} + sqrt(h) coherent scale
  const double ds = std::min((2.0 * M_PI * h / (fourL * Rd)) / params.pts_per_wavelength,
                             0.4 * std::sqrt(h));
  const double dd = std::min((2.0 * M_PI * h / (fourL * Rs)) / params.pts_per_wavelength,
                             0.4 * std::sqrt(h));
  int Ms = std::max(24, static_cast<int>(std::ceil(2.0 * Rs / ds)) + 1);
  int Md = std::max(24, static_cast<int>(std::ceil(2.0 * Rd / dd)) + 1);
  if (Ms > params.max_M || Md > params.max_M) {
    warn(params, "rank_one_decomposition: clamped (s,d) grid");
    Ms = std::min(Ms, params.max_M);
    Md = std::min(Md, params.max_M);
  }
  QuadRule srule(Rs, Ms), drule(Rd, Md);

  const int B = basis.size();
  CMat acc = CMat::Zero(B, B);
  const double pref = fourL * fourL / (M_PI * h);
  const CoherentProjector proj(T, basis);
  CVec cy(B), dt(B);
  for (int i1 = 0; i1 < Ms; ++i1)
    for (int j1 = 0; j1 < Ms; ++j1) {
      const Vec2d s(srule.node1d(i1), srule.node1d(j1));
      const double wS = srule.weight1d(i1) * srule.weight1d(j1);
      const PSGauss Fs = transform_at_s(s);
      for (int i2 = 0; i2 < Md; ++i2)
        for (int j2 = 0; j2 < Md; ++j2) {
          const Vec2d d(drule.node1d(i2), drule.node1d(j2));
          const cplx f = Fs.eval(d);
          if (std::abs(f) < params.trunc * wmax) continue;
          const double wD = drule.weight1d(i2) * drule.weight1d(j2);
          const double sig = sigma_lambda_coords(fourL, s, d);
          const cplx wgt = pref * f * std::exp(-kI * sig / h) * wS * wD;
          const cplx Y = to_cplx(s) + to_cplx(d);
          const cplx Tc = to_cplx(s) - to_cplx(d);
          if (proj.usable()) {
            proj.at(Y, cy);
            proj.at(Tc, dt);
          } else {
            cy = coherent_coefficients(Y, T, basis);
            dt = coherent_coefficients(Tc, T, basis);
          }
          acc.noalias() += wgt * (cy * dt.adjoint());
        }
    }
  RankOneResult out;
  out.Mh = window_mass(T);
  out.C_const = 1.0 / (4.0 * M_PI);
  out.op.h = h;
  out.op.N = basis.max_degree();
  out.op.basis_tag = "H_Phi0 gram basis";
  out.op.entries = acc / out.Mh;
  return out;
}

// ---- norms and kernel reports ----------------------------------------------

double operator_norm(const OperatorMatrix& A, const CMat& gram) {
  Eigen::SelfAdjointEigenSolver<CMat> es(gram);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (lmin <= 0.0 || lmax / lmin > 1e12)
    throw ConditioningError("operator_norm: ill-conditioned Gram (condition > 1e12); reduce N");
  Eigen::LLT<CMat> llt(gram);
  CMat Lh = CMat(llt.matrixL()).adjoint();
  CMat Minv = Lh.inverse();
  CMat Mred = Lh * A.entries * Minv;
  Eigen::JacobiSVD<CMat> svd(Mred);
  return svd.singularValues()(0);
}

SchurReport schur_kernel_report(double s, double C, double h) {
  SchurReport rep;
  rep.s = s;
  rep.C = C;
  rep.h = h;
  const double Ct = std::max(2.0, 4.0 / C);
  const double beta = std::pow(h, 0.5 - 1.0 / s) / C;  // after r = sqrt(h) rho
  const double rho0 = Ct * std::pow(h, 0.5 - 1.0 / s);
  // I = 2 pi int_0^inf e^{-rho^2} e^{beta rho} rho d rho split at rho0
  const double rho_max = beta / 2.0 + std::sqrt(beta * beta / 4.0 + 60.0) + 2.0;
  const int n_pts = 20000;
  const double dr = rho_max / n_pts;
  double I1 = 0.0, I2 = 0.0;
  for (int k = 0; k <= n_pts; ++k) {
    const double r = k * dr;
    double wgt = (k == 0 || k == n_pts) ? 0.5 : 1.0;
    const double v = std::exp(-r * r + beta * r) * r * wgt * dr;
    if (r >= rho0)
      I1 += v;
    else
      I2 += v;
  }
  rep.I1 = 2.0 * M_PI * I1;
  rep.I2 = 2.0 * M_PI * I2;
  rep.total = rep.I1 + rep.I2;
  rep.I2_bound_factor = std::exp(Ct * std::pow(h, 1.0 - 2.0 / s) / C);
  // J = h^{-2} int exp(h^{-1/s}(-|y|^{1/s} + (2/C) min(1,|y|))) L(dy), radial;
  // substitute u = r^{1/s}: J = (2 pi s / h^2) int e^{h^{-1/s}(-u + (2/C)min(1,u^s))} u^{2s-1} du
  {
    const double hs = std::pow(h, -1.0 / s);
    const double umax = 2.0 / C + (80.0 * (1.0 + s)) / hs;
    const int n = 40000;
    const double du = umax / n;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double u = k * du;
      const double wgt = (k == 0 || k == n) ? 0.5 : 1.0;
      const double minr = std::min(1.0, std::pow(u, s));
      acc += wgt * std::exp(hs * (-u + (2.0 / C) * minr)) * std::pow(u, 2.0 * s - 1.0) * du;
    }
    rep.J_fourier = 2.0 * M_PI * s * acc / (h * h);
  }
  return rep;
}

}  // namespace bargweyl
