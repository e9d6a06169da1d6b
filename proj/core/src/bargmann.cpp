#include "bargweyl/bargmann.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bargweyl {

BargmannPhase::BargmannPhase(cplx a_, cplx b_, cplx c_) : a(a_), b(b_), c(c_) {
  if (c.imag() <= 0.0) throw std::invalid_argument("BargmannPhase: need Im c > 0");
  if (std::abs(b) == 0.0) throw std::invalid_argument("BargmannPhase: need b != 0");
}

BargmannPhase BargmannPhase::fbi() { return {kI, -kI, kI}; }

BargmannPhase BargmannPhase::bargmann() { return {kI, -std::sqrt(2.0) * kI, kI}; }

PhasePoint kappa_phi(cplx y, cplx eta, const BargmannPhase& phi) {
  // -phi'_y = -(b x + c y) = eta  =>  x = -(eta + c y)/b ; xi = phi'_x = a x + b y
  cplx x = -(eta + phi.c * y) / phi.b;
  cplx xi = phi.a * x + phi.b * y;
  return PhasePoint::make(x, xi);
}

std::pair<cplx, cplx> kappa_phi_inverse(const PhasePoint& X, const BargmannPhase& phi) {
  cplx x = X.x1(), xi = X.xi1();
  cplx y = (xi - phi.a * x) / phi.b;
  cplx eta = -(phi.b * x + phi.c * y);
  return {y, eta};
}

QuadraticWeight derive_weight(const BargmannPhase& phi) {
  double imc = phi.c.imag();
  cplx Q = kI * phi.a / 2.0 - phi.b * phi.b / (4.0 * imc);
  double L = std::norm(phi.b) / (4.0 * imc);
  CMat Qm(1, 1), Lm(1, 1);
  Qm(0, 0) = Q;
  Lm(0, 0) = L;
  return {Qm, Lm};
}

RealGaussian e0(double h) {
  RealGaussian g;
  g.h = h;
  g.alpha = 0.5;
  g.p = {std::pow(M_PI, -0.25) * std::pow(h, -0.25)};
  return g;
}

RealGaussian hermite_function(int k, double h) {
  // physicists' Hermite polynomials, variable y/sqrt(h)
  std::vector<std::vector<double>> H(k + 1);
  H[0] = {1.0};
  if (k >= 1) H[1] = {0.0, 2.0};
  for (int m = 2; m <= k; ++m) {
    H[m].assign(m + 1, 0.0);
    for (std::size_t j = 0; j < H[m - 1].size(); ++j) H[m][j + 1] += 2.0 * H[m - 1][j];
    for (std::size_t j = 0; j < H[m - 2].size(); ++j) H[m][j] -= 2.0 * (m - 1) * H[m - 2][j];
  }
  double norm = std::pow(M_PI * h, -0.25) / std::sqrt(std::pow(2.0, k) * std::tgamma(k + 1.0));
  RealGaussian g;
  g.h = h;
  g.alpha = 0.5;
  g.p.assign(k + 1, cplx(0.0));
  for (int j = 0; j <= k; ++j) g.p[j] = norm * H[k][j] * std::pow(h, -0.5 * j);
  return g;
}

HoloFunction bargmann_transform_gaussian(const RealGaussian& g, const BargmannPhase& phi,
                                         cplx amp) {
  const double h = g.h;
  const cplx pt = kI * phi.c / 2.0 - g.alpha;  // y^2 coefficient over h
  if (pt.real() >= 0.0)
    throw std::invalid_argument("bargmann_transform_gaussian: non-convergent Gaussian");
  // int y^k exp((pt y^2 + qt(x) y)/h) dy = I0 * P_k(qt),  qt(x) = i b x - beta
  // P_0 = 1, P_1 = -qt/(2 pt), P_k = -((k-1) h P_{k-2} + qt P_{k-1})/(2 pt)
  const int deg = static_cast<int>(g.p.size()) - 1;
  std::vector<std::vector<cplx>> P(deg + 1);
  P[0] = {cplx(1.0)};
  const std::vector<cplx> qt = {-g.beta, kI * phi.b};  // linear poly in x
  if (deg >= 1) {
    P[1] = qt;
    for (auto& c : P[1]) c /= -2.0 * pt;
  }
  for (int k = 2; k <= deg; ++k) {
    std::vector<cplx> t = poly_mul(qt, P[k - 1]);
    for (std::size_t j = 0; j < P[k - 2].size(); ++j) t[j] += double(k - 1) * h * P[k - 2][j];
    for (auto& c : t) c /= -2.0 * pt;
    P[k] = std::move(t);
  }
  std::vector<cplx> poly = {cplx(0.0)};
  for (int k = 0; k <= deg; ++k) {
    if (P[k].size() > poly.size()) poly.resize(P[k].size(), cplx(0.0));
    for (std::size_t j = 0; j < P[k].size(); ++j) poly[j] += g.p[k] * P[k][j];
  }
  HoloFunction out;
  out.h = h;
  out.p = std::move(poly);
  // exponent: (ia/2) x^2 - gamma - qt(x)^2/(4 pt), all over h
  out.q2 = kI * phi.a / 2.0 + phi.b * phi.b / (4.0 * pt);
  out.q1 = kI * phi.b * g.beta / (2.0 * pt);
  out.q0 = -g.gamma - g.beta * g.beta / (4.0 * pt);
  const cplx I0amp = std::sqrt(M_PI * h / (-pt));
  const cplx total = amp * std::pow(h, -0.75) * I0amp;
  for (auto& c : out.p) c *= total;
  return out;
}

cplx inner_product(const HoloFunction& u, const HoloFunction& v, const WeightFunction& Phi,
                   const QuadRule& rule) {
  if (u.h != v.h) throw std::invalid_argument("inner_product: mismatched h");
  if (gaussian_decay_margin(u.q2, v.q2, Phi.base()) <= 0.0)
    throw std::invalid_argument("inner_product: non-integrable pair (no Gaussian domination)");
  const double h = u.h;
  cplx acc = 0.0;
  const int M = rule.M();
  for (int i = 0; i < M; ++i) {
    cplx row = 0.0;
    for (int j = 0; j < M; ++j) {
      const cplx x(rule.node1d(i), rule.node1d(j));
      row += rule.weight1d(j) * u(x) * std::conj(v(x)) * std::exp(-2.0 * Phi(x) / h);
    }
    acc += rule.weight1d(i) * row;
  }
  return acc;
}

double norm_hphi(const HoloFunction& u, const WeightFunction& Phi, const QuadRule& rule) {
  return std::sqrt(std::abs(inner_product(u, u, Phi, rule)));
}

CMat pair_moments(cplx D, cplx E, double Lmix, double h, int bmax, int amax) {
  const cplx C = -2.0 * Lmix / h;
  CMat M(bmax + 1, amax + 1);
  M(0, 0) = (M_PI / (-C)) * std::exp(-D * E / C);
  for (int a = 1; a <= amax; ++a) M(0, a) = -(D / C) * M(0, a - 1);
  for (int b = 1; b <= bmax; ++b) {
    // dxbar identity at a = 0: C M_{b,0} + E M_{b-1,0} = 0
    M(b, 0) = -(E / C) * M(b - 1, 0);
    for (int a = 1; a <= amax; ++a)
      M(b, a) = -(double(a) * M(b - 1, a - 1) + E * M(b - 1, a)) / C;
  }
  return M;
}

cplx inner_product_exact(const HoloFunction& u, const HoloFunction& v,
                         const QuadraticWeight& w) {
  if (u.h != v.h) throw std::invalid_argument("inner_product_exact: mismatched h");
  const cplx Q = w.q_scalar();
  if (std::abs(u.q2 - Q) > 1e-14 || std::abs(v.q2 - Q) > 1e-14)
    throw std::invalid_argument("inner_product_exact: q2 must equal the weight's Q");
  const double h = u.h;
  const CMat M = pair_moments(u.q1 / h, std::conj(v.q1) / h, w.l_scalar(), h,
                              u.degree(), v.degree());
  cplx acc = 0.0;
  for (int b = 0; b <= u.degree(); ++b)
    for (int a = 0; a <= v.degree(); ++a) acc += u.p[b] * std::conj(v.p[a]) * M(b, a);
  return acc * std::exp((u.q0 + std::conj(v.q0)) / h);
}

GramBasis::GramBasis(WeightFunction Phi, double h, int N, QuadRule rule)
    : Phi_(std::move(Phi)), h_(h), N_(N), rule_(std::move(rule)) {
  if (Phi_.base().dim() != 1)
    throw std::invalid_argument("GramBasis: only n = 1 is supported at desk scale");
  if (N_ < 0) throw std::invalid_argument("GramBasis: N >= 0");
  const int M = rule_.M();
  const int K = M * M;
  const int B = N_ + 1;
  const cplx Q = Phi_.base().q_scalar();
  const double L = Phi_.base().l_scalar();

  xnodes_.resize(K);
  wtab_.resize(K);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      const cplx x(rule_.node1d(i), rule_.node1d(j));
      xnodes_[i * M + j] = x;
      wtab_[i * M + j] = rule_.weight1d(i) * rule_.weight1d(j) * std::exp(-2.0 * Phi_(x) / h_);
    }

  // generators x^a e^{Q x^2/h} scaled to unit unperturbed norm:
  // ||x^a e^{Qx^2/h}||^2_{Phi0} = pi h/(2L) a! (h/2L)^a
  Eigen::VectorXd scales(B);
  {
    double lognorm0 = std::log(M_PI * h_ / (2.0 * L));
    double acc = lognorm0;
    for (int a = 0; a < B; ++a) {
      if (a > 0) acc += std::log(double(a) * h_ / (2.0 * L));
      scales(a) = std::exp(-0.5 * acc);
    }
  }

  CMat gen(K, B);
  for (int k = 0; k < K; ++k) {
    const cplx x = xnodes_[k];
    const cplx e = std::exp(Q * x * x / h_);
    cplx pw = 1.0;
    for (int a = 0; a < B; ++a) {
      gen(k, a) = scales(a) * pw * e;
      pw *= x;
    }
  }

  gram_raw_ = gen.adjoint() * wtab_.asDiagonal() * gen;
  Eigen::SelfAdjointEigenSolver<CMat> es(gram_raw_);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  gram_cond_ = (lmin > 0.0) ? lmax / lmin : std::numeric_limits<double>::infinity();
  if (lmin <= 0.0)
    throw ConditioningError("GramBasis: Gram not positive definite at requested N");
  Eigen::LLT<CMat> llt(gram_raw_);
  if (llt.info() != Eigen::Success)
    throw ConditioningError("GramBasis: Cholesky failed (Gram not positive definite)");
  // e_j = sum_a C(a,j) gen_a with C = (L^H)^{-1}
  CMat Lh = llt.matrixL();
  CMat LhH = Lh.adjoint();
  CMat Cmat = LhH.triangularView<Eigen::Upper>().solve(CMat::Identity(B, B));
  grid_ = gen * Cmat;
  // fold the prescale into raw monomial coefficients
  coeff_raw_ = scales.cast<cplx>().asDiagonal() * Cmat;
}

HoloFunction GramBasis::basis_function(int j) const {
  HoloFunction u;
  u.h = h_;
  u.q2 = family_q2();
  u.p.assign(size(), cplx(0.0));
  for (int a = 0; a < size(); ++a) u.p[a] = coeff_raw_(a, j);
  return u;
}

CVec GramBasis::project_grid(const HoloFunction& u) const {
  const int K = static_cast<int>(xnodes_.size());
  CVec vals(K);
  for (int k = 0; k < K; ++k) vals(k) = u(xnodes_[k]);
  return grid_.adjoint() * wtab_.asDiagonal() * vals;
}

CVec GramBasis::project_exact(const HoloFunction& u) const {
  if (Phi_.perturbed())
    throw std::invalid_argument("project_exact: weight must be unperturbed");
  const cplx Q = family_q2();
  if (std::abs(u.q2 - Q) > 1e-14)
    throw std::invalid_argument("project_exact: u.q2 must equal the weight's Q");
  const double L = Phi_.base().l_scalar();
  const int B = size();
  // (u, e_k) = e^{q0u/h} sum_b p_u[b] sum_a conj(coeff_raw(a,k)) M(b,a), E = 0
  const CMat M = pair_moments(u.q1 / h_, cplx(0.0), L, h_, u.degree(), N_);
  CVec mb(N_ + 1);
  CVec out(B);
  // tmp(a) = sum_b p_u[b] M(b,a)
  for (int a = 0; a <= N_; ++a) {
    cplx acc = 0.0;
    for (int b = 0; b <= u.degree(); ++b) acc += u.p[b] * M(b, a);
    mb(a) = acc;
  }
  const cplx e0f = std::exp(u.q0 / h_);
  for (int k = 0; k < B; ++k) {
    cplx acc = 0.0;
    for (int a = 0; a <= N_; ++a) acc += std::conj(coeff_raw_(a, k)) * mb(a);
    out(k) = e0f * acc;
  }
  return out;
}

CMat gram_matrix_under(const GramBasis& basis, const WeightFunction& other,
                       const QuadRule& rule) {
  const int M = rule.M();
  const int K = M * M;
  const int B = basis.size();
  const double h = basis.h();
  CMat vals(K, B);
  Eigen::VectorXd wt(K);
  std::vector<HoloFunction> fs;
  fs.reserve(B);
  for (int j = 0; j < B; ++j) fs.push_back(basis.basis_function(j));
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      const cplx x(rule.node1d(i), rule.node1d(j));
      const int k = i * M + j;
      wt(k) = rule.weight1d(i) * rule.weight1d(j) * std::exp(-2.0 * other(x) / h);
      for (int b = 0; b < B; ++b) vals(k, b) = fs[b](x);
    }
  return vals.adjoint() * wt.asDiagonal() * vals;
}

BargmannTransform::BargmannTransform(const BargmannPhase& phi, double h, const QuadRule& rule)
    : phi_(phi), w_(derive_weight(phi)), h_(h), amp_(1.0),
      v0_(bargmann_transform_gaussian(e0(h), phi, 1.0)) {
  WeightFunction Phi0(w_);
  const double n = norm_hphi(v0_, Phi0, rule);
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::runtime_error("BargmannTransform: calibration norm not finite");
  amp_ = 1.0 / n;
  v0_ = v0_.scaled(amp_);
}

HoloFunction BargmannTransform::transform(const RealGaussian& g) const {
  if (g.h != h_) throw std::invalid_argument("BargmannTransform: mismatched h");
  return bargmann_transform_gaussian(g, phi_, amp_);
}

}  // namespace bargweyl
