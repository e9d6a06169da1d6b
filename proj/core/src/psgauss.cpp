#include "bargweyl/psgauss.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bargweyl {

cplx Poly2::eval(const Vec2d& z) const {
  // Horner in z1 for each power of z2
  cplx acc = 0.0;
  for (int i = deg1(); i >= 0; --i) {
    cplx row = 0.0;
    for (int j = deg2(); j >= 0; --j) row = row * z.y() + c(i, j);
    acc = acc * z.x() + row;
  }
  return acc;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  const Eigen::Index r = std::max(c.rows(), o.c.rows());
  const Eigen::Index cc = std::max(c.cols(), o.c.cols());
  CMat out = CMat::Zero(r, cc);
  out.topLeftCorner(c.rows(), c.cols()) = c;
  out.topLeftCorner(o.c.rows(), o.c.cols()) += o.c;
  c = std::move(out);
  return *this;
}

Poly2 Poly2::operator*(const Poly2& o) const {
  Poly2 out;
  out.c = CMat::Zero(c.rows() + o.c.rows() - 1, c.cols() + o.c.cols() - 1);
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j) {
      if (c(i, j) == cplx(0.0)) continue;
      for (int k = 0; k < o.c.rows(); ++k)
        for (int l = 0; l < o.c.cols(); ++l) out.c(i + k, j + l) += c(i, j) * o.c(k, l);
    }
  return out;
}

Poly2 Poly2::scaled(cplx s) const {
  Poly2 out = *this;
  out.c *= s;
  return out;
}

Poly2 Poly2::affine(cplx c0, cplx c1, cplx c2) {
  Poly2 out;
  out.c = CMat::Zero(2, 2);
  out.c(0, 0) = c0;
  out.c(1, 0) = c1;
  out.c(0, 1) = c2;
  return out;
}

namespace {
// translate a 1-D coefficient sequence: q(t) = p(t - s)
void translate_axis(CMat& c, double s, bool rows) {
  const int n = rows ? c.rows() : c.cols();
  if (n == 1) return;
  CMat out = CMat::Zero(c.rows(), c.cols());
  for (int k = 0; k < n; ++k) {
    double binom = 1.0;
    double sp = 1.0;  // (-s)^j
    for (int j = 0; j <= k; ++j) {
      if (rows)
        out.row(k - j) += binom * sp * c.row(k);
      else
        out.col(k - j) += binom * sp * c.col(k);
      sp *= -s;
      binom = binom * double(k - j) / double(j + 1);
    }
  }
  c = std::move(out);
}
}  // namespace

Poly2 Poly2::shifted(const Vec2d& t) const {
  Poly2 out = *this;
  translate_axis(out.c, t.x(), true);
  translate_axis(out.c, t.y(), false);
  return out;
}

cplx PSGauss::eval(const Vec2d& z) const {
  const Vec2c zc = z.cast<cplx>();
  const cplx quad = zc.transpose() * A * zc;
  const cplx lin = b.transpose() * zc;
  return p.eval(z) * std::exp(-quad + lin + c);
}

bool PSGauss::integrable() const {
  const Eigen::Matrix2d Ar = A.real();
  return Ar(0, 0) > 0.0 && Ar.determinant() > 0.0;
}

PSGauss PSGauss::isotropic(double w, const Vec2d& z0, cplx amp) {
  PSGauss g;
  g.A = w * Mat2c::Identity();
  g.b = 2.0 * w * z0.cast<cplx>();
  g.c = -w * z0.squaredNorm();
  g.p = Poly2(amp);
  return g;
}

PSGauss PSGauss::isotropic(double w, cplx z0, cplx amp) {
  return isotropic(w, to_vec2(z0), amp);
}

PSGauss PSGauss::translated(const Vec2d& t) const {
  // value(z - t): exponent -(z-t)^T A (z-t) + b^T (z-t) + c
  PSGauss out = *this;
  const Vec2c tc = t.cast<cplx>();
  out.b = b + 2.0 * A * tc;
  out.c = c - (tc.transpose() * A * tc).value() - (b.transpose() * tc).value();
  out.p = p.shifted(t);
  return out;
}

PSGauss PSGauss::translated(cplx t) const { return translated(to_vec2(t)); }

PSGauss PSGauss::times(const PSGauss& o) const {
  PSGauss out;
  out.A = A + o.A;
  out.b = b + o.b;
  out.c = c + o.c;
  out.p = p * o.p;
  return out;
}

PSGauss PSGauss::times_phase(const Vec2c& lin, cplx c0) const {
  PSGauss out = *this;
  out.b += lin;
  out.c += c0;
  return out;
}

PSGauss PSGauss::scaled(cplx s) const {
  PSGauss out = *this;
  out.p = p.scaled(s);
  return out;
}

cplx sqrt_det_continued(const Mat2c& A) {
  const Mat2c Ar = A.real().cast<cplx>();
  const int steps = 24;
  cplx prev = Ar.determinant();
  if (prev.real() <= 0.0)
    throw std::invalid_argument("sqrt_det_continued: Re A must be positive definite");
  double arg = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const double t = double(k) / steps;
    const Mat2c At = (1.0 - t) * Ar + t * A;
    const cplx d = At.determinant();
    arg += std::arg(d / prev);
    prev = d;
  }
  return std::sqrt(std::abs(prev)) * std::exp(cplx(0.0, 0.5 * arg));
}

namespace {
Mat2c inv2(const Mat2c& A) {
  const cplx det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  Mat2c out;
  out << A(1, 1), -A(0, 1), -A(1, 0), A(0, 0);
  return out / det;
}
}  // namespace

CMat psg_raw_moments(const Mat2c& A, const Vec2c& b, int dmax) {
  CMat E = CMat::Zero(dmax + 1, dmax + 1);
  E(0, 0) = 1.0;
  const Mat2c Ai = inv2(A);
  for (int d = 0; d < 2 * dmax; ++d) {
    for (int a1 = 0; a1 <= std::min(d, dmax); ++a1) {
      const int a2 = d - a1;
      if (a2 > dmax) continue;
      // rhs_j = alpha_j E_{alpha - e_j} + b_j E_alpha
      cplx r1 = b(0) * E(a1, a2);
      if (a1 > 0) r1 += double(a1) * E(a1 - 1, a2);
      cplx r2 = b(1) * E(a1, a2);
      if (a2 > 0) r2 += double(a2) * E(a1, a2 - 1);
      const cplx t1 = 0.5 * (Ai(0, 0) * r1 + Ai(0, 1) * r2);
      const cplx t2 = 0.5 * (Ai(1, 0) * r1 + Ai(1, 1) * r2);
      if (a1 + 1 <= dmax && a2 <= dmax) E(a1 + 1, a2) = t1;
      if (a1 <= dmax && a2 + 1 <= dmax) E(a1, a2 + 1) = t2;
    }
  }
  return E;
}

cplx psg_integral(const PSGauss& u) {
  if (!u.integrable()) throw std::invalid_argument("psg_integral: Re A not positive definite");
  const Mat2c Ai = inv2(u.A);
  const cplx I0 = M_PI / sqrt_det_continued(u.A) *
                  std::exp(0.25 * (u.b.transpose() * Ai * u.b).value() + u.c);
  const int d = std::max(u.p.deg1(), u.p.deg2());
  if (d == 0) return u.p.c(0, 0) * I0;
  const CMat E = psg_raw_moments(u.A, u.b, d);
  cplx acc = 0.0;
  for (int i = 0; i <= u.p.deg1(); ++i)
    for (int j = 0; j <= u.p.deg2(); ++j) acc += u.p.c(i, j) * E(i, j);
  return acc * I0;
}

PSGauss psg_fourier(const PSGauss& u, double Lmix, double h) {
  if (!u.integrable()) throw std::invalid_argument("psg_fourier: Re A not positive definite");
  const double dens = 4.0 * Lmix;
  Mat2c R;
  R << 0.0, -1.0, 1.0, 0.0;
  R *= 8.0 * Lmix / h;
  const Mat2c Ai = inv2(u.A);

  PSGauss out;
  out.A = 0.25 * (R.transpose() * Ai * R);
  out.b = 0.5 * kI * (R.transpose() * Ai * u.b);
  out.c = u.c + 0.25 * (u.b.transpose() * Ai * u.b).value();
  const cplx amp = dens / (M_PI * h) * M_PI / sqrt_det_continued(u.A);

  // btilde components as affine polynomials of Z
  const Poly2 bt1 = Poly2::affine(u.b(0), kI * R(0, 0), kI * R(0, 1));
  const Poly2 bt2 = Poly2::affine(u.b(1), kI * R(1, 0), kI * R(1, 1));

  const int dmax = std::max(u.p.deg1(), u.p.deg2());
  if (dmax == 0) {
    out.p = u.p.scaled(amp);
    return out;
  }
  // symbolic moments E[alpha] as Poly2 in Z
  std::vector<std::vector<Poly2>> E(dmax + 1, std::vector<Poly2>(dmax + 1));
  E[0][0] = Poly2(cplx(1.0));
  std::vector<std::vector<bool>> have(dmax + 1, std::vector<bool>(dmax + 1, false));
  have[0][0] = true;
  for (int d = 0; d < 2 * dmax; ++d) {
    for (int a1 = 0; a1 <= std::min(d, dmax); ++a1) {
      const int a2 = d - a1;
      if (a2 > dmax || !have[a1][a2]) continue;
      Poly2 r1 = bt1 * E[a1][a2];
      if (a1 > 0) r1 += E[a1 - 1][a2].scaled(double(a1));
      Poly2 r2 = bt2 * E[a1][a2];
      if (a2 > 0) r2 += E[a1][a2 - 1].scaled(double(a2));
      if (a1 + 1 <= dmax) {
        Poly2 t = r1.scaled(0.5 * Ai(0, 0));
        t += r2.scaled(0.5 * Ai(0, 1));
        E[a1 + 1][a2] = std::move(t);
        have[a1 + 1][a2] = true;
      }
      if (a2 + 1 <= dmax) {
        Poly2 t = r1.scaled(0.5 * Ai(1, 0));
        t += r2.scaled(0.5 * Ai(1, 1));
        E[a1][a2 + 1] = std::move(t);
        have[a1][a2 + 1] = true;
      }
    }
  }
  Poly2 acc;
  for (int i = 0; i <= u.p.deg1(); ++i)
    for (int j = 0; j <= u.p.deg2(); ++j) {
      if (u.p.c(i, j) == cplx(0.0)) continue;
      acc += E[i][j].scaled(u.p.c(i, j));
    }
  out.p = acc.scaled(amp);
  return out;
}

PSGauss psg_twisted_conv(const PSGauss& u, const PSGauss& v, double Lmix, double h) {
  if (u.degree() != 0 || v.degree() != 0)
    throw std::invalid_argument("psg_twisted_conv: closed form implemented for degree 0");
  const double dens = 4.0 * Lmix;
  Mat2c R;
  R << 0.0, -1.0, 1.0, 0.0;
  R *= 8.0 * Lmix / h;
  const Mat2c As = u.A + v.A;
  const Eigen::Matrix2d Ar = As.real();
  if (!(Ar(0, 0) > 0.0 && Ar.determinant() > 0.0))
    throw std::invalid_argument("psg_twisted_conv: non-integrable pair");
  const Mat2c Asi = inv2(As);
  const Mat2c M = 2.0 * u.A + kI * R;
  const Vec2c m = v.b - u.b;
  PSGauss out;
  out.A = u.A - 0.25 * (M.transpose() * Asi * M);
  out.b = u.b + 0.5 * (M.transpose() * Asi * m);
  out.c = u.c + v.c + 0.25 * (m.transpose() * Asi * m).value();
  const cplx amp = u.p.c(0, 0) * v.p.c(0, 0) * dens * M_PI / sqrt_det_continued(As);
  out.p = Poly2(amp);
  return out;
}

}  // namespace bargweyl
