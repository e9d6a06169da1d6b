#include "bargweyl/holo.hpp"

#include <cmath>
#include <stdexcept>

namespace bargweyl {

cplx poly_eval(const std::vector<cplx>& p, cplx x) {
  cplx acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<cplx> poly_translate(const std::vector<cplx>& p, cplx z) {
  // binomial expansion of sum_k p[k] (x - z)^k
  const std::size_t n = p.size();
  std::vector<cplx> out(n, cplx(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    cplx zp = 1.0;   // (-z)^j
    double c = 1.0;  // C(k,j)
    for (std::size_t j = 0; j <= k; ++j) {
      out[k - j] += p[k] * c * zp;
      zp *= -z;
      c = c * double(k - j) / double(j + 1);
    }
  }
  return out;
}

cplx HoloFunction::operator()(cplx x) const {
  return poly_eval(p, x) * std::exp((q2 * x * x + q1 * x + q0) / h);
}

HoloFunction HoloFunction::translated(cplx z) const {
  HoloFunction out = *this;
  out.p = poly_translate(p, z);
  out.q1 = q1 - 2.0 * q2 * z;
  out.q0 = q0 + q2 * z * z - q1 * z;
  return out;
}

HoloFunction HoloFunction::times_exp_linear(cplx a1, cplx a0) const {
  HoloFunction out = *this;
  out.q1 += a1;
  out.q0 += a0;
  return out;
}

HoloFunction HoloFunction::times_exp_quadratic(cplx a2, cplx a1, cplx a0) const {
  HoloFunction out = *this;
  out.q2 += a2;
  out.q1 += a1;
  out.q0 += a0;
  return out;
}

HoloFunction HoloFunction::times_poly(const std::vector<cplx>& coeffs) const {
  HoloFunction out = *this;
  out.p = poly_mul(p, coeffs);
  return out;
}

HoloFunction HoloFunction::times_x() const { return times_poly({cplx(0.0), cplx(1.0)}); }

HoloFunction HoloFunction::scaled(cplx c) const {
  HoloFunction out = *this;
  for (auto& a : out.p) a *= c;
  return out;
}

HoloFunction HoloFunction::d_dx() const {
  HoloFunction out = *this;
  std::vector<cplx> dp(std::max<std::size_t>(1, p.size() - 1), cplx(0.0));
  for (std::size_t k = 1; k < p.size(); ++k) dp[k - 1] = double(k) * p[k];
  // p' + p (2 q2 x + q1)/h
  std::vector<cplx> res = poly_mul(p, {q1 / h, 2.0 * q2 / h});
  if (res.size() < dp.size()) res.resize(dp.size(), cplx(0.0));
  for (std::size_t k = 0; k < dp.size(); ++k) res[k] += dp[k];
  out.p = res;
  return out;
}

HoloFunction HoloFunction::hD() const {
  HoloFunction out = d_dx();
  const cplx f = h / kI;
  for (auto& a : out.p) a *= f;
  return out;
}

HoloFunction HoloFunction::zero(double h) {
  HoloFunction u;
  u.h = h;
  return u;
}

HoloFunction HoloFunction::monomial(int k, cplx q2, double h) {
  HoloFunction u;
  u.h = h;
  u.q2 = q2;
  u.p.assign(static_cast<std::size_t>(k) + 1, cplx(0.0));
  u.p.back() = 1.0;
  return u;
}

HoloFunction HoloFunction::expq(cplx q2, cplx q1, cplx q0, cplx amp, double h) {
  HoloFunction u;
  u.h = h;
  u.q2 = q2;
  u.q1 = q1;
  u.q0 = q0;
  u.p = {amp};
  return u;
}

HoloFunction operator+(const HoloFunction& u, const HoloFunction& v) {
  if (u.h != v.h || u.q2 != v.q2 || u.q1 != v.q1 || u.q0 != v.q0)
    throw std::invalid_argument("HoloFunction +: exponents must match");
  HoloFunction out = u;
  if (v.p.size() > out.p.size()) out.p.resize(v.p.size(), cplx(0.0));
  for (std::size_t k = 0; k < v.p.size(); ++k) out.p[k] += v.p[k];
  return out;
}

double gaussian_decay_margin(cplx q2_u, cplx q2_v, const QuadraticWeight& w) {
  return 2.0 * w.l_scalar() - std::abs(q2_u + q2_v - 2.0 * w.q_scalar());
}

}  // namespace bargweyl
