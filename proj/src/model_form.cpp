#include "rsverify/model_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rsverify/gamma_factors.hpp"
#include "rsverify/special_fn.hpp"
#include "logs.hpp"

namespace rsv::model {

namespace {

constexpr double kPi = std::numbers::pi;

Complex abs_pow(double base, Complex e) {
  const double a = std::abs(base);
  if (a == 0.0) throw DomainError("kernel evaluated on a singular hyperplane");
  return std::exp(e * std::log(a));
}

using detail::log1_sumsq;

// nu' = (tau + it, -tau + it)
NuPair twist(const GL2Parameter& q, double t) { return NuPair::twisted(q, t); }

}  // namespace

Complex sphere_gl3(const GL3Parameter& p, double x, double y, double z) {
  const double zp = z + 0.5 * x * y, zm = z - 0.5 * x * y;
  const Complex g1 = (p[0] - p[1] + 1.0) / 2.0, g2 = (p[1] - p[2] + 1.0) / 2.0;
  return std::exp(-g1 * log1_sumsq(x, zp) - g2 * log1_sumsq(y, zm));
}

Complex sphere_gl2(const GL2Parameter& q, double w) {
  return std::exp(-(q.nu1() - q.nu2() + 1.0) / 2.0 * std::log(1.0 + w * w));
}

Complex kernel_nu(const GL3Parameter& p, const NuPair& nu, Point3 pt, double w) {
  const double a = pt.z + 0.5 * pt.x * pt.y;
  const double b = pt.z - 0.5 * pt.x * pt.y + w * pt.y;
  const double c = pt.x - w;
  return abs_pow(a, p[0] - nu.nu2 - 0.5) * abs_pow(b, p[1] - nu.nu1 - 0.5) * abs_pow(c, -p[1] + nu.nu2 - 0.5);
}

Complex kernel(const GL3Parameter& p, const GL2Parameter& q, double t, Point3 pt, double w) {
  return kernel_nu(p, twist(q, t), pt, w);
}

quad::QuadratureSpec default_spec_3d() {
  quad::QuadratureSpec s;
  s.rel_tol = 1e-6;
  s.abs_tol = 1e-12;
  s.de_level_max = 10;
  return s;
}

quad::IntegralResult intertwine_at_zero_nu(const GL3Parameter& p, const NuPair& nu, const quad::QuadratureSpec& spec) {
  // kernel(p, -nu, pt, 0) * phi_lambda; the integrand is invariant under
  // (x,y) -> (-x,-y) and (y,z) -> (-y,-z), so integrate x, y > 0 and multiply by 4.
  const Complex ex = -p[1] - nu.nu2 - 0.5;
  const Complex ep = p[0] + nu.nu2 - 0.5;
  const Complex em = p[1] + nu.nu1 - 0.5;
  const Complex g1 = (p[0] - p[1] + 1.0) / 2.0, g2 = (p[1] - p[2] + 1.0) / 2.0;
  auto f = [=](std::span<const double> v) {
    const double x = v[0], y = v[1], z = v[2];
    const double h = 0.5 * x * y;
    const double zp = z + h, zm = z - h;
    // nodes whose distance to a split underflows carry negligible weight
    if (zp == 0.0 || zm == 0.0) return Complex{0.0, 0.0};
    const Complex e = ex * std::log(x) + ep * std::log(std::abs(zp)) + em * std::log(std::abs(zm)) -
                      g1 * log1_sumsq(x, zp) - g2 * log1_sumsq(y, zm);
    return std::exp(e);
  };
  std::vector<quad::Dimension> dims(3);
  dims[0] = {0.0, quad::kInf, {}};
  dims[1] = {0.0, quad::kInf, {}};
  dims[2] = {-quad::kInf, quad::kInf, [](std::span<const double> o, std::vector<double>& out) {
               const double h = 0.5 * o[0] * o[1];
               out.push_back(-h);
               out.push_back(h);
             }};
  quad::IntegralResult r = quad::integrate_nd(f, dims, spec);
  r.value *= 4.0;
  r.error_estimate *= 4.0;
  return r;
}

quad::IntegralResult intertwine_at_zero(const GL3Parameter& p, const GL2Parameter& q, double t,
                                        const quad::QuadratureSpec& spec) {
  return intertwine_at_zero_nu(p, twist(q, t), spec);
}

quad::IntegralResult model_value_numeric(const GL3Parameter& p, const GL2Parameter& q, double t,
                                         const quad::QuadratureSpec& spec) {
  quad::IntegralResult r = intertwine_at_zero(p, q, t, spec);
  r.value *= kPi;
  r.error_estimate *= kPi;
  return r;
}

quad::IntegralResult model_value_4d(const GL3Parameter& p, const GL2Parameter& q, double t,
                                    const quad::QuadratureSpec& spec) {
  // K_{lambda,-nu'}((x,y,z),w) phi_lambda(x,y,z) psi_nu(w); invariant under
  // (x,y,w) -> (-x,-y,-w) and (y,z) -> (-y,-z).
  const NuPair nu = twist(q, t).negated();
  const Complex e1 = p[0] - nu.nu2 - 0.5, e2 = p[1] - nu.nu1 - 0.5, e3 = -p[1] + nu.nu2 - 0.5;
  const Complex g1 = (p[0] - p[1] + 1.0) / 2.0, g2 = (p[1] - p[2] + 1.0) / 2.0;
  const Complex gw = (q.nu1() - q.nu2() + 1.0) / 2.0;
  auto f = [=](std::span<const double> v) {
    const double w = v[0], x = v[1], y = v[2], z = v[3];
    const double h = 0.5 * x * y;
    const double zp = z + h, zm = z - h, zw = zm + w * y, xw = x - w;
    if (zp == 0.0 || zw == 0.0 || xw == 0.0 || x == 0.0) return Complex{0.0, 0.0};
    const Complex e = e1 * std::log(std::abs(zp)) + e2 * std::log(std::abs(zw)) + e3 * std::log(std::abs(xw)) -
                      g1 * log1_sumsq(x, zp) - g2 * log1_sumsq(y, zm) - gw * log1_sumsq(w, 0.0);
    return std::exp(e);
  };
  std::vector<quad::Dimension> dims(4);
  dims[0] = {0.0, quad::kInf, {}};
  dims[1] = {-quad::kInf, quad::kInf, [](std::span<const double> o, std::vector<double>& out) {
               out.push_back(0.0);
               out.push_back(o[0]);
             }};
  dims[2] = {0.0, quad::kInf, {}};
  dims[3] = {-quad::kInf, quad::kInf, [](std::span<const double> o, std::vector<double>& out) {
               const double h = 0.5 * o[1] * o[2];
               out.push_back(-h);
               out.push_back(h - o[0] * o[2]);
             }};
  quad::IntegralResult r = quad::integrate_nd(f, dims, spec);
  r.value *= 4.0;
  r.error_estimate *= 4.0;
  return r;
}

Complex model_value_closed(const GL3Parameter& p, const NuPair& nu) {
  const Complex l1 = p[0], l2 = p[1], l3 = p[2], n1 = nu.nu1, n2 = nu.nu2;
  return sf::gamma_quotient(
      {(2.0 * l1 + 2.0 * n1 + 1.0) / 4.0, (2.0 * l1 + 2.0 * n2 + 1.0) / 4.0, (2.0 * l2 + 2.0 * n1 + 1.0) / 4.0,
       -(2.0 * l2 + 2.0 * n2 - 1.0) / 4.0, -(2.0 * l3 + 2.0 * n1 - 1.0) / 4.0, -(2.0 * l3 + 2.0 * n2 - 1.0) / 4.0},
      {(l1 - l2 + 1.0) / 2.0, (l2 - l3 + 1.0) / 2.0, (l1 - l3 + 1.0) / 2.0, (n1 - n2 + 1.0) / 2.0});
}

Complex model_value_closed_t(const GL3Parameter& p, const GL2Parameter& q, double t) {
  return model_value_closed(p, twist(q, t));
}

std::vector<CalibrationPoint> calibration_points() {
  using C = Complex;
  auto pt = [](C l1, C l2, C l3, C tau, double t) {
    return CalibrationPoint{GL3Parameter::make(l1, l2, l3), GL2Parameter::make(tau), t};
  };
  return {
      pt(0.0, 0.0, 0.0, 0.0, 0.0),
      pt(C(0, 0.5), 0.0, C(0, -0.5), C(0, 0.3), 0.0),
      pt(C(0, 0.6), C(0, -0.6), 0.0, C(0, 0.5), 0.0),
      pt(C(0, 0.2), C(0, 0.3), C(0, -0.5), C(0, -0.4), 0.0),
      pt(C(0, -0.4), C(0, 0.7), C(0, -0.3), C(0, 0.8), 0.0),
      pt(C(0, 0.5), C(0, -0.2), C(0, -0.3), C(0, -0.9), 0.0),
      pt(C(0, 0.3), C(0, 0.3), C(0, -0.6), C(0, 0.2), 0.5),
  };
}

Calibration calibrate_constant(const quad::QuadratureSpec& spec, const std::vector<CalibrationPoint>& points) {
  Calibration cal;
  if (points.empty()) throw DomainError("calibrate_constant: empty reference set");
  double sum = 0.0, lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    const auto num = model_value_numeric(pt.p, pt.q, pt.t, spec);
    const Complex closed = model_value_closed_t(pt.p, pt.q, pt.t);
    CalibrationRecord rec{pt, num.value, closed, num.value / closed, num.error_estimate / std::abs(closed)};
    const double m = std::abs(rec.ratio);
    if (i == 0) lo = hi = m;
    lo = std::min(lo, m);
    hi = std::max(hi, m);
    sum += rec.ratio.real();
    cal.records.push_back(rec);
  }
  cal.c = sum / static_cast<double>(points.size());
  cal.spread = (hi - lo) / std::abs(cal.c);
  for (const auto& rec : cal.records) cal.max_imag = std::max(cal.max_imag, std::abs(rec.ratio.imag()) / std::abs(cal.c));
  cal.consistent = cal.spread <= 1e-2 && cal.max_imag <= 1e-2 && cal.c > 0.0;
  return cal;
}

Calibration calibrate_constant(const quad::QuadratureSpec& spec) { return calibrate_constant(spec, calibration_points()); }

double reciprocity_modulus(const GL3Parameter& p, const GL2Parameter& q, double t) {
  return std::abs(model_value_closed_t(p, q, t)) * std::abs(gf::completed_prefactor(p, q, Complex(0.5, t)));
}

double BumpProfile::normalization() const {
  if (!(radius_eps > 0.0)) throw DomainError("bump radius must be positive");
  // ||(1 - rho^2)^4||^2 over the unit ball = 4 pi * B(3/2, 9) / 2
  const double b = std::exp(std::lgamma(1.5) + std::lgamma(9.0) - std::lgamma(10.5));
  return 1.0 / std::sqrt(2.0 * kPi * b * radius_eps * radius_eps * radius_eps);
}

double BumpProfile::value(double r) const {
  const double rho2 = (r / radius_eps) * (r / radius_eps);
  if (rho2 >= 1.0) return 0.0;
  const double q = 1.0 - rho2;
  return normalization() * q * q * q * q;
}

double BumpProfile::integral() const {
  const double b = std::exp(std::lgamma(1.5) + std::lgamma(5.0) - std::lgamma(6.5));
  return normalization() * 2.0 * kPi * b * radius_eps * radius_eps * radius_eps;
}

quad::IntegralResult bump_value(double T, const GL3Parameter& p, const GL2Parameter& q, double t,
                                const BumpProfile& bump, const quad::QuadratureSpec& spec) {
  if (!(T >= 4.0)) throw DomainError("bump_value: need T >= 4");
  const double delta = bump.radius_eps / T;
  // |z +- xy/2| >= 1 - delta - (1 + delta) delta / 2 and |x| >= 1 - delta on the support
  if (1.0 - delta - 0.5 * (1.0 + delta) * delta <= 0.0 || 1.0 - delta <= 0.0)
    throw DomainError("bump_value: support touches a singular hyperplane");
  const NuPair nu = twist(q, t).negated();
  const double C = bump.normalization();
  const double eps = bump.radius_eps;
  const double scale = std::pow(T, 1.5);
  auto f = [&](std::span<const double> v) {
    const double r = v[0], c = v[1], ph = v[2];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const Point3 pt{1.0 + r * s * std::cos(ph), r * s * std::sin(ph), 1.0 + r * c};
    const double rho2 = (T * r / eps) * (T * r / eps);
    const double qq = 1.0 - rho2;
    const double u = scale * C * qq * qq * qq * qq;
    return kernel_nu(p, nu, pt, 0.0) * u * r * r;
  };
  std::vector<quad::Dimension> dims = {{0.0, delta, {}}, {-1.0, 1.0, {}}, {0.0, 2.0 * kPi, {}}};
  quad::QuadratureSpec s = spec;
  s.sqrt_regularize = false;
  return quad::integrate_nd(f, dims, s);
}

SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw DomainError("fit_loglog: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  SlopeFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

}  // namespace rsv::model
