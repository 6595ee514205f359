#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rsverify/gamma_factors.hpp"
#include "rsverify/model_form.hpp"
#include "rsverify/special_fn.hpp"

using namespace rsv;
using C = Complex;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGammaQuarter = 3.62560990822190831193068515586767;

double uni(std::mt19937_64& e, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(e() >> 11) * 0x1p-53;
}

GL3Parameter random_lambda(std::mt19937_64& e, double r) {
  const double a = uni(e, -r, r), b = uni(e, -r, r);
  return GL3Parameter::make(C(0, a), C(0, b), C(0, -a - b));
}

quad::QuadratureSpec quick_spec() {
  auto s = model::default_spec_3d();
  s.rel_tol = 1e-4;
  s.de_level_max = 8;
  return s;
}

}  // namespace

TEST_CASE("spherical vectors") {
  const auto p0 = GL3Parameter::make(0, 0, 0);
  const auto p = GL3Parameter::make(C(0, 0.4), C(0, -0.1), C(0, -0.3));
  CHECK(std::abs(model::sphere_gl3(p, 0, 0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(model::sphere_gl3(p0, 1, 0, 1) - 1.0 / std::sqrt(6.0)) < 1e-15);
  CHECK(std::abs(std::abs(model::sphere_gl3(p, 0.3, -1.2, 2.0)) - std::abs(model::sphere_gl3(p0, 0.3, -1.2, 2.0))) < 1e-15);
  const auto q = GL2Parameter::make(C(0, 0.7));
  CHECK(std::abs(model::sphere_gl2(q, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(model::sphere_gl2(GL2Parameter::make(0), 1.0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(std::abs(model::sphere_gl2(q, 1.7)) - 1.0 / std::sqrt(1.0 + 1.7 * 1.7)) < 1e-15);
}

TEST_CASE("kernel values and modulus") {
  const auto p0 = GL3Parameter::make(0, 0, 0);
  const auto q0 = GL2Parameter::make(0);
  const auto p = GL3Parameter::make(C(0, 0.9), C(0, -0.4), C(0, -0.5));
  const auto q = GL2Parameter::make(C(0, 0.35));
  CHECK(std::abs(model::kernel(p, q, 0.7, {1, 0, 1}, 0.0) - 1.0) < 1e-14);
  CHECK(std::abs(model::kernel(p0, q0, 0.0, {2, 0, 2}, 0.0) - std::pow(2.0, -1.5)) < 1e-15);
  std::mt19937_64 eng(4);
  for (int i = 0; i < 1000; ++i) {
    const model::Point3 pt{uni(eng, -3, 3), uni(eng, -3, 3), uni(eng, -3, 3)};
    const double w = uni(eng, -3, 3);
    const double expect = std::pow(std::abs(pt.z + pt.x * pt.y / 2) * std::abs(pt.z - pt.x * pt.y / 2 + w * pt.y) *
                                       std::abs(pt.x - w),
                                   -0.5);
    const double got = std::abs(model::kernel(p, q, 1.3, pt, w));
    CHECK(std::abs(got - expect) <= 1e-14 * expect);
  }
  CHECK_THROWS_AS(model::kernel(p, q, 0.0, {1, 0, 1}, 1.0), DomainError);
}

TEST_CASE("conjugation covariance of the kernel") {
  const auto p = GL3Parameter::make(C(0, 0.9), C(0, -0.4), C(0, -0.5));
  const auto q = GL2Parameter::make(C(0, 0.35));
  const model::Point3 pt{0.4, -1.1, 0.8};
  CHECK(std::abs(model::kernel(p.negated(), q.negated(), -0.6, pt, 0.2) - std::conj(model::kernel(p, q, 0.6, pt, 0.2))) <
        1e-15);
}

TEST_CASE("closed form") {
  const auto p0 = GL3Parameter::make(0, 0, 0);
  const C v0 = model::model_value_closed(p0, {0.0, 0.0});
  CHECK(std::abs(v0 - std::pow(kGammaQuarter, 6) / (kPi * kPi)) < 1e-12 * std::abs(v0));
  const auto p = GL3Parameter::make(C(0, 0.5), 0, C(0, -0.5));
  const auto q = GL2Parameter::make(C(0, 0.3));
  const C v = model::model_value_closed(p, NuPair::from(q));
  CHECK(std::abs(model::model_value_closed(p.negated(), NuPair::from(q).negated()) - std::conj(v)) < 1e-13);
  CHECK(std::abs(model::model_value_closed_t(p, q, 0.0) - v) < 1e-14);
  const C vt = model::model_value_closed_t(p, q, 0.8);
  CHECK(std::abs(model::model_value_closed_t(p.negated(), q.negated(), -0.8) - std::conj(vt)) < 1e-13);
}

TEST_CASE("completed prefactor is the reciprocal at the origin") {
  const auto p0 = GL3Parameter::make(0, 0, 0);
  const auto q0 = GL2Parameter::make(0);
  const C pre = gf::completed_prefactor(p0, q0, 0.5);
  CHECK(std::abs(pre - kPi * kPi / std::pow(kGammaQuarter, 6)) < 1e-14);
  CHECK(std::abs(model::reciprocity_modulus(p0, q0, 0.0) - 1.0) < 1e-13);
}

TEST_CASE("reciprocity constancy") {
  std::mt19937_64 eng(17);
  const double ref = model::reciprocity_modulus(GL3Parameter::make(0, 0, 0), GL2Parameter::make(0), 0.0);
  const auto p1 = GL3Parameter::make(C(0, 1.0), C(0, -0.5), C(0, -0.5));
  CHECK(std::abs(model::reciprocity_modulus(p1, GL2Parameter::make(C(0, 0.7)), 1.3) - ref) < 1e-10 * ref);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_lambda(eng, 5.5);
    const auto q = GL2Parameter::make(C(0, uni(eng, -10, 10)));
    const double t = uni(eng, -10, 10);
    const double m = model::reciprocity_modulus(p, q, t);
    CHECK(std::abs(m - ref) < 1e-10 * ref);
    CHECK(std::abs(model::reciprocity_modulus(p.negated(), q.negated(), -t) - m) < 1e-12 * m);
  }
}

TEST_CASE("intertwining integral at the origin and its conjugation covariance") {
  const auto spec = quick_spec();
  const auto p0 = GL3Parameter::make(0, 0, 0);
  const auto q0 = GL2Parameter::make(0);
  const auto r0 = model::intertwine_at_zero(p0, q0, 0.0, spec);
  CHECK(r0.value.real() > 0.0);
  CHECK(std::abs(r0.value.imag()) < 1e-10 * r0.value.real());
  const C closed = model::model_value_closed(p0, {0.0, 0.0});
  // value is sqrt(pi) times the six-gamma closed form
  CHECK(std::abs(r0.value / closed - std::sqrt(kPi)) < 1e-4);
  const auto mv = model::model_value_numeric(p0, q0, 0.0, spec);
  CHECK(std::abs(mv.value - kPi * r0.value) < 1e-12 * std::abs(mv.value));

  const auto p = GL3Parameter::make(C(0, 0.5), 0, C(0, -0.5));
  const auto q = GL2Parameter::make(C(0, 0.3));
  const auto a = model::intertwine_at_zero(p, q, 0.4, spec);
  const auto b = model::intertwine_at_zero(p.negated(), q.negated(), -0.4, spec);
  CHECK(std::abs(b.value - std::conj(a.value)) < 1e-6 * std::abs(a.value));
  // calibration ratio agrees with the origin
  const C ratio = model::model_value_numeric(p, q, 0.4, spec).value / model::model_value_closed_t(p, q, 0.4);
  CHECK(std::abs(ratio - mv.value / closed) < 1e-3 * std::abs(ratio));
}

TEST_CASE("bump profile and scaling") {
  const model::BumpProfile bump;
  // L2 normalization by radial quadrature
  const auto norm2 = quad::integrate_interval(
      [&](double r) { return C(4.0 * kPi * r * r * bump.value(r) * bump.value(r)); }, 0.0, bump.radius_eps, {});
  CHECK(std::abs(norm2.value - 1.0) < 1e-12);
  const auto spec = model::default_spec_3d();
  const auto p0 = GL3Parameter::make(0, 0, 0);
  const auto q0 = GL2Parameter::make(0);
  const double T = 16.0;
  const auto v = model::bump_value(T, p0, q0, 0.0, bump, spec);
  // kernel is close to 1 on the support
  CHECK(std::abs(v.value / (std::pow(T, -1.5) * bump.integral()) - 1.0) < 1e-2);
  std::vector<double> xs, ys;
  for (double t : {8.0, 16.0, 32.0, 64.0}) {
    xs.push_back(t);
    ys.push_back(std::abs(model::bump_value(t, p0, q0, 0.0, bump, spec).value));
  }
  CHECK(std::abs(ys[2] / ys[1] - std::pow(2.0, -1.5)) < 0.25 * std::pow(2.0, -1.5));
  CHECK(std::abs(ys[3] / ys[2] - std::pow(2.0, -1.5)) < 0.25 * std::pow(2.0, -1.5));
  CHECK(std::abs(model::fit_loglog(xs, ys).slope + 1.5) < 0.1);
  CHECK_THROWS_AS(model::bump_value(2.0, p0, q0, 0.0, bump, spec), DomainError);
}

TEST_CASE("locus checks") {
  CHECK_THROWS_AS(GL3Parameter::make(C(0, 1), C(0, 1), 0), DomainError);
  CHECK_THROWS_AS(GL3Parameter::make(0.1, -0.1, 0), DomainError);
  CHECK_NOTHROW(GL3Parameter::make(0.1, -0.1, 0, Locus::Lenient));
  CHECK_THROWS_AS(GL2Parameter::make(0.2), DomainError);
}
