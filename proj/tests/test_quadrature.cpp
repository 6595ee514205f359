#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rsverify/quadrature.hpp"
#include "rsverify/special_fn.hpp"

using namespace rsv;
using C = Complex;
using quad::kInf;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("finite intervals") {
  const quad::QuadratureSpec spec;
  auto r = quad::integrate_interval([](double) { return C(1.0); }, 0.0, 1.0, spec);
  CHECK(std::abs(r.value - 1.0) < 1e-14);
  CHECK(r.evaluations > 0);
  CHECK(r.error_estimate >= 0.0);
  r = quad::integrate_interval([](double x) { return C(1.0 / std::sqrt(x)); }, 0.0, 1.0, spec);
  CHECK(std::abs(r.value - 2.0) < 1e-12);
  r = quad::integrate_interval([](double w) { return C(1.0 / (1.0 + w * w)); }, -kInf, kInf, spec);
  CHECK(std::abs(r.value - kPi) < 1e-12);
}

TEST_CASE("half line") {
  const quad::QuadratureSpec spec;
  auto r = quad::integrate_halfline([](double x) { return C(std::exp(-x)); }, spec);
  CHECK(std::abs(r.value - 1.0) < 1e-12);
  r = quad::integrate_halfline([](double x) { return C(1.0 / (std::sqrt(x) * (1.0 + x))); }, spec);
  CHECK(std::abs(r.value - sf::beta_fn(0.5, 0.5)) < 1e-11);
  // oscillatory power x^{i - 1/2} / (1 + x)
  r = quad::integrate_halfline([](double x) { return sf::rpow(x, C(-0.5, 1.0)) / (1.0 + x); }, spec);
  const C oracle = sf::gamma(C(0.5, 1.0)) * sf::gamma(C(0.5, -1.0));
  CHECK(std::abs(r.value - oracle) < 1e-9 * std::abs(oracle));
}

TEST_CASE("real line") {
  const quad::QuadratureSpec spec;
  auto r = quad::integrate_realline([](double x) { return C(std::exp(-x * x)); }, spec);
  CHECK(std::abs(r.value - std::sqrt(kPi)) < 1e-12);
  quad::QuadratureSpec s0 = spec;
  s0.singular_hyperplanes = {{{1.0}, 0.0}};
  r = quad::integrate_realline([](double x) { return C(1.0 / (std::sqrt(std::abs(x)) * (1.0 + x * x))); }, s0);
  const auto h = quad::integrate_halfline([](double x) { return C(1.0 / (std::sqrt(x) * (1.0 + x * x))); }, spec);
  CHECK(std::abs(r.value - 2.0 * h.value) < 1e-10);
  r = quad::integrate_realline([](double x) { return C(x * std::exp(-x * x)); }, spec);
  CHECK(std::abs(r.value) < 1e-13);
}

TEST_CASE("multidimensional") {
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  auto r = quad::integrate_nd([](std::span<const double>) { return C(1.0); }, {{0.0, 1.0, {}}, {0.0, 1.0, {}}}, spec);
  CHECK(std::abs(r.value - 1.0) < 1e-12);
  r = quad::integrate_nd([](std::span<const double> v) { return C(std::exp(-v[0] * v[0] - v[1] * v[1])); },
                         {{-kInf, kInf, {}}, {-kInf, kInf, {}}}, spec);
  CHECK(std::abs(r.value - kPi) < 1e-10);
  // interior singular line x = y declared as a hyperplane
  spec.singular_hyperplanes = {{{1.0, -1.0}, 0.0}};
  r = quad::integrate_nd([](std::span<const double> v) {
                           const double d = std::abs(v[0] - v[1]);
                           return d == 0.0 ? C(0.0) : C(1.0 / std::sqrt(d));
                         },
                         {{0.0, 1.0, {}}, {0.0, 1.0, {}}}, spec);
  // density of d = |x - y| is 2 (1 - d); d is recomputed from rounded nodes,
  // which costs about sqrt(eps) near the line
  CHECK(std::abs(r.value - 8.0 / 3.0) < 1e-7);
}

TEST_CASE("linearity and additivity") {
  const quad::QuadratureSpec spec;
  auto f = [](double x) { return C(std::cos(3.0 * x), std::sqrt(x)); };
  auto g = [](double x) { return C(std::exp(-x), 1.0 / std::sqrt(x)); };
  const C a(0.3, -1.2), b(2.0, 0.5);
  const auto rf = quad::integrate_interval(f, 0.0, 2.0, spec);
  const auto rg = quad::integrate_interval(g, 0.0, 2.0, spec);
  const auto rs = quad::integrate_interval([&](double x) { return a * f(x) + b * g(x); }, 0.0, 2.0, spec);
  CHECK(std::abs(rs.value - (a * rf.value + b * rg.value)) <= 1e-11 + rs.error_estimate + rf.error_estimate + rg.error_estimate);
  std::mt19937_64 eng(2);
  for (int i = 0; i < 10; ++i) {
    const double c = 0.1 + 1.8 * static_cast<double>(eng() >> 11) * 0x1p-53;
    const auto l = quad::integrate_interval(g, 0.0, c, spec), r = quad::integrate_interval(g, c, 2.0, spec);
    CHECK(std::abs(l.value + r.value - rg.value) <= 1e-11 + l.error_estimate + r.error_estimate + rg.error_estimate);
  }
}

TEST_CASE("log-oscillating interior singularity") {
  // int_{-1}^{1} |x|^{-1/2 + 2i} dx = 2 / (1/2 + 2i)
  quad::QuadratureSpec spec;
  spec.singular_hyperplanes = {{{1.0}, 0.0}};
  const auto r = quad::integrate_interval(
      [](double x) { return x == 0.0 ? C(0.0) : sf::rpow(std::abs(x), C(-0.5, 2.0)); }, -1.0, 1.0, spec);
  CHECK(std::abs(r.value - 2.0 / C(0.5, 2.0)) < 1e-9);
}

TEST_CASE("serial determinism") {
  const quad::QuadratureSpec spec;
  auto f = [](std::span<const double> v) { return C(std::exp(-v[0] * v[0]) / (1.0 + v[1] * v[1]), v[0] * v[1]); };
  const std::vector<quad::Dimension> dims = {{-kInf, kInf, {}}, {0.0, 3.0, {}}};
  const auto a = quad::integrate_nd(f, dims, spec), b = quad::integrate_nd(f, dims, spec);
  CHECK(a.value == b.value);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("spec validation") {
  quad::QuadratureSpec bad;
  bad.rel_tol = -1.0;
  CHECK_THROWS(bad.validate());
  bad = {};
  bad.max_subdivisions = 0;
  CHECK_THROWS(bad.validate());
}
