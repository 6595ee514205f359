#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rsverify/gamma_factors.hpp"
#include "rsverify/special_fn.hpp"

using namespace rsv;
using C = Complex;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kGammaQuarter = 3.62560990822190831193068515586767;

double uni(std::mt19937_64& e, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(e() >> 11) * 0x1p-53;
}
}  // namespace

TEST_CASE("alpha to lambda") {
  const auto p = gf::alpha_to_lambda({1.0 / 3.0, 1.0 / 3.0});
  for (int i = 0; i < 3; ++i) CHECK(std::abs(p[i]) < 1e-15);
  const auto q = gf::alpha_to_lambda({C(1.0 / 3.0, 1.0), 1.0 / 3.0});
  CHECK(std::abs(q[0] - C(0, -1)) < 1e-15);
  CHECK(std::abs(q[1] - C(0, -1)) < 1e-15);
  CHECK(std::abs(q[2] - C(0, 2)) < 1e-15);
  CHECK_THROWS_AS(gf::alpha_to_lambda({0.5, 1.0 / 3.0}), DomainError);
  const auto r = gf::alpha_to_lambda({C(0.7, 0.2), C(-0.1, 1.1)}, Locus::Lenient);
  CHECK(std::abs(r[0] + r[1] + r[2]) < 1e-15);
}

TEST_CASE("alpha to lambda round trip") {
  std::mt19937_64 eng(21);
  for (int i = 0; i < 200; ++i) {
    const gf::GL3Type a{C(1.0 / 3.0, uni(eng, -5, 5)), C(1.0 / 3.0, uni(eng, -5, 5))};
    const auto p = gf::alpha_to_lambda(a);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(p[k].real()) < 1e-14);
    const auto back = gf::lambda_to_alpha(p);
    CHECK(std::abs(back.a1 - a.a1) < 1e-14);
    CHECK(std::abs(back.a2 - a.a2) < 1e-14);
  }
}

TEST_CASE("beta to nu") {
  CHECK(std::abs(gf::beta_to_nu({0.5}).tau) < 1e-15);
  const auto q = gf::beta_to_nu({C(0.5, -0.7)});
  CHECK(std::abs(q.tau - C(0, 0.7)) < 1e-15);
  CHECK(std::abs(q.nu1() + q.nu2()) < 1e-15);
}

TEST_CASE("Stade's gamma factor") {
  const auto p0 = GL3Parameter::make(0, 0, 0);
  const auto q0 = GL2Parameter::make(0);
  CHECK(std::abs(gf::stade_gamma(p0, q0, 1.0) - 1.0) < 1e-12);
  const auto p = GL3Parameter::make(C(0, 0.6), C(0, -0.2), C(0, -0.4));
  const auto q = GL2Parameter::make(C(0, 0.45));
  const C s(0.8, 1.7);
  CHECK(std::abs(gf::stade_gamma(p.negated(), q.negated(), std::conj(s)) - std::conj(gf::stade_gamma(p, q, s))) <
        1e-13 * std::abs(gf::stade_gamma(p, q, s)));
  CHECK(std::abs(gf::stade_gamma(p, q.negated(), s) - gf::stade_gamma(p, q, s)) < 1e-14 * std::abs(gf::stade_gamma(p, q, s)));
}

TEST_CASE("Stade's gamma factor is finite for Re s >= 1/2") {
  std::mt19937_64 eng(8);
  for (int i = 0; i < 200; ++i) {
    const double a = uni(eng, -3, 3), b = uni(eng, -3, 3);
    const auto p = GL3Parameter::make(C(0, a), C(0, b), C(0, -a - b));
    const auto q = GL2Parameter::make(C(0, uni(eng, -3, 3)));
    const C s(uni(eng, 0.5, 3.0), uni(eng, -20, 20));
    CHECK(is_finite(gf::stade_gamma(p, q, s)));
  }
}

TEST_CASE("completed prefactor") {
  const auto p0 = GL3Parameter::make(0, 0, 0);
  const auto q0 = GL2Parameter::make(0);
  CHECK(std::abs(gf::completed_prefactor(p0, q0, 0.5) - kPi * kPi / std::pow(kGammaQuarter, 6)) < 1e-15);
  const auto p = GL3Parameter::make(C(0, 1.5), C(0, -0.2), C(0, -1.3));
  const auto q = GL2Parameter::make(C(0, 2.1));
  const double t = 3.3;
  CHECK(std::abs(std::abs(gf::completed_prefactor(p, q, C(0.5, t))) -
                 std::abs(gf::completed_prefactor(p.negated(), q.negated(), C(0.5, -t)))) <
        1e-14 * std::abs(gf::completed_prefactor(p, q, C(0.5, t))));
  for (double y : {-7.0, -0.3, 0.0, 2.5, 12.0}) {
    const double g = std::abs(sf::gamma(C(0.5, y)));
    CHECK(std::abs(g * g - kPi / std::cosh(kPi * y)) < 1e-12 * g * g);
  }
}
