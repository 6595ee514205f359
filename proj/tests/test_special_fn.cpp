#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rsverify/quadrature.hpp"
#include "rsverify/special_fn.hpp"

using namespace rsv;
using C = Complex;

namespace {

constexpr double kPi = 3.14159265358979323846;
// Gamma(1/4), 30 digits
constexpr double kGammaQuarter = 3.62560990822190831193068515586767;

double rel(C a, C b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

double uni(std::mt19937_64& e, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(e() >> 11) * 0x1p-53;
}

}  // namespace

TEST_CASE("log_gamma special values") {
  CHECK(std::abs(sf::log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(sf::log_gamma(0.5) - std::log(std::sqrt(kPi))) < 1e-15);
  const C g = std::exp(sf::log_gamma(C(0.5, 5.0)));
  CHECK(std::abs(std::norm(g) * std::cosh(5.0 * kPi) - kPi) < 1e-12 * kPi);
  // Gamma(10) = 9!
  CHECK(std::abs(std::exp(sf::log_gamma(10.0)) - 362880.0) < 1e-9);
}

TEST_CASE("log_gamma matches the Stirling continued product at large argument") {
  // Gamma(z+n) = Gamma(z) prod_{k<n} (z+k)
  const C z(0.3, 2.1);
  C prod = 1.0;
  for (int k = 0; k < 20; ++k) prod *= z + static_cast<double>(k);
  const C lhs = sf::log_gamma(z + 20.0) - sf::log_gamma(z);
  CHECK(std::abs(std::exp(lhs) / prod - 1.0) < 1e-12);
}

TEST_CASE("gamma modulus on the critical line") {
  for (int i = 0; i < 200; ++i) {
    const double y = -30.0 + 60.0 * i / 199.0;
    const double g = std::abs(sf::gamma(C(0.5, y)));
    CHECK(std::abs(g * g * std::cosh(kPi * y) - kPi) <= 1e-12 * kPi);
  }
}

TEST_CASE("recurrence over a wide strip") {
  std::mt19937_64 eng(11);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const C z(uni(eng, -5.0, 5.0), uni(eng, -50.0, 50.0));
    if (std::abs(z.imag()) < 0.1 && std::abs(z.real() - std::round(z.real())) < 0.1) continue;
    const C r = std::exp(sf::log_gamma(z + 1.0) - sf::log_gamma(z));
    if (std::abs(r - z) > 1e-12 * std::abs(z)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("gamma_quotient") {
  CHECK(std::abs(sf::gamma_quotient({3.0}, {2.0, 2.0}) - 2.0) < 1e-14);
  CHECK(std::abs(sf::gamma_quotient({0.5, 0.5}, {1.0}) - kPi) < 1e-14);
  const C q = sf::gamma_quotient({0.25, 0.25, 0.25, 0.25, 0.25, 0.25}, {0.5, 0.5, 0.5, 0.5});
  CHECK(rel(q, std::pow(kGammaQuarter, 6) / (kPi * kPi)) < 1e-13);
  CHECK_THROWS_AS(sf::gamma_quotient({-2.0}, {1.0}), PoleError);
  // large imaginary parts do not overflow
  const C big = sf::gamma_quotient({C(1.5, 400.0)}, {C(0.5, 400.0)});
  CHECK(std::abs(big - C(0.5, 400.0)) < 1e-9 * 400.0);
}

TEST_CASE("beta_fn") {
  CHECK(std::abs(sf::beta_fn(1.0, 1.0) - 1.0) < 1e-15);
  CHECK(std::abs(sf::beta_fn(0.5, 0.5) - kPi) < 1e-14);
  CHECK(rel(sf::beta_fn(0.25, 0.25), kGammaQuarter * kGammaQuarter / std::sqrt(kPi)) < 1e-14);
}

TEST_CASE("gauss_2f1 examples") {
  CHECK(std::abs(sf::gauss_2f1(C(0.3, 1), C(2, -1), C(1.5, 0.2), 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(sf::gauss_2f1(0.5, C(0.7, 0.4), C(0.7, 0.4), -3.0) - 0.5) < 1e-13);
  // 2F1(1,1;3;-1) = 2 int_0^1 (1-t)/(1+t) dt = 4 log 2 - 2
  CHECK(std::abs(sf::gauss_2f1(1.0, 1.0, 3.0, -1.0) - (4.0 * std::log(2.0) - 2.0)) < 1e-13);
  // Euler integral oracle at x = -1
  const auto f = [](double t) { return C(std::pow(1.0 - t, 1.0) / (1.0 + t)); };
  const auto r = quad::integrate_interval(f, 0.0, 1.0, {});
  CHECK(std::abs(2.0 * r.value - sf::gauss_2f1(1.0, 1.0, 3.0, -1.0)) < 1e-12);
}

TEST_CASE("gauss_2f1 against the direct series inside the disc") {
  std::mt19937_64 eng(3);
  for (int i = 0; i < 200; ++i) {
    const C a(uni(eng, -2, 2), uni(eng, -2, 2)), b(uni(eng, -2, 2), uni(eng, -2, 2));
    const C c(uni(eng, 0.3, 3), uni(eng, -2, 2));
    const double x = uni(eng, -0.6, 0.6);
    const C s = sf::pfq_series(std::vector<C>{a, b}, std::vector<C>{c}, x);
    CHECK(rel(sf::gauss_2f1(a, b, c, x), s) < 1e-10);
  }
}

TEST_CASE("gauss_2f1 Pfaff consistency") {
  std::mt19937_64 eng(5);
  int bad = 0;
  for (int i = 0; i < 300; ++i) {
    const C a(uni(eng, -2, 2), uni(eng, -2, 2)), b(uni(eng, -2, 2), uni(eng, -2, 2));
    const C c(uni(eng, 0.3, 3), uni(eng, -2, 2));
    const double x = uni(eng, -5.0, 0.9);
    const C lhs = sf::gauss_2f1(a, b, c, x);
    const C rhs = std::pow(C(1.0 - x), -a) * sf::gauss_2f1(a, c - b, c, x / (x - 1.0));
    if (rel(lhs, rhs) > 1e-9) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("Gauss2F1 one_minus near the unit point") {
  const sf::Gauss2F1 F(C(0.25, 0.3), C(0.5, -0.2), C(1.25, 0.1));
  for (double w : {0.3, 0.05, 1e-3, 1e-6})
    CHECK(rel(F.one_minus(w), sf::gauss_2f1(C(0.25, 0.3), C(0.5, -0.2), C(1.25, 0.1), 1.0 - w)) < 1e-9);
  // log case c - a - b = 0
  const sf::Gauss2F1 G(0.5, 0.5, 1.0);
  CHECK(rel(G(0.5), sf::pfq_series(std::vector<C>{0.5, 0.5}, std::vector<C>{1.0}, 0.5)) < 1e-12);
  // 2F1(1/2,1/2;1;x) = 2 K(sqrt x) / pi
  for (double w : {1e-2, 1e-4, 1e-7})
    CHECK(rel(G.one_minus(w), 2.0 / kPi * std::comp_ellint_1(std::sqrt(1.0 - w))) < 1e-10);
}

TEST_CASE("hyp_unit") {
  CHECK(std::abs(sf::hyp_unit({{1.0, 1.0}, {3.0}}) - 2.0) < 1e-12);
  const C a(0.3, 0.5), b(0.2, -0.4), c(1.1, 0.2), e(2.6, 0.3);
  CHECK(rel(sf::hyp_unit({{a, b, c}, {c, e}}), sf::gauss_sum(a, b, e)) < 1e-10);
  const C d(2.2, -0.3);
  CHECK(rel(sf::hyp_unit({{a, b, c, d}, {d, e, C(1.9, 0.1)}}), sf::hyp_unit({{a, b, c}, {e, C(1.9, 0.1)}})) < 1e-10);
  CHECK_THROWS_AS(sf::hyp_unit({{1.0, 1.0}, {1.5}}), ConvergenceError);
}

TEST_CASE("hyp_unit p=2 matches the Gauss sum") {
  std::mt19937_64 eng(9);
  for (int i = 0; i < 100; ++i) {
    const C a(uni(eng, -1, 2), uni(eng, -2, 2)), b(uni(eng, -1, 2), uni(eng, -2, 2));
    const C c = a + b + C(uni(eng, 0.2, 2.5), uni(eng, -2, 2));
    if (sf::is_nonpositive_integer(c, 1e-3) || sf::is_nonpositive_integer(c - a, 1e-3) ||
        sf::is_nonpositive_integer(c - b, 1e-3))
      continue;
    CHECK(rel(sf::hyp_unit({{a, b}, {c}}), sf::gauss_sum(a, b, c)) < 1e-10);
  }
}

TEST_CASE("conjugation symmetry") {
  const C z(0.7, 1.3), a(0.3, 0.5), b(1.2, -0.4), c(2.1, 0.2);
  CHECK(std::abs(sf::gamma(std::conj(z)) - std::conj(sf::gamma(z))) < 1e-15);
  CHECK(std::abs(sf::gauss_2f1(std::conj(a), std::conj(b), std::conj(c), -2.5) -
                 std::conj(sf::gauss_2f1(a, b, c, -2.5))) < 1e-13);
  CHECK(std::abs(sf::gauss_sum(std::conj(a), std::conj(b), std::conj(c)) - std::conj(sf::gauss_sum(a, b, c))) < 1e-13);
}

TEST_CASE("pfq_series errors") {
  CHECK_THROWS(sf::HypergeometricArgs{{1.0, 1.0}, {-2.0}}.validate());
}
