#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rsverify/appendix.hpp"
#include "rsverify/special_fn.hpp"

using namespace rsv;
using namespace rsv::appendix;
using C = Complex;

namespace {

C param(const ParamList& ps, const std::string& name) {
  for (const auto& [k, v] : ps)
    if (k == name) return v;
  FAIL("missing parameter " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("identity names") {
  for (auto id : kAllIdentities) {
    CHECK(parse_identity(identity_name(id)) == id);
    CHECK(parse_identity(std::string(identity_name(id)).substr(0, 2)) == id);
  }
  CHECK_FALSE(parse_identity("A9").has_value());
  CHECK(default_tolerance(IdentityId::A1_mellin_spherical) == 1e-7);
  CHECK(default_tolerance(IdentityId::A6_lemma_intf21) == 1e-7);
  CHECK(default_tolerance(IdentityId::A7_trafo_3f2_unit) == 1e-9);
  CHECK(default_tolerance(IdentityId::A8_gauss_2f1_unit) == 1e-9);
  CHECK_FALSE(quadrature_backed(IdentityId::A8_gauss_2f1_unit));
}

TEST_CASE("sampling is deterministic and inside the domains") {
  for (auto id : kAllIdentities) CHECK(sample_params(id, 42) == sample_params(id, 42));
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto p = sample_params(IdentityId::A1_mellin_spherical, s);
    const double rl = param(p, "lambda").real();
    const double hi = 2.0 * (param(p, "mu") + param(p, "nu")).real() - 0.1;
    CHECK(rl >= 0.1);
    CHECK(rl <= hi);
    for (const auto& [k, v] : p) {
      CHECK(std::abs(v.imag()) <= 2.0);
      CHECK(std::abs(v.real()) <= 3.0);
    }
  }
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto p = sample_params(IdentityId::A3_halfline_linear_quadratic, s);
    CHECK(std::abs(param(p, "u")) >= std::abs(param(p, "beta")) + 0.1);
    const C mu = param(p, "mu"), nu = param(p, "nu");
    CHECK(mu.real() > 0.0);
    CHECK(mu.real() < -2.0 * nu.real());
  }
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto p = sample_params(IdentityId::A7_trafo_3f2_unit, s);
    const C a = param(p, "a"), b = param(p, "b"), c = param(p, "c"), d = param(p, "d"), e = param(p, "e");
    CHECK((d + e - a - b - c).real() >= 0.1);
    CHECK((c - d + 1.0).real() >= 0.1);
  }
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto p = sample_params(IdentityId::A8_gauss_2f1_unit, s);
    CHECK((param(p, "gamma") - param(p, "alpha") - param(p, "beta")).real() >= 0.1);
  }
}

TEST_CASE("twenty draws per identity pass") {
  const auto reps = run_suite(20, 7, {}, default_spec());
  CHECK(reps.size() == 160);
  for (const auto& r : reps) {
    INFO(r.id << " seed " << r.seed << " rel " << r.rel_err << " " << r.diagnostic);
    CHECK(r.pass);
  }
}

TEST_CASE("collapse and edge cases") {
  const auto spec = default_spec();
  // A8 at (1,1,3)
  auto r = verify_identity(IdentityId::A8_gauss_2f1_unit, {{"alpha", 1.0}, {"beta", 1.0}, {"gamma", 3.0}}, spec);
  CHECK(r.pass);
  CHECK(std::abs(r.lhs - 2.0) < 1e-10);
  CHECK(std::abs(r.rhs - 2.0) < 1e-14);
  // A1 with alpha = beta: the 2F1 argument is zero
  const C l(0.8, 0.3), mu(0.9, -0.2), nu(0.6, 0.5);
  r = verify_identity(IdentityId::A1_mellin_spherical, {{"lambda", l}, {"mu", mu}, {"nu", nu}, {"alpha", 1.7}, {"beta", 1.7}},
                      spec);
  CHECK(r.pass);
  CHECK(std::abs(r.rhs - 0.5 * sf::rpow(1.7, -l / 2.0) * sf::beta_fn(l / 2.0, mu + nu - l / 2.0)) < 1e-14);
  // A2 at x = 1: the Euler integral is normalized to 2F1(..; 0) = 1
  r = verify_identity(IdentityId::A2_euler_2f1, {{"alpha", C(0.4, 0.7)}, {"beta", C(0.9, -0.3)}, {"gamma", C(2.1, 0.4)}, {"x", 1.0}},
                      spec);
  CHECK(r.pass);
  CHECK(std::abs(r.lhs - 1.0) < 1e-15);
  // A6 with beta = gamma: 2F1(alpha, beta; beta; -x) = (1 + x)^-alpha
  r = verify_identity(IdentityId::A6_lemma_intf21,
                      {{"rho", C(0.7, 0.2)}, {"sigma", C(-0.4, 0.5)}, {"alpha", C(1.3, -0.4)}, {"beta", C(1.1, 0.6)},
                       {"gamma", C(1.1, 0.6)}, {"u", 0.5}},
                      spec);
  CHECK(r.pass);
}

TEST_CASE("half-line and real-line closed forms agree where both apply") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = sample_params(IdentityId::A3_halfline_linear_quadratic, s);
    const C mu = param(p, "mu"), nu = param(p, "nu");
    const double u = param(p, "u").real(), beta = param(p, "beta").real();
    const C h = linear_quadratic_halfline(mu, nu, u, beta), g = linear_quadratic_realline(mu, nu, u, beta);
    CHECK(std::abs(h - g) <= 1e-8 * std::abs(h));
  }
}

TEST_CASE("the unit-argument transformation is symmetric in a and b") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = sample_params(IdentityId::A7_trafo_3f2_unit, s);
    const C a = param(p, "a"), b = param(p, "b"), c = param(p, "c"), d = param(p, "d"), e = param(p, "e");
    const C l = trafo_3f2_lhs(a, b, c, d, e), r = trafo_3f2_rhs(a, b, c, d, e);
    CHECK(std::abs(trafo_3f2_lhs(b, a, c, d, e) - l) <= 1e-10 * std::abs(l));
    CHECK(std::abs(trafo_3f2_rhs(b, a, c, d, e) - r) <= 1e-9 * std::abs(r));
  }
}

TEST_CASE("failures become reports") {
  const auto r = verify_identity(IdentityId::A8_gauss_2f1_unit, {{"alpha", 1.0}, {"beta", 1.0}, {"gamma", 1.5}}, default_spec());
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.diagnostic.empty());
  const auto m = verify_identity(IdentityId::A1_mellin_spherical, {{"lambda", 1.0}}, default_spec());
  CHECK_FALSE(m.pass);
}

TEST_CASE("parallel suite matches the serial one") {
  const auto a = run_suite(3, 100, {}, default_spec(), 1);
  const auto b = run_suite(3, 100, {}, default_spec(), 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].seed == b[i].seed);
    CHECK(a[i].lhs == b[i].lhs);
    CHECK(a[i].rhs == b[i].rhs);
  }
}

TEST_CASE("tolerance overrides") {
  const auto r = run_suite(2, 7, {}, default_spec(), 1, {{IdentityId::A7_trafo_3f2_unit, 1e-30}});
  int a7 = 0;
  for (const auto& x : r)
    if (x.id == identity_name(IdentityId::A7_trafo_3f2_unit)) {
      ++a7;
      CHECK(x.tol == 1e-30);
    }
  CHECK(a7 == 2);
}
