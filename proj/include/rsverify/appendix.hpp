#pragma once

// Randomized checks of the hypergeometric integral formulas and unit-argument
// transformations: numeric left side against closed right side.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rsverify/quadrature.hpp"
#include "rsverify/report.hpp"

namespace rsv::appendix {

enum class IdentityId {
  A1_mellin_spherical,
  A2_euler_2f1,
  A3_halfline_linear_quadratic,
  A4_realline_linear_quadratic,
  A5_beta_pfq,
  A6_lemma_intf21,
  A7_trafo_3f2_unit,
  A8_gauss_2f1_unit,
};

inline constexpr std::array<IdentityId, 8> kAllIdentities = {
    IdentityId::A1_mellin_spherical,          IdentityId::A2_euler_2f1,
    IdentityId::A3_halfline_linear_quadratic, IdentityId::A4_realline_linear_quadratic,
    IdentityId::A5_beta_pfq,                  IdentityId::A6_lemma_intf21,
    IdentityId::A7_trafo_3f2_unit,            IdentityId::A8_gauss_2f1_unit,
};

std::string_view identity_name(IdentityId id);
std::optional<IdentityId> parse_identity(std::string_view name);

// 1e-7 when the left side is a quadrature, 1e-9 for the series identities.
double default_tolerance(IdentityId id);
bool quadrature_backed(IdentityId id);

struct SampleBounds {
  double margin = 0.1;
  double max_modulus = 3.0;
  double max_imag = 2.0;

  static SampleBounds hard() { return {0.1, 8.0, 8.0}; }
};

// Deterministic in (id, seed); strictly inside the validity domain.
ParamList sample_params(IdentityId id, std::uint64_t seed, const SampleBounds& bounds = {});

quad::QuadratureSpec default_spec();

// Errors never escape: a failed evaluation gives pass = false and a diagnostic.
IdentityReport verify_identity(IdentityId id, const ParamList& params, const quad::QuadratureSpec& spec,
                               double tol);
IdentityReport verify_identity(IdentityId id, const ParamList& params, const quad::QuadratureSpec& spec);

// Building blocks, exposed for the property tests.
// int_u^inf (x-u)^{mu-1} (x^2+beta^2)^nu dx by quadrature
quad::IntegralResult linear_quadratic_numeric(Complex mu, Complex nu, double u, double beta,
                                              const quad::QuadratureSpec& spec);
// the same integral in closed form, for u > beta > 0 / for all real u
Complex linear_quadratic_halfline(Complex mu, Complex nu, double u, double beta);
Complex linear_quadratic_realline(Complex mu, Complex nu, double u, double beta);
// both sides of the unit-argument 3F2 transformation
Complex trafo_3f2_lhs(Complex a, Complex b, Complex c, Complex d, Complex e);
Complex trafo_3f2_rhs(Complex a, Complex b, Complex c, Complex d, Complex e);

// samples draws per identity with seeds seed, seed+1, ...; ordered by
// identity then seed.
std::vector<IdentityReport> run_suite(int samples, std::uint64_t seed, const SampleBounds& bounds,
                                      const quad::QuadratureSpec& spec, int parallelism = 1,
                                      const std::vector<std::pair<IdentityId, double>>& tol_overrides = {});

}  // namespace rsv::appendix
