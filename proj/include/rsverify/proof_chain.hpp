#pragma once

// The ten displays of the closed-form evaluation of A_{lambda,-nu} phi_lambda(0),
// each evaluated numerically with its accumulated gamma prefactor.

#include <vector>

#include "rsverify/params.hpp"
#include "rsverify/quadrature.hpp"
#include "rsverify/report.hpp"

namespace rsv::chain {

inline constexpr int kSteps = 10;

struct ChainOptions {
  // Use the printed 1/2 in the y-integration prefactor (and every later step)
  // instead of the value the half-line formula gives over all of R.
  bool printed_y_prefactor = false;
  // Multiply step `mutate_step` by `mutate_factor` (mutation testing).
  int mutate_step = -1;
  double mutate_factor = 1.0;
};

// Number of integration variables of a step (0 for the closed form).
int step_dimension(int k);

// Ladder tolerance for the pair (k, k+1), by the larger of the two dimensions.
double pair_tolerance(int k);

struct ChainSpecs {
  quad::QuadratureSpec d3, d2, d1;
  static ChainSpecs defaults(int parallelism = 1);
};

quad::IntegralResult chain_step(int k, const GL3Parameter& p, const NuPair& nu, const ChainSpecs& specs,
                                const ChainOptions& opts = {});

// Real parts of the hypotheses of the t-integral lemma at the substituted
// parameters: Re rho, Re(alpha - sigma - rho + 1), Re(beta - sigma - rho + 1).
struct LemmaCheck {
  double re_rho = 0.0, re_a = 0.0, re_b = 0.0;
  bool ok() const { return re_rho > 0.0 && re_a > 0.0 && re_b > 0.0; }
};
LemmaCheck lemma_hypotheses(const GL3Parameter& p, const NuPair& nu);

// Integral over z > 0 and z < 0 of the dropped odd term of the x-integration.
struct OddTermCheck {
  Complex positive_half, negative_half;
  Complex sum() const { return positive_half + negative_half; }
};
OddTermCheck odd_term_check(const GL3Parameter& p, const NuPair& nu, const quad::QuadratureSpec& spec,
                            const ChainOptions& opts = {});

// Intermediate closed displays between step 8 and step 9: the 4F3 pair and
// the single 3F2 after the unit-argument transformation (both including the
// accumulated prefactor).
Complex display_4f3(const GL3Parameter& p, const NuPair& nu, const ChainOptions& opts = {});
Complex display_3f2(const GL3Parameter& p, const NuPair& nu, const ChainOptions& opts = {});

// One report per consecutive pair. Step failures become failed reports.
std::vector<IdentityReport> verify_chain(const GL3Parameter& p, const NuPair& nu, const ChainSpecs& specs,
                                         const ChainOptions& opts = {}, int parallelism = 1);

}  // namespace rsv::chain
