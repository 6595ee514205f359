#pragma once

// Gamma factors on the L-function side: parameter conversions, Stade's
// formula and the completed-period prefactor.

#include "rsverify/params.hpp"

namespace rsv::gf {

// alpha = (a1, a2); unitary locus Re a1 = Re a2 = 1/3.
struct GL3Type {
  Complex a1{}, a2{};
};

// beta with tau = 1/2 - beta.
struct GL2Type {
  Complex beta{};
};

GL3Parameter alpha_to_lambda(const GL3Type& a, Locus mode = Locus::Strict);
GL3Type lambda_to_alpha(const GL3Parameter& p);

GL2Parameter beta_to_nu(const GL2Type& b, Locus mode = Locus::Strict);

Complex stade_gamma(const GL3Parameter& p, const GL2Parameter& q, Complex s);

Complex completed_prefactor(const GL3Parameter& p, const GL2Parameter& q, Complex s);

}  // namespace rsv::gf
