#include "rsverify/gamma_factors.hpp"

#include <cmath>
#include <numbers>

#include "rsverify/special_fn.hpp"

namespace rsv::gf {

namespace {
const double kLogPi = std::log(std::numbers::pi);
}

GL3Parameter alpha_to_lambda(const GL3Type& a, Locus mode) {
  if (mode == Locus::Strict) {
    if (std::abs(a.a1.real() - 1.0 / 3.0) > kLocusTol || std::abs(a.a2.real() - 1.0 / 3.0) > kLocusTol)
      throw DomainError("alpha off the unitary locus (need Re alpha_i = 1/3)");
  }
  const Complex l1 = -a.a1 - 2.0 * a.a2 + 1.0;
  const Complex l2 = -a.a1 + a.a2;
  const Complex l3 = 2.0 * a.a1 + a.a2 - 1.0;
  return GL3Parameter::make(l1, l2, l3, mode);
}

GL3Type lambda_to_alpha(const GL3Parameter& p) {
  return {(1.0 + p[2] - p[1]) / 3.0, (1.0 - p[0] + p[1]) / 3.0};
}

GL2Parameter beta_to_nu(const GL2Type& b, Locus mode) { return GL2Parameter::make(0.5 - b.beta, mode); }

Complex stade_gamma(const GL3Parameter& p, const GL2Parameter& q, Complex s) {
  const Complex nu[2] = {q.nu1(), q.nu2()};
  std::vector<Complex> num;
  for (int i = 0; i < 3; ++i)
    for (const Complex n : nu) num.push_back((s + p[i] + n) / 2.0);
  const std::vector<Complex> den = {(1.0 + p[2] - p[1]) / 2.0, (1.0 + p[1] - p[0]) / 2.0, (1.0 + p[2] - p[0]) / 2.0};
  const Complex pi_pow = std::exp(kLogPi * (-3.0 * s - (-1.5 + p[0] - p[2])));
  return pi_pow * sf::gamma_quotient(num, den);
}

Complex completed_prefactor(const GL3Parameter& p, const GL2Parameter& q, Complex s) {
  const std::vector<Complex> num = {(p[0] - p[1] + 1.0) / 2.0, (p[1] - p[2] + 1.0) / 2.0, (p[0] - p[2] + 1.0) / 2.0,
                                    q.tau + 0.5};
  std::vector<Complex> den;
  for (int i = 0; i < 3; ++i) {
    den.push_back((s + p[i] + q.tau) / 2.0);
    den.push_back((s + p[i] - q.tau) / 2.0);
  }
  return sf::gamma_quotient(num, den);
}

}  // namespace rsv::gf
