#include "rsverify/params.hpp"

#include <cmath>

namespace rsv {

namespace {

void check_imaginary(Complex z, const char* what) {
  require_finite(z, what);
  if (std::abs(z.real()) > kLocusTol)
    throw DomainError(std::string(what) + " off the unitary locus: " + format_complex(z));
}

}  // namespace

GL3Parameter GL3Parameter::make(Complex l1, Complex l2, Complex l3, Locus mode) {
  require_finite(l1, "lambda1");
  require_finite(l2, "lambda2");
  require_finite(l3, "lambda3");
  if (mode == Locus::Strict) {
    check_imaginary(l1, "lambda1");
    check_imaginary(l2, "lambda2");
    check_imaginary(l3, "lambda3");
    if (std::abs(l1 + l2 + l3) > kLocusTol) throw DomainError("lambda1 + lambda2 + lambda3 must vanish");
  }
  return unchecked(l1, l2, l3);
}

double GL3Parameter::norm() const {
  return std::sqrt(std::norm(lambda[0]) + std::norm(lambda[1]) + std::norm(lambda[2]));
}

GL2Parameter GL2Parameter::make(Complex tau, Locus mode) {
  require_finite(tau, "tau");
  if (mode == Locus::Strict) check_imaginary(tau, "tau");
  return unchecked(tau);
}

}  // namespace rsv
