#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rsv {

using Complex = std::complex<double>;

// Argument sits on a pole of Gamma (or a lower hypergeometric parameter is a
// non-positive integer).
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Series hit its term cap, or an unit-argument series fails its convergence
// condition.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature failure that cannot be reported through a result flag
// (non-finite integrand sample, evaluation budget exhausted).
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside the unitary locus in strict mode, or an invalid domain
// for a geometric construction.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw DomainError(std::string(what) + ": non-finite complex argument");
}

std::string format_complex(Complex z);

}  // namespace rsv
