#pragma once

// Double-exponential quadrature for 1D-4D integrands with algebraic endpoint
// and interior singularities.
//
// Every piece of a split domain is first regularized with x = a + u^2 at each
// finite endpoint (removes |x-a|^{-1/2}), then integrated with the matching
// double-exponential map: tanh-sinh on finite pieces, exp-sinh on half-lines,
// sinh-sinh on the whole line. The trapezoid step is halved until two
// consecutive levels agree; that difference is the reported error.

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rsverify/errors.hpp"

namespace rsv::quad {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// h(x) = coeffs . x + offset over the integration variables (outermost first).
struct AffineFunctional {
  std::vector<double> coeffs;
  double offset = 0.0;
};

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 64;  // pieces per 1D integral
  int de_level_max = 12;      // step h = 2^-level
  int de_level_min = 3;
  int parallelism = 1;  // workers used at the outermost level of integrate_nd
  std::int64_t max_evaluations = 4'000'000'000;
  bool sqrt_regularize = true;
  std::vector<AffineFunctional> singular_hyperplanes;

  void validate() const;
  QuadratureSpec tightened(double factor) const;
};

struct IntegralResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;  // absolute
  std::int64_t evaluations = 0;
  bool converged = true;
  std::string warning;

  double relative_error() const;
};

using Integrand1D = std::function<Complex(double)>;
// f(x, x - a, b - x) with the endpoint distances accurate near each end.
using Integrand1DEnds = std::function<Complex(double, double, double)>;
using IntegrandND = std::function<Complex(std::span<const double>)>;

// Interior split points for one dimension given the already fixed outer
// coordinates. Appended to `out`; duplicates and out-of-range points are
// discarded by the integrator.
using BreakpointFn = std::function<void(std::span<const double> outer, std::vector<double>& out)>;

struct Dimension {
  double lower = -kInf;
  double upper = kInf;
  BreakpointFn breakpoints;  // optional
};

// Integral over (a, b); either end may be infinite. Interior points from
// spec.singular_hyperplanes (1D functionals) are split on.
IntegralResult integrate_interval(const Integrand1D& f, double a, double b, const QuadratureSpec& spec);

// Integral over (a, b) with explicit interior split points.
IntegralResult integrate_pieces(const Integrand1D& f, double a, double b, std::vector<double> splits,
                                const QuadratureSpec& spec);

// Finite (a, b) with an integrand that receives exact endpoint distances.
IntegralResult integrate_interval_ends(const Integrand1DEnds& f, double a, double b, const QuadratureSpec& spec);

IntegralResult integrate_halfline(const Integrand1D& f, const QuadratureSpec& spec);
IntegralResult integrate_realline(const Integrand1D& f, const QuadratureSpec& spec);

// Iterated integration, dims listed outermost first, innermost evaluated
// first. spec.singular_hyperplanes are split on at the level of the deepest
// variable they involve.
IntegralResult integrate_nd(const IntegrandND& f, const std::vector<Dimension>& dims, const QuadratureSpec& spec);

}  // namespace rsv::quad
