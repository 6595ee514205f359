#pragma once

// Complex Gamma and hypergeometric functions at real argument.

#include <span>
#include <vector>

#include "rsverify/errors.hpp"

namespace rsv::sf {

// Principal branch of log Gamma (continuous in z off the negative real axis).
Complex log_gamma(Complex z);

// 1/Gamma(z); exactly zero at the poles.
Complex rgamma(Complex z);

Complex gamma(Complex z);

Complex digamma(Complex z);

// prod Gamma(num) / prod Gamma(den), evaluated in log space.
Complex gamma_quotient(std::span<const Complex> numerators, std::span<const Complex> denominators);

inline Complex gamma_quotient(std::initializer_list<Complex> num, std::initializer_list<Complex> den) {
  return gamma_quotient(std::span<const Complex>(num.begin(), num.size()),
                        std::span<const Complex>(den.begin(), den.size()));
}

Complex beta_fn(Complex a, Complex b);

// x^s for real x > 0, i.e. exp(s ln x).
inline Complex rpow(double x, Complex s) { return std::exp(s * std::log(x)); }

bool is_nonpositive_integer(Complex z, double tol = 0.0);

struct HypergeometricArgs {
  std::vector<Complex> upper;
  std::vector<Complex> lower;

  void validate() const;  // p in {2,3,4}, q = p-1, no lower pole
};

// Truncated series sum_{n} prod (a)_n / prod (b)_n x^n / n! for |x| < 1 (or a
// terminating series). Stops after 30 consecutive terms below rel_tol; throws
// ConvergenceError after 200000 terms.
Complex pfq_series(std::span<const Complex> upper, std::span<const Complex> lower, Complex x, double rel_tol = 1e-16);

// Gauss 2F1(a, b; c; x) for real x < 1.
Complex gauss_2f1(Complex a, Complex b, Complex c, double x);

// Same function with the connection coefficients for fixed (a, b, c) cached.
class Gauss2F1 {
 public:
  Gauss2F1(Complex a, Complex b, Complex c);
  Complex operator()(double x) const;
  // F(1 - w), accurate for small w > 0
  Complex one_minus(double w) const;

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }

 private:
  struct Connection {
    // F(a,b;c;x) in terms of w = 1 - x
    bool log_case = false;
    int m = 0;  // c - a - b for the log case
    bool euler_swap = false;  // m was negative: evaluate (1-x)^{c-a-b} F(c-a,c-b;c;x)
    Complex A1, A2;
  };
  struct Inversion {
    bool usable = false;
    Complex B1, B2;
  };

  Complex eval_near_one(double w) const;  // x = 1 - w, 0 < w <= 1/2
  Complex eval_large_negative(double x) const;

  Complex a_, b_, c_;
  bool terminating_ = false;
  Connection conn_;
  Connection pfaff_conn_;  // connection data for the Pfaff-transformed function
  Inversion inv_;
};

// pFq(upper; lower; 1), p in {2,3,4}. Direct summation with an
// Euler-Maclaurin tail; unit-argument 3F2 with convergence abscissa below
// 0.25 is first rebalanced with a Thomae relation.
Complex hyp_unit(const HypergeometricArgs& args);

// Convergence abscissa Re(sum lower - sum upper).
double unit_abscissa(const HypergeometricArgs& args);

// Closed Gauss sum 2F1(a,b;c;1) = Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b)).
Complex gauss_sum(Complex a, Complex b, Complex c);

// 3F2(a1,a2,a3; b1,b2; x) for real 0 <= x <= 1. Series for x <= 0.9, the
// Euler integral over 2F1 beyond that (needs a pairing Re b > Re a > 0).
Complex hyp3f2_real(std::span<const Complex, 3> upper, std::span<const Complex, 2> lower, double x);

}  // namespace rsv::sf
