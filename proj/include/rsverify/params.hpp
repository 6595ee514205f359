#pragma once

#include <array>

#include "rsverify/errors.hpp"

namespace rsv {

enum class Locus { Strict, Lenient };

inline constexpr double kLocusTol = 1e-12;

// lambda = (l1, l2, l3); on the unitary locus purely imaginary with sum zero.
struct GL3Parameter {
  std::array<Complex, 3> lambda{};

  static GL3Parameter make(Complex l1, Complex l2, Complex l3, Locus mode = Locus::Strict);
  // no locus checks; for exploratory runs off the constraint
  static GL3Parameter unchecked(Complex l1, Complex l2, Complex l3) { return GL3Parameter{{l1, l2, l3}}; }

  Complex operator[](int i) const { return lambda[static_cast<std::size_t>(i)]; }
  GL3Parameter negated() const { return unchecked(-lambda[0], -lambda[1], -lambda[2]); }
  double norm() const;
};

// nu = (tau, -tau)
struct GL2Parameter {
  Complex tau{};

  static GL2Parameter make(Complex tau, Locus mode = Locus::Strict);
  static GL2Parameter unchecked(Complex tau) { return GL2Parameter{tau}; }

  Complex nu1() const { return tau; }
  Complex nu2() const { return -tau; }
  GL2Parameter negated() const { return unchecked(-tau); }
};

// General (nu1, nu2), used by the closed forms and the proof chain where the
// twist nu + it enters.
struct NuPair {
  Complex nu1{}, nu2{};

  static NuPair from(const GL2Parameter& q) { return {q.nu1(), q.nu2()}; }
  // (tau + it, -tau + it)
  static NuPair twisted(const GL2Parameter& q, double t) {
    return {q.tau + Complex(0.0, t), -q.tau + Complex(0.0, t)};
  }
  NuPair negated() const { return {-nu1, -nu2}; }
};

}  // namespace rsv
