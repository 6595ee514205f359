#include "rsverify/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rsverify/quadrature.hpp"

namespace rsv {

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace rsv

namespace rsv::sf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209008240;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,         1.0 / 1260.0,          -1.0 / 1680.0,         1.0 / 1188.0,
    -691.0 / 360360.0,   1.0 / 156.0,          -3617.0 / 122400.0,    43867.0 / 244188.0,    -174611.0 / 125400.0};

// B_{2k} / (2k), k = 1..10
constexpr std::array<double, 10> kDigammaAsym = {
    1.0 / 12.0,         -1.0 / 120.0,      1.0 / 252.0,        -1.0 / 240.0,         1.0 / 132.0,
    -691.0 / 32760.0,   1.0 / 12.0,        -3617.0 / 8160.0,   43867.0 / 14364.0,    -174611.0 / 6600.0};

constexpr double kStirlingMin = 15.0;

// Tail of the Stirling series, sum B_{2k}/(2k(2k-1) z^{2k-1}); |z| >= 15.
Complex stirling_tail(Complex z) {
  const Complex zi = 1.0 / z;
  const Complex zi2 = zi * zi;
  Complex acc{0.0, 0.0};
  for (int k = static_cast<int>(kStirling.size()) - 1; k >= 0; --k) acc = acc * zi2 + kStirling[k];
  return acc * zi;
}

void check_pole(Complex z, const char* fn) {
  if (is_nonpositive_integer(z)) throw PoleError(std::string(fn) + ": pole at " + format_complex(z));
}

// log(1 + w) accurate for small |w|.
Complex log1p_c(Complex w) {
  if (std::abs(w) < 0.1) {
    const Complex u = w / (2.0 + w);
    const Complex u2 = u * u;
    Complex term = u, acc{0.0, 0.0};
    for (int k = 0; k < 40; ++k) {
      const Complex add = term / static_cast<double>(2 * k + 1);
      acc += add;
      if (std::abs(add) < 1e-18 * std::abs(acc)) break;
      term *= u2;
    }
    return 2.0 * acc;
  }
  return std::log(1.0 + w);
}


}  // namespace

bool is_nonpositive_integer(Complex z, double tol) {
  if (std::abs(z.imag()) > tol) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

namespace {

using LComplex = std::complex<long double>;

// Long double keeps the absolute error near 1e-18, which the quotients need
// after exponentiation.
LComplex log_gamma_ext(Complex z) {
  require_finite(z, "log_gamma");
  check_pole(z, "log_gamma");
  // Shift upward with the principal-log recurrence until Stirling applies.
  LComplex shift{0.0L, 0.0L};
  LComplex w(z.real(), z.imag());
  while (w.real() < 0.0L || std::abs(w) < kStirlingMin) {
    shift += std::log(w);
    w += 1.0L;
  }
  const LComplex wi = 1.0L / w, wi2 = wi * wi;
  LComplex tail{0.0L, 0.0L};
  for (int k = static_cast<int>(kStirling.size()) - 1; k >= 0; --k)
    tail = tail * wi2 + static_cast<long double>(kStirling[k]);
  constexpr long double kHalfLog2Pi = 0.918938533204672741780329736405617639861L;
  return (w - 0.5L) * std::log(w) - w + kHalfLog2Pi + tail * wi - shift;
}

Complex to_double(LComplex z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

}  // namespace

Complex log_gamma(Complex z) { return to_double(log_gamma_ext(z)); }

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return {0.0, 0.0};
  return std::exp(-log_gamma(z));
}

Complex digamma(Complex z) {
  require_finite(z, "digamma");
  check_pole(z, "digamma");
  Complex shift{0.0, 0.0};
  Complex w = z;
  if (w.real() < 0.5 && std::abs(w.imag()) < kStirlingMin) {
    // reflection keeps the upward recurrence short for large negative Re z
    return digamma(1.0 - w) - kPi / std::tan(kPi * w);
  }
  while (std::abs(w) < kStirlingMin || w.real() < 0.0) {
    shift += 1.0 / w;
    w += 1.0;
  }
  const Complex wi2 = 1.0 / (w * w);
  Complex acc{0.0, 0.0};
  for (int k = static_cast<int>(kDigammaAsym.size()) - 1; k >= 0; --k) acc = acc * wi2 + kDigammaAsym[k];
  return std::log(w) - 0.5 / w - acc * wi2 - shift;
}

Complex gamma_quotient(std::span<const Complex> numerators, std::span<const Complex> denominators) {
  LComplex acc{0.0L, 0.0L};
  for (Complex z : numerators) {
    if (is_nonpositive_integer(z)) throw PoleError("gamma_quotient: numerator pole at " + format_complex(z));
    acc += log_gamma_ext(z);
  }
  for (Complex z : denominators) {
    if (is_nonpositive_integer(z)) throw PoleError("gamma_quotient: denominator pole at " + format_complex(z));
    acc -= log_gamma_ext(z);
  }
  return to_double(std::exp(acc));
}

Complex beta_fn(Complex a, Complex b) { return gamma_quotient({a, b}, {a + b}); }

void HypergeometricArgs::validate() const {
  const std::size_t p = upper.size();
  if (p < 2 || p > 4 || lower.size() + 1 != p) throw DomainError("hypergeometric: need p in {2,3,4} and q = p-1");
  for (Complex z : upper) require_finite(z, "hypergeometric upper parameter");
  for (Complex z : lower) {
    require_finite(z, "hypergeometric lower parameter");
    if (is_nonpositive_integer(z)) throw PoleError("hypergeometric: lower parameter pole at " + format_complex(z));
  }
}

Complex pfq_series(std::span<const Complex> upper, std::span<const Complex> lower, Complex x, double rel_tol) {
  for (Complex b : lower)
    if (is_nonpositive_integer(b)) throw PoleError("pfq_series: lower parameter pole at " + format_complex(b));
  constexpr int kMaxTerms = 200000;
  constexpr int kQuietRun = 30;
  // extended precision: the sums feed connection formulas that cancel
  using LC = std::complex<long double>;
  const LC lx(x.real(), x.imag());
  LC term{1.0L, 0.0L}, sum{1.0L, 0.0L};
  int quiet = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const long double ln = n;
    LC r{1.0L, 0.0L};
    for (Complex a : upper) r *= LC(a.real() + ln, a.imag());
    for (Complex b : lower) r /= LC(b.real() + ln, b.imag());
    term *= r * lx / (ln + 1.0L);
    if (term == LC{0.0L, 0.0L}) break;
    sum += term;
    if (std::abs(term) < rel_tol * std::abs(sum))
      ++quiet;
    else
      quiet = 0;
    if (quiet >= kQuietRun) break;
  }
  if (term == LC{0.0L, 0.0L} || quiet >= kQuietRun)
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
  throw ConvergenceError("pfq_series: no convergence after 200000 terms");
}

// ---------------------------------------------------------------- 2F1

namespace {

constexpr double kLogCaseTol = 1e-8;
constexpr double kInversionMargin = 0.05;

double distance_to_integer(Complex z) {
  return std::abs(z - std::round(z.real()));
}

bool is_exact_nonpositive_int(Complex z) { return is_nonpositive_integer(z, 0.0); }

Complex series2(Complex a, Complex b, Complex c, double x) {
  const std::array<Complex, 2> up{a, b};
  const std::array<Complex, 1> lo{c};
  return pfq_series(up, lo, x);
}

// exp(sum lgamma(num) - sum lgamma(den)); zero if a denominator is a pole.
Complex gamma_ratio_or_zero(std::initializer_list<Complex> num, std::initializer_list<Complex> den) {
  for (Complex d : den)
    if (is_nonpositive_integer(d)) return {0.0, 0.0};
  return gamma_quotient(num, den);
}

}  // namespace

Gauss2F1::Gauss2F1(Complex a, Complex b, Complex c) : a_(a), b_(b), c_(c) {
  require_finite(a, "gauss_2f1 a");
  require_finite(b, "gauss_2f1 b");
  require_finite(c, "gauss_2f1 c");
  terminating_ = is_exact_nonpositive_int(a) || is_exact_nonpositive_int(b);
  if (is_nonpositive_integer(c) && !terminating_)
    throw PoleError("gauss_2f1: lower parameter pole at " + format_complex(c));
  if (terminating_) return;

  auto make_connection = [](Complex a, Complex b, Complex c) {
    Connection cn;
    Complex d = c - a - b;
    if (distance_to_integer(d) < kLogCaseTol) {
      cn.log_case = true;
      cn.m = static_cast<int>(std::round(d.real()));
      if (cn.m < 0) {
        cn.euler_swap = true;
        const Complex na = c - a, nb = c - b;
        a = na;
        b = nb;
        cn.m = -cn.m;
      }
      const int m = cn.m;
      // A1: finite part (m >= 1), A2: logarithmic series prefactor
      cn.A1 = (m >= 1) ? std::exp(log_gamma(static_cast<double>(m))) *
                             gamma_ratio_or_zero({c}, {a + static_cast<double>(m), b + static_cast<double>(m)})
                       : Complex{0.0, 0.0};
      cn.A2 = std::exp(log_gamma(c)) * rgamma(a) * rgamma(b);
    } else {
      cn.A1 = gamma_ratio_or_zero({c, d}, {c - a, c - b});
      cn.A2 = gamma_ratio_or_zero({c, -d}, {a, b});
    }
    return cn;
  };

  conn_ = make_connection(a, b, c);
  pfaff_conn_ = make_connection(a, c - b, c);

  const Complex ba = b - a;
  if (distance_to_integer(ba) > kInversionMargin) {
    inv_.usable = true;
    inv_.B1 = gamma_ratio_or_zero({c, ba}, {b, c - a});
    inv_.B2 = gamma_ratio_or_zero({c, -ba}, {a, c - b});
  }
}

namespace {

// F(a,b;c;1-w) from cached connection data, 0 < w <= 1/2 (w may be tiny).
Complex near_one(Complex a, Complex b, Complex c, double w, bool log_case, int m, bool euler_swap, Complex A1,
                 Complex A2) {
  if (!log_case) {
    const Complex d = c - a - b;
    Complex r{0.0, 0.0};
    if (A1 != Complex{0.0, 0.0}) r += A1 * series2(a, b, 1.0 - d, w);
    if (A2 != Complex{0.0, 0.0}) r += A2 * rpow(w, d) * series2(c - a, c - b, d + 1.0, w);
    return r;
  }
  double pre = 1.0;
  if (euler_swap) {
    // F(a,b;c;x) = (1-x)^{-m} F(c-a, c-b; c; x)
    pre = std::pow(w, -m);
    const Complex na = c - a, nb = c - b;
    a = na;
    b = nb;
  }
  const double md = m;
  Complex finite{0.0, 0.0};
  if (m >= 1) {
    Complex t{1.0, 0.0};
    for (int n = 0; n < m; ++n) {
      finite += t;
      t *= (a + static_cast<double>(n)) * (b + static_cast<double>(n)) /
           (static_cast<double>(n + 1) * (1.0 - md + static_cast<double>(n))) * w;
    }
    finite *= A1;
  }
  // logarithmic series
  const double lw = std::log(w);
  Complex psi_a = digamma(a + md), psi_b = digamma(b + md);
  double harm_n = 0.0, harm_nm = 0.0;
  for (int k = 1; k <= m; ++k) harm_nm += 1.0 / k;
  double fact_m = 1.0;
  for (int k = 2; k <= m; ++k) fact_m *= k;
  Complex coef{1.0 / fact_m, 0.0};  // (a+m)_n (b+m)_n / (n! (n+m)!) w^n
  Complex sum{0.0, 0.0};
  int quiet = 0;
  for (int n = 0; n < 200000; ++n) {
    const double psi_n1 = -kEulerGamma + harm_n;
    const double psi_nm1 = -kEulerGamma + harm_nm;
    const Complex term = coef * (lw - psi_n1 - psi_nm1 + psi_a + psi_b);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) {
      if (++quiet >= 5) break;
    } else {
      quiet = 0;
    }
    const Complex an = a + md + static_cast<double>(n), bn = b + md + static_cast<double>(n);
    psi_a += 1.0 / an;
    psi_b += 1.0 / bn;
    coef *= an * bn / (static_cast<double>(n + 1) * static_cast<double>(n + 1 + m)) * w;
    harm_n += 1.0 / (n + 1);
    harm_nm += 1.0 / (n + 1 + m);
    if (coef == Complex{0.0, 0.0}) break;
  }
  const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;  // (z-1)^m = (-w)^m
  const Complex logpart = -A2 * sign_m * std::pow(w, md) * sum;
  return pre * (finite + logpart);
}

}  // namespace

Complex Gauss2F1::eval_near_one(double w) const {
  return near_one(a_, b_, c_, w, conn_.log_case, conn_.m, conn_.euler_swap, conn_.A1, conn_.A2);
}

Complex Gauss2F1::eval_large_negative(double x) const {
  const double inv = 1.0 / x;
  const double mx = -x;
  return inv_.B1 * rpow(mx, -a_) * series2(a_, a_ - c_ + 1.0, a_ - b_ + 1.0, inv) +
         inv_.B2 * rpow(mx, -b_) * series2(b_, b_ - c_ + 1.0, b_ - a_ + 1.0, inv);
}

Complex Gauss2F1::operator()(double x) const {
  if (!std::isfinite(x) || x >= 1.0) throw DomainError("gauss_2f1: need real x < 1");
  if (x == 0.0) return {1.0, 0.0};
  if (terminating_ || std::abs(x) <= 0.5) return series2(a_, b_, c_, x);
  if (x > 0.5) return eval_near_one(1.0 - x);
  if (x >= -2.0) {
    // Pfaff: (1-x)^{-a} F(a, c-b; c; x/(x-1)), argument in (1/3, 2/3]
    return rpow(1.0 - x, -a_) * series2(a_, c_ - b_, c_, x / (x - 1.0));
  }
  if (inv_.usable) return eval_large_negative(x);
  // Pfaff, then the connection at 1 with 1 - x/(x-1) = 1/(1-x)
  const double w = 1.0 / (1.0 - x);
  return rpow(1.0 - x, -a_) * near_one(a_, c_ - b_, c_, w, pfaff_conn_.log_case, pfaff_conn_.m,
                                        pfaff_conn_.euler_swap, pfaff_conn_.A1, pfaff_conn_.A2);
}

Complex Gauss2F1::one_minus(double w) const {
  if (!(w > 0.0)) throw DomainError("gauss_2f1: need 1 - x > 0");
  if (w <= 0.5 && !terminating_) return eval_near_one(w);
  return (*this)(1.0 - w);
}

Complex gauss_2f1(Complex a, Complex b, Complex c, double x) {
  if (x == 0.0) {
    if (is_nonpositive_integer(c)) throw PoleError("gauss_2f1: lower parameter pole at " + format_complex(c));
    return {1.0, 0.0};
  }
  // Cheap paths that need no connection coefficients.
  if (std::abs(x) <= 0.5) {
    if (is_nonpositive_integer(c) && !is_exact_nonpositive_int(a) && !is_exact_nonpositive_int(b))
      throw PoleError("gauss_2f1: lower parameter pole at " + format_complex(c));
    return series2(a, b, c, x);
  }
  return Gauss2F1(a, b, c)(x);
}

Complex gauss_sum(Complex a, Complex b, Complex c) { return gamma_quotient({c, c - a - b}, {c - a, c - b}); }

// ---------------------------------------------------------------- unit argument

double unit_abscissa(const HypergeometricArgs& args) {
  Complex s{0.0, 0.0};
  for (Complex b : args.lower) s += b;
  for (Complex a : args.upper) s -= a;
  return s.real();
}

namespace {

// log Gamma(x + a) - log Gamma(x + b) - (a - b) log x for real x >= 15ish.
Complex lgamma_pair_remainder(double x, Complex a, Complex b) {
  const Complex la = log1p_c(a / x), lb = log1p_c(b / x);
  return (x - 0.5) * (la - lb) + a * la - b * lb - (a - b) + stirling_tail(x + a) - stirling_tail(x + b);
}

// Sum_{n >= N} t_n where t_n are the unit-argument terms and t_N is given.
// Euler-Maclaurin: integral + t_N/2 - t'_N/12; the integral is
// N t_N e^{-R(N)} [1/s + int_0^1 y^{s-1}(e^{R(N/y)} - 1) dy].
Complex em_tail(std::span<const Complex> upper, std::span<const Complex> lower_with_one, Complex s, double N,
                Complex tN) {
  auto R = [&](double x) {
    Complex r{0.0, 0.0};
    for (std::size_t i = 0; i < upper.size(); ++i) r += lgamma_pair_remainder(x, upper[i], lower_with_one[i]);
    return r;
  };
  const Complex RN = R(N);
  quad::QuadratureSpec qs;
  qs.rel_tol = 1e-14;
  qs.abs_tol = 1e-17;
  const auto J = quad::integrate_interval(
      [&](double y) { return rpow(y, s - 1.0) * (std::exp(R(N / y)) - 1.0); }, 0.0, 1.0, qs);
  const Complex integral = N * tN * std::exp(-RN) * (1.0 / s + J.value);
  Complex dlog{0.0, 0.0};
  for (std::size_t i = 0; i < upper.size(); ++i) dlog += digamma(N + upper[i]) - digamma(N + lower_with_one[i]);
  return integral + 0.5 * tN - tN * dlog / 12.0;
}

Complex unit_sum_direct(std::span<const Complex> upper, std::span<const Complex> lower) {
  Complex s{0.0, 0.0};
  double scale = 1.0;
  for (Complex b : lower) s += b;
  for (Complex a : upper) {
    s -= a;
    scale = std::max(scale, std::abs(a));
  }
  for (Complex b : lower) scale = std::max(scale, std::abs(b));
  if (!(s.real() > 0.0)) throw ConvergenceError("hyp_unit: divergent, Re(sum lower - sum upper) <= 0");

  const int N = std::max(2048, static_cast<int>(std::ceil(40.0 * scale)));
  LComplex lterm{1.0L, 0.0L}, lsum{0.0L, 0.0L};
  for (int n = 0; n < N; ++n) {
    lsum += lterm;
    const long double ln = n;
    LComplex r{1.0L / (ln + 1.0L), 0.0L};
    for (Complex a : upper) r *= LComplex(a.real() + ln, a.imag());
    for (Complex b : lower) r /= LComplex(b.real() + ln, b.imag());
    lterm *= r;
    if (lterm == LComplex{0.0L, 0.0L}) return to_double(lsum);  // terminating
  }
  const Complex sum = to_double(lsum), term = to_double(lterm);
  std::vector<Complex> lower1(lower.begin(), lower.end());
  lower1.push_back({1.0, 0.0});
  return sum + em_tail(upper, lower1, s, static_cast<double>(N), term);
}

}  // namespace

Complex hyp_unit(const HypergeometricArgs& args) {
  args.validate();
  const double abscissa = unit_abscissa(args);
  if (!(abscissa > 0.0)) throw ConvergenceError("hyp_unit: divergent, Re(sum lower - sum upper) <= 0");

  if (args.upper.size() == 3 && abscissa < 0.25) {
    // Thomae: 3F2(a,b,c;d,e;1) = G(d)G(e)G(s)/(G(a)G(s+b)G(s+c)) 3F2(d-a,e-a,s;s+b,s+c;1)
    // with new abscissa Re a.
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (args.upper[i].real() > args.upper[best].real()) best = i;
    const Complex a = args.upper[best];
    const Complex b = args.upper[(best + 1) % 3], c = args.upper[(best + 2) % 3];
    const Complex d = args.lower[0], e = args.lower[1];
    const Complex s = d + e - a - b - c;
    if (a.real() > abscissa && !is_nonpositive_integer(a) && !is_nonpositive_integer(s + b) &&
        !is_nonpositive_integer(s + c) && !is_nonpositive_integer(s)) {
      const std::array<Complex, 3> up{d - a, e - a, s};
      const std::array<Complex, 2> lo{s + b, s + c};
      return gamma_quotient({d, e, s}, {a, s + b, s + c}) * unit_sum_direct(up, lo);
    }
  }
  return unit_sum_direct(args.upper, args.lower);
}

Complex hyp3f2_real(std::span<const Complex, 3> upper, std::span<const Complex, 2> lower, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("hyp3f2_real: need 0 <= x <= 1");
  if (x <= 0.9) return pfq_series(upper, lower, x);
  if (x == 1.0) {
    HypergeometricArgs args{{upper.begin(), upper.end()}, {lower.begin(), lower.end()}};
    return hyp_unit(args);
  }
  // Euler integral over the best-conditioned (upper, lower) pair.
  int bi = -1, bj = -1;
  double best = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) {
      const double m = std::min(upper[i].real(), (lower[j] - upper[i]).real());
      if (m > best) {
        best = m;
        bi = i;
        bj = j;
      }
    }
  if (bi < 0) {
    if (x <= 0.999) return pfq_series(upper, lower, x);
    throw ConvergenceError("hyp3f2_real: no Euler pairing with Re b > Re a > 0 near x = 1");
  }
  const Complex a = upper[bi], b = lower[bj];
  Complex rest_up[2];
  int k = 0;
  for (int i = 0; i < 3; ++i)
    if (i != bi) rest_up[k++] = upper[i];
  const Complex rest_lo = lower[1 - bj];
  const Gauss2F1 inner(rest_up[0], rest_up[1], rest_lo);
  quad::QuadratureSpec qs;
  qs.rel_tol = 1e-13;
  qs.abs_tol = 1e-16;
  const auto r = quad::integrate_interval_ends(
      [&](double t, double t0, double t1) { return rpow(t0, a - 1.0) * rpow(t1, b - a - 1.0) * inner(x * t); }, 0.0,
      1.0, qs);
  return gamma_quotient({b}, {a, b - a}) * r.value;
}

}  // namespace rsv::sf
