#include "rsverify/proof_chain.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "logs.hpp"
#include "rsverify/model_form.hpp"
#include "rsverify/special_fn.hpp"

namespace rsv::chain {

namespace {

using detail::log1_sumsq;
using detail::log1p_pos;
using detail::log_abs;
using quad::kInf;

constexpr double kSqrtPi = 1.7724538509055160272981674833411;

// Parameters of the displays, named after the gamma arguments they feed.
struct Params {
  Complex l1, l2, l3, n1, n2;
  Complex g1, g2;    // (l1-l2+1)/2, (l2-l3+1)/2
  Complex b2;        // (2l1+2n2+3)/4
  Complex az, azx;   // l1+n2-1/2, l2+n1-1/2
  Complex q;         // (2l1-2l2-2l3-2n1+3)/4
  Complex q2;        // (2l1-2l2-2l3-2n2+3)/4
  Complex kappa;     // (n1-n2+1)/2
  Complex d;         // (n1-n2)/2
  Complex al, be;    // -(2l3+2n1-1)/4, (2l1+2n2+1)/4
  Complex c5;        // (l2+l3+2n1)/2
  Complex b5;        // -(2l2+2n1-1)/4
  Complex s6;        // (2l2+2n1+3)/4

  Params(const GL3Parameter& p, const NuPair& nu)
      : l1(p[0]), l2(p[1]), l3(p[2]), n1(nu.nu1), n2(nu.nu2) {
    g1 = (l1 - l2 + 1.0) / 2.0;
    g2 = (l2 - l3 + 1.0) / 2.0;
    b2 = (2.0 * l1 + 2.0 * n2 + 3.0) / 4.0;
    az = l1 + n2 - 0.5;
    azx = l2 + n1 - 0.5;
    q = (2.0 * l1 - 2.0 * l2 - 2.0 * l3 - 2.0 * n1 + 3.0) / 4.0;
    q2 = (2.0 * l1 - 2.0 * l2 - 2.0 * l3 - 2.0 * n2 + 3.0) / 4.0;
    kappa = (n1 - n2 + 1.0) / 2.0;
    d = (n1 - n2) / 2.0;
    al = -(2.0 * l3 + 2.0 * n1 - 1.0) / 4.0;
    be = (2.0 * l1 + 2.0 * n2 + 1.0) / 4.0;
    c5 = (l2 + l3 + 2.0 * n1) / 2.0;
    b5 = -(2.0 * l2 + 2.0 * n1 - 1.0) / 4.0;
    s6 = (2.0 * l2 + 2.0 * n1 + 3.0) / 4.0;
  }
};

using sf::gamma_quotient;

double correction(const ChainOptions& o) { return o.printed_y_prefactor ? 1.0 : 2.0; }

Complex prefactor2(const Params& P, const ChainOptions& o) {
  // printed: Gamma(b2) Gamma(-(2l3+2n2-1)/4) / (2 Gamma((l1-l3+2)/2))
  return correction(o) * 0.5 *
         gamma_quotient({P.b2, -(2.0 * P.l3 + 2.0 * P.n2 - 1.0) / 4.0}, {(P.l1 - P.l3 + 2.0) / 2.0});
}

Complex prefactor5(const Params& P, const ChainOptions& o) {
  return correction(o) * gamma_quotient({P.l2 + P.n1 + 0.5, -P.l3 - P.n1 + 0.5, (P.l2 - P.l3 + 2.0) / 2.0, 0.5},
                                        {P.l2 - P.l3 + 1.0, (2.0 * P.l2 + 2.0 * P.n1 + 3.0) / 4.0,
                                         -(2.0 * P.l3 + 2.0 * P.n1 - 3.0) / 4.0});
}

Complex prefactor6(const Params& P, const ChainOptions& o) {
  return 2.0 * prefactor5(P, o) * gamma_quotient({0.5}, {(2.0 * P.l2 + 2.0 * P.n1 + 1.0) / 4.0, P.b5});
}

Complex prefactor7(const Params& P, const ChainOptions& o) {
  return 0.5 * prefactor6(P, o) *
         gamma_quotient({P.be, -(P.l2 + P.l3 + P.n1 + P.n2 - 1.0) / 2.0}, {P.q});
}

using Dims = std::vector<quad::Dimension>;

quad::IntegralResult scaled(quad::IntegralResult r, Complex factor) {
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

// ---- step 1: after z -> z - xy/2, x -> x/y. Even in y and in (x,z) -> (-x,-z).
quad::IntegralResult step1(const Params& P, const quad::QuadratureSpec& spec) {
  const Complex ax = -P.l1 - P.n2 - 1.5, ay = P.l1 + P.n2 + 0.5;
  auto f = [=](std::span<const double> v) {
    const double x = v[0], z = v[1], y = v[2];
    const double zx = z - x;
    if (z == 0.0 || zx == 0.0) return Complex{0.0, 0.0};
    const double lx = std::log(x), ly = std::log(y), lzx2 = log1_sumsq(zx, 0.0);
    const double lz2 = log1_sumsq(z, 0.0);
    const double a = std::exp(lz2 + 2.0 * (ly - lx));  // (1+z^2) y^2/x^2
    const double b = std::exp(2.0 * ly - lzx2);        // y^2/(1+(z-x)^2)
    const Complex e = ax * lx + ay * ly + P.az * log_abs(z) + P.azx * log_abs(zx) - P.g2 * lzx2 -
                      P.g1 * log1p_pos(a, lz2 + 2.0 * (ly - lx)) - P.g2 * log1p_pos(b, 2.0 * ly - lzx2);
    return std::exp(e);
  };
  Dims dims = {{0.0, kInf, {}},
               {-kInf, kInf, [](std::span<const double> o, std::vector<double>& out) {
                  out.push_back(0.0);
                  out.push_back(o[0]);
                }},
               {0.0, kInf, {}}};
  return scaled(quad::integrate_nd(f, dims, spec), 4.0);
}

// W = x^2 / ((1+z^2)(1+(z-x)^2)), as a log
double log_w(double x, double z) { return 2.0 * std::log(x) - log1_sumsq(z, 0.0) - log1_sumsq(z - x, 0.0); }

Dims xz_dims() {
  return {{0.0, kInf, {}},
          {-kInf, kInf, [](std::span<const double> o, std::vector<double>& out) {
             out.push_back(0.0);
             out.push_back(o[0]);
           }}};
}

// ---- step 2: y integrated, 2F1 in 1 - W. Even in (x,z) -> (-x,-z).
quad::IntegralResult step2(const Params& P, const quad::QuadratureSpec& spec, const ChainOptions& o) {
  const sf::Gauss2F1 F(P.g2, P.b2, (P.l1 - P.l3 + 2.0) / 2.0);
  auto f = [=, &F](std::span<const double> v) {
    const double x = v[0], z = v[1];
    const double zx = z - x;
    if (z == 0.0 || zx == 0.0) return Complex{0.0, 0.0};
    const double lzx2 = log1_sumsq(zx, 0.0), lz2 = log1_sumsq(z, 0.0);
    const Complex e = P.az * log_abs(z) + P.azx * log_abs(zx) - P.g2 * lzx2 - P.b2 * lz2;
    const double w = std::min(1.0, std::exp(log_w(x, z)));
    if (w == 0.0) return Complex{0.0, 0.0};
    return std::exp(e) * F.one_minus(w);
  };
  return scaled(quad::integrate_nd(f, xz_dims(), spec), 2.0 * prefactor2(P, o));
}

// ---- step 3: Euler representation, extra variable t.
quad::IntegralResult step3(const Params& P, const quad::QuadratureSpec& spec, const ChainOptions& o) {
  auto f = [=](std::span<const double> v) {
    const double x = v[0], z = v[1], t = v[2];
    const double zx = z - x;
    if (z == 0.0 || zx == 0.0) return Complex{0.0, 0.0};
    const double lzx2 = log1_sumsq(zx, 0.0), lz2 = log1_sumsq(z, 0.0);
    const double lt = std::log(t), lw = log_w(x, z);
    const Complex e = (P.b2 - 1.0) * lt - P.g1 * std::log1p(t) - P.g2 * log1p_pos(std::exp(lt + lw), lt + lw) +
                      P.az * log_abs(z) + P.azx * log_abs(zx) - P.g2 * lzx2 - P.b2 * lz2;
    return std::exp(e);
  };
  Dims dims = xz_dims();
  dims.push_back({0.0, kInf, {}});
  return scaled(quad::integrate_nd(f, dims, spec), 2.0 * 0.5 * correction(o));
}

// ---- step 4: after x -> x + z, t -> (1+z^2) t. Integrated in (x, w = x + z,
// u = log t) so that the hyperplane x + z = 0 is a coordinate plane.
quad::IntegralResult step4(const Params& P, const quad::QuadratureSpec& spec, const ChainOptions& o) {
  auto f = [=](std::span<const double> v) {
    const double x = v[0], w = v[1], lt = v[2];
    const double z = w - x;
    if (z == 0.0 || w == 0.0 || std::abs(lt) > 700.0) return Complex{0.0, 0.0};
    const double lx = std::log(x);
    // log(1 + t + t z^2) and log(1 + x^2 + t w^2)
    const double l1 = detail::log_sum(0.0, lt + log1_sumsq(z, 0.0));
    const double l2 = detail::log_sum(0.0, 2.0 * lx, lt + 2.0 * log_abs(w));
    const Complex e = P.b2 * lt - P.g1 * l1 - P.g2 * l2 + P.azx * lx + P.az * log_abs(z);
    return std::exp(e);
  };
  // the t-integrand changes behaviour at 1/(1+z^2) and (1+x^2)/w^2
  Dims dims = {{0.0, kInf, {}},
               {-kInf, kInf, [](std::span<const double> o, std::vector<double>& out) {
                  out.push_back(0.0);
                  out.push_back(o[0]);
                }},
               {-kInf, kInf, [](std::span<const double> o, std::vector<double>& out) {
                  const double x = o[0], w = o[1];
                  out.push_back(-log1_sumsq(w - x, 0.0));
                  out.push_back(log1_sumsq(x, 0.0) - 2.0 * log_abs(w));
                }}};
  return scaled(quad::integrate_nd(f, dims, spec), 2.0 * 0.5 * correction(o));
}

// log(1 + t + t z^2)
double log_q(double lt, double z) { return detail::log_sum(0.0, lt + log1_sumsq(z, 0.0)); }

// ---- step 5: x integrated; the integrand is even in z.
quad::IntegralResult step5(const Params& P, const quad::QuadratureSpec& spec, const ChainOptions& o) {
  const sf::Gauss2F1 F(P.al, P.b5, 0.5);
  auto f = [=, &F](std::span<const double> v) {
    const double t = v[0], z = v[1];
    const double lt = std::log(t), lz = std::log(z), lq = log_q(lt, z);
    const double arg = -std::exp(2.0 * lt + 2.0 * lz - lq);
    const Complex e = (P.b2 - 1.0) * lt - P.c5 * std::log1p(t) + P.az * lz - P.q * lq;
    return std::exp(e) * F(arg);
  };
  Dims dims = {{0.0, kInf, {}}, {0.0, kInf, {}}};
  return scaled(quad::integrate_nd(f, dims, spec), 2.0 * prefactor5(P, o));
}

// ---- step 6: Euler representation in s, z > 0.
quad::IntegralResult step6(const Params& P, const quad::QuadratureSpec& spec, const ChainOptions& o) {
  const Complex es = -P.s6, e1s = -(2.0 * P.l3 + 2.0 * P.n1 + 1.0) / 4.0, ex = -P.al;
  auto f = [=](std::span<const double> v) {
    const double t = v[0], z = v[1], s = v[2];
    const double lt = std::log(t), lz = std::log(z), ls = std::log(s), lq = log_q(lt, z);
    // s (1+t)(1+t z^2) / (1+t+t z^2)
    const double lr = ls + std::log1p(t) + detail::log_sum(0.0, lt + 2.0 * lz) - lq;
    const Complex e = (P.b2 - 1.0) * lt - P.c5 * std::log1p(t) + P.az * lz + es * ls + e1s * std::log1p(s) +
                      ex * log1p_pos(std::exp(lr), lr) - P.q * lq;
    return std::exp(e);
  };
  Dims dims = {{0.0, kInf, {}}, {0.0, kInf, {}}, {0.0, kInf, {}}};
  return scaled(quad::integrate_nd(f, dims, spec), prefactor6(P, o));
}

// ---- step 7: z integrated.
quad::IntegralResult step7(const Params& P, const quad::QuadratureSpec& spec, const ChainOptions& o) {
  const sf::Gauss2F1 F(P.al, P.be, P.q);
  auto f = [=, &F](std::span<const double> v) {
    const double s = v[0], t = v[1];
    const double ls = std::log(s), lt = std::log(t);
    const double arg = -std::exp(ls + lt - std::log1p(s));
    const Complex e = -0.5 * lt - P.kappa * std::log1p(t) - P.s6 * ls - 0.5 * std::log1p(s);
    return std::exp(e) * F(arg);
  };
  Dims dims = {{0.0, kInf, {}}, {0.0, kInf, {}}};
  return scaled(quad::integrate_nd(f, dims, spec), prefactor7(P, o));
}

// ---- step 8: t integrated by the lemma; two 3F2 terms in u = s/(1+s).
quad::IntegralResult step8_direct(const Params& P, const quad::QuadratureSpec& spec, const ChainOptions& o) {
  const Complex c1 = gamma_quotient({0.5, P.d}, {P.kappa});
  const Complex c2 = gamma_quotient({P.q, -(2.0 * P.l3 + 2.0 * P.n2 - 1.0) / 4.0, (2.0 * P.l1 + 2.0 * P.n1 + 1.0) / 4.0, -P.d},
                                    {P.al, P.be, P.q2});
  const std::array<Complex, 3> u1{P.al, P.be, 0.5};
  const std::array<Complex, 2> w1{P.q, 1.0 - P.d};
  const std::array<Complex, 3> u2{P.al + P.d, P.be + P.d, P.kappa};
  const std::array<Complex, 2> w2{P.q2, 1.0 + P.d};
  const Complex e1 = -P.s6, e2 = -(2.0 * P.l2 + 2.0 * P.n2 + 3.0) / 4.0;
  auto f = [=](double s) {
    const double ls = std::log(s), l1s = std::log1p(s);
    const double u = s < 1.0 ? s / (1.0 + s) : 1.0 / (1.0 + 1.0 / s);
    const Complex t1 = std::exp(e1 * ls - 0.5 * l1s) * sf::hyp3f2_real(u1, w1, u);
    const Complex t2 = std::exp(e2 * ls - P.kappa * l1s) * sf::hyp3f2_real(u2, w2, u);
    return c1 * t1 + c2 * t2;
  };
  return scaled(quad::integrate_halfline(f, spec), prefactor7(P, o));
}

// The two terms carry Gamma(+-(n1-n2)/2); near n1 = n2 the poles cancel and
// the value is taken as a symmetric Richardson limit.
constexpr double kPoleGap = 1e-3;
constexpr double kRichardsonStep = 1e-2;

NuPair shifted(const NuPair& nu, double eps) {
  return {nu.nu1 + Complex(0.0, eps / 2.0), nu.nu2 - Complex(0.0, eps / 2.0)};
}

quad::IntegralResult step8(const GL3Parameter& p, const NuPair& nu, const quad::QuadratureSpec& spec,
                           const ChainOptions& o) {
  const Params P(p, nu);
  if (std::abs(P.d) >= kPoleGap) return step8_direct(P, spec, o);
  auto sym = [&](double eps) {
    const auto a = step8_direct(Params(p, shifted(nu, eps)), spec, o);
    const auto b = step8_direct(Params(p, shifted(nu, -eps)), spec, o);
    quad::IntegralResult r;
    r.value = 0.5 * (a.value + b.value);
    r.error_estimate = 0.5 * (a.error_estimate + b.error_estimate);
    r.evaluations = a.evaluations + b.evaluations;
    r.converged = a.converged && b.converged;
    return r;
  };
  const auto s1 = sym(kRichardsonStep), s2 = sym(2.0 * kRichardsonStep);
  quad::IntegralResult r;
  r.value = (4.0 * s1.value - s2.value) / 3.0;
  // truncation estimate from the two levels plus quadrature errors
  r.error_estimate = std::abs(s1.value - s2.value) / 15.0 + (4.0 * s1.error_estimate + s2.error_estimate) / 3.0;
  r.evaluations = s1.evaluations + s2.evaluations;
  r.converged = s1.converged && s2.converged;
  r.warning = "Richardson limit at n1 = n2";
  return r;
}

Complex final_closed(const Params& P) {
  return gamma_quotient({(2.0 * P.l1 + 2.0 * P.n1 + 1.0) / 4.0, -(2.0 * P.l2 + 2.0 * P.n2 - 1.0) / 4.0, P.b5,
                         (2.0 * P.l2 + 2.0 * P.n1 + 1.0) / 4.0, P.q, -(2.0 * P.l3 + 2.0 * P.n2 - 1.0) / 4.0},
                        {P.g1, P.kappa, -(P.l2 + P.l3 + P.n1 + P.n2 - 1.0) / 2.0, (P.l1 - P.l3 + 1.0) / 2.0});
}

quad::IntegralResult exact(Complex v) {
  quad::IntegralResult r;
  r.value = v;
  r.evaluations = 1;
  return r;
}

}  // namespace

int step_dimension(int k) {
  static constexpr int dims[kSteps] = {3, 3, 2, 3, 3, 2, 3, 2, 1, 0};
  if (k < 0 || k >= kSteps) throw DomainError("chain step index out of range");
  return dims[k];
}

double pair_tolerance(int k) {
  const int d = std::max(step_dimension(k), step_dimension(k + 1));
  if (d >= 3) return 1e-2;
  if (d == 2) return 1e-3;
  return 1e-6;
}

ChainSpecs ChainSpecs::defaults(int parallelism) {
  ChainSpecs s;
  s.d3 = model::default_spec_3d();
  s.d3.rel_tol = 1e-4;
  s.d3.de_level_max = 8;
  s.d2.rel_tol = 1e-7;
  s.d2.abs_tol = 1e-14;
  s.d2.de_level_max = 10;
  s.d1.rel_tol = 1e-11;
  s.d1.abs_tol = 1e-15;
  s.d1.de_level_max = 12;
  for (auto* q : {&s.d3, &s.d2, &s.d1}) q->parallelism = parallelism;
  return s;
}

LemmaCheck lemma_hypotheses(const GL3Parameter& p, const NuPair& nu) {
  const Params P(p, nu);
  const Complex rho = 0.5, sigma = 1.0 - P.kappa;
  return {rho.real(), (P.al - sigma - rho + 1.0).real(), (P.be - sigma - rho + 1.0).real()};
}

quad::IntegralResult chain_step(int k, const GL3Parameter& p, const NuPair& nu, const ChainSpecs& specs,
                                const ChainOptions& opts) {
  const Params P(p, nu);
  quad::IntegralResult r;
  switch (k) {
    case 0: r = model::intertwine_at_zero_nu(p, nu, specs.d3); break;
    case 1: r = step1(P, specs.d3); break;
    case 2: r = step2(P, specs.d2, opts); break;
    case 3: r = step3(P, specs.d3, opts); break;
    case 4: r = step4(P, specs.d3, opts); break;
    case 5: r = step5(P, specs.d2, opts); break;
    case 6: r = step6(P, specs.d3, opts); break;
    case 7: r = step7(P, specs.d2, opts); break;
    case 8: {
      const LemmaCheck lc = lemma_hypotheses(p, nu);
      if (!lc.ok()) {
        std::ostringstream os;
        os << "lemma hypotheses fail: Re rho=" << lc.re_rho << ", Re(alpha-sigma-rho+1)=" << lc.re_a
           << ", Re(beta-sigma-rho+1)=" << lc.re_b;
        throw DomainError(os.str());
      }
      r = step8(p, nu, specs.d1, opts);
      break;
    }
    case 9: r = exact(prefactor7(P, opts) * final_closed(P)); break;
    default: throw DomainError("chain step index out of range");
  }
  if (k == opts.mutate_step) r = scaled(r, opts.mutate_factor);
  return r;
}

namespace {

Complex display_4f3_direct(const Params& P, const ChainOptions& opts) {
  const Complex m2 = -(2.0 * P.l2 + 2.0 * P.n2 - 1.0) / 4.0, h2 = (2.0 * P.l2 + 2.0 * P.n1 + 1.0) / 4.0;
  const Complex t1 = gamma_quotient({P.d, P.b5, h2}, {P.kappa}) *
                     sf::hyp_unit({{P.al, P.be, 0.5, P.b5}, {P.q, 1.0 - P.d, 0.5}});
  const Complex t2 = gamma_quotient({P.q, -(2.0 * P.l3 + 2.0 * P.n2 - 1.0) / 4.0, (2.0 * P.l1 + 2.0 * P.n1 + 1.0) / 4.0,
                                     -P.d, m2, h2},
                                    {P.al, P.be, P.q2, P.kappa}) *
                     sf::hyp_unit({{P.al + P.d, P.be + P.d, P.kappa, m2}, {P.q2, 1.0 + P.d, P.kappa}});
  return prefactor7(P, opts) * (t1 + t2);
}

}  // namespace

Complex display_4f3(const GL3Parameter& p, const NuPair& nu, const ChainOptions& opts) {
  if (std::abs(Params(p, nu).d) >= kPoleGap) return display_4f3_direct(Params(p, nu), opts);
  auto sym = [&](double eps) {
    return 0.5 * (display_4f3_direct(Params(p, shifted(nu, eps)), opts) +
                  display_4f3_direct(Params(p, shifted(nu, -eps)), opts));
  };
  return (4.0 * sym(kRichardsonStep) - sym(2.0 * kRichardsonStep)) / 3.0;
}

Complex display_3f2(const GL3Parameter& p, const NuPair& nu, const ChainOptions& opts) {
  const Params P(p, nu);
  const Complex pre = gamma_quotient({(2.0 * P.l1 + 2.0 * P.n1 + 1.0) / 4.0, -(2.0 * P.l2 + 2.0 * P.n2 - 1.0) / 4.0,
                                      P.b5, (2.0 * P.l2 + 2.0 * P.n1 + 1.0) / 4.0},
                                     {P.g1, P.kappa});
  return prefactor7(P, opts) * pre * sf::hyp_unit({{P.be, P.b5, P.g1}, {P.g1, P.q}});
}

OddTermCheck odd_term_check(const GL3Parameter& p, const NuPair& nu, const quad::QuadratureSpec& spec,
                            const ChainOptions& opts) {
  // Second term of the linear-quadratic formula with mu = l2+n1+1/2,
  // nu_A = -g2, u = t z/(1+t), beta^2 = (1+t+t z^2)/(1+t)^2.
  const Params P(p, nu);
  const Complex mu = P.l2 + P.n1 + 0.5, na = -P.g2;
  const Complex coef = gamma_quotient({mu, -mu - 2.0 * na, 0.5 - na, -0.5}, {-2.0 * na, mu / 2.0, -mu / 2.0 - na});
  const sf::Gauss2F1 F((1.0 - mu) / 2.0 - na, (2.0 - mu) / 2.0, 1.5);
  auto half = [&](double sign) {
    auto f = [=, &F](std::span<const double> v) {
      const double t = v[0], az = v[1], z = sign * az;
      const double lt = std::log(t), lq = log_q(lt, z);
      const double lbeta = 0.5 * lq - std::log1p(t);
      const double u = t * z / (1.0 + t);
      const double arg = -std::exp(2.0 * (lt + std::log(az) - std::log1p(t)) - 2.0 * lbeta);
      const Complex e = (P.b2 - 1.0) * lt - P.g2 * std::log1p(t) + P.az * std::log(az) - P.g1 * lq +
                        (mu + 2.0 * na - 1.0) * lbeta;
      return std::exp(e) * u * F(arg);
    };
    Dims dims = {{0.0, kInf, {}}, {0.0, kInf, {}}};
    return quad::integrate_nd(f, dims, spec).value * coef * correction(opts);
  };
  return {half(1.0), half(-1.0)};
}

std::vector<IdentityReport> verify_chain(const GL3Parameter& p, const NuPair& nu, const ChainSpecs& specs,
                                         const ChainOptions& opts, int parallelism) {
  struct Outcome {
    quad::IntegralResult r;
    std::string error;
  };
  auto run = [&](int k) {
    Outcome o;
    try {
      o.r = chain_step(k, p, nu, specs, opts);
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    return o;
  };
  std::vector<Outcome> out(kSteps);
  if (parallelism > 1) {
    std::vector<std::future<Outcome>> fut;
    for (int k = 0; k < kSteps; ++k) fut.push_back(std::async(std::launch::async, run, k));
    for (int k = 0; k < kSteps; ++k) out[k] = fut[k].get();
  } else {
    for (int k = 0; k < kSteps; ++k) out[k] = run(k);
  }

  const ParamList params = {{"lambda1", p[0]}, {"lambda2", p[1]}, {"lambda3", p[2]}, {"nu1", nu.nu1}, {"nu2", nu.nu2}};
  std::vector<IdentityReport> reports;
  for (int k = 0; k + 1 < kSteps; ++k) {
    IdentityReport rep;
    rep.id = "chain_" + std::to_string(k) + "_" + std::to_string(k + 1);
    rep.params = params;
    rep.tol = pair_tolerance(k);
    const Outcome &a = out[k], &b = out[k + 1];
    if (!a.error.empty() || !b.error.empty()) {
      rep.diagnostic = !a.error.empty() ? "step " + std::to_string(k) + ": " + a.error
                                        : "step " + std::to_string(k + 1) + ": " + b.error;
      rep.pass = false;
      reports.push_back(rep);
      continue;
    }
    rep.lhs = a.r.value;
    rep.rhs = b.r.value;
    fill_errors(rep);
    // relative to the earlier display
    rep.rel_err = std::abs(a.r.value) > 0.0 ? rep.abs_err / std::abs(a.r.value) : rep.abs_err;
    rep.pass = std::isfinite(rep.rel_err) && rep.rel_err <= rep.tol;
    std::string warn;
    for (const Outcome* o : {&a, &b})
      if (!o->r.converged) warn += (warn.empty() ? "" : "; ") + o->r.warning;
    rep.diagnostic = warn;
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace rsv::chain
