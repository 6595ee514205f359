#include "rsverify/appendix.hpp"

#include <cmath>
#include <future>
#include <random>
#include <stdexcept>

#include "logs.hpp"
#include "rsverify/special_fn.hpp"

namespace rsv::appendix {

namespace {

using sf::gamma_quotient;

constexpr std::array<std::string_view, 8> kNames = {
    "A1_mellin_spherical",          "A2_euler_2f1",
    "A3_halfline_linear_quadratic", "A4_realline_linear_quadratic",
    "A5_beta_pfq",                  "A6_lemma_intf21",
    "A7_trafo_3f2_unit",            "A8_gauss_2f1_unit",
};

// Deterministic uniforms from a 64-bit engine (the std distributions are not
// pinned across standard libraries).
class Draw {
 public:
  Draw(IdentityId id, std::uint64_t seed, const SampleBounds& b)
      : eng_(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(id) + 1), b_(b) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  // re in [lo, hi], |im| <= max_imag, |z| <= max_modulus
  Complex complex(double lo, double hi) {
    for (int i = 0; i < 10000; ++i) {
      const Complex z(uniform(lo, hi), uniform(-b_.max_imag, b_.max_imag));
      if (std::abs(z) <= b_.max_modulus) return z;
    }
    throw std::logic_error("sample_params: empty parameter box");
  }

  double real(double lo, double hi) { return uniform(lo, std::min(hi, b_.max_modulus)); }

  const SampleBounds& bounds() const { return b_; }

 private:
  std::mt19937_64 eng_;
  SampleBounds b_;
};

// distance from z to the nearest integer (n <= 0 only if nonpositive_only)
double integer_distance(Complex z, bool nonpositive_only = false) {
  double n = std::round(z.real());
  if (nonpositive_only && n > 0.0) n = 0.0;
  return std::abs(z - n);
}

bool away_from_poles(std::initializer_list<Complex> zs, double margin) {
  for (Complex z : zs)
    if (integer_distance(z, true) < margin) return false;
  return true;
}

template <class Gen>
ParamList retry(Gen&& gen) {
  for (int i = 0; i < 100000; ++i)
    if (auto p = gen()) return *p;
  throw std::logic_error("sample_params: rejection sampling did not terminate");
}

Complex get(const ParamList& params, std::string_view name) {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  throw DomainError("missing parameter " + std::string(name));
}

bool has(const ParamList& params, std::string_view name) {
  for (const auto& kv : params)
    if (kv.first == name) return true;
  return false;
}

double get_real(const ParamList& params, std::string_view name) { return get(params, name).real(); }

// log(x^2 + b^2) for large x too
double log_sumsq(double x, double b) {
  const double m = std::max(std::abs(x), std::abs(b));
  if (m == 0.0) return -INFINITY;
  const double xs = x / m, bs = b / m;
  return 2.0 * std::log(m) + std::log(xs * xs + bs * bs);
}

ParamList sample_a1(Draw& d) {
  const double m = d.bounds().margin;
  return retry([&]() -> std::optional<ParamList> {
    const Complex mu = d.complex(-1.0, 2.5), nu = d.complex(-1.0, 2.5);
    const double hi = 2.0 * (mu + nu).real() - m;
    if (hi < 2.0 * m) return std::nullopt;
    const Complex lambda = d.complex(m, hi);
    if (lambda.real() < m || lambda.real() > hi) return std::nullopt;
    const double alpha = d.real(0.2, 3.0), beta = d.real(0.2, 3.0);
    return ParamList{{"lambda", lambda}, {"mu", mu}, {"nu", nu}, {"alpha", alpha}, {"beta", beta}};
  });
}

ParamList sample_a2(Draw& d) {
  const double m = d.bounds().margin;
  return retry([&]() -> std::optional<ParamList> {
    const Complex alpha = d.complex(-2.0, 2.0), beta = d.complex(m, 2.5), gamma = d.complex(m, 3.0);
    if ((gamma - beta).real() < m) return std::nullopt;
    const double x = d.real(0.05, 3.0);
    return ParamList{{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"x", x}};
  });
}

// mu, nu with 0 < Re mu < -2 Re nu
std::optional<std::pair<Complex, Complex>> sample_mu_nu(Draw& d) {
  const double m = d.bounds().margin;
  const Complex nu = d.complex(-1.5, -m);
  const double hi = -2.0 * nu.real() - m;
  if (hi < m) return std::nullopt;
  const Complex mu = d.complex(m, hi);
  if (mu.real() > hi) return std::nullopt;
  return std::make_pair(mu, nu);
}

ParamList sample_a3(Draw& d) {
  const double m = d.bounds().margin;
  return retry([&]() -> std::optional<ParamList> {
    const auto mn = sample_mu_nu(d);
    if (!mn) return std::nullopt;
    const double beta = d.real(0.2, 2.5);
    const double u = d.real(beta + m, 3.0);
    if (u < beta + m) return std::nullopt;
    return ParamList{{"mu", mn->first}, {"nu", mn->second}, {"u", u}, {"beta", beta}};
  });
}

ParamList sample_a4(Draw& d) {
  return retry([&]() -> std::optional<ParamList> {
    const auto mn = sample_mu_nu(d);
    if (!mn) return std::nullopt;
    const double beta = d.real(0.2, 3.0);
    const double u = d.uniform(-3.0, 3.0);
    return ParamList{{"mu", mn->first}, {"nu", mn->second}, {"u", u}, {"beta", beta}};
  });
}

ParamList sample_a5(Draw& d, std::uint64_t seed) {
  const double m = d.bounds().margin;
  const int p = seed % 2 == 0 ? 2 : 3;
  ParamList out;
  for (int i = 1; i <= p; ++i) out.emplace_back("a" + std::to_string(i), d.complex(-2.0, 2.0));
  for (int i = 1; i < p; ++i) out.emplace_back("b" + std::to_string(i), d.complex(m, 3.0));
  out.emplace_back("mu", d.complex(m, 3.0));
  out.emplace_back("nu", d.complex(m, 3.0));
  out.emplace_back("x", d.uniform(-0.9, 0.9));
  return out;
}

ParamList sample_a6(Draw& d) {
  const double m = d.bounds().margin;
  return retry([&]() -> std::optional<ParamList> {
    const Complex rho = d.complex(m, 2.5), sigma = d.complex(-2.0, 1.5);
    const Complex alpha = d.complex(-1.0, 3.0), beta = d.complex(-1.0, 3.0), gamma = d.complex(m, 3.0);
    const Complex sr = sigma + rho;
    if ((alpha - sr + 1.0).real() < m || (beta - sr + 1.0).real() < m) return std::nullopt;
    if (integer_distance(sr) < m) return std::nullopt;
    if (!away_from_poles({gamma - sr + 1.0, 1.0 - sigma}, m)) return std::nullopt;
    const double u = d.real(0.1, 0.9);
    return ParamList{{"rho", rho}, {"sigma", sigma}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"u", u}};
  });
}

ParamList sample_a7(Draw& d) {
  const double m = d.bounds().margin;
  return retry([&]() -> std::optional<ParamList> {
    const Complex a = d.complex(-1.5, 2.5), b = d.complex(-1.5, 2.5), c = d.complex(-1.5, 2.5);
    const Complex dd = d.complex(m, 3.0), e = d.complex(m, 3.0);
    if ((dd + e - a - b - c).real() < m || (c - dd + 1.0).real() < m) return std::nullopt;
    if (integer_distance(dd - a - b) < m) return std::nullopt;
    if (!away_from_poles({dd, e, a + b - dd + 1.0, dd + e - a - b, dd - a - b + 1.0}, m)) return std::nullopt;
    return ParamList{{"a", a}, {"b", b}, {"c", c}, {"d", dd}, {"e", e}};
  });
}

ParamList sample_a8(Draw& d) {
  const double m = d.bounds().margin;
  return retry([&]() -> std::optional<ParamList> {
    const Complex alpha = d.complex(-2.0, 2.5), beta = d.complex(-2.0, 2.5), gamma = d.complex(-1.0, 3.0);
    if ((gamma - alpha - beta).real() < m) return std::nullopt;
    if (!away_from_poles({gamma}, m)) return std::nullopt;
    return ParamList{{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
  });
}

struct Sides {
  Complex lhs, rhs;
  double lhs_error = 0.0;
  bool converged = true;
  std::string warning;
};

Sides from_quadrature(const quad::IntegralResult& r, Complex rhs) {
  return {r.value, rhs, r.error_estimate, r.converged, r.warning};
}

Sides eval_a1(const ParamList& P, const quad::QuadratureSpec& spec) {
  const Complex l = get(P, "lambda"), mu = get(P, "mu"), nu = get(P, "nu");
  const double al = get_real(P, "alpha"), be = get_real(P, "beta");
  auto f = [=](double x) {
    const double lx = std::log(x);
    const double la = detail::log1p_pos(al * x * x, std::log(al) + 2.0 * lx);
    const double lb = detail::log1p_pos(be * x * x, std::log(be) + 2.0 * lx);
    return std::exp((l - 1.0) * lx - mu * la - nu * lb);
  };
  const Complex rhs = 0.5 * sf::rpow(al, -l / 2.0) * sf::beta_fn(l / 2.0, mu + nu - l / 2.0) *
                      sf::gauss_2f1(nu, l / 2.0, mu + nu, 1.0 - be / al);
  return from_quadrature(quad::integrate_halfline(f, spec), rhs);
}

Sides eval_a2(const ParamList& P, const quad::QuadratureSpec& spec) {
  const Complex a = get(P, "alpha"), b = get(P, "beta"), g = get(P, "gamma");
  const double x = get_real(P, "x");
  auto f = [=](double t) {
    const double lt = std::log(t);
    return std::exp((b - 1.0) * lt + (a - g) * std::log1p(t) - a * detail::log1p_pos(x * t, std::log(x) + lt));
  };
  const auto r = quad::integrate_halfline(f, spec);
  const Complex pre = gamma_quotient({g}, {g - b, b});
  return {sf::gauss_2f1(a, b, g, 1.0 - x), pre * r.value, std::abs(pre) * r.error_estimate, r.converged, r.warning};
}

Sides eval_a3(const ParamList& P, const quad::QuadratureSpec& spec) {
  const Complex mu = get(P, "mu"), nu = get(P, "nu");
  const double u = get_real(P, "u"), beta = get_real(P, "beta");
  return from_quadrature(linear_quadratic_numeric(mu, nu, u, beta, spec), linear_quadratic_halfline(mu, nu, u, beta));
}

Sides eval_a4(const ParamList& P, const quad::QuadratureSpec& spec) {
  const Complex mu = get(P, "mu"), nu = get(P, "nu");
  const double u = get_real(P, "u"), beta = get_real(P, "beta");
  return from_quadrature(linear_quadratic_numeric(mu, nu, u, beta, spec), linear_quadratic_realline(mu, nu, u, beta));
}

Sides eval_a5(const ParamList& P, const quad::QuadratureSpec& spec) {
  std::vector<Complex> up, lo;
  for (int i = 1; has(P, "a" + std::to_string(i)); ++i) up.push_back(get(P, "a" + std::to_string(i)));
  for (int i = 1; has(P, "b" + std::to_string(i)); ++i) lo.push_back(get(P, "b" + std::to_string(i)));
  if (up.size() < 2 || up.size() > 3 || lo.size() + 1 != up.size()) throw DomainError("A5 needs p in {2,3}, q = p-1");
  const Complex mu = get(P, "mu"), nu = get(P, "nu");
  const double x = get_real(P, "x");
  if (!(std::abs(x) < 1.0)) throw DomainError("A5 needs |x| < 1");
  auto f = [=](double t, double t0, double t1) {
    return std::exp((mu - 1.0) * std::log(t0) + (nu - 1.0) * std::log(t1)) * sf::pfq_series(up, lo, t * x);
  };
  auto up2 = up, lo2 = lo;
  up2.push_back(mu);
  lo2.push_back(mu + nu);
  const Complex rhs = sf::beta_fn(mu, nu) * sf::pfq_series(up2, lo2, x);
  return from_quadrature(quad::integrate_interval_ends(f, 0.0, 1.0, spec), rhs);
}

Sides eval_a6(const ParamList& P, const quad::QuadratureSpec& spec) {
  const Complex rho = get(P, "rho"), sg = get(P, "sigma"), a = get(P, "alpha"), b = get(P, "beta"), g = get(P, "gamma");
  const double u = get_real(P, "u");
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("A6 needs 0 < u <= 1");
  const sf::Gauss2F1 F(a, b, g);
  auto f = [=, &F](double x) {
    return std::exp((rho - 1.0) * std::log(x) + (sg - 1.0) * std::log(x + u)) * F(-x);
  };
  const Complex sr = sg + rho;
  const std::array<Complex, 3> u1{a, b, rho};
  const std::array<Complex, 2> l1{g, sr};
  const std::array<Complex, 3> u2{a - sr + 1.0, b - sr + 1.0, 1.0 - sg};
  const std::array<Complex, 2> l2{g - sr + 1.0, 2.0 - sr};
  const Complex rhs =
      gamma_quotient({rho, 1.0 - sr}, {1.0 - sg}) * sf::rpow(u, sr - 1.0) * sf::hyp3f2_real(u1, l1, u) +
      gamma_quotient({g, a - sr + 1.0, b - sr + 1.0, sr - 1.0}, {b, a, g - sr + 1.0}) * sf::hyp3f2_real(u2, l2, u);
  return from_quadrature(quad::integrate_halfline(f, spec), rhs);
}

Sides eval_a7(const ParamList& P) {
  const Complex a = get(P, "a"), b = get(P, "b"), c = get(P, "c"), d = get(P, "d"), e = get(P, "e");
  Sides s;
  s.lhs = trafo_3f2_lhs(a, b, c, d, e);
  s.rhs = trafo_3f2_rhs(a, b, c, d, e);
  return s;
}

Sides eval_a8(const ParamList& P) {
  const Complex a = get(P, "alpha"), b = get(P, "beta"), g = get(P, "gamma");
  Sides s;
  s.lhs = sf::hyp_unit({{a, b}, {g}});
  s.rhs = sf::gauss_sum(a, b, g);
  return s;
}

}  // namespace

std::string_view identity_name(IdentityId id) { return kNames.at(static_cast<std::size_t>(id)); }

std::optional<IdentityId> parse_identity(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name || kNames[i].substr(0, 2) == name) return kAllIdentities[i];
  return std::nullopt;
}

bool quadrature_backed(IdentityId id) {
  return id != IdentityId::A7_trafo_3f2_unit && id != IdentityId::A8_gauss_2f1_unit;
}

double default_tolerance(IdentityId id) { return quadrature_backed(id) ? 1e-7 : 1e-9; }

ParamList sample_params(IdentityId id, std::uint64_t seed, const SampleBounds& bounds) {
  Draw d(id, seed, bounds);
  switch (id) {
    case IdentityId::A1_mellin_spherical: return sample_a1(d);
    case IdentityId::A2_euler_2f1: return sample_a2(d);
    case IdentityId::A3_halfline_linear_quadratic: return sample_a3(d);
    case IdentityId::A4_realline_linear_quadratic: return sample_a4(d);
    case IdentityId::A5_beta_pfq: return sample_a5(d, seed);
    case IdentityId::A6_lemma_intf21: return sample_a6(d);
    case IdentityId::A7_trafo_3f2_unit: return sample_a7(d);
    case IdentityId::A8_gauss_2f1_unit: return sample_a8(d);
  }
  throw std::logic_error("unknown identity");
}

quad::QuadratureSpec default_spec() {
  quad::QuadratureSpec s;
  s.rel_tol = 1e-11;
  s.abs_tol = 1e-15;
  s.de_level_max = 12;
  return s;
}

quad::IntegralResult linear_quadratic_numeric(Complex mu, Complex nu, double u, double beta,
                                              const quad::QuadratureSpec& spec) {
  auto f = [=](double y) {
    return std::exp((mu - 1.0) * std::log(y) + nu * log_sumsq(u + y, beta));
  };
  return quad::integrate_halfline(f, spec);
}

Complex linear_quadratic_halfline(Complex mu, Complex nu, double u, double beta) {
  if (!(u > std::abs(beta))) throw DomainError("half-line formula needs u > |beta|");
  return sf::beta_fn(mu, -mu - 2.0 * nu) * sf::rpow(u, mu + 2.0 * nu) *
         sf::gauss_2f1(-mu / 2.0 - nu, (1.0 - mu) / 2.0 - nu, 0.5 - nu, -beta * beta / (u * u));
}

Complex linear_quadratic_realline(Complex mu, Complex nu, double u, double beta) {
  if (!(beta > 0.0)) throw DomainError("real-line formula needs beta > 0");
  const double x = -(u * u) / (beta * beta);
  const Complex pre = gamma_quotient({mu, -mu - 2.0 * nu, 0.5 - nu}, {-2.0 * nu});
  const Complex t1 = gamma_quotient({0.5}, {(mu + 1.0) / 2.0, (1.0 - mu) / 2.0 - nu}) * sf::rpow(beta, mu + 2.0 * nu) *
                     sf::gauss_2f1(-mu / 2.0 - nu, (1.0 - mu) / 2.0, 0.5, x);
  const Complex t2 = gamma_quotient({-0.5}, {mu / 2.0, -mu / 2.0 - nu}) * sf::rpow(beta, mu + 2.0 * nu - 1.0) * u *
                     sf::gauss_2f1((1.0 - mu) / 2.0 - nu, (2.0 - mu) / 2.0, 1.5, x);
  return pre * (t1 + t2);
}

Complex trafo_3f2_lhs(Complex a, Complex b, Complex c, Complex d, Complex e) {
  return sf::hyp_unit({{a, b, c}, {d, e}});
}

Complex trafo_3f2_rhs(Complex a, Complex b, Complex c, Complex d, Complex e) {
  const Complex t1 = gamma_quotient({d, d - a - b}, {d - a, d - b}) * sf::hyp_unit({{a, b, e - c}, {e, a + b - d + 1.0}});
  const Complex t2 = gamma_quotient({d, e, d + e - a - b - c, a + b - d}, {a, b, d + e - a - b, e - c}) *
                     sf::hyp_unit({{d - a, d - b, d + e - a - b - c}, {d + e - a - b, d - a - b + 1.0}});
  return t1 + t2;
}

IdentityReport verify_identity(IdentityId id, const ParamList& params, const quad::QuadratureSpec& spec, double tol) {
  IdentityReport rep;
  rep.id = std::string(identity_name(id));
  rep.params = params;
  rep.tol = tol;
  try {
    Sides s;
    switch (id) {
      case IdentityId::A1_mellin_spherical: s = eval_a1(params, spec); break;
      case IdentityId::A2_euler_2f1: s = eval_a2(params, spec); break;
      case IdentityId::A3_halfline_linear_quadratic: s = eval_a3(params, spec); break;
      case IdentityId::A4_realline_linear_quadratic: s = eval_a4(params, spec); break;
      case IdentityId::A5_beta_pfq: s = eval_a5(params, spec); break;
      case IdentityId::A6_lemma_intf21: s = eval_a6(params, spec); break;
      case IdentityId::A7_trafo_3f2_unit: s = eval_a7(params); break;
      case IdentityId::A8_gauss_2f1_unit: s = eval_a8(params); break;
    }
    rep.lhs = s.lhs;
    rep.rhs = s.rhs;
    fill_errors(rep);
    if (std::abs(rep.rhs) < 1e-12)
      rep.pass = rep.abs_err <= 1e-10;
    else
      rep.pass = rep.rel_err <= tol;
    if (!std::isfinite(rep.abs_err)) rep.pass = false;
    if (!s.converged) rep.diagnostic = s.warning;
  } catch (const std::exception& e) {
    rep.pass = false;
    rep.diagnostic = e.what();
  }
  return rep;
}

IdentityReport verify_identity(IdentityId id, const ParamList& params, const quad::QuadratureSpec& spec) {
  return verify_identity(id, params, spec, default_tolerance(id));
}

std::vector<IdentityReport> run_suite(int samples, std::uint64_t seed, const SampleBounds& bounds,
                                      const quad::QuadratureSpec& spec, int parallelism,
                                      const std::vector<std::pair<IdentityId, double>>& tol_overrides) {
  struct Job {
    IdentityId id;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (IdentityId id : kAllIdentities)
    for (int i = 0; i < samples; ++i) jobs.push_back({id, seed + static_cast<std::uint64_t>(i)});

  auto run = [&](const Job& j) {
    double tol = default_tolerance(j.id);
    for (const auto& [oid, v] : tol_overrides)
      if (oid == j.id) tol = v;
    IdentityReport rep;
    try {
      rep = verify_identity(j.id, sample_params(j.id, j.seed, bounds), spec, tol);
    } catch (const std::exception& e) {
      rep.id = std::string(identity_name(j.id));
      rep.tol = tol;
      rep.diagnostic = e.what();
    }
    rep.seed = static_cast<std::int64_t>(j.seed);
    return rep;
  };

  std::vector<IdentityReport> out(jobs.size());
  const int workers = std::max(1, parallelism);
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = run(jobs[i]);
    return out;
  }
  // strided static partition keeps the result independent of scheduling
  std::vector<std::future<void>> fut;
  for (int w = 0; w < workers; ++w)
    fut.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < jobs.size(); i += static_cast<std::size_t>(workers))
        out[i] = run(jobs[i]);
    }));
  for (auto& f : fut) f.get();
  return out;
}

}  // namespace rsv::appendix
