#include "rsverify/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rsverify/appendix.hpp"
#include "rsverify/gamma_factors.hpp"
#include "rsverify/model_form.hpp"
#include "rsverify/proof_chain.hpp"
#include "rsverify/special_fn.hpp"

namespace rsv::sweep {

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError(what + ": not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not an integer: '" + s + "'");
  }
  if (pos != s.size() || v < INT32_MIN || v > INT32_MAX) throw ConfigError(what + ": not an integer: '" + s + "'");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& s, const std::string& what) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ConfigError(what + ": not a boolean: '" + s + "'");
}

// 17 significant digits
std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

ojson cjson(Complex z) {
  ojson j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

ojson params_json(const ParamList& ps) {
  ojson j = ojson::object();
  for (const auto& [k, v] : ps) j[k] = cjson(v);
  return j;
}

// results are stored by index
template <class F>
void parallel_for(int n, int workers, F&& f) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) f(i);
    });
  for (auto& t : pool) t.join();
}

std::optional<double> override_for(const RunConfig& cfg, const std::string& name) {
  auto it = cfg.tol_overrides.find(name);
  if (it == cfg.tol_overrides.end()) return std::nullopt;
  return it->second;
}

void judge(IdentityReport& r, double tol) {
  r.tol = tol;
  fill_errors(r);
  r.pass = std::isfinite(r.rel_err) && r.rel_err <= tol;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int default_samples(Suite s) {
  switch (s) {
    case Suite::appendix: return 20;
    case Suite::reciprocity: return 50;
    default: return 1;
  }
}

// ---- suites

void suite_appendix(const RunConfig& cfg, SuiteResult& out, std::ostream& log) {
  std::vector<std::pair<appendix::IdentityId, double>> tols;
  for (const auto& [k, v] : cfg.tol_overrides)
    if (auto id = appendix::parse_identity(k)) tols.emplace_back(*id, v);
  const int n = cfg.samples.value_or(default_samples(Suite::appendix));
  const auto bounds = cfg.hard ? appendix::SampleBounds::hard() : appendix::SampleBounds{};
  out.checks = appendix::run_suite(n, static_cast<std::uint64_t>(cfg.seed), bounds, appendix::default_spec(),
                                   cfg.parallelism, tols);
  log << "appendix: " << n << " draws per identity" << (cfg.hard ? " (hard bounds)" : "") << "\n";
}

struct ChainPoint {
  GL3Parameter p;
  GL2Parameter q;
};

std::vector<ChainPoint> chain_points() {
  using C = Complex;
  return {{GL3Parameter::make(0.0, 0.0, 0.0), GL2Parameter::make(0.0)},
          {GL3Parameter::make(C(0, 0.5), 0.0, C(0, -0.5)), GL2Parameter::make(C(0, 0.3))},
          {GL3Parameter::make(C(0, 0.8), C(0, -0.8), 0.0), GL2Parameter::make(C(0, 0.5))}};
}

void suite_chain(const RunConfig& cfg, SuiteResult& out, std::ostream& log) {
  const auto specs = chain::ChainSpecs::defaults(1);
  const auto pts = chain_points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& [p, q] = pts[i];
    const NuPair nu = NuPair::from(q);
    auto reps = chain::verify_chain(p, nu, specs, {}, cfg.parallelism);
    for (auto& r : reps) {
      const int k = std::stoi(r.id.substr(6));
      const int dim = std::max(chain::step_dimension(k), chain::step_dimension(k + 1));
      const std::string name = dim >= 3 ? "chain_3d" : dim == 2 ? "chain_2d" : "chain_1d";
      const bool evaluated = r.diagnostic.rfind("step ", 0) != 0;
      if (auto t = override_for(cfg, name); t && evaluated) {
        r.tol = *t;
        r.pass = std::isfinite(r.rel_err) && r.rel_err <= r.tol;
      }
      r.seed = static_cast<std::int64_t>(i);
      out.checks.push_back(r);
    }
    const ParamList params = {{"lambda1", p[0]}, {"lambda2", p[1]}, {"lambda3", p[2]}, {"nu1", nu.nu1}, {"nu2", nu.nu2}};

    // hypotheses of the t-integral lemma
    IdentityReport lem;
    lem.id = "chain_lemma_hypotheses";
    lem.params = params;
    lem.seed = static_cast<std::int64_t>(i);
    const auto lc = chain::lemma_hypotheses(p, nu);
    lem.lhs = std::min({lc.re_rho, lc.re_a, lc.re_b});
    lem.rhs = 0.0;
    lem.abs_err = lem.rel_err = 0.0;
    lem.pass = lc.ok();
    if (!lem.pass) lem.diagnostic = "smallest real part is not positive";
    out.checks.push_back(lem);

    // the dropped odd term integrates to zero
    IdentityReport odd;
    odd.id = "chain_odd_term";
    odd.params = params;
    odd.seed = static_cast<std::int64_t>(i);
    odd.tol = override_for(cfg, "chain_odd").value_or(1e-8);
    try {
      const auto oc = chain::odd_term_check(p, nu, specs.d2);
      odd.lhs = oc.sum();
      odd.rhs = 0.0;
      odd.abs_err = std::abs(oc.sum());
      const double scale = std::max(std::abs(oc.positive_half), std::abs(oc.negative_half));
      odd.rel_err = scale > 0.0 ? odd.abs_err / scale : 0.0;
      odd.pass = std::isfinite(odd.rel_err) && odd.rel_err <= odd.tol;
    } catch (const std::exception& e) {
      odd.diagnostic = e.what();
      odd.pass = false;
    }
    out.checks.push_back(odd);

    // 4F3 pair and 3F2 displays against the final closed form
    for (int which = 0; which < 2; ++which) {
      IdentityReport d;
      d.id = which == 0 ? "chain_display_4f3" : "chain_display_3f2";
      d.params = params;
      d.seed = static_cast<std::int64_t>(i);
      try {
        d.lhs = which == 0 ? chain::display_4f3(p, nu) : chain::display_3f2(p, nu);
        d.rhs = chain::chain_step(chain::kSteps - 1, p, nu, specs).value;
        judge(d, override_for(cfg, "chain_1d").value_or(chain::pair_tolerance(chain::kSteps - 2)));
      } catch (const std::exception& e) {
        d.diagnostic = e.what();
        d.pass = false;
      }
      out.checks.push_back(d);
    }
    log << "chain: point " << i << " done\n";
  }
}

void suite_closed_form(const RunConfig& cfg, SuiteResult& out, std::ostream& log) {
  const double gtol = override_for(cfg, "gamma").value_or(1e-12);
  constexpr int kGammaPoints = 200;
  for (int i = 0; i < kGammaPoints; ++i) {
    const double y = -30.0 + 60.0 * i / (kGammaPoints - 1);
    IdentityReport r;
    r.id = "gamma_half_line_modulus";
    r.params = {{"y", y}};
    r.seed = i;
    try {
      const double g = std::abs(sf::gamma(Complex(0.5, y)));
      r.lhs = g * g * std::cosh(kPi * y);
      r.rhs = kPi;
      judge(r, gtol);
    } catch (const std::exception& e) {
      r.diagnostic = e.what();
    }
    out.checks.push_back(r);
  }
  {
    IdentityReport r;
    r.id = "stade_gamma_unit";
    r.params = {{"s", 1.0}};
    try {
      r.lhs = gf::stade_gamma(GL3Parameter::make(0.0, 0.0, 0.0), GL2Parameter::make(0.0), 1.0);
      r.rhs = 1.0;
      judge(r, gtol);
    } catch (const std::exception& e) {
      r.diagnostic = e.what();
    }
    out.checks.push_back(r);
  }

  // calibration of c: numeric model value against the closed form
  const auto pts = model::calibration_points();
  std::vector<model::CalibrationRecord> recs(pts.size());
  std::vector<std::string> errs(pts.size());
  // same 3D budget as the chain; rel 1e-4 still gives ratios stable to ~1e-6
  auto spec = chain::ChainSpecs::defaults().d3;
  parallel_for(static_cast<int>(pts.size()), cfg.parallelism, [&](int i) {
    const auto& pt = pts[static_cast<std::size_t>(i)];
    try {
      const auto numv = model::model_value_numeric(pt.p, pt.q, pt.t, spec);
      const Complex closed = model::model_value_closed_t(pt.p, pt.q, pt.t);
      recs[i] = {pt, numv.value, closed, numv.value / closed, numv.error_estimate / std::abs(closed)};
      if (!numv.converged) errs[i] = numv.warning;
    } catch (const std::exception& e) {
      errs[i] = std::string("error: ") + e.what();
    }
  });
  double sum = 0.0, lo = 0.0, hi = 0.0;
  int good = 0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (errs[i].rfind("error: ", 0) == 0) continue;
    const double m = std::abs(recs[i].ratio);
    lo = good == 0 ? m : std::min(lo, m);
    hi = good == 0 ? m : std::max(hi, m);
    sum += recs[i].ratio.real();
    ++good;
  }
  const double c = good > 0 ? sum / good : 0.0;
  const double spread = good > 0 ? (hi - lo) / c : 0.0;
  const double ctol = override_for(cfg, "calibration").value_or(1e-3);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& pt = pts[i];
    IdentityReport r;
    r.id = "calibration_ratio";
    r.params = {{"lambda1", pt.p[0]}, {"lambda2", pt.p[1]}, {"lambda3", pt.p[2]}, {"tau", pt.q.tau}, {"t", pt.t}};
    r.seed = static_cast<std::int64_t>(i);
    r.diagnostic = errs[i];
    if (errs[i].rfind("error: ", 0) != 0) {
      r.lhs = recs[i].ratio;
      r.rhs = c;
      judge(r, ctol);
    }
    out.checks.push_back(r);
  }
  IdentityReport sp;
  sp.id = "calibration_spread";
  sp.params = {{"points", static_cast<double>(good)}};
  sp.lhs = spread;
  sp.rhs = 0.0;
  sp.abs_err = sp.rel_err = spread;
  sp.tol = ctol;
  sp.pass = good >= 6 && good == static_cast<int>(recs.size()) && spread <= ctol;
  out.checks.push_back(sp);
  out.c = c;
  out.spread = spread;
  char buf[96];
  std::snprintf(buf, sizeof buf, "closed-form: c = %.10f (pi^{3/2} = %.10f), spread %.2e\n", c,
                std::pow(kPi, 1.5), spread);
  log << buf;
}

void suite_reciprocity(const RunConfig& cfg, SuiteResult& out, std::ostream& log) {
  const int n = cfg.samples.value_or(default_samples(Suite::reciprocity));
  const double tol = override_for(cfg, "reciprocity").value_or(1e-10);
  const double ref = model::reciprocity_modulus(GL3Parameter::make(0.0, 0.0, 0.0), GL2Parameter::make(0.0), 0.0);
  std::vector<IdentityReport> reps(static_cast<std::size_t>(n));
  parallel_for(n, cfg.parallelism, [&](int i) {
    std::mt19937_64 eng(static_cast<std::uint64_t>(cfg.seed) * 0x9E3779B97F4A7C15ULL + 0x5bd1e995ULL +
                        static_cast<std::uint64_t>(i));
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * static_cast<double>(eng() >> 11) * 0x1p-53; };
    double a = 0, b = 0;
    do {
      a = uni(-10.0, 10.0);
      b = uni(-10.0, 10.0);
    } while (a * a + b * b + (a + b) * (a + b) > 100.0);
    const double tau = uni(-10.0, 10.0), t = uni(-10.0, 10.0);
    IdentityReport& r = reps[static_cast<std::size_t>(i)];
    r.id = "reciprocity_modulus";
    r.seed = cfg.seed + i;
    try {
      const auto p = GL3Parameter::make(Complex(0, a), Complex(0, b), Complex(0, -a - b));
      const auto q = GL2Parameter::make(Complex(0, tau));
      r.params = {{"lambda1", p[0]}, {"lambda2", p[1]}, {"lambda3", p[2]}, {"tau", q.tau}, {"t", t}};
      r.lhs = model::reciprocity_modulus(p, q, t);
      r.rhs = ref;
      judge(r, tol);
    } catch (const std::exception& e) {
      r.diagnostic = e.what();
      r.pass = false;
    }
  });
  double lo = ref, hi = ref;
  for (const auto& r : reps) {
    lo = std::min(lo, r.lhs.real());
    hi = std::max(hi, r.lhs.real());
  }
  out.checks = std::move(reps);
  out.spread = (hi - lo) / ref;
  char buf[96];
  std::snprintf(buf, sizeof buf, "reciprocity: constant %.15g, relative spread %.2e\n", ref, *out.spread);
  log << buf;
}

void suite_bump(const RunConfig& cfg, SuiteResult& out, std::ostream& log) {
  if (cfg.t_values.size() < 2) throw ConfigError("bump sweep needs at least two T values");
  const double stol = override_for(cfg, "slope").value_or(0.1);
  struct Run {
    std::string name;
    bool scaled;
  };
  const std::vector<Run> runs = {{"zero", false}, {"uniform", true}};
  const model::BumpProfile bump;
  quad::QuadratureSpec spec = model::default_spec_3d();
  const int nt = static_cast<int>(cfg.t_values.size());
  std::vector<BumpRecord> recs(runs.size() * cfg.t_values.size());
  parallel_for(static_cast<int>(recs.size()), cfg.parallelism, [&](int j) {
    const Run& run = runs[static_cast<std::size_t>(j / nt)];
    const double T = cfg.t_values[static_cast<std::size_t>(j % nt)];
    BumpRecord& b = recs[static_cast<std::size_t>(j)];
    b.run = run.name;
    b.T = T;
    try {
      // |lambda| = |tau| = |t| = T on the uniform run
      const double a = run.scaled ? T / std::sqrt(2.0) : 0.0;
      const auto p = GL3Parameter::make(Complex(0, a), Complex(0, -a), 0.0);
      const auto q = GL2Parameter::make(Complex(0, run.scaled ? T : 0.0));
      const auto r = model::bump_value(T, p, q, run.scaled ? T : 0.0, bump, spec);
      b.value = r.value;
      b.abs_value = std::abs(r.value);
      b.scaled = b.abs_value * std::pow(T, 1.5);
      b.error_estimate = r.error_estimate;
      if (!r.converged) b.diagnostic = r.warning;
    } catch (const std::exception& e) {
      b.diagnostic = std::string("error: ") + e.what();
      b.abs_value = std::nan("");
    }
  });
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::vector<double> xs, ys;
    bool ok = true;
    for (int i = 0; i < nt; ++i) {
      const auto& b = recs[k * static_cast<std::size_t>(nt) + static_cast<std::size_t>(i)];
      if (!(b.abs_value > 0.0) || !std::isfinite(b.abs_value)) ok = false;
      xs.push_back(b.T);
      ys.push_back(b.abs_value);
    }
    SlopeRecord s;
    s.run = runs[k].name;
    if (ok) {
      const auto fit = model::fit_loglog(xs, ys);
      s.slope = fit.slope;
      s.intercept = fit.intercept;
      s.pass = std::abs(fit.slope + 1.5) <= stol;
    } else {
      s.slope = s.intercept = std::nan("");
    }
    out.slopes.push_back(s);
    char buf[96];
    std::snprintf(buf, sizeof buf, "bump: run %s slope %.4f (target -1.5 +- %g) %s\n", s.run.c_str(), s.slope, stol,
                  s.pass ? "pass" : "FAIL");
    log << buf;
  }
  out.bumps = std::move(recs);
}

void apply_forced_failures(const RunConfig& cfg, SuiteResult& r) {
  for (auto& c : r.checks)
    if (std::find(cfg.force_fail.begin(), cfg.force_fail.end(), c.id) != cfg.force_fail.end()) {
      c.pass = false;
      c.diagnostic = c.diagnostic.empty() ? "forced failure" : c.diagnostic + "; forced failure";
    }
  for (auto& s : r.slopes)
    if (std::find(cfg.force_fail.begin(), cfg.force_fail.end(), "slope_" + s.run) != cfg.force_fail.end())
      s.pass = false;
}

// ---- record layout

const std::vector<std::pair<std::string, std::string>>& check_fields() {
  static const std::vector<std::pair<std::string, std::string>> f = {
      {"kind", "string \"check\""},
      {"suite", "string"},
      {"id", "string"},
      {"params", "object name -> complex"},
      {"lhs", "complex"},
      {"rhs", "complex"},
      {"abs_err", "float"},
      {"rel_err", "float"},
      {"tol", "float"},
      {"pass", "bool"},
      {"seed", "integer"},
      {"diagnostic", "string"},
  };
  return f;
}

const std::vector<std::pair<std::string, std::string>>& bump_fields() {
  static const std::vector<std::pair<std::string, std::string>> f = {
      {"kind", "string \"bump\""},
      {"suite", "string"},
      {"run", "string"},
      {"T", "float"},
      {"value", "complex"},
      {"abs_value", "float"},
      {"scaled_value", "float (abs_value * T^1.5)"},
      {"error_estimate", "float"},
      {"diagnostic", "string"},
  };
  return f;
}

const std::vector<std::pair<std::string, std::string>>& summary_fields() {
  static const std::vector<std::pair<std::string, std::string>> f = {
      {"kind", "string \"summary\""},
      {"suite", "string"},
      {"total", "integer"},
      {"passed", "integer"},
      {"failed", "integer"},
      {"pass", "bool"},
      {"seed", "integer"},
      {"samples", "integer or null"},
      {"parallelism", "integer"},
      {"hard", "bool"},
      {"c", "float or null"},
      {"spread", "float or null"},
      {"slopes", "array of {run, slope, intercept, pass}"},
      {"tol_overrides", "object name -> float"},
      {"timestamp", "object {utc: ISO 8601 string, wall_time_s: float}"},
  };
  return f;
}

ojson check_json(const IdentityReport& r, const std::string& suite) {
  ojson j;
  j["kind"] = "check";
  j["suite"] = suite;
  j["id"] = r.id;
  j["params"] = params_json(r.params);
  j["lhs"] = cjson(r.lhs);
  j["rhs"] = cjson(r.rhs);
  j["abs_err"] = r.abs_err;
  j["rel_err"] = r.rel_err;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  j["diagnostic"] = r.diagnostic;
  return j;
}

ojson bump_json(const BumpRecord& b, const std::string& suite) {
  ojson j;
  j["kind"] = "bump";
  j["suite"] = suite;
  j["run"] = b.run;
  j["T"] = b.T;
  j["value"] = cjson(b.value);
  j["abs_value"] = b.abs_value;
  j["scaled_value"] = b.scaled;
  j["error_estimate"] = b.error_estimate;
  j["diagnostic"] = b.diagnostic;
  return j;
}

ojson summary_json(const SuiteResult& r, const RunConfig& cfg) {
  ojson j;
  j["kind"] = "summary";
  j["suite"] = suite_name(r.suite);
  j["total"] = r.total();
  j["passed"] = r.passed();
  j["failed"] = r.total() - r.passed();
  j["pass"] = r.all_pass();
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples ? ojson(*cfg.samples) : ojson(nullptr);
  j["parallelism"] = cfg.parallelism;
  j["hard"] = cfg.hard;
  j["c"] = r.c ? ojson(*r.c) : ojson(nullptr);
  j["spread"] = r.spread ? ojson(*r.spread) : ojson(nullptr);
  ojson sl = ojson::array();
  for (const auto& s : r.slopes) sl.push_back({{"run", s.run}, {"slope", s.slope}, {"intercept", s.intercept}, {"pass", s.pass}});
  j["slopes"] = sl;
  ojson t = ojson::object();
  for (const auto& [k, v] : cfg.tol_overrides) t[k] = v;
  j["tol_overrides"] = t;
  j["timestamp"] = {{"utc", utc_timestamp()}, {"wall_time_s", r.wall_time}};
  return j;
}

std::string csv_header(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string h;
  for (const auto& [name, type] : fields) {
    if (!h.empty()) h += ',';
    if (type.rfind("complex", 0) == 0)
      h += name + "_re," + name + "_im";
    else
      h += name;
  }
  return h + "\n";
}

std::string csv_value(const ojson& v) {
  if (v.is_string()) return csv_field(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return num(v.get<double>());
  if (v.is_null()) return "";
  return csv_field(v.dump());
}

std::string csv_row(const ojson& rec, const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string row;
  bool first = true;
  for (const auto& [name, type] : fields) {
    if (!first) row += ',';
    first = false;
    const ojson& v = rec.at(name);
    if (type.rfind("complex", 0) == 0)
      row += num(v.at("re").get<double>()) + "," + num(v.at("im").get<double>());
    else
      row += csv_value(v);
  }
  return row + "\n";
}

}  // namespace

void RunConfig::validate() const {
  if (samples && *samples < 1) throw ConfigError("samples must be >= 1");
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  for (const auto& [k, v] : tol_overrides) {
    const auto names = tolerance_names();
    const bool known = std::find(names.begin(), names.end(), k) != names.end() || appendix::parse_identity(k);
    if (!known) throw ConfigError("unknown tolerance name '" + k + "'");
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("tolerance '" + k + "' must be positive");
  }
  for (double t : t_values)
    if (!(t >= 4.0) || !std::isfinite(t)) throw ConfigError("T values must be >= 4");
  if (output_dir.empty()) throw ConfigError("empty output directory");
}

std::optional<Suite> parse_suite(const std::string& s) {
  if (s == "appendix") return Suite::appendix;
  if (s == "chain") return Suite::chain;
  if (s == "closed-form" || s == "closed_form") return Suite::closed_form;
  if (s == "reciprocity") return Suite::reciprocity;
  if (s == "bump") return Suite::bump;
  if (s == "all") return Suite::all;
  return std::nullopt;
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::appendix: return "appendix";
    case Suite::chain: return "chain";
    case Suite::closed_form: return "closed_form";
    case Suite::reciprocity: return "reciprocity";
    case Suite::bump: return "bump";
    case Suite::all: return "all";
  }
  return "?";
}

std::optional<Format> parse_format(const std::string& s) {
  if (s == "json" || s == "jsonl" || s == "json_lines") return Format::json_lines;
  if (s == "csv") return Format::csv;
  return std::nullopt;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& entries) {
  for (const auto& [k, v] : entries) {
    if (k == "seed")
      cfg.seed = parse_seed(v);
    else if (k == "samples")
      cfg.samples = parse_int(v, "samples");
    else if (k == "parallelism")
      cfg.parallelism = parse_int(v, "parallelism");
    else if (k == "out")
      cfg.output_dir = v;
    else if (k == "format") {
      auto f = parse_format(v);
      if (!f) throw ConfigError("format: expected json or csv, got '" + v + "'");
      cfg.format = *f;
    } else if (k == "hard")
      cfg.hard = parse_bool(v, "hard");
    else if (k == "t-values" || k == "t_values")
      cfg.t_values = parse_list(v);
    else if (k.rfind("tol.", 0) == 0)
      cfg.tol_overrides[k.substr(4)] = parse_double(v, k);
    else
      throw ConfigError("unknown config key '" + k + "'");
  }
}

std::pair<std::string, double> parse_tol(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--tol expects name=value, got '" + s + "'");
  const std::string name = trim(s.substr(0, eq));
  return {name, parse_double(trim(s.substr(eq + 1)), "--tol " + name)};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), "T value"));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::int64_t parse_seed(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("seed: not an integer: '" + s + "'");
  }
  if (pos != s.size() || v < 0) throw ConfigError("seed: expected a non-negative integer, got '" + s + "'");
  return v;
}

std::vector<std::string> tolerance_names() {
  std::vector<std::string> n;
  for (auto id : appendix::kAllIdentities) n.emplace_back(appendix::identity_name(id));
  for (const char* s : {"chain_3d", "chain_2d", "chain_1d", "chain_odd", "gamma", "calibration", "reciprocity", "slope"})
    n.emplace_back(s);
  return n;
}

int SuiteResult::total() const { return static_cast<int>(checks.size() + slopes.size()); }

int SuiteResult::passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 1 : 0;
  for (const auto& s : slopes) n += s.pass ? 1 : 0;
  return n;
}

SuiteResult run_suite(Suite suite, const RunConfig& cfg, std::ostream& log) {
  SuiteResult r;
  r.suite = suite;
  const auto t0 = std::chrono::steady_clock::now();
  switch (suite) {
    case Suite::appendix: suite_appendix(cfg, r, log); break;
    case Suite::chain: suite_chain(cfg, r, log); break;
    case Suite::closed_form: suite_closed_form(cfg, r, log); break;
    case Suite::reciprocity: suite_reciprocity(cfg, r, log); break;
    case Suite::bump: suite_bump(cfg, r, log); break;
    case Suite::all: throw std::logic_error("run_suite: expand `all` first");
  }
  apply_forced_failures(cfg, r);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<std::filesystem::path> write_reports(const SuiteResult& r, const RunConfig& cfg) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec || !fs::is_directory(cfg.output_dir))
    throw ConfigError("cannot create output directory " + cfg.output_dir.string());
  const std::string name = suite_name(r.suite);
  std::vector<fs::path> written;
  auto open = [&](const fs::path& p) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + p.string());
    written.push_back(p);
    return f;
  };
  const ojson summary = summary_json(r, cfg);
  if (cfg.format == Format::json_lines) {
    auto f = open(cfg.output_dir / (name + ".jsonl"));
    for (const auto& c : r.checks) f << check_json(c, name).dump() << '\n';
    for (const auto& b : r.bumps) f << bump_json(b, name).dump() << '\n';
    f << summary.dump() << '\n';
  } else {
    auto f = open(cfg.output_dir / (name + ".csv"));
    if (r.suite == Suite::bump) {
      f << csv_header(bump_fields());
      for (const auto& b : r.bumps) f << csv_row(bump_json(b, name), bump_fields());
    } else {
      f << csv_header(check_fields());
      for (const auto& c : r.checks) f << csv_row(check_json(c, name), check_fields());
    }
    auto s = open(cfg.output_dir / (name + "_summary.csv"));
    s << "key,value\n";
    for (const auto& [k, type] : summary_fields()) s << k << ',' << csv_value(summary.at(k)) << '\n';
  }
  return written;
}

int run(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  std::vector<Suite> suites;
  if (cfg.suite == Suite::all)
    suites = {Suite::appendix, Suite::chain, Suite::closed_form, Suite::reciprocity, Suite::bump};
  else
    suites = {cfg.suite};
  bool ok = true;
  for (Suite s : suites) {
    const SuiteResult r = run_suite(s, cfg, log);
    const auto files = write_reports(r, cfg);
    for (const auto& c : r.checks)
      if (!c.pass) log << "FAIL " << c.id << " seed " << c.seed << (c.diagnostic.empty() ? "" : ": " + c.diagnostic) << "\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %d/%d passed in %.1fs -> %s\n", suite_name(s).c_str(), r.passed(), r.total(),
                  r.wall_time, files.empty() ? "" : files.front().string().c_str());
    log << buf;
    ok = ok && r.all_pass();
  }
  return ok ? kExitPass : kExitFail;
}

std::string report_schema() {
  std::ostringstream o;
  o << "json_lines: one UTF-8 JSON object per line, fields in the order below; the summary\n"
       "record is the last line of each file.\n"
       "csv: <suite>.csv with a header row in the order below, complex fields split into\n"
       "<name>_re,<name>_im; params is the JSON object as one quoted field; floats use %.17g.\n"
       "The summary goes to <suite>_summary.csv as key,value rows (arrays and objects as JSON).\n"
       "complex: {\"re\": float, \"im\": float}\n"
       "Files are byte-identical for identical configurations except the summary timestamp.\n";
  auto block = [&](const char* title, const std::vector<std::pair<std::string, std::string>>& f) {
    o << "\n[" << title << "]\n";
    for (const auto& [name, type] : f) o << "  " << name << ": " << type << "\n";
  };
  block("check", check_fields());
  block("bump", bump_fields());
  block("summary", summary_fields());
  o << "\ntolerance names for --tol:";
  for (const auto& n : tolerance_names()) o << ' ' << n;
  o << '\n';
  return o.str();
}

}  // namespace rsv::sweep
