// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "rsverify/sweep.hpp"

using namespace rsv::sweep;

namespace {

int failures = 0;

void line(int n, bool pass, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", n, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

struct Count {
  int total = 0, passed = 0;
  double worst = 0.0;
};

Count count(const SuiteResult& r, const std::string& prefix) {
  Count c;
  for (const auto& x : r.checks)
    if (x.id.rfind(prefix, 0) == 0) {
      ++c.total;
      c.passed += x.pass ? 1 : 0;
      if (std::isfinite(x.rel_err)) c.worst = std::max(c.worst, x.rel_err);
    }
  return c;
}

}  // namespace

int main() {
  std::ostringstream log;
  RunConfig cfg;
  cfg.seed = 7;

  {
    cfg.samples = 20;
    const auto r = run_suite(Suite::appendix, cfg, log);
    line(1, r.all_pass() && r.total() == 160 && r.wall_time <= 300.0,
         fmt("appendix identities %.0f/%.0f draws pass, worst rel err %.1e, %.1fs (limit 300s)", r.passed(), r.total(),
             count(r, "A").worst, r.wall_time));
  }
  {
    const auto r = run_suite(Suite::chain, cfg, log);
    const Count pairs = count(r, "chain_");
    int pair_total = 0, pair_pass = 0;
    double worst = 0.0;
    for (const auto& x : r.checks)
      if (x.id.size() > 6 && std::isdigit(static_cast<unsigned char>(x.id[6]))) {
        ++pair_total;
        pair_pass += x.pass ? 1 : 0;
        worst = std::max(worst, x.rel_err);
      }
    line(2, pair_total == 27 && pair_pass == 27 && pairs.passed == pairs.total && r.wall_time <= 1800.0,
         fmt("proof chain %.0f/%.0f consecutive pairs within the ladder at 3 points, worst rel diff %.1e, %.0fs (limit 1800s)",
             pair_pass, pair_total, worst, r.wall_time) +
             fmt(", side checks %.0f/%.0f", pairs.passed - pair_pass, pairs.total - pair_total));
  }
  {
    const auto r = run_suite(Suite::closed_form, cfg, log);
    const Count cal = count(r, "calibration_ratio");
    const Count spread = count(r, "calibration_spread");
    line(3, spread.total == 1 && spread.passed == 1 && cal.total >= 6 && cal.passed == cal.total,
         fmt("calibration spread %.1e over %.0f points (limit 1e-3), c = %.8f, pi^1.5 = %.8f", r.spread.value_or(NAN),
             cal.total, r.c.value_or(NAN), std::pow(M_PI, 1.5)));
    const Count g = count(r, "gamma_half_line_modulus");
    const Count s = count(r, "stade_gamma_unit");
    line(6, g.total == 200 && g.passed == 200 && s.passed == 1,
         fmt("|Gamma(1/2+iy)|^2 cosh(pi y) = pi at %.0f points, worst rel err %.1e; stade_gamma(0,0,1) rel err %.1e",
             g.total, g.worst, s.worst));
  }
  {
    cfg.samples = 50;
    const auto r = run_suite(Suite::reciprocity, cfg, log);
    line(4, r.all_pass() && r.total() == 50,
         fmt("reciprocity modulus constant over %.0f random points, relative spread %.1e (limit 1e-10)", r.total(),
             r.spread.value_or(NAN)));
  }
  {
    const auto r = run_suite(Suite::bump, cfg, log);
    bool ok = r.slopes.size() == 2 && r.wall_time <= 600.0;
    std::string what = "bump scaling fitted slopes";
    for (const auto& s : r.slopes) {
      ok = ok && s.pass;
      what += " " + s.run + fmt(" %.4f", s.slope);
    }
    line(5, ok, what + fmt(" (target -1.5 +- 0.1) over T = 8..64, %.1fs (limit 600s)", r.wall_time));
  }
  std::printf("[INFO] criterion 7: the spectral second-moment theorems need Maass spectra and Hecke data and are not "
              "reproduced; criteria 2-5 check the analytic ingredients instead\n");
  return failures == 0 ? 0 : 1;
}
