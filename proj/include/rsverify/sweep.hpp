#pragma once

// Suite runner behind the command line tool: configuration, report records and
// the exit-status contract.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsverify/report.hpp"

namespace rsv::sweep {

enum class Suite { appendix, chain, closed_form, reciprocity, bump, all };
enum class Format { json_lines, csv };

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Suite suite = Suite::appendix;
  std::int64_t seed = 0;
  std::optional<int> samples;  // suite default when unset
  std::map<std::string, double> tol_overrides;
  int parallelism = 1;
  std::filesystem::path output_dir = "reports";
  Format format = Format::json_lines;
  bool hard = false;
  std::vector<double> t_values = {8.0, 16.0, 32.0, 64.0};
  // injected failures for the exit-status tests: ids listed here are reported
  // as failed regardless of their result
  std::vector<std::string> force_fail;

  void validate() const;
};

std::optional<Suite> parse_suite(const std::string& s);
std::string suite_name(Suite s);
std::optional<Format> parse_format(const std::string& s);

// Flat key=value lines, # comments. Keys: seed, samples, parallelism, out,
// format, hard, t-values, tol.<name>. Throws ConfigError.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);
// Applies the entries to cfg (unknown keys and bad values throw ConfigError).
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& entries);

// "name=value"
std::pair<std::string, double> parse_tol(const std::string& s);
std::vector<double> parse_list(const std::string& s);
std::int64_t parse_seed(const std::string& s);

// Tolerance names accepted by --tol.
std::vector<std::string> tolerance_names();

struct BumpRecord {
  std::string run;
  double T = 0.0;
  Complex value;
  double abs_value = 0.0;
  double scaled = 0.0;  // |value| T^{3/2}
  double error_estimate = 0.0;
  std::string diagnostic;
};

struct SlopeRecord {
  std::string run;
  double slope = 0.0;
  double intercept = 0.0;
  bool pass = false;
};

struct SuiteResult {
  Suite suite = Suite::appendix;
  std::vector<IdentityReport> checks;
  std::vector<BumpRecord> bumps;
  std::vector<SlopeRecord> slopes;
  std::optional<double> c;
  std::optional<double> spread;
  double wall_time = 0.0;

  int total() const;
  int passed() const;
  bool all_pass() const { return passed() == total(); }
};

// Runs one suite (not `all`). Never throws for failed checks.
SuiteResult run_suite(Suite suite, const RunConfig& cfg, std::ostream& log);

// Writes <out>/<suite>.jsonl, or <suite>.csv plus <suite>_summary.csv.
// Returns the paths written.
std::vector<std::filesystem::path> write_reports(const SuiteResult& r, const RunConfig& cfg);

// Runs the configured suite(s), writes reports, returns the exit status.
int run(const RunConfig& cfg, std::ostream& log);

std::string report_schema();

}  // namespace rsv::sweep
