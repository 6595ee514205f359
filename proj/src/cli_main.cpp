#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "rsverify/sweep.hpp"

namespace {

struct Flags {
  std::string seed, config, out, format, t_values;
  int samples = 0, parallelism = 0;
  bool hard = false;
  std::vector<std::string> tols, force_fail;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, "base seed (falls back to RK_SEED)");
  sub->add_option("--samples", f.samples, "draws per identity / number of random points");
  sub->add_option("--tol", f.tols, "tolerance override name=value (repeatable)");
  sub->add_option("--parallelism", f.parallelism, "worker threads");
  sub->add_option("--out", f.out, "output directory (default reports)");
  sub->add_option("--format", f.format, "json or csv");
  sub->add_flag("--hard", f.hard, "wider parameter boxes for the appendix draws");
  sub->add_option("--config", f.config, "key=value config file; flags win");
  sub->add_option("--force-fail", f.force_fail, "report the given check id as failed")->group("");
}

rsv::sweep::RunConfig build(CLI::App* sub, const Flags& f, rsv::sweep::Suite suite) {
  using namespace rsv::sweep;
  RunConfig cfg;
  cfg.suite = suite;
  if (const char* env = std::getenv("RK_SEED"); env && *env) cfg.seed = parse_seed(env);
  if (!f.config.empty()) apply_config(cfg, read_config_file(f.config));
  auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
  if (given("--seed")) cfg.seed = parse_seed(f.seed);
  if (given("--samples")) cfg.samples = f.samples;
  if (given("--parallelism")) cfg.parallelism = f.parallelism;
  if (given("--out")) cfg.output_dir = f.out;
  if (given("--format")) {
    auto fm = parse_format(f.format);
    if (!fm) throw ConfigError("--format: expected json or csv, got '" + f.format + "'");
    cfg.format = *fm;
  }
  if (given("--hard")) cfg.hard = f.hard;
  if (given("--t-values")) cfg.t_values = parse_list(f.t_values);
  for (const auto& t : f.tols) {
    auto [k, v] = parse_tol(t);
    cfg.tol_overrides[k] = v;
  }
  cfg.force_fail = f.force_fail;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rsv::sweep;
  CLI::App app{"rsverify: numerical checks of the model bilinear form and its ingredients"};
  app.require_subcommand(1);
  Flags flags;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  std::vector<std::pair<CLI::App*, Suite>> leaves;
  for (const auto& [name, suite] : std::vector<std::pair<std::string, Suite>>{{"appendix", Suite::appendix},
                                                                              {"chain", Suite::chain},
                                                                              {"closed-form", Suite::closed_form},
                                                                              {"reciprocity", Suite::reciprocity},
                                                                              {"all", Suite::all}}) {
    auto* s = verify->add_subcommand(name, "verify " + name);
    add_common(s, flags);
    leaves.emplace_back(s, suite);
  }
  auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
  sweep->require_subcommand(1);
  auto* bump = sweep->add_subcommand("bump", "bump-function scaling in T");
  add_common(bump, flags);
  bump->add_option("--t-values", flags.t_values, "comma separated T values (default 8,16,32,64)");
  leaves.emplace_back(bump, Suite::bump);
  auto* schema = app.add_subcommand("schema", "print the report schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (schema->parsed()) {
    std::cout << report_schema();
    return kExitPass;
  }
  for (auto& [sub, suite] : leaves) {
    if (!sub->parsed()) continue;
    try {
      const RunConfig cfg = build(sub, flags, suite);
      return run(cfg, std::cout);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitFail;
    }
  }
  return kExitConfig;
}
