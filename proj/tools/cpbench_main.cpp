// cpbench: variable-selection benchmark CLI.
// Subcommands: simulate, table1, cp-curves, diabetes, theory.
// Exit codes: 0 success, 1 usage, 2 data error, 3 invariant violation.

#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "cpbench/commands.hpp"
#include "cpbench/errors.hpp"
#include "cpbench/io.hpp"
#include "cpbench/kernels.hpp"

using namespace cpbench;

namespace {

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

struct CliState {
  std::string config_path;
  std::string svs_config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int reps = 0;  // 0 = take config value or default
  int threads = 0;
  std::string rho_choice = "both";
  bool seed_set = false, reps_set = false;

  SimScenario scenario(int default_reps, int* reps_out) const {
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) kv = io::read_config(config_path);
    SimScenario sc = bench::scenario_from_config(kv);
    int reps_val = default_reps;
    if (kv.count("reps")) reps_val = static_cast<int>(std::stoll(kv.at("reps")));
    if (reps_set) reps_val = reps;
    if (reps_val < 1) throw DataError("reps must be >= 1");
    *reps_out = reps_val;
    if (seed_set || !kv.count("seed")) sc.seed = seed;
    return sc;
  }

  SvsConfig svs() const {
    if (svs_config_path.empty()) return SvsConfig{};
    return bench::svs_from_config(io::read_config(svs_config_path));
  }

  std::vector<double> rhos(double config_rho) const {
    if (rho_choice == "0") return {0.0};
    if (rho_choice == "0.9") return {0.9};
    if (rho_choice == "both") return {0.0, 0.9};
    return {config_rho};  // "config"
  }

  bench::CommonOptions common(const std::string& invocation, std::uint64_t seed_val,
                              int reps_val) const {
    bench::CommonOptions opt;
    opt.out_dir = out_dir;
    opt.seed = seed_val;
    opt.reps = reps_val;
    opt.threads = threads;
    opt.invocation = invocation;
    return opt;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-selection benchmark: LARS, forward stepwise and "
               "spike-and-slab SVS under the Cp stopping rule"};
  app.set_version_flag("--version", std::string(bench::version()));
  app.require_subcommand(1);

  CliState st;
  const std::string invocation = join_args(argc, argv);

  auto add_common = [&](CLI::App* cmd, bool with_rho) {
    cmd->add_option("--config", st.config_path, "scenario config file (key = value)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", st.seed, "global seed")->trigger_on_parse();
    cmd->add_option("--reps", st.reps, "replications")->check(CLI::PositiveNumber);
    cmd->add_option("--out", st.out_dir, "output directory");
    cmd->add_option("--threads", st.threads, "worker threads (0 = auto)");
    if (with_rho)
      cmd->add_option("--rho", st.rho_choice, "correlation setting")
          ->check(CLI::IsMember({"0", "0.9", "both", "config"}));
  };

  CLI::App* c_sim = app.add_subcommand("simulate", "write simulated datasets + ground truth");
  add_common(c_sim, true);
  st.rho_choice = "config";  // simulate defaults to the configured rho

  CLI::App* c_table = app.add_subcommand("table1", "four-method selection benchmark");
  add_common(c_table, true);
  c_table->add_option("--svs-config", st.svs_config_path, "SVS sampler config file")
      ->check(CLI::ExistingFile);

  CLI::App* c_curves = app.add_subcommand("cp-curves", "mean Cp curves per method");
  add_common(c_curves, true);
  c_curves->add_option("--svs-config", st.svs_config_path, "SVS sampler config file")
      ->check(CLI::ExistingFile);
  double flatness_threshold = 0.05;
  c_curves->add_option("--flatness-threshold", flatness_threshold,
                       "relative Cp spread reported as flat");

  CLI::App* c_diab = app.add_subcommand("diabetes", "Cp curves for a named-column CSV");
  std::string csv_path, model = "main";
  c_diab->add_option("--csv", csv_path, "dataset CSV (named covariates, response last)")
      ->required()
      ->check(CLI::ExistingFile);
  c_diab->add_option("--model", model, "design")->check(CLI::IsMember({"main", "quadratic"}));
  c_diab->add_option("--svs-config", st.svs_config_path, "SVS sampler config file")
      ->check(CLI::ExistingFile);
  c_diab->add_option("--seed", st.seed, "global seed");
  c_diab->add_option("--out", st.out_dir, "output directory");

  CLI::App* c_theory = app.add_subcommand("theory", "random orthogonal design experiments");
  OverfitParams tparams;
  c_theory->add_option("--m", tparams.m, "design columns");
  c_theory->add_option("--n", tparams.n, "observations");
  c_theory->add_option("--k0", tparams.k0, "true dimension");
  c_theory->add_option("--signal-scale", tparams.signal_scale, "magnitude multiplier");
  c_theory->add_option("--k-probe", tparams.k_probe, "gap probe dimension (> k0)");
  c_theory->add_option("--seed", st.seed, "global seed");
  c_theory->add_option("--reps", st.reps, "replications")->check(CLI::PositiveNumber);
  c_theory->add_option("--out", st.out_dir, "output directory");

  // track explicit flags so config-file values keep their precedence rules
  for (CLI::App* cmd : {c_sim, c_table, c_curves}) {
    cmd->callback([&st, cmd]() {
      st.seed_set = cmd->count("--seed") > 0;
      st.reps_set = cmd->count("--reps") > 0;
    });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_sim)) {
      int reps = 0;
      SimScenario sc = st.scenario(1, &reps);
      const auto rhos = st.rhos(sc.rho);
      if (rhos.size() != 1)
        throw DataError("simulate: pick one rho setting (--rho 0, 0.9 or config)");
      sc.rho = rhos[0];
      bench::cmd_simulate(st.common(invocation, sc.seed, reps), sc);
    } else if (app.got_subcommand(c_table)) {
      int reps = 0;
      SimScenario sc = st.scenario(100, &reps);
      bench::cmd_table1(st.common(invocation, sc.seed, reps), sc, st.svs(),
                        st.rhos(sc.rho));
    } else if (app.got_subcommand(c_curves)) {
      int reps = 0;
      SimScenario sc = st.scenario(100, &reps);
      bench::cmd_cp_curves(st.common(invocation, sc.seed, reps), sc, st.svs(),
                           st.rhos(sc.rho), flatness_threshold);
    } else if (app.got_subcommand(c_diab)) {
      bench::DiabetesOptions dopt;
      dopt.csv_path = csv_path;
      dopt.quadratic = (model == "quadratic");
      bench::cmd_diabetes(st.common(invocation, st.seed, 1), dopt, st.svs());
    } else if (app.got_subcommand(c_theory)) {
      const int reps = st.reps > 0 ? st.reps : 100;
      bench::cmd_theory(st.common(invocation, st.seed, reps), tparams);
    }
  } catch (const InvariantError& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return 3;
  } catch (const DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 3;
  }
  return 0;
}
