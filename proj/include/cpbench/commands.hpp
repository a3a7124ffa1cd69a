#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cpbench/metrics.hpp"
#include "cpbench/model_core.hpp"
#include "cpbench/ortho_theory.hpp"
#include "cpbench/sim_gen.hpp"
#include "cpbench/svs.hpp"

// Command layer behind the cpbench CLI. Every command writes its output files
// plus a manifest sufficient to re-run it bit-identically.
namespace cpbench::bench {

const char* version();

// ---- key=value config binding ----
SimScenario scenario_from_config(const std::map<std::string, std::string>& kv);
std::vector<std::pair<std::string, std::string>> scenario_to_config(const SimScenario& sc);
SvsConfig svs_from_config(const std::map<std::string, std::string>& kv);
std::vector<std::pair<std::string, std::string>> svs_to_config(const SvsConfig& cfg);

struct CommonOptions {
  std::string out_dir;
  std::uint64_t seed = 1;
  int reps = 100;
  int threads = 0;  // 0 = hardware concurrency
  std::string invocation;
};

// ---- single replication of the four-method benchmark ----
struct RepResult {
  bool ok = false;
  std::string error;
  std::vector<ReplicationRecord> records;  // LARS, svsCp, svsBMA, Step
  // per-dimension Cp values (index = k), filled when want_curves
  std::vector<double> lars_cp;
  std::vector<double> svs_cp;
};

RepResult run_replication(const SimScenario& sc, const SvsConfig& svs,
                          std::uint64_t rep_id, bool want_curves);

// replication stream id for rho-setting block s and replication r
std::uint64_t rep_stream_id(int setting, int rep);

void cmd_table1(const CommonOptions& opt, const SimScenario& base,
                const SvsConfig& svs, const std::vector<double>& rhos);

void cmd_cp_curves(const CommonOptions& opt, const SimScenario& base,
                   const SvsConfig& svs, const std::vector<double>& rhos,
                   double flatness_threshold);

void cmd_simulate(const CommonOptions& opt, const SimScenario& base);

struct DiabetesOptions {
  std::string csv_path;
  bool quadratic = false;
};

void cmd_diabetes(const CommonOptions& opt, const DiabetesOptions& dopt,
                  const SvsConfig& svs);

void cmd_theory(const CommonOptions& opt, OverfitParams params);

// Main effects plus all pairwise interactions (named a.b) plus squares of the
// non-binary columns (named a.2).
std::pair<Mat, std::vector<std::string>> quadratic_expansion(
    const Mat& x, const std::vector<std::string>& names);

// Single-curve export, columns k,rss,cp (round-trip exact).
void write_cp_curve_csv(const std::string& path, const CpCurve& curve);

}  // namespace cpbench::bench
