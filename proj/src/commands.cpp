#include "cpbench/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>

#include "cpbench/dataset.hpp"
#include "cpbench/errors.hpp"
#include "cpbench/io.hpp"
#include "cpbench/lars.hpp"
#include "cpbench/manifest.hpp"
#include "cpbench/parallel.hpp"
#include "cpbench/stepwise.hpp"

namespace fs = std::filesystem;

namespace cpbench::bench {

const char* version() { return CPBENCH_VERSION; }

// ---------------------------------------------------------------- config

namespace {

double parse_double(const std::string& key, const std::string& val) {
  char* end = nullptr;
  const double v = std::strtod(val.c_str(), &end);
  if (end == val.c_str() || *end != '\0')
    throw DataError("config: key '" + key + "' is not a number: " + val);
  return v;
}

long long parse_int(const std::string& key, const std::string& val) {
  char* end = nullptr;
  const long long v = std::strtoll(val.c_str(), &end, 10);
  if (end == val.c_str() || *end != '\0')
    throw DataError("config: key '" + key + "' is not an integer: " + val);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& val) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(val.c_str(), &end, 10);
  if (end == val.c_str() || *end != '\0')
    throw DataError("config: key '" + key + "' is not an unsigned integer: " + val);
  return v;
}

void check_keys(const std::map<std::string, std::string>& kv,
                const std::set<std::string>& allowed, const char* what) {
  for (const auto& [k, _] : kv)
    if (!allowed.count(k))
      throw DataError(std::string("config: unknown ") + what + " key '" + k + "'");
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

}  // namespace

SimScenario scenario_from_config(const std::map<std::string, std::string>& kv) {
  check_keys(kv,
             {"n", "m", "rho", "spacing", "h", "exponent", "r2", "sigma2", "seed",
              "reps", "literal_form"},
             "scenario");
  SimScenario sc;
  if (kv.count("n")) sc.n = static_cast<int>(parse_int("n", kv.at("n")));
  if (kv.count("m")) sc.m = static_cast<int>(parse_int("m", kv.at("m")));
  if (kv.count("rho")) sc.rho = parse_double("rho", kv.at("rho"));
  if (kv.count("spacing"))
    sc.cluster_spacing = static_cast<int>(parse_int("spacing", kv.at("spacing")));
  if (kv.count("h"))
    sc.cluster_halfwidth = static_cast<int>(parse_int("h", kv.at("h")));
  if (kv.count("exponent")) sc.exponent = parse_double("exponent", kv.at("exponent"));
  if (kv.count("r2")) sc.target_r2 = parse_double("r2", kv.at("r2"));
  if (kv.count("sigma2")) sc.noise_sigma2 = parse_double("sigma2", kv.at("sigma2"));
  if (kv.count("seed")) sc.seed = parse_u64("seed", kv.at("seed"));
  if (kv.count("literal_form"))
    sc.literal_offset_form = parse_int("literal_form", kv.at("literal_form")) != 0;
  sc.validate();
  return sc;
}

std::vector<std::pair<std::string, std::string>> scenario_to_config(
    const SimScenario& sc) {
  return {{"n", std::to_string(sc.n)},
          {"m", std::to_string(sc.m)},
          {"rho", io::format_double(sc.rho)},
          {"spacing", std::to_string(sc.cluster_spacing)},
          {"h", std::to_string(sc.cluster_halfwidth)},
          {"exponent", io::format_double(sc.exponent)},
          {"r2", io::format_double(sc.target_r2)},
          {"sigma2", io::format_double(sc.noise_sigma2)},
          {"seed", std::to_string(sc.seed)},
          {"literal_form", sc.literal_offset_form ? "1" : "0"}};
}

SvsConfig svs_from_config(const std::map<std::string, std::string>& kv) {
  check_keys(kv,
             {"v0", "v1", "inclusion_a", "inclusion_b", "noise_shape", "noise_scale",
              "iterations", "burn_in", "seed"},
             "svs");
  SvsConfig cfg;
  if (kv.count("v0")) cfg.spike_variance = parse_double("v0", kv.at("v0"));
  if (kv.count("v1")) cfg.slab_variance = parse_double("v1", kv.at("v1"));
  if (kv.count("inclusion_a"))
    cfg.inclusion_a = parse_double("inclusion_a", kv.at("inclusion_a"));
  if (kv.count("inclusion_b"))
    cfg.inclusion_b = parse_double("inclusion_b", kv.at("inclusion_b"));
  if (kv.count("noise_shape"))
    cfg.noise_shape = parse_double("noise_shape", kv.at("noise_shape"));
  if (kv.count("noise_scale"))
    cfg.noise_scale = parse_double("noise_scale", kv.at("noise_scale"));
  if (kv.count("iterations"))
    cfg.iterations = static_cast<int>(parse_int("iterations", kv.at("iterations")));
  if (kv.count("burn_in"))
    cfg.burn_in = static_cast<int>(parse_int("burn_in", kv.at("burn_in")));
  if (kv.count("seed")) cfg.seed = parse_u64("seed", kv.at("seed"));
  cfg.validate();
  return cfg;
}

std::vector<std::pair<std::string, std::string>> svs_to_config(const SvsConfig& cfg) {
  return {{"v0", io::format_double(cfg.spike_variance)},
          {"v1", io::format_double(cfg.slab_variance)},
          {"inclusion_a", io::format_double(cfg.inclusion_a)},
          {"inclusion_b", io::format_double(cfg.inclusion_b)},
          {"noise_shape", io::format_double(cfg.noise_shape)},
          {"noise_scale", io::format_double(cfg.noise_scale)},
          {"iterations", std::to_string(cfg.iterations)},
          {"burn_in", std::to_string(cfg.burn_in)},
          {"seed", std::to_string(cfg.seed)}};
}

// ---------------------------------------------------------------- one rep

std::uint64_t rep_stream_id(int setting, int rep) {
  return (static_cast<std::uint64_t>(setting) << 40) | static_cast<std::uint64_t>(rep);
}

namespace {

ReplicationRecord make_record(const char* method, std::span<const int> selected,
                              std::span<const double> mu_hat, const Dataset& d) {
  std::vector<int> truth;
  for (std::size_t j = 0; j < d.beta_true.size(); ++j)
    if (d.beta_true[j] != 0.0) truth.push_back(static_cast<int>(j));
  const ConfusionCounts c =
      confusion_counts(selected, truth, static_cast<int>(d.m()));
  ReplicationRecord r;
  r.method = method;
  r.m_hat = static_cast<double>(selected.size());
  r.pe = proportion_explained(mu_hat, d.mu_true);
  r.total_miss = static_cast<double>(total_miss(c));
  r.fdr = fdr(c);
  r.fnr = fnr(c);
  return r;
}

std::vector<double> curve_to_dense(const CpCurve& curve) {
  std::vector<double> cp;
  for (const CpEntry& e : curve.entries) {
    if (static_cast<int>(cp.size()) != e.k) break;  // truncated paths stay dense
    cp.push_back(e.cp);
  }
  return cp;
}

}  // namespace

RepResult run_replication(const SimScenario& sc, const SvsConfig& svs,
                          std::uint64_t rep_id, bool want_curves) {
  RepResult out;
  try {
    const Dataset d = simulate_dataset(sc, rep_id);
    const StandardizedDataset sd = standardize(d);
    const Sigma2Estimate s2 = estimate_sigma2_full(sd);
    if (s2.degenerate)
      throw DataError("replication: degenerate zero residual variance");
    const int max_k = static_cast<int>(std::min(sd.m(), sd.n() - 1));
    const std::size_t n = sd.n();

    // LARS
    {
      const PathFit path = lars_path(sd, max_k);
      const CpCurve curve = path_cp_curve(path, s2.value, n);
      const Selection sel = select_min_cp(curve, path);
      out.records.push_back(make_record(
          "LARS", sel.selected,
          path.steps[static_cast<std::size_t>(sel.k_hat)].mu_hat, d));
      if (want_curves) out.lars_cp = curve_to_dense(curve);
    }

    // SVS: ranked Cp and model averaging from one chain
    {
      SvsConfig cfg = svs;
      cfg.seed = sc.seed;
      cfg.chain_id = rep_id;
      const PosteriorSummary post = svs_gibbs(sd, cfg);
      const std::vector<int> ranking = rank_covariates(post);
      const PathFit rpath = ranked_prefix_path(sd, ranking, max_k);
      const CpCurve rcurve = path_cp_curve(rpath, s2.value, n);
      const Selection rsel = select_min_cp(rcurve, rpath);
      out.records.push_back(make_record(
          "svsCp", rsel.selected,
          rpath.steps[static_cast<std::size_t>(rsel.k_hat)].mu_hat, d));
      if (want_curves) out.svs_cp = curve_to_dense(rcurve);

      std::vector<int> all(sd.m());
      std::iota(all.begin(), all.end(), 0);
      const std::vector<double> bma_mu = svs_bma_predict(post, sd);
      out.records.push_back(make_record("svsBMA", all, bma_mu, d));
    }

    // forward stepwise
    {
      const PathFit path = forward_stepwise_path(sd, max_k);
      const CpCurve curve = path_cp_curve(path, s2.value, n);
      const Selection sel = select_min_cp(curve, path);
      out.records.push_back(make_record(
          "Step", sel.selected,
          path.steps[static_cast<std::size_t>(sel.k_hat)].mu_hat, d));
    }

    out.ok = true;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
    out.records.clear();
  }
  return out;
}

// ---------------------------------------------------------------- helpers

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string rho_tag(double rho) {
  std::string s = io::format_double(rho);
  std::string out;
  for (char c : s) out += (c == '.') ? '_' : c;
  return out;
}

void finish_manifest(const CommonOptions& opt, const std::string& command,
                     const std::vector<std::pair<std::string, std::string>>& config,
                     const std::vector<std::string>& rep_streams,
                     const std::vector<std::string>& files, double wall_seconds) {
  RunManifest man;
  man.command = command;
  man.invocation = opt.invocation;
  man.version = version();
  man.seed = opt.seed;
  man.reps = opt.reps;
  man.threads = opt.threads;
  man.config = config;
  man.rep_streams = rep_streams;
  man.wall_clock_seconds = wall_seconds;
  for (const std::string& f : files)
    man.outputs.emplace_back(f, sha256_hex_file((fs::path(opt.out_dir) / f).string()));
  write_manifest((fs::path(opt.out_dir) / "manifest.txt").string(), man);
}

int resolve_threads(const CommonOptions& opt) {
  return opt.threads > 0 ? opt.threads : default_thread_count();
}

struct ReferenceRow {
  const char* method;
  double m_hat, pe, total_miss, fdr, fnr;
};

// published benchmark values for the default scenario, per rho setting
const std::vector<std::pair<double, std::vector<ReferenceRow>>> kReferenceMetrics = {
    {0.0,
     {{"LARS", 210.69, 0.907, 126.63, 0.547, 0.055},
      {"svsCp", 126.66, 0.887, 61.14, 0.323, 0.072},
      {"svsBMA", 400.00, 0.918, 295.00, 0.737, 0.000},
      {"Step", 135.53, 0.876, 70.35, 0.367, 0.075}}},
    {0.9,
     {{"LARS", 99.51, 0.962, 75.77, 0.347, 0.135},
      {"svsCp", 58.86, 0.952, 66.38, 0.153, 0.164},
      {"svsBMA", 400.00, 0.966, 295.00, 0.737, 0.000},
      {"Step", 129.24, 0.884, 137.10, 0.552, 0.208}}}};

}  // namespace

// ---------------------------------------------------------------- table1

void cmd_table1(const CommonOptions& opt, const SimScenario& base,
                const SvsConfig& svs, const std::vector<double>& rhos) {
  if (opt.reps < 1) throw DataError("table1: reps must be >= 1");
  Timer timer;
  fs::create_directories(opt.out_dir);
  const int threads = resolve_threads(opt);

  std::vector<std::string> rep_stream_notes;
  std::vector<std::vector<double>> reps_csv;
  std::vector<std::vector<std::string>> metrics_csv;
  std::ostringstream table_txt, cmp_txt;

  table_txt << "selection metrics averaged over replications\n";
  table_txt << "n=" << base.n << " m=" << base.m << " nonzero="
            << base.nonzero_count() << " target_r2=" << io::format_double(base.target_r2)
            << " seed=" << opt.seed << " reps=" << opt.reps << "\n";
  cmp_txt << "per-cell deviation from the published reference values (run - ref)\n";

  for (std::size_t s = 0; s < rhos.size(); ++s) {
    SimScenario sc = base;
    sc.rho = rhos[s];
    sc.seed = opt.seed;
    sc.validate();

    std::vector<RepResult> results(static_cast<std::size_t>(opt.reps));
    parallel_for(opt.reps, threads, [&](int r) {
      results[static_cast<std::size_t>(r)] =
          run_replication(sc, svs, rep_stream_id(static_cast<int>(s), r), false);
    });

    std::vector<ReplicationRecord> records;
    std::vector<std::string> failures;
    for (int r = 0; r < opt.reps; ++r) {
      const RepResult& res = results[static_cast<std::size_t>(r)];
      rep_stream_notes.push_back("rho=" + io::format_double(sc.rho) + " rep " +
                                 std::to_string(r) + ": stream_id=" +
                                 std::to_string(rep_stream_id(static_cast<int>(s), r)));
      if (!res.ok) {
        failures.push_back("rho=" + io::format_double(sc.rho) + " rep " +
                           std::to_string(r) + ": " + res.error);
        continue;
      }
      for (const ReplicationRecord& rec : res.records) {
        records.push_back(rec);
        double method_idx = 0;  // numeric method id for the per-rep csv
        if (rec.method == "svsCp") method_idx = 1;
        else if (rec.method == "svsBMA") method_idx = 2;
        else if (rec.method == "Step") method_idx = 3;
        reps_csv.push_back({sc.rho, static_cast<double>(r), method_idx, rec.m_hat,
                            rec.pe, rec.total_miss, rec.fdr, rec.fnr});
      }
    }
    if (records.empty())
      throw DataError("table1: every replication failed for rho=" +
                      io::format_double(sc.rho));
    const std::vector<MetricsRow> rows = aggregate_replications(records);

    table_txt << "\nrho = " << io::format_double(sc.rho) << "\n";
    table_txt << "method    reps     m_hat        pe  TotalMiss       FDR       FNR\n";
    for (const MetricsRow& row : rows) {
      char line[160];
      std::snprintf(line, sizeof(line), "%-8s %5d %9.2f %9.3f %10.2f %9.3f %9.3f\n",
                    row.method.c_str(), row.reps, row.m_hat, row.pe, row.total_miss,
                    row.fdr, row.fnr);
      table_txt << line;
      metrics_csv.push_back({io::format_double(sc.rho), row.method,
                             std::to_string(row.reps), io::format_double(row.m_hat),
                             io::format_double(row.se_m_hat), io::format_double(row.pe),
                             io::format_double(row.se_pe),
                             io::format_double(row.total_miss),
                             io::format_double(row.se_total_miss),
                             io::format_double(row.fdr), io::format_double(row.se_fdr),
                             io::format_double(row.fnr), io::format_double(row.se_fnr)});
    }
    for (const std::string& f : failures) table_txt << "failed: " << f << "\n";

    // comparison block when reference values exist for this rho
    for (const auto& [ref_rho, ref_rows] : kReferenceMetrics) {
      if (std::abs(ref_rho - sc.rho) > 1e-12) continue;
      cmp_txt << "\nrho = " << io::format_double(sc.rho) << "\n";
      cmp_txt << "method    metric          run        ref      delta\n";
      for (const ReferenceRow& ref : ref_rows) {
        const auto it = std::find_if(rows.begin(), rows.end(), [&](const MetricsRow& r) {
          return r.method == ref.method;
        });
        if (it == rows.end()) continue;
        const std::pair<const char*, std::pair<double, double>> cells[] = {
            {"m_hat", {it->m_hat, ref.m_hat}},
            {"pe", {it->pe, ref.pe}},
            {"TotalMiss", {it->total_miss, ref.total_miss}},
            {"FDR", {it->fdr, ref.fdr}},
            {"FNR", {it->fnr, ref.fnr}}};
        for (const auto& [metric, vals] : cells) {
          char line[160];
          std::snprintf(line, sizeof(line), "%-8s %-10s %10.3f %10.3f %+10.3f\n",
                        ref.method, metric, vals.first, vals.second,
                        vals.first - vals.second);
          cmp_txt << line;
        }
      }
    }
  }

  const std::vector<std::string> rep_header = {"rho",       "rep",  "method_id",
                                               "m_hat",     "pe",   "total_miss",
                                               "fdr",       "fnr"};
  io::write_csv((fs::path(opt.out_dir) / "replications.csv").string(), rep_header,
                reps_csv);
  const std::vector<std::string> met_header = {
      "rho",        "method",        "reps", "m_hat", "m_hat_se", "pe", "pe_se",
      "total_miss", "total_miss_se", "fdr",  "fdr_se", "fnr",     "fnr_se"};
  io::write_csv_text((fs::path(opt.out_dir) / "metrics.csv").string(), met_header,
                     metrics_csv);
  io::write_text((fs::path(opt.out_dir) / "table1.txt").string(), table_txt.str());
  io::write_text((fs::path(opt.out_dir) / "table1_comparison.txt").string(),
                 cmp_txt.str());

  auto config = scenario_to_config(base);
  const auto svs_kv = svs_to_config(svs);
  config.insert(config.end(), svs_kv.begin(), svs_kv.end());
  finish_manifest(opt, "table1", config, rep_stream_notes,
                  {"replications.csv", "metrics.csv", "table1.txt",
                   "table1_comparison.txt"},
                  timer.seconds());
}

// ---------------------------------------------------------------- cp-curves

void cmd_cp_curves(const CommonOptions& opt, const SimScenario& base,
                   const SvsConfig& svs, const std::vector<double>& rhos,
                   double flatness_threshold) {
  if (opt.reps < 1) throw DataError("cp-curves: reps must be >= 1");
  Timer timer;
  fs::create_directories(opt.out_dir);
  const int threads = resolve_threads(opt);

  std::vector<std::string> files;
  std::vector<std::string> rep_stream_notes;
  std::ostringstream report;
  report << "mean Cp curves over " << opt.reps << " replications\n";

  for (std::size_t s = 0; s < rhos.size(); ++s) {
    SimScenario sc = base;
    sc.rho = rhos[s];
    sc.seed = opt.seed;
    sc.validate();

    std::vector<RepResult> results(static_cast<std::size_t>(opt.reps));
    parallel_for(opt.reps, threads, [&](int r) {
      results[static_cast<std::size_t>(r)] =
          run_replication(sc, svs, rep_stream_id(static_cast<int>(s), r), true);
    });
    for (int r = 0; r < opt.reps; ++r)
      rep_stream_notes.push_back("rho=" + io::format_double(sc.rho) + " rep " +
                                 std::to_string(r) + ": stream_id=" +
                                 std::to_string(rep_stream_id(static_cast<int>(s), r)));

    struct Acc {
      std::vector<double> sum, sumsq;
      std::vector<int> count;
      void add(const std::vector<double>& cp) {
        if (cp.size() > sum.size()) {
          sum.resize(cp.size(), 0.0);
          sumsq.resize(cp.size(), 0.0);
          count.resize(cp.size(), 0);
        }
        for (std::size_t k = 0; k < cp.size(); ++k) {
          sum[k] += cp[k];
          sumsq[k] += cp[k] * cp[k];
          count[k] += 1;
        }
      }
    };
    Acc lars_acc, svs_acc;
    for (const RepResult& res : results) {
      if (!res.ok) {
        report << "failed replication (rho=" << io::format_double(sc.rho)
               << "): " << res.error << "\n";
        continue;
      }
      lars_acc.add(res.lars_cp);
      svs_acc.add(res.svs_cp);
    }

    const auto write_mean_curve = [&](const Acc& acc, const std::string& method) {
      std::vector<std::vector<double>> rows;
      for (std::size_t k = 0; k < acc.sum.size(); ++k) {
        if (acc.count[k] == 0) continue;
        const double mean = acc.sum[k] / acc.count[k];
        double sd = 0.0;
        if (acc.count[k] > 1) {
          const double var =
              std::max(0.0, (acc.sumsq[k] - acc.count[k] * mean * mean) /
                                (acc.count[k] - 1));
          sd = std::sqrt(var);
        }
        rows.push_back({static_cast<double>(k), mean, sd,
                        static_cast<double>(acc.count[k])});
      }
      const std::string file = "cp_curve_" + method + "_rho" + rho_tag(sc.rho) + ".csv";
      const std::vector<std::string> header = {"k", "mean_cp", "sd_cp", "reps"};
      io::write_csv((fs::path(opt.out_dir) / file).string(), header, rows);
      files.push_back(file);
      return rows;
    };
    const auto lars_rows = write_mean_curve(lars_acc, "lars");
    const auto svs_rows = write_mean_curve(svs_acc, "svscp");

    const auto curve_findings = [&](const std::vector<std::vector<double>>& rows,
                                    const std::string& method) {
      if (rows.empty()) return;
      std::size_t arg = 0;
      double cmin = rows[0][1], cmax = rows[0][1];
      for (std::size_t k = 0; k < rows.size(); ++k) {
        cmax = std::max(cmax, rows[k][1]);
        if (rows[k][1] < cmin) {
          cmin = rows[k][1];
          arg = k;
        }
      }
      // spread of the mean curve across the 50 dimensions after the minimum,
      // relative to the curve's full range
      const std::size_t hi = std::min(rows.size() - 1, arg + 50);
      double wmin = rows[arg][1], wmax = rows[arg][1];
      for (std::size_t k = arg; k <= hi; ++k) {
        wmin = std::min(wmin, rows[k][1]);
        wmax = std::max(wmax, rows[k][1]);
      }
      const double range = std::max(1e-12, cmax - cmin);
      const double rel_spread = (wmax - wmin) / range;
      report << "rho=" << io::format_double(sc.rho) << " " << method
             << ": min mean Cp " << fmt("%.3f", cmin) << " at k=" << rows[arg][0]
             << ", spread over [k_min, k_min+50] = " << fmt("%.4f", rel_spread)
             << (rel_spread < flatness_threshold ? "  FLAT (below threshold "
                                                 : "  (threshold ")
             << fmt("%.4f", flatness_threshold) << ")\n";
      report << "rho=" << io::format_double(sc.rho) << " " << method
             << ": near-zero minimum check: min mean Cp " << fmt("%.3f", cmin)
             << (cmin < 0.1 * base.m ? " < " : " >= ") << fmt("%.1f", 0.1 * base.m)
             << " (0.1*m)\n";
    };
    curve_findings(lars_rows, "LARS");
    curve_findings(svs_rows, "svsCp");
  }

  io::write_text((fs::path(opt.out_dir) / "cp_curves_report.txt").string(),
                 report.str());
  files.push_back("cp_curves_report.txt");

  auto config = scenario_to_config(base);
  const auto svs_kv = svs_to_config(svs);
  config.insert(config.end(), svs_kv.begin(), svs_kv.end());
  config.emplace_back("flatness_threshold", io::format_double(flatness_threshold));
  finish_manifest(opt, "cp-curves", config, rep_stream_notes, files, timer.seconds());
}

// ---------------------------------------------------------------- simulate

void cmd_simulate(const CommonOptions& opt, const SimScenario& base) {
  if (opt.reps < 1) throw DataError("simulate: reps must be >= 1");
  Timer timer;
  fs::create_directories(opt.out_dir);
  SimScenario sc = base;
  sc.seed = opt.seed;
  sc.validate();

  std::vector<std::string> files, rep_stream_notes;
  for (int r = 0; r < opt.reps; ++r) {
    const std::uint64_t rep_id = rep_stream_id(0, r);
    const Dataset d = simulate_dataset(sc, rep_id);
    rep_stream_notes.push_back("rep " + std::to_string(r) +
                               ": stream_id=" + std::to_string(rep_id));

    std::vector<std::string> header;
    for (int j = 1; j <= sc.m; ++j) header.push_back("x" + std::to_string(j));
    header.push_back("y");
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(sc.n));
    for (int i = 0; i < sc.n; ++i) {
      auto& row = rows[static_cast<std::size_t>(i)];
      row.resize(static_cast<std::size_t>(sc.m) + 1);
      for (int j = 0; j < sc.m; ++j) row[static_cast<std::size_t>(j)] = d.X(i, j);
      row[static_cast<std::size_t>(sc.m)] = d.y[static_cast<std::size_t>(i)];
    }
    const std::string data_file = "dataset_rep" + std::to_string(r) + ".csv";
    io::write_csv((fs::path(opt.out_dir) / data_file).string(), header, rows);
    files.push_back(data_file);

    std::vector<std::vector<double>> truth_rows;
    for (int j = 0; j < sc.m; ++j)
      truth_rows.push_back(
          {static_cast<double>(j), d.beta_true[static_cast<std::size_t>(j)]});
    const std::string truth_file = "ground_truth_rep" + std::to_string(r) + ".csv";
    const std::vector<std::string> theader = {"index", "beta_true"};
    io::write_csv((fs::path(opt.out_dir) / truth_file).string(), theader, truth_rows);
    files.push_back(truth_file);
  }
  finish_manifest(opt, "simulate", scenario_to_config(sc), rep_stream_notes, files,
                  timer.seconds());
}

// ---------------------------------------------------------------- diabetes

std::pair<Mat, std::vector<std::string>> quadratic_expansion(
    const Mat& x, const std::vector<std::string>& names) {
  const std::size_t n = x.rows, p = x.cols;
  if (names.size() != p) throw DataError("quadratic expansion: name count mismatch");
  {
    std::set<std::string> uniq(names.begin(), names.end());
    if (uniq.size() != p)
      throw DataError("quadratic expansion: duplicate column names");
  }

  std::vector<bool> binary(p, false);
  for (std::size_t j = 0; j < p; ++j) {
    std::set<double> vals;
    const double* col = x.col(j);
    for (std::size_t i = 0; i < n && vals.size() <= 2; ++i) vals.insert(col[i]);
    binary[j] = vals.size() == 2;
  }

  const std::size_t n_inter = p * (p - 1) / 2;
  std::size_t n_sq = 0;
  for (std::size_t j = 0; j < p; ++j)
    if (!binary[j]) ++n_sq;

  Mat out(n, p + n_inter + n_sq);
  std::vector<std::string> out_names;
  out_names.reserve(p + n_inter + n_sq);
  std::size_t col = 0;
  for (std::size_t j = 0; j < p; ++j, ++col) {
    std::copy(x.col(j), x.col(j) + n, out.col(col));
    out_names.push_back(names[j]);
  }
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j + 1; k < p; ++k, ++col) {
      const double* a = x.col(j);
      const double* b = x.col(k);
      double* dst = out.col(col);
      for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
      out_names.push_back(names[j] + "." + names[k]);
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (binary[j]) continue;
    const double* a = x.col(j);
    double* dst = out.col(col);
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * a[i];
    out_names.push_back(names[j] + ".2");
    ++col;
  }

  std::set<std::string> uniq(out_names.begin(), out_names.end());
  if (uniq.size() != out_names.size())
    throw DataError("quadratic expansion: derived names collide");
  return {std::move(out), std::move(out_names)};
}

void write_cp_curve_csv(const std::string& path, const CpCurve& curve) {
  std::vector<std::vector<double>> rows;
  for (const CpEntry& e : curve.entries)
    rows.push_back({static_cast<double>(e.k), e.rss, e.cp});
  const std::vector<std::string> header = {"k", "rss", "cp"};
  io::write_csv(path, header, rows);
}

void cmd_diabetes(const CommonOptions& opt, const DiabetesOptions& dopt,
                  const SvsConfig& svs) {
  Timer timer;
  fs::create_directories(opt.out_dir);

  const io::CsvTable t = io::read_csv(dopt.csv_path);
  if (t.header.size() < 2)
    throw DataError("diabetes: need at least one covariate column and a response");
  const std::size_t p = t.header.size() - 1;
  const std::size_t n = t.rows.size();
  if (n < 100) throw DataError("diabetes: need at least 100 observations");

  Mat x(n, p);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) x(i, j) = t.rows[i][j];
    y[i] = t.rows[i][p];
  }
  std::vector<std::string> names(t.header.begin(), t.header.end() - 1);

  Dataset d;
  if (dopt.quadratic) {
    auto [xq, nq] = quadratic_expansion(x, names);
    d.X = std::move(xq);
    d.names = std::move(nq);
  } else {
    d.X = std::move(x);
    d.names = names;
  }
  d.y = std::move(y);
  if (d.m() + 1 > d.n())
    throw DataError("diabetes: design has m >= n after expansion (m=" +
                    std::to_string(d.m()) + ", n=" + std::to_string(d.n()) + ")");

  const StandardizedDataset sd = standardize(d);
  const Sigma2Estimate s2 = estimate_sigma2_full(sd);
  if (s2.degenerate) throw DataError("diabetes: zero full-model residual variance");
  const int max_k = static_cast<int>(std::min(sd.m(), sd.n() - 1));

  const PathFit lars = lars_path(sd, max_k);
  const CpCurve lars_curve = path_cp_curve(lars, s2.value, sd.n());
  const Selection lars_sel = select_min_cp(lars_curve, lars);

  SvsConfig cfg = svs;
  cfg.seed = opt.seed;
  const PosteriorSummary post = svs_gibbs(sd, cfg);
  const std::vector<int> ranking = rank_covariates(post);
  const PathFit rpath = ranked_prefix_path(sd, ranking, max_k);
  const CpCurve svs_curve = path_cp_curve(rpath, s2.value, sd.n());
  const Selection svs_sel = select_min_cp(svs_curve, rpath);

  write_cp_curve_csv((fs::path(opt.out_dir) / "cp_curve_lars.csv").string(),
                     lars_curve);
  write_cp_curve_csv((fs::path(opt.out_dir) / "cp_curve_svs.csv").string(),
                     svs_curve);

  std::vector<std::vector<std::string>> post_rows;
  for (std::size_t j = 0; j < sd.m(); ++j)
    post_rows.push_back({std::to_string(j), d.names[j],
                         io::format_double(post.post_mean_beta[j]),
                         io::format_double(post.inclusion_freq[j])});
  const std::vector<std::string> pheader = {"index", "name", "post_mean",
                                            "inclusion_freq"};
  io::write_csv_text((fs::path(opt.out_dir) / "posterior.csv").string(), pheader,
                     post_rows);

  std::ostringstream sel;
  sel << "model: " << (dopt.quadratic ? "quadratic" : "main") << "\n";
  sel << "n = " << sd.n() << ", m = " << sd.m() << "\n";
  sel << "sigma2_hat (full model) = " << io::format_double(s2.value) << "\n\n";

  const auto curve_min = [](const CpCurve& c) {
    double v = c.entries.front().cp;
    for (const CpEntry& e : c.entries) v = std::min(v, e.cp);
    return v;
  };
  sel << "LARS: min-Cp dimension k = " << lars_sel.k_hat
      << ", min Cp = " << fmt("%.3f", curve_min(lars_curve)) << "\n";
  sel << "LARS entry order:";
  const PathStep& lstep = lars.steps[static_cast<std::size_t>(lars_sel.k_hat)];
  for (int j : lstep.active) sel << " " << d.names[static_cast<std::size_t>(j)];
  sel << "\n\n";
  sel << "SVS ranked Cp: min-Cp dimension k = " << svs_sel.k_hat
      << ", min Cp = " << fmt("%.3f", curve_min(svs_curve)) << "\n";
  sel << "SVS importance order (top " << std::max(8, svs_sel.k_hat) << "):";
  for (int t2 = 0; t2 < std::max(8, svs_sel.k_hat) &&
                   t2 < static_cast<int>(ranking.size());
       ++t2)
    sel << " " << d.names[static_cast<std::size_t>(ranking[static_cast<std::size_t>(t2)])];
  sel << "\n";
  io::write_text((fs::path(opt.out_dir) / "selection.txt").string(), sel.str());

  auto config = svs_to_config(svs);
  config.emplace_back("csv", dopt.csv_path);
  config.emplace_back("model", dopt.quadratic ? "quadratic" : "main");
  finish_manifest(opt, "diabetes", config, {},
                  {"cp_curve_lars.csv", "cp_curve_svs.csv", "posterior.csv",
                   "selection.txt"},
                  timer.seconds());
}

// ---------------------------------------------------------------- theory

void cmd_theory(const CommonOptions& opt, OverfitParams params) {
  Timer timer;
  fs::create_directories(opt.out_dir);
  params.seed = opt.seed;
  params.reps = opt.reps;
  if (params.magnitudes.empty() && params.k0 > 0) {
    SimScenario sc;
    sc.n = params.n;
    if (params.k0 == sc.nonzero_count() && params.m == sc.m) {
      params.magnitudes = ortho_calibrated_magnitudes(sc);
    } else {
      params.magnitudes.assign(static_cast<std::size_t>(params.k0), 1.0);
    }
  }

  const OverfitReport rep = mc_overfit_experiment(params);

  std::vector<std::vector<double>> gap_rows;
  for (const OverfitRepRow& r : rep.rows)
    gap_rows.push_back({static_cast<double>(r.rep), static_cast<double>(r.k_hat),
                        static_cast<double>(params.k0), r.gap_exact, r.bound,
                        r.delta_k, static_cast<double>(r.b_k),
                        r.tie_flag ? 1.0 : 0.0});
  const std::vector<std::string> gheader = {"rep",  "k_hat",   "k0",  "gap_exact",
                                            "bound", "delta_k", "b_k", "tie"};
  io::write_csv((fs::path(opt.out_dir) / "gap_report.csv").string(), gheader,
                gap_rows);

  std::vector<std::vector<double>> bk_rows;
  for (const auto& [b, c] : rep.b_k_histogram)
    bk_rows.push_back({static_cast<double>(b), static_cast<double>(c)});
  io::write_csv((fs::path(opt.out_dir) / "bk_distribution.csv").string(),
                std::vector<std::string>{"b_k", "count"}, bk_rows);

  std::vector<std::vector<double>> kh_rows;
  for (const auto& [k, c] : rep.k_hat_histogram)
    kh_rows.push_back({static_cast<double>(k), static_cast<double>(c)});
  io::write_csv((fs::path(opt.out_dir) / "khat_histogram.csv").string(),
                std::vector<std::string>{"k_hat", "count"}, kh_rows);

  std::vector<std::vector<double>> curve_rows;
  for (std::size_t k = 0; k < rep.mean_cp.size(); ++k)
    curve_rows.push_back({static_cast<double>(k), rep.mean_cp[k], rep.sd_cp[k]});
  io::write_csv((fs::path(opt.out_dir) / "mean_cp_curve.csv").string(),
                std::vector<std::string>{"k", "mean_cp", "sd_cp"}, curve_rows);

  std::ostringstream rpt;
  rpt << "random orthogonal design experiment\n";
  rpt << "m=" << params.m << " n=" << params.n << " k0=" << params.k0
      << " signal_scale=" << io::format_double(params.signal_scale)
      << " reps=" << params.reps << " seed=" << params.seed << "\n\n";
  rpt << "P(k_hat > k0) = " << fmt("%.4f", rep.p_overfit) << "\n";
  rpt << "mean k_hat = " << fmt("%.2f", rep.mean_k_hat) << "\n";
  if (params.k0 >= 1) {
    rpt << "gap probe at k = " << rep.k_probe << ": fraction with exact gap < 0 = "
        << fmt("%.4f", rep.frac_gap_negative) << "\n";
  }
  rpt << "mean B_k = " << fmt("%.3f", rep.mean_b_k) << " (k0 = " << params.k0
      << ")\n";
  int exact_k0 = 0, total = 0, ties = 0;
  for (const OverfitRepRow& r : rep.rows) {
    total += 1;
    if (r.b_k == params.k0) ++exact_k0;
    if (r.tie_flag) ++ties;
  }
  rpt << "B_k == k0 in " << exact_k0 << "/" << total << " replications (ties in "
      << ties << ")\n";
  const double bin_var = static_cast<double>(params.m) *
                         (static_cast<double>(params.k0) / params.m) *
                         (1.0 - static_cast<double>(params.k0) / params.m);
  rpt << "a Binomial(m, k0/m) count would have mean "
      << fmt("%.3f", static_cast<double>(params.k0)) << " and variance "
      << fmt("%.3f", bin_var) << "; the observed counts are degenerate at k0 for "
      << "tie-free draws\n";
  io::write_text((fs::path(opt.out_dir) / "theory_report.txt").string(), rpt.str());

  std::vector<std::pair<std::string, std::string>> config = {
      {"m", std::to_string(params.m)},
      {"n", std::to_string(params.n)},
      {"k0", std::to_string(params.k0)},
      {"signal_scale", io::format_double(params.signal_scale)},
      {"k_probe", std::to_string(rep.k_probe)}};
  finish_manifest(opt, "theory", config, {},
                  {"gap_report.csv", "bk_distribution.csv", "khat_histogram.csv",
                   "mean_cp_curve.csv", "theory_report.txt"},
                  timer.seconds());
}

}  // namespace cpbench::bench
