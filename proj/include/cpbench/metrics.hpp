#pragma once

#include <span>
#include <string>
#include <vector>

namespace cpbench {

struct ConfusionCounts {
  int tp = 0, fp = 0, tn = 0, fn = 0;
};

// Zero/nonzero classification counts against the true support.
ConfusionCounts confusion_counts(std::span<const int> selected,
                                 std::span<const int> true_nonzero, int m);

inline int total_miss(const ConfusionCounts& c) { return c.fp + c.fn; }
// fp / (fp + tp); 0/0 -> 0 (nothing selected)
double fdr(const ConfusionCounts& c);
// fn / (fn + tn); 0/0 -> 0 (everything selected)
double fnr(const ConfusionCounts& c);

// 1 - ||mu_hat - mu||^2 / ||mu||^2 after centering both vectors by their own
// means. Errors when the centered true mean vanishes.
double proportion_explained(std::span<const double> mu_hat,
                            std::span<const double> mu_true);

struct ReplicationRecord {
  std::string method;
  double m_hat = 0.0;
  double pe = 0.0;
  double total_miss = 0.0;
  double fdr = 0.0;
  double fnr = 0.0;
};

struct MetricsRow {
  std::string method;
  int reps = 0;
  double m_hat = 0.0, pe = 0.0, total_miss = 0.0, fdr = 0.0, fnr = 0.0;
  double se_m_hat = 0.0, se_pe = 0.0, se_total_miss = 0.0, se_fdr = 0.0,
         se_fnr = 0.0;
};

// Per-method means and standard errors, rows ordered LARS, svsCp, svsBMA,
// Step (other method names follow, in first-seen order).
std::vector<MetricsRow> aggregate_replications(
    std::span<const ReplicationRecord> records);

}  // namespace cpbench
