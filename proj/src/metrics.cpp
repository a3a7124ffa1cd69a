#include "cpbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "cpbench/errors.hpp"

namespace cpbench {

ConfusionCounts confusion_counts(std::span<const int> selected,
                                 std::span<const int> true_nonzero, int m) {
  std::set<int> sel, truth;
  for (int j : selected) {
    if (j < 0 || j >= m) throw DataError("confusion: selected index out of range");
    sel.insert(j);
  }
  for (int j : true_nonzero) {
    if (j < 0 || j >= m) throw DataError("confusion: true index out of range");
    truth.insert(j);
  }
  ConfusionCounts c;
  for (int j : sel) (truth.count(j) ? c.tp : c.fp)++;
  c.fn = static_cast<int>(truth.size()) - c.tp;
  c.tn = m - c.tp - c.fp - c.fn;
  return c;
}

double fdr(const ConfusionCounts& c) {
  const int declared = c.fp + c.tp;
  return declared == 0 ? 0.0 : static_cast<double>(c.fp) / declared;
}

double fnr(const ConfusionCounts& c) {
  const int declared_zero = c.fn + c.tn;
  return declared_zero == 0 ? 0.0 : static_cast<double>(c.fn) / declared_zero;
}

double proportion_explained(std::span<const double> mu_hat,
                            std::span<const double> mu_true) {
  if (mu_hat.size() != mu_true.size() || mu_true.empty())
    throw DataError("proportion_explained: length mismatch");
  const double n = static_cast<double>(mu_true.size());
  double mh = 0.0, mt = 0.0;
  for (double v : mu_hat) mh += v;
  for (double v : mu_true) mt += v;
  mh /= n;
  mt /= n;
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < mu_true.size(); ++i) {
    const double a = mu_hat[i] - mh;
    const double b = mu_true[i] - mt;
    err += (a - b) * (a - b);
    ref += b * b;
  }
  if (!(ref > 0.0))
    throw DataError("proportion_explained: centered true mean is zero");
  return 1.0 - err / ref;
}

std::vector<MetricsRow> aggregate_replications(
    std::span<const ReplicationRecord> records) {
  if (records.empty()) throw DataError("aggregate: no records");
  const std::vector<std::string> canonical = {"LARS", "svsCp", "svsBMA", "Step"};
  std::vector<std::string> order;
  std::map<std::string, std::vector<const ReplicationRecord*>> groups;
  for (const auto& r : records) {
    if (!groups.count(r.method)) {
      groups[r.method] = {};
      if (std::find(canonical.begin(), canonical.end(), r.method) == canonical.end())
        order.push_back(r.method);
    }
    groups[r.method].push_back(&r);
  }
  std::vector<std::string> rows_order;
  for (const auto& name : canonical)
    if (groups.count(name)) rows_order.push_back(name);
  rows_order.insert(rows_order.end(), order.begin(), order.end());

  auto mean_se = [](const std::vector<const ReplicationRecord*>& g,
                    double ReplicationRecord::*field, double* mean, double* se) {
    const double cnt = static_cast<double>(g.size());
    double s = 0.0;
    for (const auto* r : g) s += r->*field;
    *mean = s / cnt;
    if (g.size() < 2) {
      *se = 0.0;
      return;
    }
    double ss = 0.0;
    for (const auto* r : g) {
      const double dv = r->*field - *mean;
      ss += dv * dv;
    }
    *se = std::sqrt(ss / (cnt - 1.0) / cnt);
  };

  std::vector<MetricsRow> out;
  for (const auto& name : rows_order) {
    const auto& g = groups[name];
    MetricsRow row;
    row.method = name;
    row.reps = static_cast<int>(g.size());
    mean_se(g, &ReplicationRecord::m_hat, &row.m_hat, &row.se_m_hat);
    mean_se(g, &ReplicationRecord::pe, &row.pe, &row.se_pe);
    mean_se(g, &ReplicationRecord::total_miss, &row.total_miss, &row.se_total_miss);
    mean_se(g, &ReplicationRecord::fdr, &row.fdr, &row.se_fdr);
    mean_se(g, &ReplicationRecord::fnr, &row.fnr, &row.se_fnr);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace cpbench
