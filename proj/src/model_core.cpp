#include "cpbench/model_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "cpbench/errors.hpp"
#include "cpbench/kernels.hpp"
#include "cpbench/linalg.hpp"

namespace cpbench {

OlsFit ols_subset(const StandardizedDataset& d, std::span<const int> subset) {
  const std::size_t n = d.n(), m = d.m();
  if (subset.size() + 1 > n)
    throw DataError("ols_subset: subset larger than n-1");
  std::set<int> seen;
  for (int j : subset) {
    if (j < 0 || static_cast<std::size_t>(j) >= m)
      throw DataError("ols_subset: index " + std::to_string(j) + " out of range");
    if (!seen.insert(j).second)
      throw DataError("ols_subset: duplicate index " + std::to_string(j));
  }
  LeastSquares ls = qr_least_squares(d.Xs, subset, d.ys);
  return OlsFit{std::move(ls.coef), std::move(ls.fitted), ls.rss};
}

Sigma2Estimate estimate_sigma2_full(const StandardizedDataset& d) {
  const std::size_t n = d.n(), m = d.m();
  if (n <= m)
    throw DataError("sigma2: full-model estimate needs n > m (n=" +
                    std::to_string(n) + ", m=" + std::to_string(m) + ")");
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  OlsFit fit = ols_subset(d, all);
  Sigma2Estimate est;
  est.value = fit.rss / static_cast<double>(n - m);
  est.degenerate = fit.rss <= 1e-12 * std::max(1.0, kernels::sumsq(d.ys.data(), n));
  return est;
}

double cp_value(double rss, double sigma2, std::size_t n, std::size_t k) {
  if (!(sigma2 > 0.0)) throw DataError("cp_value: sigma2 must be positive");
  if (k > n) throw DataError("cp_value: k exceeds n");
  return rss / sigma2 - static_cast<double>(n) + 2.0 * static_cast<double>(k);
}

CpCurve make_cp_curve(std::span<const std::pair<int, double>> k_rss, double sigma2,
                      std::size_t n) {
  if (k_rss.empty()) throw DataError("cp curve: no entries");
  CpCurve curve;
  curve.sigma2_hat = sigma2;
  curve.entries.reserve(k_rss.size());
  int last_k = -1;
  for (const auto& [k, rss] : k_rss) {
    if (k <= last_k) throw DataError("cp curve: k not strictly increasing");
    last_k = k;
    curve.entries.push_back({k, rss, cp_value(rss, sigma2, n, static_cast<std::size_t>(k))});
  }
  const auto best = std::min_element(
      curve.entries.begin(), curve.entries.end(),
      [](const CpEntry& a, const CpEntry& b) { return a.cp < b.cp; });
  curve.k_min = best->k;  // min_element keeps the first of equals: smallest k
  return curve;
}

}  // namespace cpbench
