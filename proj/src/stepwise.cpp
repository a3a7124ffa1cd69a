#include "cpbench/stepwise.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "cpbench/errors.hpp"
#include "projector.hpp"

namespace cpbench {

namespace {

void record_step(PathFit& path, const detail::IncrementalProjector& proj) {
  PathStep st;
  st.active = proj.added();
  st.coeffs = proj.coefficients();
  st.mu_hat = proj.mu_hat();
  st.rss = proj.rss();
  path.steps.push_back(std::move(st));
}

int check_max_steps(const StandardizedDataset& d, int max_steps) {
  const int cap = static_cast<int>(std::min(d.m(), d.n() - 1));
  if (max_steps < 0 || max_steps > cap)
    throw DataError("path: max_steps must lie in [0, min(m, n-1)]");
  return max_steps;
}

}  // namespace

PathFit forward_stepwise_path(const StandardizedDataset& d, int max_steps) {
  check_max_steps(d, max_steps);
  const std::size_t m = d.m();
  PathFit path;
  path.method_tag = MethodTag::stepwise;
  detail::IncrementalProjector proj(d.Xs, d.ys);
  record_step(path, proj);

  std::vector<char> skipped(m, 0);
  for (int step = 1; step <= max_steps; ++step) {
    int best = -1;
    double best_gain = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (proj.is_added(static_cast<int>(j)) || skipped[j]) continue;
      if (!proj.addable(static_cast<int>(j))) {
        skipped[j] = 1;
        path.notes.push_back("skipped collinear candidate " + std::to_string(j));
        continue;
      }
      const double g = proj.gain(static_cast<int>(j));
      if (g > best_gain) {
        best_gain = g;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || best_gain <= 1e-12) {
      path.truncated = true;
      path.truncation_reason = "no candidate reduces RSS beyond 1e-12";
      break;
    }
    if (!proj.add(best)) {
      skipped[static_cast<std::size_t>(best)] = 1;
      path.notes.push_back("skipped collinear candidate " + std::to_string(best));
      --step;  // retry this step with the candidate excluded
      continue;
    }
    record_step(path, proj);
  }
  return path;
}

PathFit ranked_prefix_path(const StandardizedDataset& d, std::span<const int> order,
                           int max_steps) {
  check_max_steps(d, max_steps);
  const std::size_t m = d.m();
  std::set<int> seen;
  for (int j : order) {
    if (j < 0 || static_cast<std::size_t>(j) >= m)
      throw DataError("ranked path: index " + std::to_string(j) + " out of range");
    if (!seen.insert(j).second)
      throw DataError("ranked path: duplicate index " + std::to_string(j));
  }
  if (max_steps > static_cast<int>(order.size()))
    max_steps = static_cast<int>(order.size());

  PathFit path;
  path.method_tag = MethodTag::svs_ranked;
  detail::IncrementalProjector proj(d.Xs, d.ys);
  record_step(path, proj);
  for (int t = 0; t < max_steps; ++t) {
    if (!proj.add(order[static_cast<std::size_t>(t)])) {
      path.truncated = true;
      path.truncation_reason = "rank-deficient prefix at position " +
                               std::to_string(t) + " (column " +
                               std::to_string(order[static_cast<std::size_t>(t)]) + ")";
      break;
    }
    record_step(path, proj);
  }
  return path;
}

}  // namespace cpbench
