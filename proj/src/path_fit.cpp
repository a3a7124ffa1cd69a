#include "cpbench/path_fit.hpp"

#include <algorithm>

#include "cpbench/errors.hpp"

namespace cpbench {

const char* method_name(MethodTag tag) {
  switch (tag) {
    case MethodTag::lars:
      return "LARS";
    case MethodTag::stepwise:
      return "Step";
    case MethodTag::svs_ranked:
      return "svsCp";
  }
  return "?";
}

CpCurve path_cp_curve(const PathFit& path, double sigma2, std::size_t n) {
  if (path.steps.empty()) throw DataError("cp curve: empty path");
  std::vector<std::pair<int, double>> k_rss;
  k_rss.reserve(path.steps.size());
  for (const PathStep& s : path.steps)
    k_rss.emplace_back(static_cast<int>(s.active.size()), s.rss);
  return make_cp_curve(k_rss, sigma2, n);
}

Selection select_min_cp(const CpCurve& curve, const PathFit& path) {
  if (curve.entries.empty()) throw DataError("select_min_cp: empty curve");
  Selection sel;
  sel.k_hat = curve.k_min;
  for (const PathStep& s : path.steps) {
    if (static_cast<int>(s.active.size()) == sel.k_hat) {
      sel.selected = s.active;
      std::sort(sel.selected.begin(), sel.selected.end());
      return sel;
    }
  }
  throw DataError("select_min_cp: path has no step of the selected dimension");
}

}  // namespace cpbench
