#pragma once

#include "cpbench/dataset.hpp"
#include "cpbench/path_fit.hpp"

namespace cpbench {

// Classical forward stepwise: each step adds the variable whose inclusion
// minimizes the new OLS RSS; every step's fit is the OLS fit on the current
// active set (maintained by rank-one Gram-Schmidt updates, O(nm) per step).
// The path truncates when no candidate reduces the RSS beyond 1e-12;
// collinear candidates are skipped and noted.
PathFit forward_stepwise_path(const StandardizedDataset& d, int max_steps);

// OLS fits along a fixed variable ordering: step k is the fit on the first k
// entries of `order`. Truncates at the last full-rank prefix.
PathFit ranked_prefix_path(const StandardizedDataset& d, std::span<const int> order,
                           int max_steps);

}  // namespace cpbench
