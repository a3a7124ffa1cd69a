#pragma once

#include <span>

#include "cpbench/dataset.hpp"
#include "cpbench/path_fit.hpp"

namespace cpbench {

// Least angle regression, pure form (no lasso drop steps). At each step the
// variable with maximal absolute residual correlation enters, then the fit
// moves along the equiangular direction of the signed active columns by the
// smallest step that levels some inactive correlation with the active ones.
// The final step (when every variable is active) lands on the full OLS fit.
// A numerically singular active Gram truncates the path with a marker.
PathFit lars_path(const StandardizedDataset& d, int max_steps);

// Soft-threshold fit at the (k+1)st largest absolute value: coordinate j maps
// to sign(y_j) * max(|y_j| - V_k, 0). On exactly orthonormal designs this is
// the LARS step-k fit seen at the design coordinates. With ties at the
// threshold the nonzero count differs from k; *tie_flag reports that.
std::vector<double> soft_threshold_fit(std::span<const double> yvals, int k,
                                       bool* tie_flag = nullptr);

}  // namespace cpbench
