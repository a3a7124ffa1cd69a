#pragma once

#include <string>
#include <vector>

#include "cpbench/model_core.hpp"

namespace cpbench {

enum class MethodTag { lars, stepwise, svs_ranked };

const char* method_name(MethodTag tag);

// One model along a path: steps[k] has exactly k active variables.
struct PathStep {
  std::vector<int> active;     // entry order
  std::vector<double> coeffs;  // length m, zero off the active set
  std::vector<double> mu_hat;  // length n (fit of the centered response)
  double rss = 0.0;
};

struct PathFit {
  MethodTag method_tag = MethodTag::lars;
  std::vector<PathStep> steps;  // step 0 is the empty model
  bool truncated = false;
  std::string truncation_reason;
  int tie_events = 0;              // entry-competition ties, lowest index won
  std::vector<std::string> notes;  // skipped candidates and similar events
};

// Cp entry per step, charging k degrees of freedom at step k.
CpCurve path_cp_curve(const PathFit& path, double sigma2, std::size_t n);

struct Selection {
  int k_hat = 0;
  std::vector<int> selected;  // ascending
};

// Smallest k attaining the minimal Cp, with that step's active set.
Selection select_min_cp(const CpCurve& curve, const PathFit& path);

}  // namespace cpbench
