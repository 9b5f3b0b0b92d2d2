#pragma once

#include <cstddef>
#include <vector>

#include "vaxalloc/lp.hpp"

namespace vaxalloc {

inline constexpr double kIntegralityTolerance = 1e-6;
inline constexpr double kRelativeGap = 1e-9;

struct MipInstance {
  LinearProgram base;
  std::vector<bool> integer_mask;  // one flag per variable of `base`

  void validate() const;  // DimensionMismatch when the mask width is wrong
};

enum class MipStatus { Optimal, Infeasible };

std::string to_string(MipStatus status);

struct MipSolution {
  MipStatus status = MipStatus::Infeasible;
  std::vector<double> values;  // integer-masked entries snapped to integers
  double objective_value = 0.0;
  std::size_t nodes_explored = 0;
  // Set when a node or time limit stopped the search: `values` then hold the
  // best incumbent found (status Optimal) or nothing (status Infeasible), and
  // optimality is not proven.
  bool limit_reached = false;
};

struct MipOptions {
  std::size_t node_limit = 2'000'000;
  double time_limit_seconds = 0.0;  // 0 disables
};

// LP-relaxation branch and bound over solve_lp. Best-first on the node bound
// (deeper node first on ties, then creation order); branches on the
// most-fractional integer variable (lowest index on ties), floor child first.
// Deterministic for a given instance.
MipSolution solve_mip(const MipInstance& instance, const MipOptions& options = {});

}  // namespace vaxalloc
