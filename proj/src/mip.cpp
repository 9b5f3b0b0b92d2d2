#include "vaxalloc/mip.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <queue>

#include "vaxalloc/errors.hpp"

namespace vaxalloc {

void MipInstance::validate() const {
  base.validate();
  if (integer_mask.size() != base.num_variables()) {
    throw DimensionMismatch("integer mask has " + std::to_string(integer_mask.size()) + " entries for " +
                            std::to_string(base.num_variables()) + " variables");
  }
}

std::string to_string(MipStatus status) {
  return status == MipStatus::Optimal ? "OPTIMAL" : "INFEASIBLE";
}

namespace {

struct Node {
  double bound = -kInfinity;  // parent's LP objective
  std::size_t depth = 0;
  std::size_t id = 0;
  std::vector<double> lower;  // full bound vectors for this subproblem
  std::vector<double> upper;
  std::shared_ptr<const LpBasis> start;  // parent's optimal basis
};

struct NodeOrder {
  // priority_queue pops the "largest"; make that the best node.
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

double distance_to_integer(double v) { return std::abs(v - std::round(v)); }

}  // namespace

MipSolution solve_mip(const MipInstance& instance, const MipOptions& options) {
  instance.validate();
  const LinearProgram& lp = instance.base;
  const std::size_t n = lp.num_variables();
  const auto started = std::chrono::steady_clock::now();

  MipSolution best;
  bool have_incumbent = false;
  auto pruned_by_incumbent = [&](double bound) {
    if (!have_incumbent) return false;
    const double gap = kRelativeGap * std::max(1.0, std::abs(best.objective_value));
    return bound >= best.objective_value - gap;
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  Node root;
  root.lower = lp.lower;
  root.upper = lp.upper;
  // Integer variables can only take integer values inside their bounds.
  for (std::size_t j = 0; j < n; ++j) {
    if (!instance.integer_mask[j]) continue;
    root.lower[j] = std::ceil(root.lower[j] - kIntegralityTolerance);
    if (std::isfinite(root.upper[j])) root.upper[j] = std::floor(root.upper[j] + kIntegralityTolerance);
  }
  open.push(std::move(root));
  std::size_t next_id = 1;

  while (!open.empty()) {
    if (best.nodes_explored >= options.node_limit) {
      best.limit_reached = true;
      break;
    }
    if (options.time_limit_seconds > 0.0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
      if (elapsed.count() > options.time_limit_seconds) {
        best.limit_reached = true;
        break;
      }
    }

    Node node = open.top();
    open.pop();
    // Best-first: once the best open bound is pruned, every open node is.
    if (pruned_by_incumbent(node.bound)) break;

    ++best.nodes_explored;
    const LpSolution relaxation =
        node.start ? solve_lp(lp, node.lower, node.upper, *node.start) : solve_lp(lp, node.lower, node.upper);
    if (relaxation.status == LpStatus::Infeasible) continue;
    if (relaxation.status == LpStatus::Unbounded) {
      throw DomainError("LP relaxation is unbounded; integer variables must have a bounded relaxation");
    }
    if (pruned_by_incumbent(relaxation.objective_value)) continue;

    std::size_t branch = n;
    double farthest = kIntegralityTolerance;
    for (std::size_t j = 0; j < n; ++j) {
      if (!instance.integer_mask[j]) continue;
      const double dist = distance_to_integer(relaxation.values[j]);
      if (dist > farthest) {
        farthest = dist;
        branch = j;
      }
    }

    if (branch == n) {
      best.status = MipStatus::Optimal;
      best.values = relaxation.values;
      for (std::size_t j = 0; j < n; ++j) {
        if (instance.integer_mask[j]) best.values[j] = std::round(best.values[j]);
      }
      best.objective_value = 0.0;
      for (std::size_t j = 0; j < n; ++j) best.objective_value += lp.objective[j] * best.values[j];
      have_incumbent = true;
      continue;
    }

    const double value = relaxation.values[branch];
    auto start = relaxation.basis.empty() ? nullptr : std::make_shared<const LpBasis>(relaxation.basis);
    Node down{relaxation.objective_value, node.depth + 1, next_id++, node.lower, node.upper, start};
    down.upper[branch] = std::floor(value);
    Node up{relaxation.objective_value, node.depth + 1, next_id++, std::move(node.lower), std::move(node.upper),
            std::move(start)};
    up.lower[branch] = std::ceil(value);
    open.push(std::move(down));
    open.push(std::move(up));
  }

  return best;
}

}  // namespace vaxalloc
