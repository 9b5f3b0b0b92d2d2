#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace vaxalloc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Fixed solver tolerances.
inline constexpr double kFeasibilityTolerance = 1e-7;
inline constexpr double kReducedCostTolerance = 1e-9;
inline constexpr double kPivotTolerance = 1e-9;

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  std::vector<double> coefficients;  // dense, one per variable
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string name;
};

// minimize objective . x  subject to constraints and lower <= x <= upper.
// Lower bounds must be finite; upper bounds may be kInfinity.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> names;
  std::vector<LinearConstraint> constraints;

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_constraints() const { return constraints.size(); }

  std::size_t add_variable(std::string name, double cost, double lower_bound = 0.0,
                           double upper_bound = kInfinity);
  // Coefficients shorter than num_variables() are zero-padded.
  void add_constraint(std::vector<double> coefficients, Relation relation, double rhs,
                      std::string name = {});

  // Throws DimensionMismatch on ragged rows/bounds, DomainError on bad bounds.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus status);

// A simplex basis in solver column numbering: structural variables, then one
// slack per inequality row, then one artificial per row. Only meaningful for
// the program it came from (bounds may differ).
struct LpBasis {
  std::vector<std::size_t> basic;  // one column per retained row
  std::vector<char> at_upper;      // nonbasic columns resting at their upper bound

  bool empty() const { return basic.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;  // empty unless Optimal
  double objective_value = 0.0;
  std::size_t iterations = 0;
  LpBasis basis;  // final basis when Optimal (may be empty)
};

// Two-phase bounded-variable primal simplex on a dense tableau. Dantzig
// pricing, switching to Bland's rule after a run of degenerate pivots.
// Deterministic.
LpSolution solve_lp(const LinearProgram& program);

// Same program with the variable bounds replaced.
LpSolution solve_lp(const LinearProgram& program, std::span<const double> lower,
                    std::span<const double> upper);

// As above, starting from `start` (typically the optimal basis of a solve with
// neighbouring bounds). Falls back to a cold start if the basis is unusable.
LpSolution solve_lp(const LinearProgram& program, std::span<const double> lower,
                    std::span<const double> upper, const LpBasis& start);

// Largest constraint or bound violation of `values` (max norm).
double max_violation(const LinearProgram& program, std::span<const double> values);

// Human-readable equation listing for debugging.
std::string to_listing(const LinearProgram& program, const std::vector<bool>& integer_mask = {});

}  // namespace vaxalloc
