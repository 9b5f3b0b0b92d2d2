#include "vaxalloc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vaxalloc/errors.hpp"

namespace vaxalloc {

std::size_t LinearProgram::add_variable(std::string name, double cost, double lower_bound,
                                        double upper_bound) {
  objective.push_back(cost);
  lower.push_back(lower_bound);
  upper.push_back(upper_bound);
  names.push_back(std::move(name));
  return objective.size() - 1;
}

void LinearProgram::add_constraint(std::vector<double> coefficients, Relation relation, double rhs,
                                   std::string name) {
  if (coefficients.size() > num_variables()) {
    throw DimensionMismatch("constraint '" + name + "' is wider than the variable count");
  }
  coefficients.resize(num_variables(), 0.0);
  constraints.push_back({std::move(coefficients), relation, rhs, std::move(name)});
}

void LinearProgram::validate() const {
  const std::size_t n = num_variables();
  if (lower.size() != n || upper.size() != n) {
    throw DimensionMismatch("bound vectors do not match the variable count");
  }
  if (!names.empty() && names.size() != n) {
    throw DimensionMismatch("name vector does not match the variable count");
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].coefficients.size() != n) {
      throw DimensionMismatch("constraint " + std::to_string(i) + " has " +
                              std::to_string(constraints[i].coefficients.size()) + " coefficients, expected " +
                              std::to_string(n));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lower[j])) throw DomainError("variable " + std::to_string(j) + " has an infinite lower bound");
    if (lower[j] > upper[j]) throw DomainError("variable " + std::to_string(j) + " has lower > upper");
  }
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "OPTIMAL";
    case LpStatus::Infeasible: return "INFEASIBLE";
    case LpStatus::Unbounded: return "UNBOUNDED";
  }
  return "UNKNOWN";
}

namespace {

// Consecutive degenerate pivots tolerated before switching to Bland's rule.
constexpr int kDegenerateRunLimit = 50;

// Dense tableau in the shifted space y = x - lower, every row an equality.
// Nonbasic columns always sit at zero: a column resting at its upper bound is
// "flipped" (y_j = u_j - y'_j), which negates the column.
//
// Columns: structural, one slack per inequality row, one artificial per row,
// and (warm starts only) one repair column per row.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::span<const double> lower, std::span<const double> upper,
          const LpBasis* start);

  LpSolution solve();

 private:
  enum class Pricing { Dantzig, Bland };

  struct Row {
    std::size_t source;
    double rhs;  // in shifted space, before any sign change
    int slack;   // +1, -1, or 0 for none
    std::size_t slack_column;
  };

  double& at(std::size_t row, std::size_t col) { return cells_[row * width_ + col]; }
  double at(std::size_t row, std::size_t col) const { return cells_[row * width_ + col]; }
  double& rhs(std::size_t row) { return cells_[row * width_ + columns_]; }
  double rhs(std::size_t row) const { return cells_[row * width_ + columns_]; }

  void cold_start();
  bool warm_start(const LpBasis& start);
  void pivot(std::size_t row, std::size_t col);
  void flip(std::size_t col);
  void price_objective(const std::vector<double>& cost);
  // Runs simplex iterations on the current objective row. Returns false when
  // the objective is unbounded below.
  bool iterate();
  void drive_out_artificials();
  std::vector<double> primal_values() const;
  LpBasis export_basis() const;

  const LinearProgram& lp_;
  std::span<const double> lower_;
  std::span<const double> upper_in_;
  std::size_t n_struct_ = 0;
  std::size_t rows_ = 0;       // constraint rows; the objective row is rows_
  std::size_t columns_ = 0;    // every column, excluding rhs
  std::size_t width_ = 0;      // columns_ + 1 (rhs)
  std::size_t first_artificial_ = 0;
  std::size_t first_repair_ = 0;
  std::vector<Row> kept_;
  std::vector<double> cells_;
  std::vector<double> upper_;  // in shifted space
  std::vector<double> cost_;   // phase-2 cost per column, unflipped
  std::vector<std::size_t> basis_;
  std::vector<char> basic_;
  std::vector<char> flipped_;
  std::vector<char> blocked_;
  std::size_t iterations_ = 0;
  bool infeasible_ = false;
  std::vector<std::size_t> nonzero_;
};

Tableau::Tableau(const LinearProgram& lp, std::span<const double> lower, std::span<const double> upper,
                 const LpBasis* start)
    : lp_(lp), lower_(lower), upper_in_(upper), n_struct_(lp.num_variables()) {
  std::size_t n_slack = 0;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    double b = c.rhs;
    bool empty = true;
    for (std::size_t j = 0; j < n_struct_; ++j) {
      if (c.coefficients[j] != 0.0) {
        empty = false;
        b -= c.coefficients[j] * lower[j];
      }
    }
    if (empty) {
      const bool ok = (c.relation == Relation::LessEqual && 0.0 <= c.rhs + kFeasibilityTolerance) ||
                      (c.relation == Relation::GreaterEqual && 0.0 >= c.rhs - kFeasibilityTolerance) ||
                      (c.relation == Relation::Equal && std::abs(c.rhs) <= kFeasibilityTolerance);
      if (!ok) infeasible_ = true;
      continue;
    }
    const int slack = c.relation == Relation::LessEqual ? 1 : c.relation == Relation::GreaterEqual ? -1 : 0;
    kept_.push_back({i, b, slack, slack != 0 ? n_struct_ + n_slack : 0});
    if (slack != 0) ++n_slack;
  }

  rows_ = kept_.size();
  first_artificial_ = n_struct_ + n_slack;
  first_repair_ = first_artificial_ + rows_;
  const bool warm = start != nullptr && !start->empty();
  columns_ = first_repair_ + (warm ? rows_ : 0);
  width_ = columns_ + 1;

  if (!(warm && warm_start(*start))) cold_start();
}

void Tableau::cold_start() {
  cells_.assign((rows_ + 1) * width_, 0.0);
  upper_.assign(columns_, kInfinity);
  cost_.assign(columns_, 0.0);
  basic_.assign(columns_, 0);
  flipped_.assign(columns_, 0);
  blocked_.assign(columns_, 0);
  basis_.assign(rows_, 0);
  for (std::size_t j = 0; j < n_struct_; ++j) {
    upper_[j] = upper_in_[j] - lower_[j];
    cost_[j] = lp_.objective[j];
  }
  for (std::size_t j = first_repair_; j < columns_; ++j) upper_[j] = 0.0;

  for (std::size_t i = 0; i < rows_; ++i) {
    const auto& r = kept_[i];
    const double sign = r.rhs < 0.0 ? -1.0 : 1.0;
    const auto& coeffs = lp_.constraints[r.source].coefficients;
    for (std::size_t j = 0; j < n_struct_; ++j) at(i, j) = coeffs[j] * sign;
    rhs(i) = r.rhs * sign;
    const std::size_t art = first_artificial_ + i;
    at(i, art) = 1.0;
    if (r.slack != 0) at(i, r.slack_column) = r.slack * sign;
    if (r.slack * sign > 0.0) {
      basis_[i] = r.slack_column;
      upper_[art] = 0.0;  // unused
    } else {
      basis_[i] = art;
    }
    basic_[basis_[i]] = 1;
  }
}

// Rebuilds the tableau as B^-1 [A | b] for the given basis, then repairs basic
// variables that the new bounds leave out of range: each becomes nonbasic at
// the violated bound and a fresh artificial takes its row.
bool Tableau::warm_start(const LpBasis& start) {
  if (start.basic.size() != rows_ || start.at_upper.size() != first_repair_) return false;
  std::vector<char> seen(first_repair_, 0);
  for (std::size_t col : start.basic) {
    if (col >= first_repair_ || seen[col]) return false;
    seen[col] = 1;
  }

  const std::size_t m = rows_;
  // Original (unsigned) entries of a basis column.
  auto column_entry = [&](std::size_t col, std::size_t row) -> double {
    if (col < n_struct_) return lp_.constraints[kept_[row].source].coefficients[col];
    if (col < first_artificial_) return kept_[row].slack_column == col ? kept_[row].slack : 0.0;
    return col - first_artificial_ == row ? 1.0 : 0.0;
  };

  // Gauss-Jordan with partial pivoting on [B | I].
  std::vector<double> b(m * m), inv(m * m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) b[i * m + k] = column_entry(start.basic[k], i);
    inv[k * m + k] = 1.0;
  }
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < m; ++i) {
      if (std::abs(b[i * m + k]) > std::abs(b[p * m + k])) p = i;
    }
    if (std::abs(b[p * m + k]) < kPivotTolerance) return false;
    if (p != k) {
      std::swap_ranges(b.begin() + p * m, b.begin() + (p + 1) * m, b.begin() + k * m);
      std::swap_ranges(inv.begin() + p * m, inv.begin() + (p + 1) * m, inv.begin() + k * m);
    }
    const double d = 1.0 / b[k * m + k];
    for (std::size_t j = 0; j < m; ++j) {
      b[k * m + j] *= d;
      inv[k * m + j] *= d;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double f = b[i * m + k];
      if (i == k || f == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        b[i * m + j] -= f * b[k * m + j];
        inv[i * m + j] -= f * inv[k * m + j];
      }
    }
  }

  cells_.assign((rows_ + 1) * width_, 0.0);
  upper_.assign(columns_, kInfinity);
  cost_.assign(columns_, 0.0);
  basic_.assign(columns_, 0);
  flipped_.assign(columns_, 0);
  blocked_.assign(columns_, 0);
  basis_ = start.basic;
  for (std::size_t j = 0; j < n_struct_; ++j) {
    upper_[j] = upper_in_[j] - lower_[j];
    cost_[j] = lp_.objective[j];
  }
  for (std::size_t j = first_artificial_; j < columns_; ++j) upper_[j] = 0.0;

  std::vector<std::vector<std::pair<std::size_t, double>>> sparse_rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& coeffs = lp_.constraints[kept_[i].source].coefficients;
    for (std::size_t j = 0; j < n_struct_; ++j) {
      if (coeffs[j] != 0.0) sparse_rows[i].emplace_back(j, coeffs[j]);
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    double* row = &cells_[k * width_];
    double value = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double f = inv[k * m + i];
      if (f == 0.0) continue;
      for (const auto& [j, a] : sparse_rows[i]) row[j] += f * a;
      if (kept_[i].slack != 0) row[kept_[i].slack_column] = f * kept_[i].slack;
      row[first_artificial_ + i] = f;
      value += f * kept_[i].rhs;
    }
    row[columns_] = value;
  }
  for (std::size_t k = 0; k < m; ++k) {
    at(k, basis_[k]) = 1.0;
    basic_[basis_[k]] = 1;
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (i != k) at(i, basis_[k]) = 0.0;
    }
  }

  for (std::size_t j = 0; j < first_repair_; ++j) {
    if (!basic_[j] && start.at_upper[j] && std::isfinite(upper_[j]) && upper_[j] > 0.0) flip(j);
  }

  constexpr double kRepairTolerance = 1e-9;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t col = basis_[k];
    const double value = rhs(k);
    const bool below = value < -kRepairTolerance;
    const bool above = value > upper_[col] + kRepairTolerance;
    if (!below && !above) continue;
    if (above) {
      flip(col);  // now nonbasic at its upper bound; rhs(k) = value - upper > 0
    } else {
      for (std::size_t j = 0; j <= columns_; ++j) at(k, j) = -at(k, j);
    }
    const std::size_t repair = first_repair_ + k;
    at(k, repair) = 1.0;
    basic_[col] = 0;
    basic_[repair] = 1;
    basis_[k] = repair;
    upper_[repair] = kInfinity;
  }
  return true;
}

void Tableau::pivot(std::size_t row, std::size_t col) {
  double* prow = &cells_[row * width_];
  const double inv = 1.0 / prow[col];
  nonzero_.clear();
  for (std::size_t j = 0; j < width_; ++j) {
    if (prow[j] != 0.0) {
      prow[j] *= inv;
      nonzero_.push_back(j);
    }
  }
  prow[col] = 1.0;
  for (std::size_t i = 0; i <= rows_; ++i) {
    if (i == row) continue;
    double* r = &cells_[i * width_];
    const double factor = r[col];
    if (factor == 0.0) continue;
    for (std::size_t j : nonzero_) r[j] -= factor * prow[j];
    r[col] = 0.0;
  }
  basic_[basis_[row]] = 0;
  basis_[row] = col;
  basic_[col] = 1;
}

void Tableau::flip(std::size_t col) {
  const double u = upper_[col];
  for (std::size_t i = 0; i <= rows_; ++i) {
    double& a = at(i, col);
    if (a == 0.0) continue;
    rhs(i) -= a * u;
    a = -a;
  }
  flipped_[col] ^= 1;
}

void Tableau::price_objective(const std::vector<double>& cost) {
  for (std::size_t j = 0; j <= columns_; ++j) at(rows_, j) = 0.0;
  for (std::size_t j = 0; j < columns_; ++j) at(rows_, j) = flipped_[j] ? -cost[j] : cost[j];
  for (std::size_t i = 0; i < rows_; ++i) {
    const std::size_t b = basis_[i];
    const double cb = flipped_[b] ? -cost[b] : cost[b];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= columns_; ++j) at(rows_, j) -= cb * at(i, j);
  }
  for (std::size_t i = 0; i < rows_; ++i) at(rows_, basis_[i]) = 0.0;
}

bool Tableau::iterate() {
  Pricing pricing = Pricing::Dantzig;
  int degenerate_run = 0;
  const std::size_t limit = 200000 + 50 * (rows_ + columns_);
  for (;;) {
    if (++iterations_ > limit) throw Error("simplex iteration limit exceeded");

    std::size_t entering = columns_;
    double best = -kReducedCostTolerance;
    for (std::size_t j = 0; j < columns_; ++j) {
      if (basic_[j] || blocked_[j] || upper_[j] == 0.0) continue;
      const double d = at(rows_, j);
      if (d < best) {
        entering = j;
        if (pricing == Pricing::Bland) break;
        best = d;
      }
    }
    if (entering == columns_) return true;

    // Ratio test. Basic variables fall to zero when the column entry is
    // positive and rise to their upper bound when it is negative.
    double theta = upper_[entering];
    std::size_t leaving_row = rows_;
    bool to_upper = false;
    double best_alpha = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double alpha = at(i, entering);
      double limit_i;
      bool upper_hit = false;
      if (alpha > kPivotTolerance) {
        limit_i = std::max(rhs(i), 0.0) / alpha;
      } else if (alpha < -kPivotTolerance && std::isfinite(upper_[basis_[i]])) {
        limit_i = std::max(upper_[basis_[i]] - rhs(i), 0.0) / -alpha;
        upper_hit = true;
      } else {
        continue;
      }
      // Ties with the entering bound favour the bound flip (no basis change).
      bool take = limit_i < theta - 1e-12;
      if (!take && leaving_row != rows_ && limit_i <= theta + 1e-12) {
        take = pricing == Pricing::Bland ? basis_[i] < basis_[leaving_row] : std::abs(alpha) > best_alpha;
      }
      if (take) {
        theta = limit_i;
        leaving_row = i;
        to_upper = upper_hit;
        best_alpha = std::abs(alpha);
      }
    }

    if (!std::isfinite(theta)) return false;

    if (leaving_row == rows_) {
      flip(entering);
    } else {
      const std::size_t leaving = basis_[leaving_row];
      pivot(leaving_row, entering);
      if (to_upper) flip(leaving);
    }

    if (theta <= 1e-12) {
      if (++degenerate_run >= kDegenerateRunLimit) pricing = Pricing::Bland;
    } else {
      degenerate_run = 0;
      pricing = Pricing::Dantzig;
    }
  }
}

void Tableau::drive_out_artificials() {
  for (std::size_t i = 0; i < rows_; ++i) {
    if (basis_[i] < first_artificial_) continue;
    std::size_t best = columns_;
    double best_abs = kPivotTolerance;
    for (std::size_t j = 0; j < first_artificial_; ++j) {
      if (basic_[j]) continue;
      const double a = std::abs(at(i, j));
      if (a > best_abs) {
        best_abs = a;
        best = j;
      }
    }
    if (best != columns_) pivot(i, best);
  }
}

std::vector<double> Tableau::primal_values() const {
  std::vector<double> y(columns_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) y[basis_[i]] = rhs(i);
  std::vector<double> x(n_struct_);
  for (std::size_t j = 0; j < n_struct_; ++j) {
    double v = flipped_[j] ? upper_[j] - y[j] : y[j];
    v += lower_[j];
    const double hi = lower_[j] + upper_[j];
    if (v < lower_[j] && v > lower_[j] - 1e-9) v = lower_[j];
    if (v > hi && v < hi + 1e-9) v = hi;
    x[j] = v;
  }
  return x;
}

LpBasis Tableau::export_basis() const {
  LpBasis out;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (basis_[i] >= first_repair_) return {};
  }
  out.basic = basis_;
  out.at_upper.assign(first_repair_, 0);
  for (std::size_t j = 0; j < first_repair_; ++j) out.at_upper[j] = !basic_[j] && flipped_[j];
  return out;
}

LpSolution Tableau::solve() {
  LpSolution out;
  if (infeasible_) return out;

  bool artificial_basis = false;
  for (std::size_t i = 0; i < rows_; ++i) artificial_basis |= basis_[i] >= first_artificial_;
  if (artificial_basis) {
    std::vector<double> phase1(columns_, 0.0);
    for (std::size_t j = first_artificial_; j < columns_; ++j) phase1[j] = 1.0;
    price_objective(phase1);
    iterate();
    double residual = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] >= first_artificial_) residual += std::abs(rhs(i));
    }
    if (residual > kFeasibilityTolerance) {
      out.iterations = iterations_;
      return out;
    }
    drive_out_artificials();
  }
  // Artificials left in the basis sit on redundant rows and stay at zero.
  for (std::size_t j = first_artificial_; j < columns_; ++j) {
    blocked_[j] = 1;
    upper_[j] = 0.0;
  }

  price_objective(cost_);
  const bool bounded = iterate();
  out.iterations = iterations_;
  if (!bounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.values = primal_values();
  out.objective_value = 0.0;
  for (std::size_t j = 0; j < n_struct_; ++j) out.objective_value += lp_.objective[j] * out.values[j];
  out.basis = export_basis();
  return out;
}

LpSolution solve_checked(const LinearProgram& program, std::span<const double> lower,
                         std::span<const double> upper, const LpBasis* start) {
  program.validate();
  if (lower.size() != program.num_variables() || upper.size() != program.num_variables()) {
    throw DimensionMismatch("bound override does not match the variable count");
  }
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j])) throw DomainError("variable " + std::to_string(j) + " has an infinite lower bound");
    if (lower[j] > upper[j]) return {};
  }
  Tableau tableau(program, lower, upper, start);
  return tableau.solve();
}

}  // namespace

LpSolution solve_lp(const LinearProgram& program) {
  return solve_lp(program, program.lower, program.upper);
}

LpSolution solve_lp(const LinearProgram& program, std::span<const double> lower,
                    std::span<const double> upper) {
  return solve_checked(program, lower, upper, nullptr);
}

LpSolution solve_lp(const LinearProgram& program, std::span<const double> lower,
                    std::span<const double> upper, const LpBasis& start) {
  return solve_checked(program, lower, upper, &start);
}

double max_violation(const LinearProgram& program, std::span<const double> values) {
  double worst = 0.0;
  for (std::size_t j = 0; j < program.num_variables(); ++j) {
    worst = std::max(worst, program.lower[j] - values[j]);
    worst = std::max(worst, values[j] - program.upper[j]);
  }
  for (const auto& c : program.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) lhs += c.coefficients[j] * values[j];
    switch (c.relation) {
      case Relation::LessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Relation::GreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Relation::Equal: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string variable_name(const LinearProgram& p, std::size_t j) {
  if (j < p.names.size() && !p.names[j].empty()) return p.names[j];
  return "x" + std::to_string(j);
}

void write_terms(std::ostringstream& out, const LinearProgram& p, const std::vector<double>& coeffs) {
  bool first = true;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double a = coeffs[j];
    if (a == 0.0) continue;
    if (first) {
      if (a < 0) out << "- ";
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    if (std::abs(a) != 1.0) out << format_number(std::abs(a)) << ' ';
    out << variable_name(p, j);
    first = false;
  }
  if (first) out << '0';
}

}  // namespace

std::string to_listing(const LinearProgram& program, const std::vector<bool>& integer_mask) {
  std::ostringstream out;
  out << "minimize\n  obj: ";
  write_terms(out, program, program.objective);
  out << "\nsubject to\n";
  for (std::size_t i = 0; i < program.constraints.size(); ++i) {
    const auto& c = program.constraints[i];
    out << "  " << (c.name.empty() ? "r" + std::to_string(i) : c.name) << ": ";
    write_terms(out, program, c.coefficients);
    out << (c.relation == Relation::LessEqual ? " <= " : c.relation == Relation::Equal ? " = " : " >= ")
        << format_number(c.rhs) << '\n';
  }
  out << "bounds\n";
  for (std::size_t j = 0; j < program.num_variables(); ++j) {
    out << "  " << format_number(program.lower[j]) << " <= " << variable_name(program, j) << " <= "
        << (std::isfinite(program.upper[j]) ? format_number(program.upper[j]) : "inf") << '\n';
  }
  bool any_integer = false;
  for (std::size_t j = 0; j < integer_mask.size(); ++j) {
    if (!integer_mask[j]) continue;
    if (!any_integer) out << "integer\n ";
    out << ' ' << variable_name(program, j);
    any_integer = true;
  }
  if (any_integer) out << '\n';
  out << "end\n";
  return out.str();
}

}  // namespace vaxalloc
