#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rieszlab::lp {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(Status s);

/// Dense tableau simplex for  max c^T x  subject to  A x <= b,  x >= 0,  b >= 0.
///
/// Rows and columns can be appended between solves; the current basis is kept,
/// so a re-solve after adding a few cuts or columns is warm-started (dual
/// simplex for new rows, primal simplex for new columns). The slack columns of
/// the tableau hold the basis inverse.
class DenseLP {
 public:
  /// Appends a structural column with the given cost and one coefficient per
  /// existing row. Returns its structural index.
  std::size_t add_column(double cost, std::span<const double> coeffs);

  /// Appends a row with one coefficient per existing structural column.
  /// Returns its row index.
  std::size_t add_row(std::span<const double> coeffs, double rhs);

  Status solve(std::size_t max_iterations = 1000000);

  std::size_t rows() const { return rhs_orig_.size(); }
  std::size_t columns() const { return cost_.size(); }
  std::size_t iterations() const { return iterations_; }

  /// Values of the structural variables at the current basis.
  std::vector<double> primal() const;
  /// Row duals y >= 0 at an optimal basis (y_r = -reduced cost of slack r).
  std::vector<double> duals() const;
  double objective() const;
  /// Reduced cost c_j - y^T a_j of a structural column at the current basis.
  double reduced_cost(std::size_t column) const;
  /// Reduced cost of a prospective column without adding it.
  double pricing(double cost, std::span<const double> coeffs) const;
  /// Slack of every row at the current basis.
  std::vector<double> row_slacks() const;
  /// After an unbounded result: structural direction along which the objective grows.
  const std::vector<double>& ray() const { return ray_; }

 private:
  enum class Kind { structural, slack };
  struct Var {
    Kind kind;
    std::size_t index;  // structural index or row index
  };

  void pivot(std::size_t row, std::size_t var);
  Status primal_phase(std::size_t max_iterations);
  Status dual_phase(std::size_t max_iterations);
  void recompute_reduced_costs(const std::vector<double>& costs);
  double var_cost(std::size_t v) const;

  std::vector<std::vector<double>> tab_;  // rows x vars
  std::vector<double> beta_;              // basic values
  std::vector<double> d_;                 // reduced costs per var
  std::vector<std::size_t> basis_;        // var basic in each row
  std::vector<long> position_;            // row of a basic var, -1 if nonbasic
  std::vector<Var> vars_;
  std::vector<std::size_t> struct_var_;   // structural index -> var
  std::vector<std::size_t> slack_var_;    // row index -> var
  std::vector<double> cost_;              // structural costs
  std::vector<double> rhs_orig_;
  std::vector<double> ray_;
  std::size_t iterations_ = 0;
};

}  // namespace rieszlab::lp
