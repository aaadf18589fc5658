#include "rieszlab/lp.hpp"

#include <cmath>

#include "rieszlab/errors.hpp"

namespace rieszlab::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-10;
constexpr double kOptTol = 1e-10;
constexpr std::size_t kDegenerateLimit = 50;

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

double DenseLP::var_cost(std::size_t v) const {
  return vars_[v].kind == Kind::structural ? cost_[vars_[v].index] : 0.0;
}

std::size_t DenseLP::add_column(double cost, std::span<const double> coeffs) {
  if (coeffs.size() != rows()) throw ParameterError("DenseLP::add_column: one coefficient per row expected");
  const std::size_t v = vars_.size();
  vars_.push_back({Kind::structural, cost_.size()});
  struct_var_.push_back(v);
  cost_.push_back(cost);
  position_.push_back(-1);
  double d = cost;
  for (std::size_t r = 0; r < coeffs.size(); ++r)
    if (coeffs[r] != 0.0) d += coeffs[r] * d_[slack_var_[r]];
  d_.push_back(d);
  for (auto& row : tab_) {
    double s = 0.0;
    for (std::size_t r = 0; r < coeffs.size(); ++r)
      if (coeffs[r] != 0.0) s += coeffs[r] * row[slack_var_[r]];
    row.push_back(s);
  }
  return cost_.size() - 1;
}

std::size_t DenseLP::add_row(std::span<const double> coeffs, double rhs) {
  if (coeffs.size() != columns()) throw ParameterError("DenseLP::add_row: one coefficient per column expected");
  if (!(rhs >= 0.0)) throw ParameterError("DenseLP::add_row: right-hand side must be non-negative");
  const std::size_t s = vars_.size();
  const std::size_t r = rhs_orig_.size();
  vars_.push_back({Kind::slack, r});
  slack_var_.push_back(s);
  position_.push_back(static_cast<long>(r));
  d_.push_back(0.0);
  for (auto& row : tab_) row.push_back(0.0);

  std::vector<double> row(vars_.size(), 0.0);
  double b = rhs;
  for (std::size_t k = 0; k < coeffs.size(); ++k) row[struct_var_[k]] = coeffs[k];
  row[s] = 1.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const long p = position_[struct_var_[k]];
    if (p < 0 || coeffs[k] == 0.0) continue;
    const auto& src = tab_[p];
    const double f = coeffs[k];
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * src[j];
    row[struct_var_[k]] = 0.0;
    b -= f * beta_[p];
  }
  tab_.push_back(std::move(row));
  beta_.push_back(b);
  basis_.push_back(s);
  rhs_orig_.push_back(rhs);
  return r;
}

void DenseLP::pivot(std::size_t r, std::size_t v) {
  auto& prow = tab_[r];
  const double inv = 1.0 / prow[v];
  for (double& x : prow) x *= inv;
  prow[v] = 1.0;
  beta_[r] *= inv;
  const std::size_t nv = prow.size();
  for (std::size_t i = 0; i < tab_.size(); ++i) {
    if (i == r) continue;
    auto& row = tab_[i];
    const double f = row[v];
    if (f == 0.0) continue;
    for (std::size_t j = 0; j < nv; ++j)
      if (prow[j] != 0.0) row[j] -= f * prow[j];
    row[v] = 0.0;
    beta_[i] -= f * beta_[r];
    if (beta_[i] < 0.0 && beta_[i] > -kFeasTol * 1e-3) beta_[i] = 0.0;
  }
  const double f = d_[v];
  if (f != 0.0) {
    for (std::size_t j = 0; j < nv; ++j)
      if (prow[j] != 0.0) d_[j] -= f * prow[j];
  }
  d_[v] = 0.0;
  position_[basis_[r]] = -1;
  basis_[r] = v;
  position_[v] = static_cast<long>(r);
  ++iterations_;
}

void DenseLP::recompute_reduced_costs(const std::vector<double>& costs) {
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    if (position_[v] >= 0) {
      d_[v] = 0.0;
      continue;
    }
    double s = costs[v];
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      const double c = costs[basis_[i]];
      if (c != 0.0) s -= c * tab_[i][v];
    }
    d_[v] = s;
  }
}

Status DenseLP::primal_phase(std::size_t max_iterations) {
  std::size_t degenerate = 0;
  while (true) {
    if (iterations_ >= max_iterations) return Status::iteration_limit;
    const bool bland = degenerate >= kDegenerateLimit;
    std::size_t enter = vars_.size();
    double best = kOptTol;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (position_[v] >= 0 || d_[v] <= kOptTol) continue;
      if (bland) {
        enter = v;
        break;
      }
      if (d_[v] > best) {
        best = d_[v];
        enter = v;
      }
    }
    if (enter == vars_.size()) return Status::optimal;

    std::size_t leave = tab_.size();
    double ratio = 0.0, piv = 0.0;
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      const double a = tab_[i][enter];
      if (a <= kPivotTol) continue;
      const double t = std::max(beta_[i], 0.0) / a;
      bool take = leave == tab_.size() || t < ratio * (1.0 - 1e-12) - 1e-300;
      if (!take && t <= ratio * (1.0 + 1e-12) + 1e-300) {
        take = bland ? basis_[i] < basis_[leave] : a > piv;
      }
      if (take) {
        leave = i;
        ratio = t;
        piv = a;
      }
    }
    if (leave == tab_.size()) {
      ray_.assign(columns(), 0.0);
      ray_[vars_[enter].index] = vars_[enter].kind == Kind::structural ? 1.0 : 0.0;
      for (std::size_t i = 0; i < tab_.size(); ++i)
        if (vars_[basis_[i]].kind == Kind::structural) ray_[vars_[basis_[i]].index] = -tab_[i][enter];
      return Status::unbounded;
    }
    degenerate = ratio == 0.0 ? degenerate + 1 : 0;
    pivot(leave, enter);
  }
}

Status DenseLP::dual_phase(std::size_t max_iterations) {
  while (true) {
    if (iterations_ >= max_iterations) return Status::iteration_limit;
    std::size_t leave = tab_.size();
    double worst = -kFeasTol;
    for (std::size_t i = 0; i < tab_.size(); ++i)
      if (beta_[i] < worst) {
        worst = beta_[i];
        leave = i;
      }
    if (leave == tab_.size()) return Status::optimal;
    const auto& row = tab_[leave];
    std::size_t enter = vars_.size();
    double ratio = 0.0, piv = 0.0;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (position_[v] >= 0) continue;
      const double a = row[v];
      if (a >= -kPivotTol) continue;
      const double t = std::min(d_[v], 0.0) / a;
      bool take = enter == vars_.size() || t < ratio * (1.0 - 1e-12) - 1e-300;
      if (!take && t <= ratio * (1.0 + 1e-12) + 1e-300) take = -a > piv;
      if (take) {
        enter = v;
        ratio = t;
        piv = -a;
      }
    }
    if (enter == vars_.size()) return Status::infeasible;
    pivot(leave, enter);
  }
}

Status DenseLP::solve(std::size_t max_iterations) {
  const std::size_t limit = iterations_ + max_iterations;
  bool infeasible = false;
  for (double b : beta_)
    if (b < -kFeasTol) infeasible = true;
  if (infeasible) {
    // Shift costs so the basis is dual feasible, restore primal feasibility,
    // then drop the shift and continue with the primal method.
    bool shifted = false;
    for (std::size_t v = 0; v < vars_.size(); ++v)
      if (position_[v] < 0 && d_[v] > 0.0) {
        d_[v] = 0.0;
        shifted = true;
      }
    const Status st = dual_phase(limit);
    if (st != Status::optimal) return st;
    if (shifted) {
      std::vector<double> costs(vars_.size());
      for (std::size_t v = 0; v < vars_.size(); ++v) costs[v] = var_cost(v);
      recompute_reduced_costs(costs);
    }
  }
  return primal_phase(limit);
}

std::vector<double> DenseLP::primal() const {
  std::vector<double> x(columns(), 0.0);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (vars_[basis_[i]].kind == Kind::structural) x[vars_[basis_[i]].index] = std::max(beta_[i], 0.0);
  return x;
}

std::vector<double> DenseLP::duals() const {
  std::vector<double> y(rows());
  for (std::size_t r = 0; r < rows(); ++r) y[r] = std::max(-d_[slack_var_[r]], 0.0);
  return y;
}

double DenseLP::objective() const {
  const auto x = primal();
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += cost_[k] * x[k];
  return s;
}

double DenseLP::reduced_cost(std::size_t column) const { return d_[struct_var_.at(column)]; }

double DenseLP::pricing(double cost, std::span<const double> coeffs) const {
  if (coeffs.size() != rows()) throw ParameterError("DenseLP::pricing: one coefficient per row expected");
  double d = cost;
  for (std::size_t r = 0; r < coeffs.size(); ++r)
    if (coeffs[r] != 0.0) d += coeffs[r] * d_[slack_var_[r]];
  return d;
}

std::vector<double> DenseLP::row_slacks() const {
  std::vector<double> s(rows(), 0.0);
  for (std::size_t r = 0; r < rows(); ++r) {
    const long p = position_[slack_var_[r]];
    if (p >= 0) s[r] = beta_[p];
  }
  return s;
}

}  // namespace rieszlab::lp
