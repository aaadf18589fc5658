#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rieszlab/measures.hpp"

namespace rieszlab::capacity {

using measures::DiscreteMeasure;

/// How the potential bound is written as linear rows.
enum class RowMode {
  component,       ///< |k^j * m| <= bound for each j in J: two rows per point and component
  vector_polygon,  ///< u . (k * m) <= bound for a fixed set of unit directions u
};

/// mu(Q) <= cap over the listed support nodes.
struct GrowthRow {
  measures::Cube cube;
  std::vector<std::size_t> members;
  double cap = 0.0;
};

struct CapacityProblem {
  DiscreteMeasure support{2, {}, {}};  ///< geometry only; masses are the unknowns
  std::vector<Point> constraints;
  std::vector<int> components;         ///< J, 1-based
  double alpha = 1.0;
  double bound = 1.0;
  double delta = 0.0;
  double h = 0.0;
  RowMode mode = RowMode::component;
  std::vector<Point> directions;       ///< unit vectors, vector_polygon mode only
  std::vector<GrowthRow> growth_rows;

  /// Rows per constraint point.
  std::size_t rows_per_point() const;
  /// Potential rows plus growth rows.
  std::size_t row_count() const;
  /// Coefficient of support node i in potential row (point, sub).
  double coefficient(std::size_t point, std::size_t sub, std::size_t node) const;
};

struct BuildOptions {
  double h = 0.0;              ///< constraint lattice spacing (required)
  double delta = 0.0;          ///< exclusion radius around support; 0 selects h / 2
  double box_inflate = 0.5;    ///< margin around the support box, in units of its diameter
  double bound = 1.0;
  bool with_growth = false;
  double growth_s_min = 0.0;   ///< smallest growth cube; 0 selects h
  RowMode mode = RowMode::component;
  int directions = 16;         ///< planar polygon directions (vector_polygon mode)
};

/// Lattice of spacing h anchored at bbox_min - ceil(margin / h) h, covering the
/// support box inflated by margin = box_inflate * diam, minus points closer
/// than delta to the support.
std::vector<Point> constraint_lattice(const DiscreteMeasure& support, double h, double delta, double box_inflate);

/// Unit directions: 2-D regular K-gon, otherwise the normalized nonzero vectors of {-1,0,1}^n.
std::vector<Point> polygon_directions(int dim, int planar_count);

/// One growth row per occupied cube of the half-shifted dyadic family from
/// s_min up to the diameter, cap = side^alpha.
std::vector<GrowthRow> growth_rows(const DiscreteMeasure& support, double alpha, double s_min);

CapacityProblem build_problem(const DiscreteMeasure& support, std::vector<int> components, double alpha,
                              const BuildOptions& opts);

enum class SolverStatus { optimal, infeasible, unbounded, iteration_limit };
const char* to_string(SolverStatus s);

struct CapacitySolution {
  double value = 0.0;
  std::vector<double> masses;                  ///< one per support node
  std::vector<std::size_t> active_constraints; ///< row ids with positive dual in the final LP
  SolverStatus status = SolverStatus::optimal;
  double duality_gap = 0.0;   ///< certified upper bound minus value
  double upper_bound = 0.0;   ///< weak-duality bound b^T y / min_i (A^T y)_i
  double max_violation = 0.0; ///< largest row excess after the final rescale, independently evaluated
  std::size_t lp_rows = 0;
  std::size_t lp_columns = 0;
  std::size_t rounds = 0;
  std::size_t pivots = 0;
};

struct SolveOptions {
  std::size_t max_rounds = 400;
  std::size_t max_pivots = 2000000;
  std::size_t rows_per_round = 200;
  std::size_t columns_per_round = 200;
};

/// Maximizes the total mass subject to every row of the problem. Rows and
/// columns enter lazily; the returned masses are re-verified against every
/// row by direct evaluation and scaled down if any row is exceeded.
CapacitySolution solve(const CapacityProblem& problem, const SolveOptions& opts = {});

/// Largest (row value - row bound) over all rows of the problem, by direct
/// kernel evaluation of the given masses.
double max_row_excess(const CapacityProblem& problem, const std::vector<double>& masses);

/// Named test geometries at constraint spacing h.
enum class GeometryKind { disk, segment, square_boundary, cantor_cells };

struct Geometry {
  GeometryKind kind = GeometryKind::disk;
  int generation = 0;  ///< cantor_cells only

  std::string name() const;
  DiscreteMeasure support(double h) const;
};

Geometry parse_geometry(const std::string& text);

/// Positive capacity with the full vector potential bounded (polygon rows).
CapacitySolution gamma_plus(const Geometry& geometry, double h, double alpha = 1.0, double delta = 0.0);
CapacitySolution gamma_plus(const DiscreteMeasure& support, const BuildOptions& opts, double alpha = 1.0);

/// Positive capacity with every component except `excluded` bounded, plus growth rows.
CapacitySolution gamma_hat_plus(const Geometry& geometry, double h, int excluded, double alpha = 1.0,
                                double delta = 0.0);
CapacitySolution gamma_hat_plus(const DiscreteMeasure& support, const BuildOptions& opts, int excluded,
                                double alpha = 1.0);

struct ComparabilityRow {
  std::string geometry;
  double h = 0.0;
  double delta = 0.0;
  CapacitySolution plus;
  CapacitySolution hat_plus;
  double ratio = 0.0;
};

/// gamma_hat_plus / gamma_plus per geometry at spacing h and at h / 2.
std::vector<ComparabilityRow> comparability_experiment(const std::vector<Geometry>& geometries, int excluded, double h);

struct SeparationRow {
  int generation = 0;
  double h = 0.0;
  CapacitySolution hat_with_growth;  ///< J = {2..n} plus alpha-growth rows
  CapacitySolution all_components;   ///< J = {1..n}
};

/// Constraint points for cantor_linear(alpha, g): for every generation k <= g,
/// lattice points of spacing l_k / 2 within l_k of a generation-k interval
/// (l_k = r^k), minus points closer than delta to an atom.
std::vector<Point> cantor_linear_constraints(double alpha, int generation, double delta);

std::vector<SeparationRow> alpha_separation_experiment(double alpha, int g_max);

std::string to_json(const CapacityProblem& p);
std::string to_json(const CapacitySolution& s);

}  // namespace rieszlab::capacity
