#pragma once

#include <span>
#include <string>
#include <vector>

#include "rieszlab/point.hpp"

namespace rieszlab::measures {

/// Finite atomic measure: support points with non-negative masses.
///
/// Immutable after construction. The minimum pairwise separation is computed
/// on construction (infinity for fewer than two atoms); coincident atoms are
/// rejected.
class DiscreteMeasure {
 public:
  DiscreteMeasure(int dim, std::vector<Point> points, std::vector<double> masses);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& masses() const { return masses_; }
  const Point& point(std::size_t k) const { return points_[k]; }
  double mass(std::size_t k) const { return masses_[k]; }
  double total_mass() const { return total_mass_; }
  double min_separation() const { return min_separation_; }

  /// Largest pairwise distance (0 for a single atom).
  double diameter() const;
  /// Componentwise bounding box.
  std::pair<Point, Point> bounding_box() const;

  /// Same geometry with new masses.
  DiscreteMeasure with_masses(std::vector<double> masses) const;
  /// Spatial dilation x -> lambda x, masses unchanged.
  DiscreteMeasure scaled(double lambda) const;
  /// Union of atoms; supports must be disjoint.
  DiscreteMeasure combined(const DiscreteMeasure& other) const;

 private:
  int dim_;
  std::vector<Point> points_;
  std::vector<double> masses_;
  double total_mass_ = 0.0;
  double min_separation_ = 0.0;
};

/// Exact minimum pairwise distance (sort-and-sweep along the first axis).
double min_pairwise_distance(std::span<const Point> points);

/// Centers of the 4^g generation-g squares of the corner-quarter Cantor set in
/// [0,1]^2, mass 4^{-g} each. g <= 8.
DiscreteMeasure cantor_corner_quarter(int generation);

/// The generation-g corner squares, each filled with a per_side x per_side
/// lattice of cell-centered nodes, masses 4^{-g} / per_side^2. A resolution-refinable
/// discretization of the compact set E_g itself.
DiscreteMeasure cantor_corner_quarter_cells(int generation, int per_side);

/// Two-piece Cantor set on the x_1-axis with ratio r = 2^{-1/alpha}: centers of
/// the 2^g generation-g intervals of [0,1], embedded in R^dim, mass 2^{-g} each.
DiscreteMeasure cantor_linear(double alpha, int generation, int dim = 2);

/// Ratio used by cantor_linear.
double cantor_linear_ratio(double alpha);

/// Lifts a planar measure to R^3 by stacking each atom over [-half_len, half_len]:
/// round(2 * half_len * per_unit) heights symmetric about 0, stack mass =
/// atom mass * 2 * half_len, split evenly.
DiscreteMeasure product_with_interval(const DiscreteMeasure& base, double per_unit, double half_len);

/// Lattice nodes (i h, j h) inside the closed disk of the given radius.
DiscreteMeasure grid_on_disk(double radius, double h, double node_mass = 0.0);
/// Nodes 0, len/k, ..., len on the x_1-axis of R^2, k = ceil(len / h).
DiscreteMeasure grid_on_segment(double len, double h, double node_mass = 0.0);
/// Nodes along the boundary of [-side/2, side/2]^2, ceil(side / h) intervals per edge.
DiscreteMeasure grid_on_square_boundary(double side, double h, double node_mass = 0.0);

/// Axis-parallel closed cube [corner, corner + side].
struct Cube {
  Point corner;
  double side = 0.0;

  bool contains(const Point& x) const;
};

/// Dyadic ladder s_min * 2^k, k = 0, 1, ..., up to and including the first
/// scale >= max(diameter, s_min). Ascending.
std::vector<double> dyadic_scales(double s_min, double diameter);

/// A cube of the half-shifted lattice family and the atoms it contains.
struct OccupiedCube {
  Cube cube;
  std::vector<std::size_t> members;
};

/// All closed cubes of side `side` on the lattices side*Z^n and
/// side*(Z + 1/2)^n (every per-axis combination of the two offsets) that
/// contain at least one of the points. Deterministic order.
std::vector<OccupiedCube> occupied_cubes(std::span<const Point> points, double side);

struct ScaleGrowth {
  double scale = 0.0;
  double max_ratio = 0.0;
  Point witness;  ///< corner of a maximizing cube
};

struct GrowthReport {
  double alpha = 0.0;
  std::vector<ScaleGrowth> per_scale;  ///< largest scale first
  double overall = 0.0;
};

/// Lower estimate of L_alpha(mu) = sup_Q mu(Q) / l(Q)^alpha over the
/// half-shifted dyadic cube family at the scales dyadic_scales(s_min, diam).
GrowthReport growth_constant(const DiscreteMeasure& mu, double alpha, double s_min);

/// JSON document {"dim": n, "points": [[...]], "masses": [...]}.
std::string to_json(const DiscreteMeasure& mu);
DiscreteMeasure from_json(const std::string& text);

}  // namespace rieszlab::measures
