#pragma once

#include <functional>
#include <span>
#include <string>

#include "rieszlab/kernels.hpp"
#include "rieszlab/measures.hpp"
#include "rieszlab/point.hpp"

namespace rieszlab::transforms {

using measures::DiscreteMeasure;

/// Sum of k(x - y) mass(y) over atoms with |y - x| > eps (eps = 0 drops only an atom at x).
double truncated_transform(const DiscreteMeasure& mu, const kernels::KernelSpec& spec, double eps, const Point& x);
/// Vector form; spec must be a vector spec.
Point truncated_transform_vector(const DiscreteMeasure& mu, const kernels::KernelSpec& spec, double eps, const Point& x);

struct EnergyReport {
  double l2_energy = 0.0;
  double perm_energy = 0.0;
  double diagonal = 0.0;
  double residual = 0.0;  ///< l2_energy - perm_energy / 3 - diagonal
  double eps = 0.0;
  int component = 1;
  double alpha = 1.0;
};

/// L2(mu) energy of the truncated transform in one coordinate, split into its
/// triple (permutation) part and its diagonal part. Exact identity when
/// eps < min_separation. Bit-identical for any thread count.
EnergyReport energy_identity(const DiscreteMeasure& mu, int component, double alpha, double eps);

/// Sum over atoms of mass * |R_eps(mu)(x)|^2 for the full vector transform.
double vector_energy(const DiscreteMeasure& mu, double alpha, double eps);

std::string to_json(const EnergyReport& r);

/// Radial C^2 bump: 1 on |x - center| <= inner, 0 beyond outer, quintic
/// smoothstep in between.
struct RadialBump {
  Point center;
  double inner = 0.0;
  double outer = 1.0;

  double value(const Point& x) const;
  double laplacian(const Point& x) const;
};

struct RecoverOptions {
  double h = 0.0;  ///< quadrature step; 0 selects (outer - inner) / 32
  double T = 0.0;  ///< half-line truncation; must exceed the bump radius
};

struct RecoverResult {
  double value = 0.0;
  double value_2T = 0.0;      ///< same quadrature on [-2T, 0]
  double tail_change = 0.0;   ///< value_2T - value
};

/// Approximates <mu, phi> from the first-coordinate planar potential f = k^1 * mu
/// alone, as (1/2pi) * integral over t in [-T, 0] of ((Laplacian phi-bar) * f)(t, 0).
RecoverResult recover_pairing(const std::function<double(const Point&)>& potential, const RadialBump& phi,
                              const RecoverOptions& opts);

/// Convenience form with f evaluated from a planar measure; T defaults to ten
/// times the diameter of the atoms together with the bump support.
RecoverResult recover_pairing(const DiscreteMeasure& mu, const RadialBump& phi, RecoverOptions opts = {});

/// Axis-parallel square [corner, corner + side]^2.
struct Square {
  Point corner;
  double side = 0.0;
};

/// Tensor-product cutoff: 1 on the concentric half-size square, 0 off Q.
double cutoff(const Square& q, const Point& x);

struct LocalizationRecord {
  double lhs = 0.0;
  double potential_sup = 0.0;
  double growth = 0.0;
  double ratio = 0.0;
};

/// Compares sup |k^i * (phi_Q mu)| with sup |k^i * mu| + linear growth of mu.
/// Suprema are taken over a grid x grid lattice on the bounding box of the
/// support and Q, inflated by half its size, skipping points within
/// min_separation / 4 of an atom.
LocalizationRecord localization_probe(const DiscreteMeasure& mu, int component, const Square& q, int grid);

std::string to_json(const LocalizationRecord& r);

enum class VerticalWindow {
  full,       ///< every atom of the lift
  symmetric,  ///< only atoms with |y3 - x3| <= min(top - x3, x3 - bottom)
};

/// Max over the samples of |sum k^3(x - y) nu(y)|, kernel x_3/|x|^3, with
/// |y3 - x3| <= eps removed and atoms at planar distance in (0, eps] removed.
/// Contributions at equal vertical offsets are paired before summation.
double r3_flatness(const DiscreteMeasure& nu, double eps, std::span<const Point> samples,
                   VerticalWindow window = VerticalWindow::symmetric);

}  // namespace rieszlab::transforms
