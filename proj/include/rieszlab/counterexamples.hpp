#pragma once

#include <cstddef>
#include <numbers>

#include "rieszlab/measures.hpp"

namespace rieszlab::counterexamples {

/// Constant c in k^1 * Laplacian(h) = c d_1 h for the planar kernel x / |x|^2.
inline constexpr double kTentCalibration = 2.0 * std::numbers::pi;

/// mu = Laplacian of h(x, y) = f(x) g(y): f the unit tent on [-1, 1], g a tent of
/// peak 1/n^2 on each I_n = [2^{-n-1}, 2^{-n}], 1 <= n <= n_max.
struct TentSpec {
  int n_max = 20;
  double c = 1.0;  ///< reported potentials are c * d_j h; kTentCalibration gives the true convolution
};

/// Derivatives at kinks are left derivatives.
double tent_f(double x);
double tent_f_prime(double x);
double tent_g(const TentSpec& spec, double y);
double tent_g_prime(const TentSpec& spec, double y);

/// Exact potentials c f'(x) g(y) and c f(x) g'(y).
double tent_potential_k1(const TentSpec& spec, double x, double y);
double tent_potential_k2(const TentSpec& spec, double x, double y);

struct TentGrowth {
  int n = 0;
  double ratio = 0.0;       ///< 2 (2^{n+2} / n^2)(1 - mu_n)
  double flux_ratio = 0.0;  ///< |boundary flux of grad h over Q_n| / l(Q_n), by quadrature
  double mismatch = 0.0;    ///< relative difference of the two
};

/// |<mu, chi_{Q_n}>| / l(Q_n) for Q_n = I_n x I_n.
TentGrowth tent_growth_ratio(const TentSpec& spec, int n);

struct TentGridSup {
  double k1 = 0.0;
  double k2 = 0.0;
  std::size_t points = 0;
};

/// Sup of both potentials over nx x ny points: x uniform on [-1.5, 1.5]; half
/// of the y values uniform on [-0.5, 1.5], half geometric on [2^{-n_max-2}, 1].
TentGridSup tent_grid_sup(const TentSpec& spec, std::size_t nx, std::size_t ny);

/// log+(1/|t|).
double log_density(double t);

/// (1/pi) p.v. int_{-1}^{1} log(1/|t|) / (x - t) dt.
double hilbert_logplus(double x);

/// Same quantity for |x| > 1 through (1/pi) int_{-1/x}^{1/x} log(1/(1-u)) du/u.
double hilbert_logplus_substitution(double x);

/// Hilbert transform of log(1/|t|) over the whole line, |x| < 1.
double hilbert_log_fullline(double x);

struct LogPotential {
  double value = 0.0;          ///< Q_y f(x) by direct quadrature
  double poisson_route = 0.0;  ///< P_|y| (Hf)(x)
  double mismatch = 0.0;       ///< |value - poisson_route|
  bool accuracy_warning = false;
};

/// Conjugate Poisson transform of f = log+(1/|t|); the k^1 potential of f dt is pi times this.
LogPotential log_measure_potential(double x, double y);

/// mu([-2^{-j}, 2^{-j}]) / 2^{1-j} = 1 + j log 2.
double log_measure_growth(int j);

/// Atoms (t, 0) at the midpoints of the 2^{level+1} dyadic cells of [-1, 1],
/// each carrying the exact mass of f dt on its cell.
measures::DiscreteMeasure log_measure_discretization(int level);

struct HilbertSup {
  double sup = 0.0;
  double argmax = 0.0;
};

HilbertSup hilbert_logplus_sup(double x_lo, double x_hi, std::size_t count);

}  // namespace rieszlab::counterexamples
