#pragma once

// Independent reference implementations used only by the tests. They follow
// the defining formulas directly and share no code with the library.

#include <cmath>
#include <random>
#include <vector>

#include "rieszlab/point.hpp"

namespace oracle {

using rieszlab::Point;

inline double kernel(const Point& x, int i0, double alpha) {
  double r2 = 0.0;
  for (int k = 0; k < x.dim(); ++k) r2 += x[k] * x[k];
  return x[i0] / std::pow(std::sqrt(r2), 1.0 + alpha);
}

// Sum over the three choices of apex j of k(x_j - x_a) k(x_j - x_b).
inline double apex_sum(const Point& x1, const Point& x2, const Point& x3, int i0, double alpha) {
  return kernel(x1 - x2, i0, alpha) * kernel(x1 - x3, i0, alpha) +
         kernel(x2 - x1, i0, alpha) * kernel(x2 - x3, i0, alpha) +
         kernel(x3 - x1, i0, alpha) * kernel(x3 - x2, i0, alpha);
}

inline Point random_point(std::mt19937_64& rng, int dim, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point p(dim);
  for (int k = 0; k < dim; ++k) p[k] = u(rng);
  return p;
}

inline double relerr(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace oracle
