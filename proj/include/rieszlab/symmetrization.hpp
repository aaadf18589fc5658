#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rieszlab/point.hpp"

namespace rieszlab::sym {

/// Three pairwise distinct points of R^n.
///
/// Distinctness means "not exactly equal"; near-coincident triples are
/// accepted and are the caller's numerical risk.
class Triple {
 public:
  Triple(Point x1, Point x2, Point x3);

  int dim() const { return p_[0].dim(); }
  const Point& operator[](int k) const { return p_[k]; }

 private:
  Point p_[3];
};

/// Bundled per-triple quantities. Coordinates in `p` and `m` are 0-based slots.
struct TripleStats {
  std::vector<double> p;             ///< p_{alpha,i} for every coordinate
  std::optional<double> curvature;   ///< Menger curvature, planar triples only
  double longest_side = 0.0;         ///< L
  std::vector<double> spread;        ///< m_i, largest |x_j^i - x_k^i| over the pairs
  double sides[3] = {0.0, 0.0, 0.0}; ///< |x1-x2|, |x2-x3|, |x1-x3|
};

/// Inverse circumradius 4A / (|x1-x2||x1-x3||x2-x3|); 0 for collinear triples.
double menger_curvature(const Triple& t);

/// Symmetrized product of x_i/|x|^2 over the triple, via the sum-of-squares form
///   sum_{j != i} (a_i b_j - b_i a_j)^2 / (|a|^2 |b|^2 |a+b|^2),  a = x2-x1, b = x3-x2.
/// `coordinate` is 1-based.
double perm_sum(int coordinate, const Triple& t);

/// The homogeneity -alpha analogue for 0 < alpha <= 1. At alpha = 1 this
/// delegates to perm_sum (the non-cancelling form).
double perm_sum_alpha(double alpha, int coordinate, const Triple& t);

/// Closed form
///   (a_i^2|b|^s + b_i^2|a|^s + a_i b_i(|b|^s + |a|^s - |a+b|^s)) / (|a|^s |b|^s |a+b|^s),  s = 1+alpha,
/// for any alpha > 0 and 0-based coordinate. This is the three-permutation
/// sum itself; no range or distinctness checks.
double perm_sum_alpha_raw(double alpha, int coordinate0, const Point& x1, const Point& x2, const Point& x3);

/// All of the above for one triple; alpha in (0, 1].
TripleStats triple_stats(double alpha, const Triple& t);

enum class SweepCheck {
  positivity,      ///< p_{alpha,i} >= -tol for every coordinate
  plane_identity,  ///< |4 p_1 - c^2| <= tol c^2 (first error) and |p_1 - p_2| <= tol2 max(p_1, p_2) (second)
  sandwich,        ///< (2 - 2^alpha) m_i^2 / L^{2+2alpha} <= p_{alpha,i} <= 3 m_i^2 / L^{2+2alpha}, relative slack tol
  collinear,       ///< triples x, x + s v, x + t v: |p_i| d_min^2 <= tol, d_min the shortest side; alpha = 1 only
};

const char* to_string(SweepCheck c);

struct SweepReport {
  SweepCheck check = SweepCheck::positivity;
  int dim = 2;
  double alpha = 1.0;
  std::size_t samples = 0;
  std::size_t violations[2] = {0, 0};  ///< sandwich: upper, lower; identity: c^2 form, p_1 = p_2
  double max_error[2] = {0.0, 0.0};    ///< positivity: max(-p); identity: relative errors; sandwich: p/upper - 1, 1 - p/lower
  std::size_t degenerate_nonzero = 0;  ///< sandwich: coordinates with m_i = 0 but p_{alpha,i} != 0
  std::optional<std::array<Point, 3>> witness;  ///< first violating triple in sample order
  std::size_t total_violations() const { return violations[0] + violations[1] + degenerate_nonzero; }
};

struct SweepOptions {
  double tol = 1e-15;   ///< positivity: absolute; identity: c^2 form; sandwich: relative slack
  double tol2 = 1e-12;  ///< identity: p_1 = p_2
  bool degenerate = false;  ///< sandwich: draw every third triple with a shared random coordinate 1
};

/// Randomized sweep over `count` triples uniform in [-1, 1]^dim. Samples are
/// drawn per fixed block from (seed, block), so the report does not depend on
/// the thread count.
SweepReport sweep(SweepCheck check, int dim, double alpha, std::size_t count, std::uint64_t seed,
                  const SweepOptions& opts = {});

}  // namespace rieszlab::sym
