#pragma once

#include <optional>

#include "rieszlab/point.hpp"

namespace rieszlab::kernels {

/// Riesz kernel x/|x|^{1+alpha} on R^dim, either one coordinate or the full vector.
///
/// Coordinates are 1-based, matching the usual x_1, ..., x_n notation.
class KernelSpec {
 public:
  static KernelSpec scalar(int dim, double alpha, int coordinate);
  static KernelSpec vector(int dim, double alpha);

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  bool is_vector() const { return !coordinate_.has_value(); }
  /// 1-based coordinate index; throws for vector specs.
  int coordinate() const;

 private:
  KernelSpec(int dim, double alpha, std::optional<int> coordinate);

  int dim_;
  double alpha_;
  std::optional<int> coordinate_;
};

/// r^{-alpha} for r > 0. Slots are evaluated as (x_i / r) * r^{-alpha} by both
/// evaluators, so they agree bit-for-bit and stay finite at extreme scales.
double inverse_power(double r, double alpha);

/// x_i / |x|^{1+alpha}.
double eval_scalar(const KernelSpec& spec, const Point& x);

/// x / |x|^{1+alpha}.
Point eval_vector(const KernelSpec& spec, const Point& x);

/// Unchecked hot-loop variant: x_i / |x|^{1+alpha} for 0-based i, x != 0 assumed.
inline double component_unchecked(const Point& x, int i0, double alpha, double r2) {
  if (alpha == 1.0) return x[i0] / r2;
  const double r = std::sqrt(r2);
  if (alpha == 0.5) return x[i0] / (r * std::sqrt(r));
  return x[i0] / std::pow(r, 1.0 + alpha);
}

}  // namespace rieszlab::kernels
