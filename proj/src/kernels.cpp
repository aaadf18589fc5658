#include "rieszlab/kernels.hpp"

#include <cmath>
#include <string>

#include "rieszlab/errors.hpp"

namespace rieszlab::kernels {

KernelSpec::KernelSpec(int dim, double alpha, std::optional<int> coordinate)
    : dim_(dim), alpha_(alpha), coordinate_(coordinate) {
  if (dim < 2 || dim > kMaxDim) throw ParameterError("KernelSpec: dimension must lie in 2.." + std::to_string(kMaxDim));
  if (!(alpha > 0.0 && alpha < dim)) throw ParameterError("KernelSpec: alpha must lie in (0, dim)");
  if (coordinate && (*coordinate < 1 || *coordinate > dim))
    throw ParameterError("KernelSpec: coordinate index must lie in 1..dim");
}

KernelSpec KernelSpec::scalar(int dim, double alpha, int coordinate) { return {dim, alpha, coordinate}; }

KernelSpec KernelSpec::vector(int dim, double alpha) { return {dim, alpha, std::nullopt}; }

int KernelSpec::coordinate() const {
  if (!coordinate_) throw ParameterError("KernelSpec: vector kernel has no single coordinate");
  return *coordinate_;
}

double inverse_power(double r, double alpha) {
  if (alpha == 1.0) return 1.0 / r;
  return std::pow(r, -alpha);
}

namespace {

double checked_norm(const Point& x) {
  const double r = norm(x);
  if (r == 0.0) throw DomainError("Riesz kernel evaluated at its singularity x = 0");
  return r;
}

}  // namespace

double eval_scalar(const KernelSpec& spec, const Point& x) {
  if (x.dim() != spec.dim()) throw ParameterError("eval_scalar: point dimension mismatch");
  const double r = checked_norm(x);
  return (x[spec.coordinate() - 1] / r) * inverse_power(r, spec.alpha());
}

Point eval_vector(const KernelSpec& spec, const Point& x) {
  if (x.dim() != spec.dim()) throw ParameterError("eval_vector: point dimension mismatch");
  const double r = checked_norm(x);
  const double f = inverse_power(r, spec.alpha());
  Point out(x.dim());
  for (int k = 0; k < x.dim(); ++k) out[k] = (x[k] / r) * f;
  return out;
}

}  // namespace rieszlab::kernels
