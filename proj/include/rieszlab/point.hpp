#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>

namespace rieszlab {

/// Largest ambient dimension supported by the fixed-capacity point type.
inline constexpr int kMaxDim = 8;

/// A point (or vector) in R^n with 1 <= n <= kMaxDim, stored inline.
class Point {
 public:
  Point() = default;

  explicit Point(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Point: dimension out of range");
  }

  Point(std::initializer_list<double> coords) : Point(static_cast<int>(coords.size())) {
    int k = 0;
    for (double c : coords) c_[k++] = c;
  }

  explicit Point(std::span<const double> coords) : Point(static_cast<int>(coords.size())) {
    for (int k = 0; k < dim_; ++k) c_[k] = coords[k];
  }

  int dim() const { return dim_; }

  double& operator[](int k) { return c_[k]; }
  double operator[](int k) const { return c_[k]; }

  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }
  std::span<double> coords() { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  Point& operator+=(const Point& o) {
    for (int k = 0; k < dim_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Point& operator-=(const Point& o) {
    for (int k = 0; k < dim_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Point& operator*=(double s) {
    for (int k = 0; k < dim_; ++k) c_[k] *= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend Point operator-(Point a) { return a *= -1.0; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_) return false;
    for (int k = 0; k < a.dim_; ++k)
      if (a.c_[k] != b.c_[k]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

/// Euclidean norm with max-abs scaling, safe against overflow and underflow.
inline double stable_norm(std::span<const double> v) {
  double scale = 0.0;
  for (double c : v) scale = std::max(scale, std::abs(c));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (double c : v) {
    const double r = c / scale;
    sum += r * r;
  }
  return scale * std::sqrt(sum);
}

inline double norm(const Point& p) { return stable_norm(p.coords()); }

inline double distance(const Point& a, const Point& b) { return norm(a - b); }

/// Plain sum of squares; used in hot loops where coordinates are O(1).
inline double squared_distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (int k = 0; k < a.dim(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (int k = 0; k < a.dim(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace rieszlab
