#include "rieszlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "json.hpp"

#include "rieszlab/errors.hpp"
#include "rieszlab/parallel.hpp"

namespace rieszlab::measures {

namespace {

// Generic projection axis for the separation sweep; irrational ratios keep
// lattice points from collapsing onto equal projections.
Point sweep_direction(int dim) {
  static constexpr double kWeights[kMaxDim] = {1.0,        0.6180339887, 0.4142135624, 0.7320508076,
                                               0.2360679775, 0.5857864376, 0.3166247904, 0.8284271247};
  Point d(dim);
  for (int k = 0; k < dim; ++k) d[k] = kWeights[k];
  return (1.0 / norm(d)) * d;
}

}  // namespace

double min_pairwise_distance(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  const Point dir = sweep_direction(points[0].dim());
  std::vector<std::pair<double, std::size_t>> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = {dot(points[k], dir), k};
  std::sort(order.begin(), order.end());
  double best2 = std::numeric_limits<double>::infinity();
  double best = best2;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (order[b].first - order[a].first > best) break;
      const double d2 = squared_distance(points[order[a].second], points[order[b].second]);
      if (d2 < best2) {
        best2 = d2;
        best = std::sqrt(d2) * (1.0 + 1e-12);
      }
    }
  }
  // Report the stably computed distance of the closest pair.
  if (best2 == 0.0) return 0.0;
  double exact = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (order[b].first - order[a].first > best) break;
      exact = std::min(exact, distance(points[order[a].second], points[order[b].second]));
    }
  }
  return exact;
}

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<Point> points, std::vector<double> masses)
    : dim_(dim), points_(std::move(points)), masses_(std::move(masses)) {
  if (dim < 1 || dim > kMaxDim) throw ParameterError("DiscreteMeasure: dimension out of range");
  if (points_.size() != masses_.size()) throw ParameterError("DiscreteMeasure: points and masses differ in length");
  for (const Point& p : points_) {
    if (p.dim() != dim) throw ParameterError("DiscreteMeasure: point dimension mismatch");
    for (double c : p.coords())
      if (!std::isfinite(c)) throw DomainError("DiscreteMeasure: non-finite coordinate");
  }
  for (double m : masses_)
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("DiscreteMeasure: masses must be finite and non-negative");
  total_mass_ = pairwise_sum(masses_);
  min_separation_ = min_pairwise_distance(points_);
  if (min_separation_ == 0.0) throw DomainError("DiscreteMeasure: coincident atoms");
}

double DiscreteMeasure::diameter() const {
  const std::size_t n = points_.size();
  if (n < 2) return 0.0;
  const auto [lo, hi] = bounding_box();
  // Seed with the pairs of per-axis extreme points, then scan only points whose
  // farthest bounding-box corner could still beat the current best.
  std::vector<std::size_t> extremes;
  for (int k = 0; k < dim_; ++k) {
    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (points_[i][k] < points_[imin][k]) imin = i;
      if (points_[i][k] > points_[imax][k]) imax = i;
    }
    extremes.push_back(imin);
    extremes.push_back(imax);
  }
  double best2 = 0.0;
  for (std::size_t a : extremes)
    for (std::size_t b : extremes) best2 = std::max(best2, squared_distance(points_[a], points_[b]));
  for (std::size_t i = 0; i < n; ++i) {
    double reach2 = 0.0;
    for (int k = 0; k < dim_; ++k) {
      const double r = std::max(points_[i][k] - lo[k], hi[k] - points_[i][k]);
      reach2 += r * r;
    }
    if (reach2 <= best2) continue;
    for (std::size_t j = 0; j < n; ++j) best2 = std::max(best2, squared_distance(points_[i], points_[j]));
  }
  // Recompute the winning distance stably.
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double reach2 = 0.0;
    for (int k = 0; k < dim_; ++k) {
      const double r = std::max(points_[i][k] - lo[k], hi[k] - points_[i][k]);
      reach2 += r * r;
    }
    if (reach2 < best2 * (1.0 - 1e-12)) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (squared_distance(points_[i], points_[j]) >= best2 * (1.0 - 1e-12))
        best = std::max(best, distance(points_[i], points_[j]));
  }
  return best;
}

std::pair<Point, Point> DiscreteMeasure::bounding_box() const {
  if (points_.empty()) throw PreconditionError("bounding_box: empty measure");
  Point lo = points_[0], hi = points_[0];
  for (const Point& p : points_) {
    for (int k = 0; k < dim_; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  return {lo, hi};
}

DiscreteMeasure DiscreteMeasure::with_masses(std::vector<double> masses) const {
  return DiscreteMeasure(dim_, points_, std::move(masses));
}

DiscreteMeasure DiscreteMeasure::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw ParameterError("scaled: lambda must be positive");
  std::vector<Point> pts = points_;
  for (Point& p : pts) p *= lambda;
  return DiscreteMeasure(dim_, std::move(pts), masses_);
}

DiscreteMeasure DiscreteMeasure::combined(const DiscreteMeasure& other) const {
  if (other.dim_ != dim_) throw ParameterError("combined: dimension mismatch");
  std::vector<Point> pts = points_;
  std::vector<double> ms = masses_;
  pts.insert(pts.end(), other.points_.begin(), other.points_.end());
  ms.insert(ms.end(), other.masses_.begin(), other.masses_.end());
  return DiscreteMeasure(dim_, std::move(pts), std::move(ms));
}

namespace {

// Lower-left corners of the generation-g corner squares, generation order.
std::vector<Point> corner_quarter_corners(int generation) {
  std::vector<Point> corners{Point{0.0, 0.0}};
  double side = 1.0;
  for (int g = 0; g < generation; ++g) {
    const double child = side / 4.0;
    std::vector<Point> next;
    next.reserve(corners.size() * 4);
    for (const Point& c : corners) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) next.push_back(Point{c[0] + a * 3.0 * child, c[1] + b * 3.0 * child});
    }
    corners = std::move(next);
    side = child;
  }
  return corners;
}

}  // namespace

DiscreteMeasure cantor_corner_quarter(int generation) {
  if (generation < 0) throw ParameterError("cantor_corner_quarter: generation must be >= 0");
  if (generation > 8) throw ResourceError("cantor_corner_quarter: generation above 8 exceeds 4^8 atoms");
  const double side = std::ldexp(1.0, -2 * generation);
  std::vector<Point> pts = corner_quarter_corners(generation);
  for (Point& p : pts) {
    p[0] += side / 2.0;
    p[1] += side / 2.0;
  }
  std::vector<double> ms(pts.size(), side);
  return DiscreteMeasure(2, std::move(pts), std::move(ms));
}

DiscreteMeasure cantor_corner_quarter_cells(int generation, int per_side) {
  if (generation < 0 || per_side < 1) throw ParameterError("cantor_corner_quarter_cells: bad parameters");
  if (generation > 8 || std::ldexp(static_cast<double>(per_side) * per_side, 2 * generation) > 4e6)
    throw ResourceError("cantor_corner_quarter_cells: too many nodes");
  const double side = std::ldexp(1.0, -2 * generation);
  const double cell = side / per_side;
  const double node_mass = side / (static_cast<double>(per_side) * per_side);
  std::vector<Point> pts;
  for (const Point& c : corner_quarter_corners(generation)) {
    for (int a = 0; a < per_side; ++a)
      for (int b = 0; b < per_side; ++b) pts.push_back(Point{c[0] + (a + 0.5) * cell, c[1] + (b + 0.5) * cell});
  }
  std::vector<double> ms(pts.size(), node_mass);
  return DiscreteMeasure(2, std::move(pts), std::move(ms));
}

double cantor_linear_ratio(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("cantor_linear: alpha must lie in (0, 1)");
  return std::exp2(-1.0 / alpha);
}

DiscreteMeasure cantor_linear(double alpha, int generation, int dim) {
  const double r = cantor_linear_ratio(alpha);
  if (generation < 0) throw ParameterError("cantor_linear: generation must be >= 0");
  if (generation > 20) throw ResourceError("cantor_linear: generation above 20 exceeds 2^20 atoms");
  if (dim < 1 || dim > kMaxDim) throw ParameterError("cantor_linear: dimension out of range");
  std::vector<double> left{0.0};
  double len = 1.0;
  for (int g = 0; g < generation; ++g) {
    std::vector<double> next;
    next.reserve(left.size() * 2);
    for (double a : left) {
      next.push_back(a);
      next.push_back(a + len * (1.0 - r));
    }
    left = std::move(next);
    len *= r;
  }
  std::vector<Point> pts;
  pts.reserve(left.size());
  for (double a : left) {
    Point p(dim);
    p[0] = a + len / 2.0;
    pts.push_back(p);
  }
  std::vector<double> ms(pts.size(), std::ldexp(1.0, -generation));
  return DiscreteMeasure(dim, std::move(pts), std::move(ms));
}

DiscreteMeasure product_with_interval(const DiscreteMeasure& base, double per_unit, double half_len) {
  if (base.dim() != 2) throw ParameterError("product_with_interval: base must be planar");
  if (!(per_unit > 0.0) || !(half_len > 0.0)) throw ParameterError("product_with_interval: bad parameters");
  const long count = std::lround(2.0 * half_len * per_unit);
  if (count < 2) throw ParameterError("product_with_interval: fewer than two heights per stack");
  if (static_cast<double>(count) * base.size() > 4e6) throw ResourceError("product_with_interval: too many atoms");
  const double step = 2.0 * half_len / count;
  std::vector<Point> pts;
  std::vector<double> ms;
  pts.reserve(base.size() * count);
  for (std::size_t a = 0; a < base.size(); ++a) {
    const double each = base.mass(a) * 2.0 * half_len / count;
    for (long k = 0; k < count; ++k) {
      const double height = static_cast<double>(2 * k - (count - 1)) * (step / 2.0);
      pts.push_back(Point{base.point(a)[0], base.point(a)[1], height});
      ms.push_back(each);
    }
  }
  return DiscreteMeasure(3, std::move(pts), std::move(ms));
}

namespace {

void check_spacing(double h, double size, const char* what) {
  if (!(h > 0.0) || !(size > 0.0)) throw ParameterError(std::string(what) + ": spacing and size must be positive");
}

DiscreteMeasure finish_grid(std::vector<Point> pts, double node_mass, const char* what) {
  if (pts.empty()) throw ParameterError(std::string(what) + ": empty grid");
  std::vector<double> ms(pts.size(), node_mass);
  return DiscreteMeasure(2, std::move(pts), std::move(ms));
}

}  // namespace

DiscreteMeasure grid_on_disk(double radius, double h, double node_mass) {
  check_spacing(h, radius, "grid_on_disk");
  const long k = static_cast<long>(std::floor(radius / h + 1e-9));
  std::vector<Point> pts;
  const double r2 = radius * radius * (1.0 + 1e-12);
  for (long i = -k; i <= k; ++i)
    for (long j = -k; j <= k; ++j) {
      const Point p{i * h, j * h};
      if (p[0] * p[0] + p[1] * p[1] <= r2) pts.push_back(p);
    }
  return finish_grid(std::move(pts), node_mass, "grid_on_disk");
}

DiscreteMeasure grid_on_segment(double len, double h, double node_mass) {
  check_spacing(h, len, "grid_on_segment");
  const long k = std::max(1L, static_cast<long>(std::ceil(len / h - 1e-9)));
  std::vector<Point> pts;
  for (long t = 0; t <= k; ++t) pts.push_back(Point{len * static_cast<double>(t) / k, 0.0});
  return finish_grid(std::move(pts), node_mass, "grid_on_segment");
}

DiscreteMeasure grid_on_square_boundary(double side, double h, double node_mass) {
  check_spacing(h, side, "grid_on_square_boundary");
  const long k = std::max(1L, static_cast<long>(std::ceil(side / h - 1e-9)));
  const double a = side / 2.0;
  std::vector<Point> pts;
  for (long t = 0; t < k; ++t) {
    const double s = -a + side * static_cast<double>(t) / k;
    pts.push_back(Point{s, -a});
  }
  for (long t = 0; t < k; ++t) {
    const double s = -a + side * static_cast<double>(t) / k;
    pts.push_back(Point{a, s});
  }
  for (long t = 0; t < k; ++t) {
    const double s = a - side * static_cast<double>(t) / k;
    pts.push_back(Point{s, a});
  }
  for (long t = 0; t < k; ++t) {
    const double s = a - side * static_cast<double>(t) / k;
    pts.push_back(Point{-a, s});
  }
  return finish_grid(std::move(pts), node_mass, "grid_on_square_boundary");
}

bool Cube::contains(const Point& x) const {
  const double tol = 1e-12 * side;
  for (int k = 0; k < x.dim(); ++k) {
    if (x[k] < corner[k] - tol || x[k] > corner[k] + side + tol) return false;
  }
  return true;
}

std::vector<double> dyadic_scales(double s_min, double diameter) {
  if (!(s_min > 0.0)) throw ParameterError("dyadic_scales: s_min must be positive");
  std::vector<double> scales{s_min};
  while (scales.back() < diameter) scales.push_back(scales.back() * 2.0);
  return scales;
}

std::vector<OccupiedCube> occupied_cubes(std::span<const Point> points, double side) {
  if (!(side > 0.0)) throw ParameterError("occupied_cubes: side must be positive");
  if (points.empty()) return {};
  const int dim = points[0].dim();
  const unsigned masks = 1u << dim;
  using Key = std::vector<long long>;
  std::map<Key, std::vector<std::size_t>> cubes;
  for (unsigned mask = 0; mask < masks; ++mask) {
    for (std::size_t idx = 0; idx < points.size(); ++idx) {
      // Per-axis candidate lattice indices; a point on a shared face belongs to both cubes.
      long long cand[kMaxDim][2];
      int ncand[kMaxDim];
      for (int k = 0; k < dim; ++k) {
        const double off = (mask >> k & 1u) ? 0.5 : 0.0;
        const double t = points[idx][k] / side - off;
        const double fl = std::floor(t);
        const double frac = t - fl;
        const double tol = 1e-12 * std::max(1.0, std::abs(t));
        const long long base = static_cast<long long>(fl);
        ncand[k] = 0;
        cand[k][ncand[k]++] = base;
        if (frac <= tol) cand[k][ncand[k]++] = base - 1;
        else if (1.0 - frac <= tol) cand[k][ncand[k]++] = base + 1;
      }
      int choice[kMaxDim] = {};
      while (true) {
        Key key(dim + 1);
        key[0] = mask;
        for (int k = 0; k < dim; ++k) key[k + 1] = cand[k][choice[k]];
        cubes[key].push_back(idx);
        int k = 0;
        while (k < dim && ++choice[k] == ncand[k]) choice[k++] = 0;
        if (k == dim) break;
      }
    }
  }
  std::vector<OccupiedCube> out;
  out.reserve(cubes.size());
  for (auto& [key, members] : cubes) {
    OccupiedCube oc;
    oc.cube.side = side;
    oc.cube.corner = Point(dim);
    const unsigned mask = static_cast<unsigned>(key[0]);
    for (int k = 0; k < dim; ++k) {
      const double off = (mask >> k & 1u) ? 0.5 : 0.0;
      oc.cube.corner[k] = (static_cast<double>(key[k + 1]) + off) * side;
    }
    oc.members = std::move(members);
    out.push_back(std::move(oc));
  }
  return out;
}

GrowthReport growth_constant(const DiscreteMeasure& mu, double alpha, double s_min) {
  if (!(s_min > 0.0)) throw ParameterError("growth_constant: s_min must be positive");
  if (!(alpha > 0.0)) throw ParameterError("growth_constant: alpha must be positive");
  GrowthReport report;
  report.alpha = alpha;
  if (mu.empty()) return report;
  std::vector<double> scales = dyadic_scales(s_min, mu.diameter());
  std::reverse(scales.begin(), scales.end());
  report.per_scale.resize(scales.size());
  for_each_block(scales.size(), 1, [&](std::size_t, std::size_t begin, std::size_t) {
    const double s = scales[begin];
    ScaleGrowth sg;
    sg.scale = s;
    sg.witness = Point(mu.dim());
    const double cap = std::pow(s, alpha);
    for (const OccupiedCube& oc : occupied_cubes(mu.points(), s)) {
      std::vector<double> ms;
      ms.reserve(oc.members.size());
      for (std::size_t idx : oc.members) ms.push_back(mu.mass(idx));
      const double ratio = pairwise_sum(ms) / cap;
      if (ratio > sg.max_ratio) {
        sg.max_ratio = ratio;
        sg.witness = oc.cube.corner;
      }
    }
    report.per_scale[begin] = sg;
  });
  for (const ScaleGrowth& sg : report.per_scale) report.overall = std::max(report.overall, sg.max_ratio);
  return report;
}

std::string to_json(const DiscreteMeasure& mu) {
  nlohmann::json j;
  j["dim"] = mu.dim();
  nlohmann::json pts = nlohmann::json::array();
  for (const Point& p : mu.points()) pts.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
  j["points"] = std::move(pts);
  j["masses"] = mu.masses();
  return j.dump();
}

DiscreteMeasure from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("measure JSON: ") + e.what());
  }
  if (!j.contains("dim") || !j.contains("points") || !j.contains("masses"))
    throw ParameterError("measure JSON: expected keys dim, points, masses");
  const int dim = j["dim"].get<int>();
  std::vector<Point> pts;
  for (const auto& row : j["points"]) {
    const auto coords = row.get<std::vector<double>>();
    if (static_cast<int>(coords.size()) != dim) throw ParameterError("measure JSON: point dimension mismatch");
    pts.emplace_back(std::span<const double>(coords));
  }
  return DiscreteMeasure(dim, std::move(pts), j["masses"].get<std::vector<double>>());
}

}  // namespace rieszlab::measures
