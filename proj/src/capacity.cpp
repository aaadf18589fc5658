#include "rieszlab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <unordered_map>

#include "json.hpp"

#include "rieszlab/errors.hpp"
#include "rieszlab/kernels.hpp"
#include "rieszlab/lp.hpp"
#include "rieszlab/parallel.hpp"

namespace rieszlab::capacity {

using kernels::component_unchecked;

std::size_t CapacityProblem::rows_per_point() const {
  return mode == RowMode::component ? 2 * components.size() : directions.size();
}

std::size_t CapacityProblem::row_count() const {
  return constraints.size() * rows_per_point() + growth_rows.size();
}

double CapacityProblem::coefficient(std::size_t point, std::size_t sub, std::size_t node) const {
  const Point d = constraints[point] - support.point(node);
  const double r2 = dot(d, d);
  if (mode == RowMode::component) {
    const double k = component_unchecked(d, components[sub / 2] - 1, alpha, r2);
    return sub % 2 == 0 ? k : -k;
  }
  const Point& u = directions[sub];
  double s = 0.0;
  for (int j = 0; j < d.dim(); ++j) s += u[j] * component_unchecked(d, j, alpha, r2);
  return s;
}

namespace {

// Cell hash over a point set for radius queries.
class SpatialHash {
 public:
  SpatialHash(std::span<const Point> pts, double cell) : pts_(pts), cell_(cell) {
    for (std::size_t k = 0; k < pts.size(); ++k) cells_[key(pts[k])].push_back(k);
  }

  /// True when some point lies strictly closer than r to x (r <= cell).
  bool any_within(const Point& x, double r) const {
    const auto base = coords(x);
    const int dim = x.dim();
    std::vector<long long> probe(dim);
    const long combos = static_cast<long>(std::pow(3, dim));
    for (long c = 0; c < combos; ++c) {
      long t = c;
      for (int k = 0; k < dim; ++k) {
        probe[k] = base[k] + (t % 3) - 1;
        t /= 3;
      }
      const auto it = cells_.find(pack(probe));
      if (it == cells_.end()) continue;
      for (std::size_t idx : it->second)
        if (squared_distance(pts_[idx], x) < r * r) return true;
    }
    return false;
  }

 private:
  std::vector<long long> coords(const Point& x) const {
    std::vector<long long> c(x.dim());
    for (int k = 0; k < x.dim(); ++k) c[k] = static_cast<long long>(std::floor(x[k] / cell_));
    return c;
  }
  static std::string pack(const std::vector<long long>& c) {
    return std::string(reinterpret_cast<const char*>(c.data()), c.size() * sizeof(long long));
  }
  std::string key(const Point& x) const { return pack(coords(x)); }

  std::span<const Point> pts_;
  double cell_;
  std::unordered_map<std::string, std::vector<std::size_t>> cells_;
};

}  // namespace

std::vector<Point> constraint_lattice(const DiscreteMeasure& support, double h, double delta, double box_inflate) {
  if (!(h > 0.0) || !(delta >= 0.0) || !(box_inflate >= 0.0))
    throw ParameterError("constraint_lattice: h must be positive, delta and box_inflate non-negative");
  if (support.empty()) throw ParameterError("constraint_lattice: empty support");
  const int dim = support.dim();
  const auto [lo, hi] = support.bounding_box();
  const double margin = box_inflate * support.diameter();
  const double steps = std::ceil(margin / h);
  Point anchor = lo;
  std::vector<long> count(dim);
  double total = 1.0;
  for (int k = 0; k < dim; ++k) {
    anchor[k] = lo[k] - steps * h;
    count[k] = static_cast<long>(std::floor((hi[k] + steps * h - anchor[k]) / h + 1e-9)) + 1;
    total *= static_cast<double>(count[k]);
  }
  if (total > 2e7) throw ResourceError("constraint_lattice: more than 2e7 lattice points");
  const SpatialHash hash(support.points(), std::max(delta, h));
  std::vector<Point> out;
  std::vector<long> idx(dim, 0);
  while (true) {
    Point x(dim);
    for (int k = 0; k < dim; ++k) x[k] = anchor[k] + static_cast<double>(idx[k]) * h;
    if (!hash.any_within(x, delta)) out.push_back(x);
    int k = 0;
    while (k < dim && ++idx[k] == count[k]) idx[k++] = 0;
    if (k == dim) break;
  }
  return out;
}

std::vector<Point> polygon_directions(int dim, int planar_count) {
  std::vector<Point> dirs;
  if (dim == 2) {
    if (planar_count < 3) throw ParameterError("polygon_directions: need at least 3 directions");
    for (int q = 0; q < planar_count; ++q) {
      const double t = 2.0 * std::numbers::pi * q / planar_count;
      dirs.push_back(Point{std::cos(t), std::sin(t)});
    }
    return dirs;
  }
  long combos = 1;
  for (int k = 0; k < dim; ++k) combos *= 3;
  for (long c = 0; c < combos; ++c) {
    Point u(dim);
    long t = c;
    bool zero = true;
    for (int k = 0; k < dim; ++k) {
      u[k] = static_cast<double>(t % 3) - 1.0;
      zero = zero && u[k] == 0.0;
      t /= 3;
    }
    if (!zero) dirs.push_back((1.0 / norm(u)) * u);
  }
  return dirs;
}

std::vector<GrowthRow> growth_rows(const DiscreteMeasure& support, double alpha, double s_min) {
  if (!(alpha > 0.0)) throw ParameterError("growth_rows: alpha must be positive");
  std::vector<GrowthRow> out;
  for (double s : measures::dyadic_scales(s_min, support.diameter())) {
    const double cap = std::pow(s, alpha);
    for (auto& oc : measures::occupied_cubes(support.points(), s)) out.push_back({oc.cube, std::move(oc.members), cap});
  }
  return out;
}

CapacityProblem build_problem(const DiscreteMeasure& support, std::vector<int> components, double alpha,
                              const BuildOptions& opts) {
  if (support.empty()) throw ParameterError("build_problem: empty support");
  if (components.empty()) throw ParameterError("build_problem: component set J must be non-empty");
  std::sort(components.begin(), components.end());
  components.erase(std::unique(components.begin(), components.end()), components.end());
  for (int j : components)
    if (j < 1 || j > support.dim()) throw ParameterError("build_problem: component index out of range");
  if (!(alpha > 0.0 && alpha < support.dim())) throw ParameterError("build_problem: alpha must lie in (0, dim)");
  if (!(opts.h > 0.0) || !(opts.bound > 0.0)) throw ParameterError("build_problem: h and bound must be positive");
  CapacityProblem p;
  p.support = support.with_masses(std::vector<double>(support.size(), 0.0));
  p.components = std::move(components);
  p.alpha = alpha;
  p.bound = opts.bound;
  p.h = opts.h;
  p.delta = opts.delta == 0.0 ? opts.h / 2.0 : opts.delta;
  p.mode = opts.mode;
  if (p.mode == RowMode::vector_polygon) {
    if (static_cast<int>(p.components.size()) != support.dim())
      throw ParameterError("build_problem: polygon rows bound the full vector; J must be all components");
    p.directions = polygon_directions(support.dim(), opts.directions);
  }
  p.constraints = constraint_lattice(support, opts.h, p.delta, opts.box_inflate);
  if (p.constraints.empty()) throw ParameterError("build_problem: empty constraint set");
  if (opts.with_growth) p.growth_rows = growth_rows(support, alpha, opts.growth_s_min == 0.0 ? opts.h : opts.growth_s_min);
  return p;
}

const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::optimal: return "optimal";
    case SolverStatus::infeasible: return "infeasible";
    case SolverStatus::unbounded: return "unbounded";
    case SolverStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kPointBlock = 64;

// Values of every row of the problem for the given (sparse) node weights.
// Potential rows first, growth rows after, in row-id order.
std::vector<double> row_values(const CapacityProblem& p, const std::vector<double>& w) {
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0.0) nz.push_back(i);
  const std::size_t q = p.rows_per_point();
  const int dim = p.support.dim();
  std::vector<double> out(p.row_count(), 0.0);
  for_each_block(p.constraints.size(), kPointBlock, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t pt = begin; pt < end; ++pt) {
      double pot[kMaxDim] = {};
      for (std::size_t i : nz) {
        const Point d = p.constraints[pt] - p.support.point(i);
        const double r2 = dot(d, d);
        if (p.mode == RowMode::component) {
          for (int j : p.components) pot[j - 1] += component_unchecked(d, j - 1, p.alpha, r2) * w[i];
        } else {
          for (int j = 0; j < dim; ++j) pot[j] += component_unchecked(d, j, p.alpha, r2) * w[i];
        }
      }
      double* row = out.data() + pt * q;
      if (p.mode == RowMode::component) {
        for (std::size_t c = 0; c < p.components.size(); ++c) {
          row[2 * c] = pot[p.components[c] - 1];
          row[2 * c + 1] = -pot[p.components[c] - 1];
        }
      } else {
        for (std::size_t s = 0; s < q; ++s) {
          double v = 0.0;
          for (int j = 0; j < dim; ++j) v += p.directions[s][j] * pot[j];
          row[s] = v;
        }
      }
    }
  });
  const std::size_t base = p.constraints.size() * q;
  for (std::size_t g = 0; g < p.growth_rows.size(); ++g) {
    double s = 0.0;
    for (std::size_t i : p.growth_rows[g].members) s += w[i];
    out[base + g] = s;
  }
  return out;
}

double row_bound(const CapacityProblem& p, std::size_t row) {
  const std::size_t base = p.constraints.size() * p.rows_per_point();
  return row < base ? p.bound : p.growth_rows[row - base].cap;
}

struct Workspace {
  const CapacityProblem& p;
  std::size_t base;
  std::vector<std::vector<std::size_t>> node_growth;  // growth rows containing each node

  explicit Workspace(const CapacityProblem& prob)
      : p(prob), base(prob.constraints.size() * prob.rows_per_point()), node_growth(prob.support.size()) {
    for (std::size_t g = 0; g < p.growth_rows.size(); ++g)
      for (std::size_t i : p.growth_rows[g].members) node_growth[i].push_back(g);
  }

  double coeff(std::size_t row, std::size_t node) const {
    if (row < base) {
      const std::size_t q = p.rows_per_point();
      return p.coefficient(row / q, row % q, node);
    }
    const auto& gs = node_growth[node];
    return std::binary_search(gs.begin(), gs.end(), row - base) ? 1.0 : 0.0;
  }
};

}  // namespace

double max_row_excess(const CapacityProblem& p, const std::vector<double>& masses) {
  if (masses.size() != p.support.size()) throw ParameterError("max_row_excess: one mass per support node expected");
  const int dim = p.support.dim();
  const auto vspec = kernels::KernelSpec::vector(dim, p.alpha);
  std::vector<double> worst(block_count(p.constraints.size(), kPointBlock), -std::numeric_limits<double>::infinity());
  for_each_block(p.constraints.size(), kPointBlock, [&](std::size_t blk, std::size_t begin, std::size_t end) {
    double w = -std::numeric_limits<double>::infinity();
    for (std::size_t pt = begin; pt < end; ++pt) {
      Point pot(dim);
      for (std::size_t i = 0; i < masses.size(); ++i) {
        if (masses[i] == 0.0) continue;
        pot += masses[i] * kernels::eval_vector(vspec, p.constraints[pt] - p.support.point(i));
      }
      if (p.mode == RowMode::component) {
        for (int j : p.components) w = std::max(w, std::abs(pot[j - 1]) - p.bound);
      } else {
        for (const Point& u : p.directions) w = std::max(w, dot(u, pot) - p.bound);
      }
    }
    worst[blk] = w;
  });
  double out = worst.empty() ? -std::numeric_limits<double>::infinity()
                             : *std::max_element(worst.begin(), worst.end());
  for (const GrowthRow& g : p.growth_rows) {
    double s = 0.0;
    for (std::size_t i : g.members) s += masses[i];
    out = std::max(out, s - g.cap);
  }
  return out;
}

CapacitySolution solve(const CapacityProblem& p, const SolveOptions& opts) {
  const std::size_t n = p.support.size();
  if (n == 0 || p.constraints.empty()) throw ParameterError("solve: problem has no support or no constraints");
  const Workspace ws(p);
  const std::size_t total_rows = p.row_count();
  const std::size_t q = p.rows_per_point();

  lp::DenseLP lp;
  std::vector<std::size_t> col_node;             // LP column -> support node
  std::vector<long> node_col(n, -1);             // support node -> LP column
  std::vector<std::size_t> row_id;               // LP row -> problem row
  std::vector<char> row_active(total_rows, 0);

  auto add_rows = [&](const std::vector<std::size_t>& ids) {
    for (std::size_t id : ids) {
      if (row_active[id]) continue;
      std::vector<double> coeffs(col_node.size());
      for (std::size_t c = 0; c < col_node.size(); ++c) coeffs[c] = ws.coeff(id, col_node[c]);
      lp.add_row(coeffs, row_bound(p, id));
      row_id.push_back(id);
      row_active[id] = 1;
    }
  };
  auto add_columns = [&](const std::vector<std::size_t>& nodes) {
    for (std::size_t i : nodes) {
      if (node_col[i] >= 0) continue;
      std::vector<double> coeffs(row_id.size());
      for (std::size_t r = 0; r < row_id.size(); ++r) coeffs[r] = ws.coeff(row_id[r], i);
      node_col[i] = static_cast<long>(col_node.size());
      col_node.push_back(i);
      lp.add_column(1.0, coeffs);
    }
  };

  // Nearest constraint point of every node.
  std::vector<std::size_t> nearest(n);
  std::vector<double> nearest_d(n);
  for_each_block(n, 16, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t c = 0; c < p.constraints.size(); ++c) {
        const double d2 = squared_distance(p.constraints[c], p.support.point(i));
        if (d2 < best) {
          best = d2;
          arg = c;
        }
      }
      nearest[i] = arg;
      nearest_d[i] = std::sqrt(best);
    }
  });

  // Start from the nodes closest to the constraint set, each with the row of
  // its nearest constraint point that bounds it most.
  std::vector<std::size_t> start;
  const double dmin = *std::min_element(nearest_d.begin(), nearest_d.end());
  for (std::size_t i = 0; i < n; ++i)
    if (n <= 400 || nearest_d[i] <= dmin + p.h * (1.0 + 1e-9)) start.push_back(i);
  add_columns(start);
  std::vector<std::size_t> seed;
  for (std::size_t i : start) {
    std::size_t best_sub = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < q; ++s) {
      const double c = p.coefficient(nearest[i], s, i);
      if (c > best) {
        best = c;
        best_sub = s;
      }
    }
    seed.push_back(nearest[i] * q + best_sub);
  }
  std::sort(seed.begin(), seed.end());
  seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  add_rows(seed);

  CapacitySolution sol;
  std::vector<double> m(n, 0.0);
  auto masses_from_lp = [&]() {
    std::fill(m.begin(), m.end(), 0.0);
    const auto x = lp.primal();
    for (std::size_t c = 0; c < x.size(); ++c) m[col_node[c]] = x[c];
  };
  // Most violated rows first, ties by row id.
  auto top_rows = [&](const std::vector<double>& values, bool relative_to_bound, std::size_t limit) {
    std::vector<std::pair<double, std::size_t>> cand;
    for (std::size_t r = 0; r < values.size(); ++r) {
      if (row_active[r]) continue;
      const double b = row_bound(p, r);
      const double excess = relative_to_bound ? values[r] - b : values[r];
      const double tol = relative_to_bound ? 1e-9 * b : 1e-12 * std::max(1.0, std::abs(values[r]));
      if (excess > tol) cand.emplace_back(relative_to_bound ? excess / b : excess, r);
    }
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<std::size_t> ids;
    for (std::size_t k = 0; k < std::min(limit, cand.size()); ++k) ids.push_back(cand[k].second);
    return ids;
  };

  sol.status = SolverStatus::iteration_limit;
  for (sol.rounds = 1; sol.rounds <= opts.max_rounds; ++sol.rounds) {
    const std::size_t used = lp.iterations();
    if (used >= opts.max_pivots) break;
    const lp::Status st = lp.solve(opts.max_pivots - used);
    if (st == lp::Status::iteration_limit) break;
    if (st == lp::Status::infeasible) {
      sol.status = SolverStatus::infeasible;
      break;
    }
    if (st == lp::Status::unbounded) {
      std::vector<double> ray(n, 0.0);
      for (std::size_t c = 0; c < lp.ray().size(); ++c) ray[col_node[c]] = std::max(lp.ray()[c], 0.0);
      const auto ids = top_rows(row_values(p, ray), false, opts.rows_per_round);
      if (ids.empty()) {
        sol.status = SolverStatus::unbounded;
        break;
      }
      add_rows(ids);
      continue;
    }
    masses_from_lp();
    const auto cuts = top_rows(row_values(p, m), true, opts.rows_per_round);
    if (!cuts.empty()) {
      add_rows(cuts);
      continue;
    }
    // Price the nodes that are not yet columns against the active rows.
    const auto y = lp.duals();
    std::vector<std::pair<std::size_t, double>> dual_rows;
    for (std::size_t r = 0; r < y.size(); ++r)
      if (y[r] > 0.0) dual_rows.emplace_back(row_id[r], y[r]);
    std::vector<double> reduced(n, -1.0);
    for_each_block(n, 64, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        if (node_col[i] >= 0) continue;
        double s = 1.0;
        for (const auto& [id, yr] : dual_rows) s -= yr * ws.coeff(id, i);
        reduced[i] = s;
      }
    });
    std::vector<std::pair<double, std::size_t>> cand;
    for (std::size_t i = 0; i < n; ++i)
      if (reduced[i] > 1e-9) cand.emplace_back(reduced[i], i);
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    if (cand.empty()) {
      sol.status = SolverStatus::optimal;
      break;
    }
    std::vector<std::size_t> nodes;
    for (std::size_t k = 0; k < std::min(opts.columns_per_round, cand.size()); ++k) nodes.push_back(cand[k].second);
    add_columns(nodes);
  }
  sol.rounds = std::min(sol.rounds, opts.max_rounds);
  sol.pivots = lp.iterations();
  sol.lp_rows = lp.rows();
  sol.lp_columns = lp.columns();
  if (sol.status == SolverStatus::unbounded || sol.status == SolverStatus::infeasible) {
    sol.masses.assign(n, 0.0);
    return sol;
  }
  masses_from_lp();

  // Independent re-check of every row; shrink uniformly if anything is exceeded.
  double worst_ratio = 0.0;
  {
    const auto values = row_values(p, m);
    for (std::size_t r = 0; r < values.size(); ++r) worst_ratio = std::max(worst_ratio, values[r] / row_bound(p, r));
  }
  if (worst_ratio > 1.0)
    for (double& v : m) v /= worst_ratio;
  sol.max_violation = max_row_excess(p, m);
  sol.masses = m;
  sol.value = pairwise_sum(m);

  // Weak duality: y >= 0 on the active rows, scaled so that A^T y >= 1 on every node.
  const auto y = lp.duals();
  double by = 0.0;
  std::vector<std::pair<std::size_t, double>> dual_rows;
  for (std::size_t r = 0; r < y.size(); ++r)
    if (y[r] > 0.0) {
      dual_rows.emplace_back(row_id[r], y[r]);
      by += y[r] * row_bound(p, row_id[r]);
      sol.active_constraints.push_back(row_id[r]);
    }
  std::vector<double> aty(n);
  for_each_block(n, 64, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double s = 0.0;
      for (const auto& [id, yr] : dual_rows) s += yr * ws.coeff(id, i);
      aty[i] = s;
    }
  });
  const double tmin = n ? *std::min_element(aty.begin(), aty.end()) : 0.0;
  sol.upper_bound = tmin > 0.0 ? by / tmin : std::numeric_limits<double>::infinity();
  sol.duality_gap = sol.upper_bound - sol.value;
  return sol;
}

std::string Geometry::name() const {
  switch (kind) {
    case GeometryKind::disk: return "disk";
    case GeometryKind::segment: return "segment";
    case GeometryKind::square_boundary: return "square_boundary";
    case GeometryKind::cantor_cells: return "cantor" + std::to_string(generation);
  }
  return "unknown";
}

DiscreteMeasure Geometry::support(double h) const {
  switch (kind) {
    case GeometryKind::disk: return measures::grid_on_disk(1.0, h);
    case GeometryKind::segment: return measures::grid_on_segment(2.0, h);
    case GeometryKind::square_boundary: return measures::grid_on_square_boundary(2.0, h);
    case GeometryKind::cantor_cells: {
      const double side = std::ldexp(1.0, -2 * generation);
      const int per_side = std::max(1, static_cast<int>(std::lround(side / h)));
      return measures::cantor_corner_quarter_cells(generation, per_side);
    }
  }
  throw ParameterError("Geometry: unknown kind");
}

Geometry parse_geometry(const std::string& text) {
  if (text == "disk") return {GeometryKind::disk, 0};
  if (text == "segment") return {GeometryKind::segment, 0};
  if (text == "square" || text == "square_boundary") return {GeometryKind::square_boundary, 0};
  if (text.rfind("cantor", 0) == 0 && text.size() > 6) {
    const int g = std::stoi(text.substr(6));
    if (g < 0 || g > 6) throw ParameterError("geometry: cantor generation must lie in 0..6");
    return {GeometryKind::cantor_cells, g};
  }
  throw ParameterError("unknown geometry '" + text + "' (disk, segment, square, cantor<g>)");
}

CapacitySolution gamma_plus(const DiscreteMeasure& support, const BuildOptions& opts, double alpha) {
  BuildOptions o = opts;
  o.mode = RowMode::vector_polygon;
  o.with_growth = false;
  std::vector<int> all;
  for (int j = 1; j <= support.dim(); ++j) all.push_back(j);
  return solve(build_problem(support, all, alpha, o));
}

CapacitySolution gamma_plus(const Geometry& geometry, double h, double alpha, double delta) {
  BuildOptions o;
  o.h = h;
  o.delta = delta;
  return gamma_plus(geometry.support(h), o, alpha);
}

CapacitySolution gamma_hat_plus(const DiscreteMeasure& support, const BuildOptions& opts, int excluded, double alpha) {
  if (excluded < 1 || excluded > support.dim()) throw ParameterError("gamma_hat_plus: excluded coordinate out of range");
  BuildOptions o = opts;
  o.mode = RowMode::component;
  o.with_growth = true;
  std::vector<int> rest;
  for (int j = 1; j <= support.dim(); ++j)
    if (j != excluded) rest.push_back(j);
  return solve(build_problem(support, rest, alpha, o));
}

CapacitySolution gamma_hat_plus(const Geometry& geometry, double h, int excluded, double alpha, double delta) {
  BuildOptions o;
  o.h = h;
  o.delta = delta;
  return gamma_hat_plus(geometry.support(h), o, excluded, alpha);
}

std::vector<ComparabilityRow> comparability_experiment(const std::vector<Geometry>& geometries, int excluded, double h) {
  std::vector<ComparabilityRow> rows;
  for (const Geometry& g : geometries) {
    for (double hh : {h, h / 2.0}) {
      ComparabilityRow row;
      row.geometry = g.name();
      row.h = hh;
      row.delta = hh / 2.0;
      row.plus = gamma_plus(g, hh);
      row.hat_plus = gamma_hat_plus(g, hh, excluded);
      row.ratio = row.plus.value > 0.0 ? row.hat_plus.value / row.plus.value : std::numeric_limits<double>::infinity();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<Point> cantor_linear_constraints(double alpha, int generation, double delta) {
  const double r = measures::cantor_linear_ratio(alpha);
  const auto atoms = measures::cantor_linear(alpha, generation, 2);
  const SpatialHash hash(atoms.points(), std::max(delta, 1e-300));
  std::set<std::pair<double, double>> seen;
  std::vector<Point> out;
  std::vector<double> left{0.0};
  double len = 1.0;
  for (int k = 0; k <= generation; ++k) {
    const double s = len / 2.0;
    for (double a : left) {
      const long i0 = static_cast<long>(std::floor((a - len) / s)), i1 = static_cast<long>(std::ceil((a + 2.0 * len) / s));
      const long j1 = static_cast<long>(std::ceil(len / s));
      for (long i = i0; i <= i1; ++i)
        for (long j = -j1; j <= j1; ++j) {
          const Point x{i * s, j * s};
          const double dx = std::max({a - x[0], 0.0, x[0] - (a + len)});
          if (dx * dx + x[1] * x[1] > len * len * (1.0 + 1e-12)) continue;
          if (hash.any_within(x, delta)) continue;
          if (seen.insert({x[0], x[1]}).second) out.push_back(x);
        }
    }
    std::vector<double> next;
    for (double a : left) {
      next.push_back(a);
      next.push_back(a + len * (1.0 - r));
    }
    left = std::move(next);
    len *= r;
  }
  return out;
}

std::vector<SeparationRow> alpha_separation_experiment(double alpha, int g_max) {
  const double r = measures::cantor_linear_ratio(alpha);
  if (g_max < 1) throw ParameterError("alpha_separation_experiment: g_max must be >= 1");
  std::vector<SeparationRow> rows;
  for (int g = 1; g <= g_max; ++g) {
    const double len = std::pow(r, g);
    SeparationRow row;
    row.generation = g;
    row.h = len / 2.0;
    const double delta = row.h / 2.0;
    const auto atoms = measures::cantor_linear(alpha, g, 2);

    CapacityProblem base;
    base.support = atoms.with_masses(std::vector<double>(atoms.size(), 0.0));
    base.alpha = alpha;
    base.h = row.h;
    base.delta = delta;
    base.constraints = cantor_linear_constraints(alpha, g, delta);

    CapacityProblem hat = base;
    hat.components = {2};
    hat.growth_rows = growth_rows(atoms, alpha, row.h);
    row.hat_with_growth = solve(hat);

    CapacityProblem all = base;
    all.components = {1, 2};
    row.all_components = solve(all);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_json(const CapacityProblem& p) {
  nlohmann::ordered_json j;
  j["dim"] = p.support.dim();
  nlohmann::json sup = nlohmann::json::array();
  for (const Point& x : p.support.points()) sup.push_back(std::vector<double>(x.coords().begin(), x.coords().end()));
  j["support"] = std::move(sup);
  nlohmann::json con = nlohmann::json::array();
  for (const Point& x : p.constraints) con.push_back(std::vector<double>(x.coords().begin(), x.coords().end()));
  j["constraints"] = std::move(con);
  j["components"] = p.components;
  j["alpha"] = p.alpha;
  j["bound"] = p.bound;
  j["delta"] = p.delta;
  j["h"] = p.h;
  j["mode"] = p.mode == RowMode::component ? "component" : "vector_polygon";
  nlohmann::json dirs = nlohmann::json::array();
  for (const Point& u : p.directions) dirs.push_back(std::vector<double>(u.coords().begin(), u.coords().end()));
  j["directions"] = std::move(dirs);
  nlohmann::ordered_json gr = nlohmann::ordered_json::array();
  for (const GrowthRow& g : p.growth_rows) {
    nlohmann::ordered_json e;
    e["corner"] = std::vector<double>(g.cube.corner.coords().begin(), g.cube.corner.coords().end());
    e["side"] = g.cube.side;
    e["cap"] = g.cap;
    e["members"] = g.members;
    gr.push_back(std::move(e));
  }
  j["growth_rows"] = std::move(gr);
  return j.dump();
}

std::string to_json(const CapacitySolution& s) {
  nlohmann::ordered_json j;
  j["value"] = s.value;
  j["masses"] = s.masses;
  j["active_constraints"] = s.active_constraints;
  j["solver_status"] = to_string(s.status);
  j["duality_gap"] = s.duality_gap;
  j["upper_bound"] = s.upper_bound;
  j["max_violation"] = s.max_violation;
  j["lp_rows"] = s.lp_rows;
  j["lp_columns"] = s.lp_columns;
  j["rounds"] = s.rounds;
  j["pivots"] = s.pivots;
  return j.dump();
}

}  // namespace rieszlab::capacity
