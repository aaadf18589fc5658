#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <map>
#include <set>
#include <tuple>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "rieszlab/capacity.hpp"
#include "rieszlab/errors.hpp"

using namespace rieszlab;
using namespace rieszlab::capacity;

namespace {

// Largest |potential component| - bound over the constraint set, recomputed from the kernel formula.
double oracle_excess(const CapacityProblem& p, const std::vector<double>& m) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Point& x : p.constraints) {
    for (int j : p.components) {
      double s = 0.0;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0.0) s += m[i] * oracle::kernel(x - p.support.point(i), j - 1, p.alpha);
      worst = std::max(worst, std::abs(s) - p.bound);
    }
  }
  for (const GrowthRow& g : p.growth_rows) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (g.cube.contains(p.support.point(i))) s += m[i];
    worst = std::max(worst, s - g.cap);
  }
  return worst;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// Occupied closed cubes of both half-shifted planar lattices at every scale, by direct containment.
using CubeKey = std::tuple<double, double, double>;

std::map<CubeKey, std::vector<std::size_t>> oracle_growth_family(const DiscreteMeasure& mu, double s_min) {
  std::map<CubeKey, std::vector<std::size_t>> out;
  const auto [lo, hi] = mu.bounding_box();
  std::vector<double> scales{s_min};
  while (scales.back() < mu.diameter()) scales.push_back(2.0 * scales.back());
  for (double s : scales)
    for (double ox : {0.0, 0.5})
      for (double oy : {0.0, 0.5}) {
        const long i0 = static_cast<long>(std::floor(lo[0] / s - ox)) - 1, i1 = static_cast<long>(std::ceil(hi[0] / s - ox)) + 1;
        const long j0 = static_cast<long>(std::floor(lo[1] / s - oy)) - 1, j1 = static_cast<long>(std::ceil(hi[1] / s - oy)) + 1;
        for (long i = i0; i <= i1; ++i)
          for (long j = j0; j <= j1; ++j) {
            const double cx = (i + ox) * s, cy = (j + oy) * s, tol = 1e-12 * s;
            std::vector<std::size_t> members;
            for (std::size_t k = 0; k < mu.size(); ++k) {
              const Point& q = mu.point(k);
              if (q[0] >= cx - tol && q[0] <= cx + s + tol && q[1] >= cy - tol && q[1] <= cy + s + tol) members.push_back(k);
            }
            if (!members.empty()) out[{s, cx, cy}] = members;
          }
      }
  return out;
}

CapacityProblem two_point_problem(double d, int component) {
  CapacityProblem p;
  p.support = DiscreteMeasure(2, {Point{0.0, 0.0}}, {0.0});
  p.constraints = {Point{d, 0.0}, Point{0.0, d}, Point{-d, 0.0}, Point{0.0, -d}};
  p.components = {component};
  p.h = d;
  p.delta = d;
  return p;
}

}  // namespace

TEST_CASE("build_problem row counts and delta exclusion") {
  const auto seg = measures::grid_on_segment(2.0, 0.125);
  BuildOptions o;
  o.h = 0.125;
  const auto p = build_problem(seg, {1, 2}, 1.0, o);
  CHECK(p.delta == 0.0625);
  CHECK(p.rows_per_point() == 4);
  CHECK(p.row_count() == 2 * p.constraints.size() * 2);
  for (const Point& x : p.constraints)
    for (const Point& y : seg.points()) CHECK(distance(x, y) >= p.delta);

  // The lattice covers the inflated box: its extent reaches diam / 2 beyond the support.
  double xmin = 1e9, xmax = -1e9, ymax = -1e9;
  for (const Point& x : p.constraints) {
    xmin = std::min(xmin, x[0]);
    xmax = std::max(xmax, x[0]);
    ymax = std::max(ymax, x[1]);
  }
  CHECK(xmin == doctest::Approx(-1.0));
  CHECK(xmax == doctest::Approx(3.0));
  CHECK(ymax == doctest::Approx(1.0));

  CHECK_THROWS_AS(build_problem(seg, {}, 1.0, o), ParameterError);
  CHECK_THROWS_AS(build_problem(seg, {3}, 1.0, o), ParameterError);
  BuildOptions huge = o;
  huge.delta = 100.0;
  CHECK_THROWS_AS(build_problem(seg, {1}, 1.0, huge), ParameterError);
}

TEST_CASE("growth rows enumerate the occupied half-shifted cube family") {
  for (int g = 1; g <= 4; ++g) {
    const auto mu = measures::cantor_linear(0.5, g, 2);
    const double s_min = std::pow(0.25, g) / 2.0;
    const auto rows = growth_rows(mu, 0.5, s_min);
    const auto family = oracle_growth_family(mu, s_min);
    std::map<CubeKey, std::vector<std::size_t>> got;
    for (const auto& r : rows) {
      CHECK(r.cap == doctest::Approx(std::sqrt(r.cube.side)).epsilon(1e-15));
      got[{r.cube.side, r.cube.corner[0], r.cube.corner[1]}] = r.members;
    }
    CHECK(got.size() == rows.size());
    CHECK(got == family);
  }
}

TEST_CASE("single atom against axis rows: value equals the distance") {
  for (double d : {0.25, 1.0, 3.0}) {
    for (int j : {1, 2}) {
      const auto s = solve(two_point_problem(d, j));
      CHECK(s.status == SolverStatus::optimal);
      CHECK(s.value == doctest::Approx(d).epsilon(1e-12));
      CHECK(s.upper_bound == doctest::Approx(d).epsilon(1e-12));
    }
  }
  auto p = two_point_problem(2.0, 1);
  p.bound = 2.0;
  CHECK(solve(p).value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("disk LP: feasibility re-check, duality, bound scaling") {
  const auto disk = measures::grid_on_disk(1.0, 0.125);
  BuildOptions o;
  o.h = 0.125;
  const auto p = build_problem(disk, {1, 2}, 1.0, o);
  const auto s = solve(p);
  REQUIRE(s.status == SolverStatus::optimal);
  CHECK(s.value == doctest::Approx(sum(s.masses)).epsilon(1e-14));
  CHECK(oracle_excess(p, s.masses) <= 1e-8 * p.bound);
  CHECK(s.max_violation <= 1e-8);
  CHECK(s.value <= s.upper_bound * (1.0 + 1e-12));
  CHECK(s.duality_gap <= 1e-8 * s.value);
  for (double m : s.masses) CHECK(m >= 0.0);
  CHECK(!s.active_constraints.empty());

  auto p2 = p;
  p2.bound = 2.0;
  CHECK(solve(p2).value == doctest::Approx(2.0 * s.value).epsilon(1e-9));

  // Dropping every other constraint point never decreases the value.
  auto p3 = p;
  p3.constraints.clear();
  for (std::size_t k = 0; k < p.constraints.size(); k += 2) p3.constraints.push_back(p.constraints[k]);
  CHECK(solve(p3).value >= s.value * (1.0 - 1e-9));

  // Fewer bounded components never decreases the value.
  auto p4 = p;
  p4.components = {2};
  CHECK(solve(p4).value >= s.value * (1.0 - 1e-9));
}

TEST_CASE("enlarging the support never decreases the value") {
  const auto seg = measures::grid_on_segment(2.0, 0.125);
  BuildOptions o;
  o.h = 0.125;
  auto big = build_problem(seg, {1, 2}, 1.0, o);
  auto small = big;
  std::vector<Point> pts;
  for (std::size_t k = 0; k < seg.size(); k += 2) pts.push_back(seg.point(k));
  small.support = DiscreteMeasure(2, pts, std::vector<double>(pts.size(), 0.0));
  CHECK(solve(big).value >= solve(small).value * (1.0 - 1e-9));
}

TEST_CASE("scaling the geometry scales the value by lambda^alpha") {
  const auto base = measures::grid_on_segment(2.0, 0.125);
  for (double alpha : {0.5, 1.0}) {
    BuildOptions o;
    o.h = 0.125;
    const double v = solve(build_problem(base, {1, 2}, alpha, o)).value;
    for (double lambda : {2.0, 0.5}) {
      BuildOptions ol = o;
      ol.h = o.h * lambda;
      const double vl = solve(build_problem(base.scaled(lambda), {1, 2}, alpha, ol)).value;
      CHECK(oracle::relerr(vl, std::pow(lambda, alpha) * v) <= 1e-6);
    }
  }
}

TEST_CASE("growth rows are respected and only lower the value") {
  const auto mu = measures::cantor_corner_quarter_cells(2, 2);
  BuildOptions o;
  o.h = 1.0 / 32.0;
  const auto free = build_problem(mu, {2}, 1.0, o);
  o.with_growth = true;
  const auto grown = build_problem(mu, {2}, 1.0, o);
  CHECK(!grown.growth_rows.empty());
  const auto a = solve(free), b = solve(grown);
  CHECK(b.value <= a.value * (1.0 + 1e-9));
  CHECK(oracle_excess(grown, b.masses) <= 1e-8);
}

TEST_CASE("polygon rows bound the Euclidean potential up to the polygon factor") {
  const auto s = gamma_plus(Geometry{GeometryKind::disk, 0}, 0.125);
  REQUIRE(s.status == SolverStatus::optimal);
  const auto disk = measures::grid_on_disk(1.0, 0.125);
  BuildOptions o;
  o.h = 0.125;
  const auto p = build_problem(disk, {1, 2}, 1.0, o);
  double worst = 0.0;
  for (const Point& x : p.constraints) {
    double u = 0.0, v = 0.0;
    for (std::size_t i = 0; i < disk.size(); ++i) {
      u += s.masses[i] * oracle::kernel(x - disk.point(i), 0, 1.0);
      v += s.masses[i] * oracle::kernel(x - disk.point(i), 1, 1.0);
    }
    worst = std::max(worst, std::hypot(u, v));
  }
  CHECK(worst <= 1.0 / std::cos(std::numbers::pi / 16.0) + 1e-8);
  CHECK(worst >= 1.0);
}

TEST_CASE("geometries and experiments") {
  CHECK(parse_geometry("disk").kind == GeometryKind::disk);
  CHECK(parse_geometry("square").name() == "square_boundary");
  CHECK(parse_geometry("cantor3").generation == 3);
  CHECK_THROWS_AS(parse_geometry("torus"), ParameterError);
  CHECK(Geometry{GeometryKind::cantor_cells, 2}.support(1.0 / 32.0).size() == 64);

  const auto rows = comparability_experiment({Geometry{GeometryKind::segment, 0}}, 1, 0.25);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].h == 0.125);
  for (const auto& r : rows) {
    CHECK(r.plus.value > 0.0);
    CHECK(r.ratio == doctest::Approx(r.hat_plus.value / r.plus.value));
  }

  const auto sep = alpha_separation_experiment(0.5, 2);
  REQUIRE(sep.size() == 2);
  for (const auto& r : sep) {
    CHECK(r.all_components.status == SolverStatus::optimal);
    CHECK(r.hat_with_growth.status == SolverStatus::optimal);
  }
  CHECK(sep[1].all_components.value < sep[0].all_components.value);
}

TEST_CASE("adaptive Cantor constraints keep their distance from the atoms") {
  const double delta = 1.0 / 64.0;
  const auto pts = cantor_linear_constraints(0.5, 3, delta);
  const auto atoms = measures::cantor_linear(0.5, 3, 2);
  CHECK(pts.size() > 100);
  for (const Point& x : pts)
    for (const Point& y : atoms.points()) CHECK(distance(x, y) >= delta);
}

TEST_CASE("json output") {
  const auto p = two_point_problem(1.0, 1);
  const auto s = solve(p);
  const auto js = nlohmann::json::parse(to_json(s));
  CHECK(js["solver_status"] == "optimal");
  CHECK(js["value"].get<double>() == doctest::Approx(1.0));
  const auto jp = nlohmann::json::parse(to_json(p));
  CHECK(jp["constraints"].size() == 4);
  CHECK(jp["components"][0] == 1);
}
