#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/parallel.hpp"
#include "rieszlab/transforms.hpp"

using namespace rieszlab;
using measures::DiscreteMeasure;
using kernels::KernelSpec;

namespace {

DiscreteMeasure random_measure(std::mt19937_64& rng, int dim, int n) {
  std::uniform_real_distribution<double> w(0.1, 2.0);
  std::vector<Point> pts;
  std::vector<double> ms;
  for (int k = 0; k < n; ++k) {
    pts.push_back(oracle::random_point(rng, dim));
    ms.push_back(w(rng));
  }
  return DiscreteMeasure(dim, pts, ms);
}

struct Expansion {
  double l2 = 0.0, same = 0.0, cross = 0.0;
};

// Direct expansion of sum_x m_x (sum_y k m_y)(sum_z k m_z) into its y = z and y != z parts.
Expansion expand(const DiscreteMeasure& mu, int i0, double alpha) {
  Expansion e;
  const std::size_t n = mu.size();
  for (std::size_t x = 0; x < n; ++x) {
    double r = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      r += oracle::kernel(mu.point(x) - mu.point(y), i0, alpha) * mu.mass(y);
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x) continue;
        const double t = mu.mass(x) * mu.mass(y) * mu.mass(z) * oracle::kernel(mu.point(x) - mu.point(y), i0, alpha) *
                         oracle::kernel(mu.point(x) - mu.point(z), i0, alpha);
        (y == z ? e.same : e.cross) += t;
      }
    }
    e.l2 += mu.mass(x) * r * r;
  }
  return e;
}

}  // namespace

TEST_CASE("truncated transform examples") {
  const DiscreteMeasure atom(2, {Point{0.0, 0.0}}, {1.0});
  const auto k1 = KernelSpec::scalar(2, 1.0, 1);
  CHECK(transforms::truncated_transform(atom, k1, 1.0, Point{2.0, 0.0}) == 0.5);
  CHECK(transforms::truncated_transform(atom, k1, 3.0, Point{2.0, 0.0}) == 0.0);
  const DiscreteMeasure pair(2, {Point{1.0, 0.0}, Point{-1.0, 0.0}}, {0.7, 0.7});
  const Point v = transforms::truncated_transform_vector(pair, KernelSpec::vector(2, 1.0), 0.1, Point{0.0, 0.0});
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 0.0);
  CHECK(transforms::truncated_transform(pair, KernelSpec::scalar(2, 1.0, 2), 0.1, Point{0.0, 0.0}) == 0.0);
}

TEST_CASE("energy identity on trivial measures") {
  const DiscreteMeasure one(2, {Point{0.3, 0.1}}, {2.0});
  const auto r1 = transforms::energy_identity(one, 1, 1.0, 0.5);
  CHECK(r1.l2_energy == 0.0);
  CHECK(r1.perm_energy == 0.0);
  CHECK(r1.diagonal == 0.0);
  CHECK(r1.residual == 0.0);

  const DiscreteMeasure two(2, {Point{0.0, 0.0}, Point{0.6, 0.8}}, {1.0, 1.0});
  for (int i : {1, 2}) {
    const auto r = transforms::energy_identity(two, i, 1.0, 0.5);
    const double k = oracle::kernel(Point{0.6, 0.8}, i - 1, 1.0);
    CHECK(r.perm_energy == 0.0);
    CHECK(r.l2_energy == doctest::Approx(2.0 * k * k).epsilon(1e-15));
    CHECK(r.diagonal == doctest::Approx(2.0 * k * k).epsilon(1e-15));
  }
  CHECK_THROWS_AS(transforms::energy_identity(two, 3, 1.0, 0.5), ParameterError);
  CHECK_THROWS_AS(transforms::energy_identity(two, 1, 1.0, 0.0), ParameterError);
}

TEST_CASE("energy identity agrees with the brute-force expansion") {
  std::mt19937_64 rng(31);
  for (double alpha : {0.5, 1.0}) {
    for (int dim : {2, 3}) {
      const auto mu = random_measure(rng, dim, 30);
      const double eps = mu.min_separation() / 2.0;
      for (int i = 1; i <= dim; ++i) {
        const auto r = transforms::energy_identity(mu, i, alpha, eps);
        const auto e = expand(mu, i - 1, alpha);
        CHECK(std::abs(r.residual) <= 1e-9 * (1.0 + r.l2_energy));
        CHECK(oracle::relerr(r.l2_energy, e.l2) <= 1e-12);
        CHECK(oracle::relerr(r.diagonal, e.same) <= 1e-12);
        CHECK(std::abs(r.perm_energy / 3.0 - e.cross) <= 1e-10 * (1.0 + r.l2_energy));
      }
    }
  }
}

TEST_CASE("permutation energy equals six times the apex sums over unordered triples") {
  std::mt19937_64 rng(32);
  const auto mu = random_measure(rng, 3, 12);
  for (double alpha : {0.25, 1.0}) {
    double ref = 0.0;
    for (std::size_t a = 0; a < mu.size(); ++a)
      for (std::size_t b = a + 1; b < mu.size(); ++b)
        for (std::size_t c = b + 1; c < mu.size(); ++c)
          ref += oracle::apex_sum(mu.point(a), mu.point(b), mu.point(c), 1, alpha) * mu.mass(a) * mu.mass(b) * mu.mass(c);
    const auto r = transforms::energy_identity(mu, 2, alpha, mu.min_separation() / 2.0);
    CHECK(oracle::relerr(r.perm_energy, 6.0 * ref) <= 1e-10);
  }
}

TEST_CASE("component energies add up to the vector energy") {
  std::mt19937_64 rng(33);
  for (int dim : {2, 3, 4}) {
    const auto mu = random_measure(rng, dim, 25);
    for (double alpha : {0.5, 1.0}) {
      const double eps = mu.min_separation() / 2.0;
      double sum = 0.0;
      for (int i = 1; i <= dim; ++i) sum += transforms::energy_identity(mu, i, alpha, eps).l2_energy;
      CHECK(oracle::relerr(sum, transforms::vector_energy(mu, alpha, eps)) <= 1e-12);
    }
  }
}

TEST_CASE("planar permutation energies coincide and the diagonal shrinks with eps") {
  std::mt19937_64 rng(34);
  const auto mu = random_measure(rng, 2, 40);
  const double eps = mu.min_separation() / 2.0;
  const auto r1 = transforms::energy_identity(mu, 1, 1.0, eps);
  const auto r2 = transforms::energy_identity(mu, 2, 1.0, eps);
  CHECK(oracle::relerr(r1.perm_energy, r2.perm_energy) <= 1e-12);
  double prev = std::numeric_limits<double>::infinity();
  for (double e : {0.01, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6}) {
    const double d = transforms::energy_identity(mu, 1, 1.0, e).diagonal;
    CHECK(d <= prev);
    prev = d;
  }
}

TEST_CASE("energies are bit-identical across thread counts") {
  std::mt19937_64 rng(35);
  const auto mu = random_measure(rng, 2, 60);
  set_thread_limit(1);
  const auto a = transforms::energy_identity(mu, 1, 0.5, 0.001);
  set_thread_limit(4);
  const auto b = transforms::energy_identity(mu, 1, 0.5, 0.001);
  set_thread_limit(0);
  CHECK(a.l2_energy == b.l2_energy);
  CHECK(a.perm_energy == b.perm_energy);
  CHECK(a.diagonal == b.diagonal);
}

TEST_CASE("cutoff and bump profiles") {
  const transforms::Square q{Point{0.0, 0.0}, 4.0};
  CHECK(transforms::cutoff(q, Point{2.0, 2.0}) == 1.0);
  CHECK(transforms::cutoff(q, Point{1.0, 3.0}) == 1.0);
  CHECK(transforms::cutoff(q, Point{4.0, 2.0}) == 0.0);
  CHECK(transforms::cutoff(q, Point{-1.0, 2.0}) == 0.0);
  const double mid = transforms::cutoff(q, Point{0.5, 2.0});
  CHECK(mid == doctest::Approx(0.5));

  const transforms::RadialBump phi{Point{0.0, 0.0}, 0.0, 1.0};
  CHECK(phi.value(Point{0.0, 0.0}) == 1.0);
  CHECK(phi.value(Point{1.0, 0.0}) == 0.0);
  // Laplacian against a centred finite-difference stencil.
  const double h = 1e-4;
  for (const Point x : {Point{0.3, 0.2}, Point{-0.5, 0.6}, Point{0.1, -0.05}}) {
    const double fd = (phi.value(Point{x[0] + h, x[1]}) + phi.value(Point{x[0] - h, x[1]}) +
                       phi.value(Point{x[0], x[1] + h}) + phi.value(Point{x[0], x[1] - h}) - 4.0 * phi.value(x)) /
                      (h * h);
    CHECK(phi.laplacian(x) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("recovery formula") {
  const DiscreteMeasure dirac(2, {Point{0.1, -0.2}}, {1.0});
  const transforms::RadialBump phi{Point{0.1, -0.2}, 0.0, 1.0};
  const auto r = transforms::recover_pairing(dirac, phi);
  CHECK(std::abs(r.value - 1.0) <= 1e-3);
  CHECK(std::abs(r.tail_change) <= 1e-3);

  const DiscreteMeasure empty(2, {}, {});
  CHECK(transforms::recover_pairing(empty, phi).value == 0.0);

  const DiscreteMeasure a(2, {Point{0.2, 0.1}, Point{-0.3, 0.05}}, {0.5, 1.5});
  const DiscreteMeasure b(2, {Point{0.0, -0.4}}, {0.8});
  const transforms::RadialBump wide{Point{0.0, 0.0}, 0.2, 1.0};
  const transforms::RecoverOptions opts{1.0 / 32.0, 12.0};
  const double ra = transforms::recover_pairing(a, wide, opts).value;
  const double rb = transforms::recover_pairing(b, wide, opts).value;
  const double rab = transforms::recover_pairing(a.combined(b), wide, opts).value;
  CHECK(std::abs(rab - ra - rb) <= 1e-12 * (1.0 + std::abs(rab)));
  const double exact = 0.5 * wide.value(a.point(0)) + 1.5 * wide.value(a.point(1)) + 0.8 * wide.value(b.point(0));
  CHECK(std::abs(rab - exact) <= 1e-2 * exact);

  CHECK_THROWS_AS(transforms::recover_pairing(dirac, phi, {-1.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(transforms::recover_pairing(dirac, phi, {0.0, 0.5}), ParameterError);
}

TEST_CASE("recovery reproduces total mass on random five-atom measures") {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> u(-0.5, 0.5), w(0.1, 1.0);
  const transforms::RadialBump phi{Point{0.0, 0.0}, 0.75, 1.5};
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<Point> pts;
    std::vector<double> ms;
    for (int k = 0; k < 5; ++k) {
      pts.push_back(Point{u(rng), u(rng)});
      ms.push_back(w(rng));
    }
    const DiscreteMeasure mu(2, pts, ms);
    const double got = transforms::recover_pairing(mu, phi).value;
    CHECK(std::abs(got - mu.total_mass()) <= 1e-2 * mu.total_mass());
  }
}

TEST_CASE("localization probe") {
  const auto seg = measures::grid_on_segment(1.0, 1.0 / 32.0, 1.0 / 33.0);
  const transforms::Square half{Point{0.0, -0.25}, 0.5};
  const auto rec = transforms::localization_probe(seg, 2, half, 40);
  CHECK(std::isfinite(rec.ratio));
  CHECK(rec.ratio > 0.0);
  CHECK(rec.growth > 0.0);

  const transforms::Square far{Point{5.0, 5.0}, 0.5};
  CHECK(transforms::localization_probe(seg, 1, far, 20).lhs == 0.0);

  const auto scaled = transforms::localization_probe(seg.scaled(2.0), 2, transforms::Square{Point{0.0, -0.5}, 1.0}, 40);
  CHECK(scaled.ratio == doctest::Approx(rec.ratio).epsilon(1e-12));
  CHECK_THROWS_AS(transforms::localization_probe(seg, 1, transforms::Square{Point{0.0, 0.0}, 0.0}, 20), ParameterError);
}

TEST_CASE("vertical flatness of symmetric lifts") {
  const DiscreteMeasure base(2, {Point{0.0, 0.0}}, {1.0});
  const auto stack = measures::product_with_interval(base, 16.0, 1.0);
  const Point mid{0.0, 0.0, 0.0};
  const Point top{0.0, 0.0, stack.bounding_box().second[2]};
  using transforms::VerticalWindow;
  CHECK(transforms::r3_flatness(stack, 0.05, std::span(&mid, 1), VerticalWindow::full) == 0.0);
  CHECK(transforms::r3_flatness(stack, 0.05, std::span(&mid, 1), VerticalWindow::symmetric) == 0.0);
  CHECK(transforms::r3_flatness(stack, 0.05, std::span(&top, 1), VerticalWindow::full) > 1.0);

  const auto lift = measures::product_with_interval(measures::cantor_corner_quarter(1), 16.0, 1.0);
  std::vector<Point> mids;
  for (std::size_t k = 0; k < 4; ++k) mids.push_back(Point{lift.point(k * 32)[0], lift.point(k * 32)[1], 0.0});
  CHECK(transforms::r3_flatness(lift, 0.125, mids, VerticalWindow::full) == 0.0);

  const DiscreteMeasure skew(3, {Point{0.0, 0.0, 0.5}, Point{0.0, 0.0, -0.25}}, {1.0, 1.0});
  CHECK_THROWS_AS(transforms::r3_flatness(skew, 0.1, std::span(&mid, 1)), PreconditionError);

  // First-order decay of the symmetric-window value under vertical refinement.
  std::vector<Point> samples;
  const auto k1 = measures::cantor_corner_quarter(1);
  for (int j = 0; j < 20; ++j)
    for (std::size_t c = 0; c < k1.size(); ++c)
      samples.push_back(Point{k1.point(c)[0], k1.point(c)[1], -0.7 + 1.4 * (j + 0.5) / 20.0 + 0.0123});
  double prev = 0.0;
  for (double m : {16.0, 32.0, 64.0}) {
    const double v = transforms::r3_flatness(measures::product_with_interval(k1, m, 1.0), 0.125, samples);
    if (prev > 0.0) CHECK(v <= 0.6 * prev);
    prev = v;
  }
}
