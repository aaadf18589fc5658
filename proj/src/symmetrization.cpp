#include "rieszlab/symmetrization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rieszlab/errors.hpp"
#include "rieszlab/parallel.hpp"

namespace rieszlab::sym {

Triple::Triple(Point x1, Point x2, Point x3) : p_{x1, x2, x3} {
  if (x1.dim() != x2.dim() || x1.dim() != x3.dim()) throw ParameterError("Triple: dimension mismatch");
  if (x1 == x2 || x2 == x3 || x1 == x3) throw DomainError("Triple: points must be pairwise distinct");
}

namespace {

void check_coordinate(int coordinate, int dim) {
  if (coordinate < 1 || coordinate > dim) throw ParameterError("coordinate index must lie in 1..dim");
}

}  // namespace

double menger_curvature(const Triple& t) {
  if (t.dim() != 2) throw ParameterError("menger_curvature: planar triples only");
  const Point a = t[1] - t[0];
  const Point c = t[2] - t[0];
  const double twice_area = std::abs(a[0] * c[1] - a[1] * c[0]);
  if (twice_area == 0.0) return 0.0;
  return 2.0 * twice_area / (norm(a) * norm(c) * distance(t[2], t[1]));
}

double perm_sum(int coordinate, const Triple& t) {
  check_coordinate(coordinate, t.dim());
  const int i = coordinate - 1;
  const Point a = t[1] - t[0];
  const Point b = t[2] - t[1];
  const Point c = t[2] - t[0];
  double num = 0.0;
  for (int j = 0; j < t.dim(); ++j) {
    if (j == i) continue;
    const double w = a[i] * b[j] - b[i] * a[j];
    num += w * w;
  }
  if (num == 0.0) return 0.0;
  const double na = norm(a), nb = norm(b), nc = norm(c);
  // Divide in stages so the product of squared lengths cannot overflow.
  return ((num / (na * na)) / (nb * nb)) / (nc * nc);
}

double perm_sum_alpha_raw(double alpha, int i, const Point& x1, const Point& x2, const Point& x3) {
  const Point a = x2 - x1;
  const Point b = x3 - x2;
  const Point c = x3 - x1;
  const double s = 1.0 + alpha;
  const double na = std::pow(norm(a), s);
  const double nb = std::pow(norm(b), s);
  const double nc = std::pow(norm(c), s);
  const double num = a[i] * a[i] * nb + b[i] * b[i] * na + a[i] * b[i] * (nb + na - nc);
  return ((num / na) / nb) / nc;
}

double perm_sum_alpha(double alpha, int coordinate, const Triple& t) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("perm_sum_alpha: alpha must lie in (0, 1]");
  check_coordinate(coordinate, t.dim());
  if (alpha == 1.0) return perm_sum(coordinate, t);
  return perm_sum_alpha_raw(alpha, coordinate - 1, t[0], t[1], t[2]);
}

TripleStats triple_stats(double alpha, const Triple& t) {
  TripleStats s;
  const int n = t.dim();
  s.p.resize(n);
  s.spread.resize(n);
  for (int i = 1; i <= n; ++i) s.p[i - 1] = perm_sum_alpha(alpha, i, t);
  if (n == 2) s.curvature = menger_curvature(t);
  s.sides[0] = distance(t[0], t[1]);
  s.sides[1] = distance(t[1], t[2]);
  s.sides[2] = distance(t[0], t[2]);
  s.longest_side = std::max({s.sides[0], s.sides[1], s.sides[2]});
  for (int i = 0; i < n; ++i) {
    s.spread[i] = std::max({std::abs(t[1][i] - t[0][i]), std::abs(t[2][i] - t[1][i]), std::abs(t[2][i] - t[0][i])});
  }
  return s;
}

const char* to_string(SweepCheck c) {
  switch (c) {
    case SweepCheck::positivity: return "positivity";
    case SweepCheck::plane_identity: return "plane_identity";
    case SweepCheck::sandwich: return "sandwich";
    case SweepCheck::collinear: return "collinear";
  }
  return "unknown";
}

SweepReport sweep(SweepCheck check, int dim, double alpha, std::size_t count, std::uint64_t seed,
                  const SweepOptions& opts) {
  if (dim < 2 || dim > kMaxDim) throw ParameterError("sweep: dim must lie in 2..8");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("sweep: alpha must lie in (0, 1]");
  if (check == SweepCheck::plane_identity && (dim != 2 || alpha != 1.0))
    throw ParameterError("sweep: the curvature identity is planar with alpha = 1");
  if (check == SweepCheck::collinear && alpha != 1.0)
    throw ParameterError("sweep: collinear triples vanish only for alpha = 1");
  if (check == SweepCheck::sandwich && alpha == 1.0) throw ParameterError("sweep: the sandwich needs alpha < 1");

  constexpr std::size_t kBlock = 4096;
  std::vector<SweepReport> parts(block_count(count, kBlock));
  for_each_block(count, kBlock, [&](std::size_t blk, std::size_t begin, std::size_t end) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SweepReport& r = parts[blk];
    if (check == SweepCheck::sandwich) r.max_error[0] = r.max_error[1] = -std::numeric_limits<double>::infinity();
    for (std::size_t k = begin; k < end; ++k) {
      Point x[3] = {Point(dim), Point(dim), Point(dim)};
      for (auto& p : x)
        for (int j = 0; j < dim; ++j) p[j] = u(rng);
      if (opts.degenerate && k % 3 == 0) x[1][0] = x[2][0] = x[0][0];
      if (check == SweepCheck::collinear) {
        const double s = u(rng), t = u(rng);
        const Point v = x[1];
        x[1] = x[0] + s * v;
        x[2] = x[0] + t * v;
      }
      if (x[0] == x[1] || x[1] == x[2] || x[0] == x[2]) continue;
      const Triple t(x[0], x[1], x[2]);
      bool bad = false;
      if (check == SweepCheck::collinear) {
        const double dmin = std::min({distance(x[0], x[1]), distance(x[1], x[2]), distance(x[0], x[2])});
        const double scale = std::pow(dmin, 2.0 * alpha);
        for (int i = 1; i <= dim; ++i) {
          const double p = std::abs(perm_sum_alpha(alpha, i, t)) * scale;
          r.max_error[0] = std::max(r.max_error[0], p);
          if (p > opts.tol) {
            ++r.violations[0];
            bad = true;
          }
        }
      } else if (check == SweepCheck::positivity) {
        for (int i = 1; i <= dim; ++i) {
          const double p = perm_sum_alpha(alpha, i, t);
          r.max_error[0] = std::max(r.max_error[0], -p);
          if (p < -opts.tol) {
            ++r.violations[0];
            bad = true;
          }
        }
      } else if (check == SweepCheck::plane_identity) {
        const double p1 = perm_sum(1, t), p2 = perm_sum(2, t);
        const double c = menger_curvature(t), c2 = c * c;
        const double e1 = c2 > 0.0 ? std::abs(4.0 * p1 - c2) / c2 : std::abs(4.0 * p1);
        const double m = std::max(p1, p2);
        const double e2 = m > 0.0 ? std::abs(p1 - p2) / m : 0.0;
        r.max_error[0] = std::max(r.max_error[0], e1);
        r.max_error[1] = std::max(r.max_error[1], e2);
        if (e1 > opts.tol) {
          ++r.violations[0];
          bad = true;
        }
        if (e2 > opts.tol2) {
          ++r.violations[1];
          bad = true;
        }
      } else {
        const auto st = triple_stats(alpha, t);
        const double l = std::pow(st.longest_side, 2.0 + 2.0 * alpha);
        for (int i = 0; i < dim; ++i) {
          const double p = st.p[i], m2 = st.spread[i] * st.spread[i];
          if (m2 == 0.0) {
            if (p != 0.0) {
              ++r.degenerate_nonzero;
              bad = true;
            }
            continue;
          }
          const double upper = 3.0 * m2 / l, lower = (2.0 - std::pow(2.0, alpha)) * m2 / l;
          r.max_error[0] = std::max(r.max_error[0], p / upper - 1.0);
          r.max_error[1] = std::max(r.max_error[1], 1.0 - p / lower);
          if (p > upper * (1.0 + opts.tol)) {
            ++r.violations[0];
            bad = true;
          }
          if (p < lower * (1.0 - opts.tol)) {
            ++r.violations[1];
            bad = true;
          }
        }
      }
      ++r.samples;
      if (bad && !r.witness) r.witness = std::array<Point, 3>{x[0], x[1], x[2]};
    }
  });

  SweepReport out;
  out.check = check;
  out.dim = dim;
  out.alpha = alpha;
  if (check == SweepCheck::sandwich) out.max_error[0] = out.max_error[1] = -std::numeric_limits<double>::infinity();
  for (const auto& r : parts) {
    out.samples += r.samples;
    out.degenerate_nonzero += r.degenerate_nonzero;
    for (int k = 0; k < 2; ++k) {
      out.violations[k] += r.violations[k];
      if (r.samples > 0) out.max_error[k] = std::max(out.max_error[k], r.max_error[k]);
    }
    if (!out.witness && r.witness) out.witness = r.witness;
  }
  return out;
}

}  // namespace rieszlab::sym
