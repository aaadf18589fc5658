#include "rieszlab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "rieszlab/errors.hpp"
#include "rieszlab/parallel.hpp"

namespace rieszlab::transforms {

using kernels::component_unchecked;

double truncated_transform(const DiscreteMeasure& mu, const kernels::KernelSpec& spec, double eps, const Point& x) {
  if (spec.is_vector()) throw ParameterError("truncated_transform: scalar spec expected");
  if (!(eps >= 0.0)) throw ParameterError("truncated_transform: eps must be non-negative");
  if (x.dim() != mu.dim() || spec.dim() != mu.dim()) throw ParameterError("truncated_transform: dimension mismatch");
  const int i0 = spec.coordinate() - 1;
  const double eps2 = eps * eps;
  double s = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const Point d = x - mu.point(k);
    const double r2 = dot(d, d);
    if (r2 > eps2 && r2 > 0.0) s += component_unchecked(d, i0, spec.alpha(), r2) * mu.mass(k);
  }
  return s;
}

Point truncated_transform_vector(const DiscreteMeasure& mu, const kernels::KernelSpec& spec, double eps,
                                 const Point& x) {
  if (!spec.is_vector()) throw ParameterError("truncated_transform_vector: vector spec expected");
  if (!(eps >= 0.0)) throw ParameterError("truncated_transform_vector: eps must be non-negative");
  if (x.dim() != mu.dim() || spec.dim() != mu.dim()) throw ParameterError("truncated_transform_vector: dimension mismatch");
  const double eps2 = eps * eps;
  Point s(mu.dim());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const Point d = x - mu.point(k);
    const double r2 = dot(d, d);
    if (!(r2 > eps2 && r2 > 0.0)) continue;
    for (int i = 0; i < mu.dim(); ++i) s[i] += component_unchecked(d, i, spec.alpha(), r2) * mu.mass(k);
  }
  return s;
}

namespace {

constexpr std::size_t kEnergyLimit = 4096;

// Pairwise |x_a - x_b|^2 and |x_a - x_b|^{1+alpha}.
struct PairTable {
  std::size_t n;
  std::vector<double> d2, ds;

  PairTable(const DiscreteMeasure& mu, double alpha) : n(mu.size()), d2(n * n), ds(n * n) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const double r2 = squared_distance(mu.point(a), mu.point(b));
        d2[a * n + b] = r2;
        ds[a * n + b] = alpha == 1.0 ? r2 : std::pow(std::sqrt(r2), 1.0 + alpha);
      }
  }
};

}  // namespace

EnergyReport energy_identity(const DiscreteMeasure& mu, int component, double alpha, double eps) {
  if (!(eps > 0.0)) throw ParameterError("energy_identity: eps must be positive");
  if (component < 1 || component > mu.dim()) throw ParameterError("energy_identity: coordinate index out of range");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("energy_identity: alpha must lie in (0, 1]");
  if (mu.size() > kEnergyLimit) throw ResourceError("energy_identity: more than 4096 atoms");
  EnergyReport rep;
  rep.eps = eps;
  rep.component = component;
  rep.alpha = alpha;
  const std::size_t n = mu.size();
  if (n == 0) return rep;
  const int i0 = component - 1;
  const int dim = mu.dim();
  const double eps2 = eps * eps;
  const PairTable tab(mu, alpha);
  const auto& pts = mu.points();
  const auto& m = mu.masses();

  std::vector<double> l2(n), diag(n), perm(n);
  for_each_block(n, 4, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      double r = 0.0, dg = 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        const double r2 = tab.d2[a * n + b];
        if (b == a || !(r2 > eps2)) continue;
        const double k = component_unchecked(pts[a] - pts[b], i0, alpha, r2);
        r += k * m[b];
        dg += k * k * m[b] * m[b];
      }
      l2[a] = m[a] * r * r;
      diag[a] = m[a] * dg;

      double acc = 0.0;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!(tab.d2[a * n + b] > eps2)) continue;
        const Point u = pts[b] - pts[a];
        const double nu = tab.ds[a * n + b];
        double inner = 0.0;
        for (std::size_t c = b + 1; c < n; ++c) {
          if (!(tab.d2[a * n + c] > eps2) || !(tab.d2[b * n + c] > eps2)) continue;
          const Point v = pts[c] - pts[b];
          const double nv = tab.ds[b * n + c];
          const double nw = tab.ds[a * n + c];
          double num;
          if (alpha == 1.0) {
            num = 0.0;
            for (int j = 0; j < dim; ++j) {
              if (j == i0) continue;
              const double w = u[i0] * v[j] - v[i0] * u[j];
              num += w * w;
            }
          } else {
            num = u[i0] * u[i0] * nv + v[i0] * v[i0] * nu + u[i0] * v[i0] * (nv + nu - nw);
          }
          inner += ((num / nu) / nv) / nw * m[c];
        }
        acc += inner * m[b];
      }
      perm[a] = acc * m[a];
    }
  });
  rep.l2_energy = pairwise_sum(l2);
  rep.diagonal = pairwise_sum(diag);
  rep.perm_energy = 6.0 * pairwise_sum(perm);
  rep.residual = rep.l2_energy - rep.perm_energy / 3.0 - rep.diagonal;
  return rep;
}

double vector_energy(const DiscreteMeasure& mu, double alpha, double eps) {
  if (!(eps > 0.0)) throw ParameterError("vector_energy: eps must be positive");
  const std::size_t n = mu.size();
  if (n == 0) return 0.0;
  const auto spec = kernels::KernelSpec::vector(mu.dim(), alpha);
  std::vector<double> terms(n);
  for_each_block(n, 16, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      const Point r = truncated_transform_vector(mu, spec, eps, mu.point(a));
      terms[a] = mu.mass(a) * dot(r, r);
    }
  });
  return pairwise_sum(terms);
}

std::string to_json(const EnergyReport& r) {
  nlohmann::ordered_json j;
  j["l2_energy"] = r.l2_energy;
  j["perm_energy"] = r.perm_energy;
  j["diagonal"] = r.diagonal;
  j["residual"] = r.residual;
  j["eps"] = r.eps;
  j["component"] = r.component;
  j["alpha"] = r.alpha;
  return j.dump();
}

namespace {

// Quintic smoothstep falling from 1 at rho = 0 to 0 at rho = 1, and its derivatives.
double fall(double rho) { return 1.0 - rho * rho * rho * (rho * (6.0 * rho - 15.0) + 10.0); }
double fall_d1(double rho) { return -30.0 * rho * rho * (rho - 1.0) * (rho - 1.0); }
double fall_d2(double rho) { return -60.0 * rho * (rho - 1.0) * (2.0 * rho - 1.0); }

}  // namespace

double RadialBump::value(const Point& x) const {
  const double r = distance(x, center);
  if (r <= inner) return 1.0;
  if (r >= outer) return 0.0;
  return fall((r - inner) / (outer - inner));
}

double RadialBump::laplacian(const Point& x) const {
  const double r = distance(x, center);
  if (r <= inner || r >= outer) return 0.0;
  const double w = outer - inner;
  const double rho = (r - inner) / w;
  return fall_d2(rho) / (w * w) + (x.dim() - 1) * fall_d1(rho) / (w * r);
}

RecoverResult recover_pairing(const std::function<double(const Point&)>& potential, const RadialBump& phi,
                              const RecoverOptions& opts) {
  if (phi.center.dim() != 2) throw ParameterError("recover_pairing: planar bumps only");
  if (!(phi.outer > phi.inner) || phi.inner < 0.0) throw ParameterError("recover_pairing: bad bump radii");
  const double h = opts.h == 0.0 ? (phi.outer - phi.inner) / 32.0 : opts.h;
  if (!(h > 0.0)) throw ParameterError("recover_pairing: quadrature step must be positive");
  if (!(opts.T > phi.outer)) throw ParameterError("recover_pairing: T must exceed the bump radius");

  // Weighted nodes of the Laplacian of the bump on a midpoint grid centred on the bump.
  std::vector<std::pair<Point, double>> nodes;
  const long K = static_cast<long>(std::ceil(phi.outer / h));
  for (long a = -K; a < K; ++a)
    for (long b = -K; b < K; ++b) {
      const Point u{phi.center[0] + (a + 0.5) * h, phi.center[1] + (b + 0.5) * h};
      const double w = phi.laplacian(u);
      if (w != 0.0) nodes.emplace_back(u, w * h * h);
    }

  const std::size_t nt = static_cast<std::size_t>(std::ceil(opts.T / h));
  std::vector<double> g(2 * nt);
  for_each_block(g.size(), 8, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const double t = -(static_cast<double>(j) + 0.5) * h;
      double s = 0.0;
      for (const auto& [u, w] : nodes) s += w * potential(Point{t + u[0], u[1]});
      g[j] = s;
    }
  });
  const double c = h / (2.0 * std::numbers::pi);
  RecoverResult res;
  res.value = c * pairwise_sum(std::span<const double>(g.data(), nt));
  res.value_2T = c * pairwise_sum(g);
  res.tail_change = res.value_2T - res.value;
  return res;
}

RecoverResult recover_pairing(const DiscreteMeasure& mu, const RadialBump& phi, RecoverOptions opts) {
  if (mu.dim() != 2) throw ParameterError("recover_pairing: planar measures only");
  if (opts.T == 0.0) {
    Point lo{phi.center[0] - phi.outer, phi.center[1] - phi.outer};
    Point hi{phi.center[0] + phi.outer, phi.center[1] + phi.outer};
    if (!mu.empty()) {
      const auto [blo, bhi] = mu.bounding_box();
      for (int k = 0; k < 2; ++k) {
        lo[k] = std::min(lo[k], blo[k]);
        hi[k] = std::max(hi[k], bhi[k]);
      }
    }
    opts.T = 10.0 * distance(lo, hi);
  }
  const auto spec = kernels::KernelSpec::scalar(2, 1.0, 1);
  return recover_pairing([&](const Point& x) { return truncated_transform(mu, spec, 0.0, x); }, phi, opts);
}

double cutoff(const Square& q, const Point& x) {
  double v = 1.0;
  const double quarter = q.side / 4.0;
  for (int k = 0; k < x.dim(); ++k) {
    const double d = std::abs(x[k] - (q.corner[k] + q.side / 2.0));
    if (d >= 2.0 * quarter) return 0.0;
    if (d > quarter) v *= fall((d - quarter) / quarter);
  }
  return v;
}

LocalizationRecord localization_probe(const DiscreteMeasure& mu, int component, const Square& q, int grid) {
  if (mu.dim() != 2 || q.corner.dim() != 2) throw ParameterError("localization_probe: planar input only");
  if (!(q.side > 0.0)) throw ParameterError("localization_probe: degenerate cube");
  if (grid < 2) throw ParameterError("localization_probe: grid must be >= 2");
  if (mu.empty()) throw ParameterError("localization_probe: empty measure");
  const auto spec = kernels::KernelSpec::scalar(2, 1.0, component);

  std::vector<double> cut(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) cut[k] = cutoff(q, mu.point(k)) * mu.mass(k);
  const DiscreteMeasure local = mu.with_masses(std::move(cut));

  auto [lo, hi] = mu.bounding_box();
  for (int k = 0; k < 2; ++k) {
    lo[k] = std::min(lo[k], q.corner[k]);
    hi[k] = std::max(hi[k], q.corner[k] + q.side);
  }
  const double wx = hi[0] - lo[0], wy = hi[1] - lo[1];
  lo[0] -= wx / 2.0;
  hi[0] += wx / 2.0;
  lo[1] -= wy / 2.0;
  hi[1] += wy / 2.0;
  const double delta = std::isfinite(mu.min_separation()) ? mu.min_separation() / 4.0 : q.side / (4.0 * grid);
  const double delta2 = delta * delta;

  std::vector<double> row_lhs(grid + 1), row_pot(grid + 1);
  for_each_block(grid + 1, 1, [&](std::size_t, std::size_t r, std::size_t) {
    double best_l = 0.0, best_p = 0.0;
    for (int c = 0; c <= grid; ++c) {
      const Point x{lo[0] + (hi[0] - lo[0]) * c / grid, lo[1] + (hi[1] - lo[1]) * static_cast<double>(r) / grid};
      bool near = false;
      for (const Point& y : mu.points())
        if (squared_distance(x, y) <= delta2) {
          near = true;
          break;
        }
      if (near) continue;
      best_l = std::max(best_l, std::abs(truncated_transform(local, spec, 0.0, x)));
      best_p = std::max(best_p, std::abs(truncated_transform(mu, spec, 0.0, x)));
    }
    row_lhs[r] = best_l;
    row_pot[r] = best_p;
  });
  LocalizationRecord rec;
  rec.lhs = *std::max_element(row_lhs.begin(), row_lhs.end());
  rec.potential_sup = *std::max_element(row_pot.begin(), row_pot.end());
  const double s_min = std::isfinite(mu.min_separation()) ? mu.min_separation() : q.side / 64.0;
  rec.growth = measures::growth_constant(mu, 1.0, s_min).overall;
  rec.ratio = rec.lhs / (rec.potential_sup + rec.growth);
  return rec;
}

std::string to_json(const LocalizationRecord& r) {
  nlohmann::ordered_json j;
  j["lhs"] = r.lhs;
  j["potential_sup"] = r.potential_sup;
  j["growth"] = r.growth;
  j["ratio"] = r.ratio;
  return j.dump();
}

double r3_flatness(const DiscreteMeasure& nu, double eps, std::span<const Point> samples, VerticalWindow window) {
  if (nu.dim() != 3) throw ParameterError("r3_flatness: measure must live in R^3");
  if (!(eps > 0.0)) throw ParameterError("r3_flatness: eps must be positive");
  std::map<std::tuple<double, double, double>, double> atoms;
  for (std::size_t k = 0; k < nu.size(); ++k) {
    const Point& p = nu.point(k);
    atoms[{p[0], p[1], p[2]}] = nu.mass(k);
  }
  for (const auto& [key, mass] : atoms) {
    const auto it = atoms.find({std::get<0>(key), std::get<1>(key), -std::get<2>(key)});
    if (it == atoms.end() || it->second != mass) throw PreconditionError("r3_flatness: measure is not symmetric in x3");
  }
  if (nu.empty()) return 0.0;
  const auto [lo, hi] = nu.bounding_box();

  std::vector<double> per_sample(samples.size());
  for_each_block(samples.size(), 1, [&](std::size_t, std::size_t s, std::size_t) {
    const Point& x = samples[s];
    if (x.dim() != 3) throw ParameterError("r3_flatness: samples must live in R^3");
    const double reach = std::min(hi[2] - x[2], x[2] - lo[2]);
    const double tol = 1e-12 * std::max(1.0, hi[2] - lo[2]);
    // (|dz|, planar distance^2, column, signed dz, contribution)
    std::vector<std::tuple<double, double, double, double, double, double>> terms;
    for (std::size_t k = 0; k < nu.size(); ++k) {
      const Point& y = nu.point(k);
      const double dz = x[2] - y[2];
      if (std::abs(dz) <= eps) continue;
      if (window == VerticalWindow::symmetric && std::abs(dz) > reach + tol) continue;
      const double p2 = (x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]);
      if (p2 > 0.0 && p2 <= eps * eps) continue;
      const double r2 = p2 + dz * dz;
      terms.emplace_back(std::abs(dz), p2, y[0], y[1], dz, dz / (r2 * std::sqrt(r2)) * nu.mass(k));
    }
    std::sort(terms.begin(), terms.end());
    double total = 0.0;
    for (std::size_t a = 0; a < terms.size();) {
      std::size_t b = a + 1;
      double group = std::get<5>(terms[a]);
      while (b < terms.size() && std::get<0>(terms[b]) == std::get<0>(terms[a]) &&
             std::get<2>(terms[b]) == std::get<2>(terms[a]) && std::get<3>(terms[b]) == std::get<3>(terms[a])) {
        group += std::get<5>(terms[b]);
        ++b;
      }
      total += group;
      a = b;
    }
    per_sample[s] = std::abs(total);
  });
  return per_sample.empty() ? 0.0 : *std::max_element(per_sample.begin(), per_sample.end());
}

}  // namespace rieszlab::transforms
