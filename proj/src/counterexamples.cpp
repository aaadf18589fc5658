#include "rieszlab/counterexamples.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "rieszlab/errors.hpp"
#include "rieszlab/parallel.hpp"

namespace rieszlab::counterexamples {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGaussOrder = 16;
constexpr int kMaxGradeLevels = 110;

struct GaussRule {
  std::array<double, kGaussOrder> x{}, w{};
};

// Legendre roots by Newton iteration from the Chebyshev guesses.
const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    GaussRule r;
    const int n = kGaussOrder;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      r.x[i] = z;
      r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return r;
  }();
  return rule;
}

using Fn = std::function<double(double)>;

double panel(const Fn& fn, double a, double b) {
  const auto& r = gauss_rule();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < kGaussOrder; ++i) s += r.w[i] * fn(c + h * r.x[i]);
  return s * h;
}

// Levels of ratio-2 refinement toward an end point e of a half panel of width
// w: down to a few hundred ulps of e, where the quadrature nodes stop being
// distinct from e.
int grade_levels(double e, double w) {
  const double floor_width = 256.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(e), 1e-30 * w);
  return std::clamp(static_cast<int>(std::ceil(std::log2(w / floor_width))), 1, kMaxGradeLevels);
}

// Panels refined geometrically toward both ends; the sliver left at each end
// lies within a few hundred ulps of it.
double graded(const Fn& fn, double a, double b) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b), w = m - a;
  double left = 0.0, right = 0.0;
  for (int k = 0, n = grade_levels(a, w); k < n; ++k)
    left += panel(fn, a + std::ldexp(w, -k - 1), a + std::ldexp(w, -k));
  for (int k = 0, n = grade_levels(b, w); k < n; ++k)
    right += panel(fn, b - std::ldexp(w, -k), b - std::ldexp(w, -k - 1));
  return left + right;
}

// Graded quadrature over [lo, hi] split at every break inside it.
double integrate(const Fn& fn, double lo, double hi, std::vector<double> breaks) {
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], b = breaks[k + 1];
    if (a < lo || b > hi) continue;
    s += graded(fn, a, b);
  }
  return s;
}

double slope(int n) { return std::ldexp(1.0, n + 2) / (static_cast<double>(n) * n); }
double centre(int n) { return 3.0 * std::ldexp(1.0, -n - 2); }

// Index n with y in [2^{-n-1}, 2^{-n}), or 0 when y lies outside every I_n of the spec.
int interval_index(const TentSpec& spec, double y) {
  if (!(y > 0.0) || y >= 0.5) return 0;
  int e = 0;
  std::frexp(y, &e);
  const int n = -e;
  return n >= 1 && n <= spec.n_max ? n : 0;
}

void check_spec(const TentSpec& spec) {
  if (spec.n_max < 1 || spec.n_max > 60) throw ParameterError("tent: n_max must lie in 1..60");
}

double f_prime_right(double x) {
  if (x >= -1.0 && x < 0.0) return 1.0;
  if (x >= 0.0 && x < 1.0) return -1.0;
  return 0.0;
}

double g_prime_right(const TentSpec& spec, double y) {
  const int n = interval_index(spec, y);
  if (n == 0) return 0.0;
  return y < centre(n) ? slope(n) : -slope(n);
}

}  // namespace

double tent_f(double x) { return std::abs(x) <= 1.0 ? 1.0 - std::abs(x) : 0.0; }

double tent_f_prime(double x) {
  if (x > -1.0 && x <= 0.0) return 1.0;
  if (x > 0.0 && x <= 1.0) return -1.0;
  return 0.0;
}

double tent_g(const TentSpec& spec, double y) {
  check_spec(spec);
  const int n = interval_index(spec, y);
  if (n == 0) return 0.0;
  const double s = slope(n);
  return y <= centre(n) ? s * (y - std::ldexp(1.0, -n - 1)) : -s * (y - std::ldexp(1.0, -n));
}

double tent_g_prime(const TentSpec& spec, double y) {
  check_spec(spec);
  int n = interval_index(spec, y);
  if (n == 0) return y == 0.5 ? -slope(1) : 0.0;
  if (y == std::ldexp(1.0, -n - 1)) {
    ++n;
    return n <= spec.n_max ? -slope(n) : 0.0;
  }
  return y <= centre(n) ? slope(n) : -slope(n);
}

double tent_potential_k1(const TentSpec& spec, double x, double y) {
  return spec.c * tent_f_prime(x) * tent_g(spec, y);
}

double tent_potential_k2(const TentSpec& spec, double x, double y) {
  return spec.c * tent_f(x) * tent_g_prime(spec, y);
}

TentGrowth tent_growth_ratio(const TentSpec& spec, int n) {
  check_spec(spec);
  if (n < 1 || n > spec.n_max) throw ParameterError("tent_growth_ratio: n must lie in 1..n_max");
  TentGrowth out;
  out.n = n;
  out.ratio = std::abs(spec.c) * 2.0 * slope(n) * (1.0 - centre(n));

  // Outward flux of grad h through the four sides, derivatives taken from inside the square.
  const double a = std::ldexp(1.0, -n - 1), b = std::ldexp(1.0, -n), l = b - a;
  const double g_top = tent_g_prime(spec, b), g_bottom = g_prime_right(spec, a);
  const double f_right = tent_f_prime(b), f_left = f_prime_right(a);
  const Fn f = [](double x) { return tent_f(x); };
  const Fn g = [&](double y) { return tent_g(spec, y); };
  const double int_f = integrate(f, a, b, {});
  const double int_g = integrate(g, a, b, {centre(n)});
  const double flux = g_top * int_f - g_bottom * int_f + f_right * int_g - f_left * int_g;
  out.flux_ratio = std::abs(spec.c * flux) / l;
  out.mismatch = std::abs(out.flux_ratio - out.ratio) / out.ratio;
  return out;
}

TentGridSup tent_grid_sup(const TentSpec& spec, std::size_t nx, std::size_t ny) {
  check_spec(spec);
  if (nx < 2 || ny < 4) throw ParameterError("tent_grid_sup: need nx >= 2 and ny >= 4");
  std::vector<double> ys;
  const std::size_t half = ny / 2;
  for (std::size_t k = 0; k < half; ++k) ys.push_back(-0.5 + 2.0 * k / (half - 1));
  const double lo = std::log(std::ldexp(1.0, -spec.n_max - 2));
  for (std::size_t k = 0; k < ny - half; ++k) ys.push_back(std::exp(lo + (0.0 - lo) * k / (ny - half - 1)));
  std::vector<std::pair<double, double>> best(block_count(ys.size(), 16));
  for_each_block(ys.size(), 16, [&](std::size_t blk, std::size_t begin, std::size_t end) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t j = begin; j < end; ++j)
      for (std::size_t i = 0; i < nx; ++i) {
        const double x = -1.5 + 3.0 * i / (nx - 1);
        s1 = std::max(s1, std::abs(tent_potential_k1(spec, x, ys[j])));
        s2 = std::max(s2, std::abs(tent_potential_k2(spec, x, ys[j])));
      }
    best[blk] = {s1, s2};
  });
  TentGridSup out;
  out.points = nx * ys.size();
  for (const auto& [s1, s2] : best) {
    out.k1 = std::max(out.k1, s1);
    out.k2 = std::max(out.k2, s2);
  }
  return out;
}

double log_density(double t) {
  const double a = std::abs(t);
  return a < 1.0 ? -std::log(a) : 0.0;
}

double hilbert_logplus(double x) {
  if (!std::isfinite(x)) throw DomainError("hilbert_logplus: x must be finite");
  if (x == 0.0) return 0.0;
  if (x < 0.0) return -hilbert_logplus(-x);
  if (x > 1.0) {
    const Fn fn = [x](double t) { return log_density(t) / (x - t); };
    return integrate(fn, -1.0, 1.0, {0.0}) / kPi;
  }
  // Pair t = x - s with t = x + s on the symmetric part, then the one-sided rest.
  const double d = 1.0 - x;
  const Fn pair = [x](double s) { return (log_density(x - s) - log_density(x + s)) / s; };
  const Fn rest = [x](double s) { return log_density(x - s) / s; };
  const double sym = integrate(pair, 0.0, d, x < d ? std::vector<double>{x} : std::vector<double>{});
  const double one = integrate(rest, d, 1.0 + x, x > d ? std::vector<double>{x} : std::vector<double>{});
  return (sym + one) / kPi;
}

double hilbert_logplus_substitution(double x) {
  if (!(std::abs(x) > 1.0) || !std::isfinite(x)) throw ParameterError("hilbert_logplus_substitution: needs |x| > 1");
  if (x < 0.0) return -hilbert_logplus_substitution(-x);
  const Fn fn = [](double u) { return -std::log1p(-u) / u; };
  return integrate(fn, -1.0 / x, 1.0 / x, {0.0}) / kPi;
}

double hilbert_log_fullline(double x) {
  if (!(std::abs(x) < 1.0)) throw ParameterError("hilbert_log_fullline: needs |x| < 1");
  if (x == 0.0) return 0.0;
  // The part |t| > 1, folded onto t > 1 and mapped by u = 1/t.
  const Fn tail = [x](double u) { return 2.0 * x * -std::log(u) / (1.0 - x * x * u * u); };
  return hilbert_logplus(x) + integrate(tail, 0.0, 1.0, {}) / kPi;
}

LogPotential log_measure_potential(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("log_measure_potential: non-finite input");
  if (y == 0.0) throw DomainError("log_measure_potential: y must be nonzero");
  const double ay = std::abs(y);
  LogPotential out;
  out.accuracy_warning = ay < 1e-6;

  std::vector<double> breaks{0.0};
  if (x > -1.0 && x < 1.0) breaks.push_back(x);
  const Fn direct = [x, ay](double t) {
    const double u = x - t;
    return u / (u * u + ay * ay) * log_density(t);
  };
  out.value = integrate(direct, -1.0, 1.0, breaks) / kPi;

  // Poisson integral of Hf with s = x + |y| tan(theta).
  const Fn poisson = [x, ay](double th) { return hilbert_logplus(x + ay * std::tan(th)); };
  std::vector<double> tb;
  for (double s : {-1.0, 0.0, 1.0}) tb.push_back(std::atan((s - x) / ay));
  out.poisson_route = integrate(poisson, -0.5 * kPi, 0.5 * kPi, tb) / kPi;
  out.mismatch = std::abs(out.value - out.poisson_route);
  return out;
}

double log_measure_growth(int j) {
  if (j < 1 || j > 1000) throw ParameterError("log_measure_growth: j must lie in 1..1000");
  const double delta = std::ldexp(1.0, -j);
  const double mass = 2.0 * delta * (1.0 + j * std::numbers::ln2);
  return mass / (2.0 * delta);
}

measures::DiscreteMeasure log_measure_discretization(int level) {
  if (level < 1 || level > 20) throw ResourceError("log_measure_discretization: level must lie in 1..20");
  const double w = std::ldexp(1.0, -level);
  const long half = 1L << level;
  const auto antiderivative = [](double t) { return t == 0.0 ? 0.0 : t * (1.0 - std::log(t)); };
  std::vector<Point> pts;
  std::vector<double> masses;
  for (long k = -half; k < half; ++k) {
    const double a = k * w, b = (k + 1) * w;
    const double lo = std::min(std::abs(a), std::abs(b)), hi = std::max(std::abs(a), std::abs(b));
    pts.push_back(Point{0.5 * (a + b), 0.0});
    masses.push_back(antiderivative(hi) - antiderivative(lo));
  }
  return measures::DiscreteMeasure(2, std::move(pts), std::move(masses));
}

HilbertSup hilbert_logplus_sup(double x_lo, double x_hi, std::size_t count) {
  if (count < 2 || !(x_hi > x_lo)) throw ParameterError("hilbert_logplus_sup: need count >= 2 and x_hi > x_lo");
  std::vector<double> v(count);
  for_each_block(count, 8, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) v[k] = std::abs(hilbert_logplus(x_lo + (x_hi - x_lo) * k / (count - 1)));
  });
  const auto it = std::max_element(v.begin(), v.end());
  const std::size_t k = static_cast<std::size_t>(it - v.begin());
  return {*it, x_lo + (x_hi - x_lo) * k / (count - 1)};
}

}  // namespace rieszlab::counterexamples
